"""Colorings of a dendrite model and the kaleidoscopic machinery around them.

A coloring assigns, at every branch vertex, a bijection from its n directions
to the colors [n].  The audit hunts for vertex pairs and color pairs lacking
an interior witness; the recoloring recursion replays the doubly-transitive
recoloring argument at finite depth.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import rng
from .dendrite import DendriteModel, Direction, distance, path
from .errors import NotDoublyTransitive, ParseError, SameVertex
from .permgroup import Perm, PermGroup, closure, count_orbits_on_tuples


class Coloring:
    """Per-branch-vertex direction colors.

    ``assignment[x]`` is a length-n tuple: entry k is the color of the
    direction from x to its k-th smallest neighbor.
    """

    __slots__ = ("model", "assignment", "_toward")

    def __init__(self, model: DendriteModel, assignment: dict[int, tuple[int, ...]]):
        n = model.n
        branch = model.branch_vertices()
        if set(assignment) != set(branch):
            raise ValueError("assignment must cover exactly the branch vertices")
        toward: dict[int, dict[int, int]] = {}
        for x in branch:
            colors = tuple(assignment[x])
            if sorted(colors) != list(range(n)):
                raise ValueError(f"colors at vertex {x} are not a bijection onto [{n}]")
            toward[x] = dict(zip(model.neighbors[x], colors))
        self.model = model
        self.assignment = {x: tuple(assignment[x]) for x in branch}
        self._toward = toward

    def color_toward(self, x: int, neighbor: int) -> int:
        return self._toward[x][neighbor]

    def direction_with_color(self, x: int, color: int) -> Direction:
        for neighbor, col in self._toward[x].items():
            if col == color:
                return Direction(x, neighbor)
        raise ValueError(f"no color {color} at vertex {x}")

    def __eq__(self, other):
        return isinstance(other, Coloring) and self.assignment == other.assignment

    def __hash__(self):
        return hash(tuple(sorted(self.assignment.items())))


def color_from(model: DendriteModel, coloring: Coloring, x: int, y: int) -> int:
    """The color, at branch vertex x, of the component containing y."""
    if x == y:
        raise SameVertex(f"color at {x} seen from itself")
    _, step = model._tables()
    return coloring.color_toward(x, step[x][y])


def random_coloring(model: DendriteModel, seed: int) -> Coloring:
    """Independent uniform bijection at each branch vertex; per-vertex streams."""
    n = model.n
    assignment = {}
    for x in model.branch_vertices():
        colors = rng.stream(seed, x).shuffle(list(range(n)))
        assignment[x] = tuple(colors)
    return Coloring(model, assignment)


def uniform_coloring(model: DendriteModel) -> Coloring:
    """The symmetric fixture: color 0 toward the root at every non-root branch
    vertex, remaining colors 1..n-1 in neighbor order; plain 0..n-1 at the root.

    The root is the model's first branch vertex (the tree center), so all of
    its subtrees are shape-identical and carry identical color patterns.
    """
    root = root_vertex(model)
    _, step = model._tables()
    assignment = {}
    for x in model.branch_vertices():
        if x == root:
            assignment[x] = tuple(range(model.n))
            continue
        parent = step[x][root]
        colors = []
        next_color = 1
        for neighbor in model.neighbors[x]:
            if neighbor == parent:
                colors.append(0)
            else:
                colors.append(next_color)
                next_color += 1
        assignment[x] = tuple(colors)
    return Coloring(model, assignment)


def root_vertex(model: DendriteModel) -> int:
    """The canonical central branch vertex (the first one created)."""
    return model.branch_vertices()[0]


def witness_on_path(
    model: DendriteModel, coloring: Coloring, x: int, y: int, i: int, j: int
) -> int | None:
    """First branch vertex z strictly between x and y with colors i toward x
    and j toward y, or None."""
    if i == j:
        raise ValueError("witness colors must be distinct")
    walk = path(model, x, y)
    for pos in range(1, len(walk) - 1):
        z = walk[pos]
        if not model.is_branch(z):
            continue
        if (
            coloring.color_toward(z, walk[pos - 1]) == i
            and coloring.color_toward(z, walk[pos + 1]) == j
        ):
            return z
    return None


@dataclass(frozen=True)
class DefectReport:
    """Vertex/color pairs with no interior witness.

    ``entries`` holds (x, y, i, j) quadruples; ``witness_budget`` records the
    minimum path length audited (the separation threshold).
    """

    entries: tuple[tuple[int, int, int, int], ...]
    pairs_checked: int
    witness_budget: int

    @property
    def defect_count(self) -> int:
        return len(self.entries)


def kaleidoscopic_defects(
    model: DendriteModel, coloring: Coloring, min_separation: int = 3
) -> DefectReport:
    """Audit all ordered branch pairs at distance >= min_separation and all
    ordered color pairs i != j for missing interior witnesses."""
    if min_separation < 2:
        raise ValueError("min_separation must be >= 2: a witness needs an interior vertex")
    n = model.n
    entries = []
    pairs_checked = 0
    branch = model.branch_vertices()
    for x in branch:
        for y in branch:
            if x == y or distance(model, x, y) < min_separation:
                continue
            pairs_checked += 1
            walk = path(model, x, y)
            seen = set()
            for pos in range(1, len(walk) - 1):
                z = walk[pos]
                if model.is_branch(z):
                    seen.add(
                        (
                            coloring.color_toward(z, walk[pos - 1]),
                            coloring.color_toward(z, walk[pos + 1]),
                        )
                    )
            for i in range(n):
                for j in range(n):
                    if i != j and (i, j) not in seen:
                        entries.append((x, y, i, j))
    return DefectReport(tuple(entries), pairs_checked, min_separation)


@dataclass(frozen=True)
class RecolorResult:
    """Recoloring output: the new coloring, the closure element applied at each
    rewritten vertex, and the (v, w, i, j) witness shortfalls."""

    coloring: Coloring
    gammas: dict[int, Perm]
    shortfalls: tuple[tuple[int, int, int, int], ...]


def recolor_doubly_transitive(
    model: DendriteModel, coloring: Coloring, group: PermGroup
) -> RecolorResult:
    """Replay the doubly-transitive recoloring recursion at finite depth.

    Branch vertices are taken in index order.  Whenever two processed vertices
    v, w are adjacent relative to the processed set, every ordered color pair
    (i, j) gets a witness: first, each unprocessed interior branch vertex
    already showing a new pattern is consumed as is (the recursion is free to
    choose such a vertex, and then the identity works); the remaining color
    pairs consume the remaining free witnesses in path order and rewrite them
    to gamma o c_y, with gamma the lexicographically first closure element
    sending (c_y(v), c_y(w)) to (i, j).  Color pairs whose path runs out of
    witnesses are reported, not fatal.
    """
    if group.degree != model.n:
        raise ValueError(f"group degree {group.degree} != model order {model.n}")
    if count_orbits_on_tuples(group, 2, distinct=True) != 1:
        raise NotDoublyTransitive(f"group of degree {group.degree} is not 2-transitive")
    elements = closure(group)
    n = model.n
    assignment = dict(coloring.assignment)
    gammas: dict[int, Perm] = {}
    shortfalls: list[tuple[int, int, int, int]] = []
    processed_set: set[int] = set()
    done_pairs: set[tuple[int, int]] = set()

    def interior_clear(v: int, w: int) -> bool:
        return all(z not in processed_set for z in path(model, v, w)[1:-1])

    def process_pair(v: int, w: int) -> None:
        walk = path(model, v, w)
        free = [
            (walk[pos], walk[pos - 1], walk[pos + 1])
            for pos in range(1, len(walk) - 1)
            if model.is_branch(walk[pos]) and walk[pos] not in processed_set
        ]

        def consume(y: int, toward_v: int, toward_w: int, i: int, j: int) -> None:
            a = coloring.color_toward(y, toward_v)
            b = coloring.color_toward(y, toward_w)
            gamma = next(g for g in elements if g(a) == i and g(b) == j)
            if not gamma.is_identity():
                assignment[y] = tuple(gamma(col) for col in assignment[y])
                gammas[y] = gamma
            processed_set.add(y)

        # Already-realized patterns keep their first witness unchanged.
        covered: set[tuple[int, int]] = set()
        planting = []
        for y, toward_v, toward_w in free:
            pattern = (
                coloring.color_toward(y, toward_v),
                coloring.color_toward(y, toward_w),
            )
            if pattern not in covered:
                covered.add(pattern)
                consume(y, toward_v, toward_w, *pattern)
            else:
                planting.append((y, toward_v, toward_w))
        # Missing patterns rewrite the remaining free witnesses in path order.
        planting.reverse()
        for i in range(n):
            for j in range(n):
                if i == j or (i, j) in covered:
                    continue
                if planting:
                    consume(*planting.pop(), i, j)
                else:
                    shortfalls.append((v, w, i, j))

    def sweep_pairs() -> None:
        members = sorted(processed_set)
        for a_idx in range(len(members)):
            for b_idx in range(a_idx + 1, len(members)):
                v, w = members[a_idx], members[b_idx]
                if (v, w) in done_pairs or not interior_clear(v, w):
                    continue
                done_pairs.add((v, w))
                process_pair(v, w)

    for x in model.branch_vertices():
        if x in processed_set:
            continue
        processed_set.add(x)
        sweep_pairs()
    # Pairs formed by the last witnesses: all vertices are processed now, so
    # this only records shortfalls; one sweep reaches the fixed point.
    sweep_pairs()
    return RecolorResult(Coloring(model, assignment), gammas, tuple(shortfalls))


def parse_coloring(model: DendriteModel, text: str) -> Coloring:
    """Parse the coloring format: per branch vertex, `id nb:color ...`."""
    assignment: dict[int, tuple[int, ...]] = {}
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    for ln in lines:
        if not ln:
            continue
        parts = ln.split()
        try:
            x = int(parts[0])
            pairs = [tuple(int(v) for v in p.split(":")) for p in parts[1:]]
        except (ValueError, IndexError) as exc:
            raise ParseError(f"bad coloring line {ln!r}") from exc
        if x >= model.vertex_count or not model.is_branch(x):
            raise ParseError(f"vertex {x} is not a branch vertex of the model")
        toward = {nb: col for nb, col in pairs}
        if sorted(toward) != list(model.neighbors[x]):
            raise ParseError(f"line for vertex {x} must list each neighbor once")
        assignment[x] = tuple(toward[nb] for nb in model.neighbors[x])
    try:
        return Coloring(model, assignment)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_coloring(coloring: Coloring) -> str:
    model = coloring.model
    lines = []
    for x in model.branch_vertices():
        pairs = " ".join(
            f"{nb}:{coloring.color_toward(x, nb)}" for nb in model.neighbors[x]
        )
        lines.append(f"{x} {pairs}")
    return "\n".join(lines) + "\n"

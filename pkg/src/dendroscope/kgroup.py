"""Kaleidoscopic-group operations on a finite model.

Local-action cocycle, membership with witnesses, the splitting section at a
branch vertex, constrained extension of partial maps, and classification of
branch-vertex tuples under the ambient group (the ideal-orbit criterion, not
truncation automorphisms).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .coloring import Coloring
from .dendrite import DendriteModel, between, center, center_closure
from .errors import BetweennessViolation, BudgetExceeded, NoColorIsomorphism, ParseError
from .permgroup import Perm, PermGroup, closure, contains

DEFAULT_NODE_CAP = 1_000_000
DEFAULT_TUPLE_BUDGET = 200_000


class Automorphism:
    """A kind-preserving tree automorphism, stored as its vertex image list."""

    __slots__ = ("model", "images")

    def __init__(self, model: DendriteModel, images):
        images = tuple(images)
        if sorted(images) != list(range(model.vertex_count)):
            raise ValueError("images are not a bijection of the vertices")
        for x, y in enumerate(images):
            if model.kinds[x] != model.kinds[y]:
                raise ValueError(f"vertex {x} ({model.kinds[x]}) maps to {y} ({model.kinds[y]})")
        for u in range(model.vertex_count):
            image_neighbors = sorted(images[v] for v in model.neighbors[u])
            if image_neighbors != list(model.neighbors[images[u]]):
                raise ValueError(f"adjacency broken at vertex {u}")
        self.model = model
        self.images = images

    @classmethod
    def identity(cls, model: DendriteModel) -> "Automorphism":
        return cls(model, range(model.vertex_count))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        # (a * b)(x) = a(b(x)): apply b first.
        return Automorphism(self.model, (self.images[y] for y in other.images))

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Automorphism(self.model, inv)

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Automorphism({list(self.images)})"


def local_action(
    model: DendriteModel, coloring: Coloring, auto: Automorphism, x: int
) -> Perm:
    """The color permutation induced at branch vertex x: the direction with
    color i maps to the direction with color sigma(i) at the image vertex."""
    images = [0] * model.n
    x2 = auto(x)
    for u in model.neighbors[x]:
        images[coloring.color_toward(x, u)] = coloring.color_toward(x2, auto(u))
    return Perm(images)


def local_action_profile(
    model: DendriteModel, coloring: Coloring, auto: Automorphism
) -> dict[int, Perm]:
    return {x: local_action(model, coloring, auto, x) for x in model.branch_vertices()}


@dataclass(frozen=True)
class Membership:
    """Membership outcome; on failure carries the first offending vertex."""

    member: bool
    vertex: int | None = None
    action: Perm | None = None

    def __bool__(self) -> bool:
        return self.member


def is_member(
    model: DendriteModel, coloring: Coloring, group: PermGroup, auto: Automorphism
) -> Membership:
    """True iff the local action at every branch vertex lies in the group."""
    for x in model.branch_vertices():
        sigma = local_action(model, coloring, auto, x)
        if not contains(group, sigma):
            return Membership(False, x, sigma)
    return Membership(True)


def _forced_subtree_map(
    model: DendriteModel,
    coloring: Coloring,
    root_src: int,
    root_dst: int,
    anchor: int,
    images: list[int],
    direction_color: int,
) -> None:
    """Greedy color-preserving map of the subtree at root_src (away from the
    anchor) onto the subtree at root_dst; writes into ``images``.

    The map is forced: matching vertices must agree on kind and on the color
    of their anchor-side direction, and children correspond color by color.
    """
    stack = [(root_src, root_dst, anchor, anchor)]
    while stack:
        w, w2, parent, parent2 = stack.pop()
        if model.kinds[w] != model.kinds[w2]:
            raise NoColorIsomorphism(
                direction_color, f"kind mismatch {w}->{w2} out of direction {direction_color}"
            )
        images[w] = w2
        if not model.is_branch(w):
            continue
        if coloring.color_toward(w, parent) != coloring.color_toward(w2, parent2):
            raise NoColorIsomorphism(
                direction_color,
                f"anchor color mismatch {w}->{w2} out of direction {direction_color}",
            )
        for v in model.neighbors[w]:
            if v == parent:
                continue
            v2 = coloring.direction_with_color(w2, coloring.color_toward(w, v)).via
            stack.append((v, v2, w, w2))


def split_gamma(
    model: DendriteModel,
    coloring: Coloring,
    group: PermGroup,
    x: int,
    gamma: Perm,
) -> Automorphism:
    """The splitting-section automorphism at x: fixes x, carries the direction
    with color i onto the direction with color gamma(i) by the unique
    color-preserving subtree isomorphism.

    Raises NoColorIsomorphism(i) when the finite coloring lacks the needed
    symmetry between the two subtrees.
    """
    if not model.is_branch(x):
        raise ValueError(f"vertex {x} is not a branch vertex")
    if gamma.degree != model.n:
        raise ValueError(f"gamma degree {gamma.degree} != {model.n}")
    if not contains(group, gamma):
        raise ValueError("gamma is not in the group closure")
    images = list(range(model.vertex_count))
    for u in model.neighbors[x]:
        i = coloring.color_toward(x, u)
        u2 = coloring.direction_with_color(x, gamma(i)).via
        _forced_subtree_map(model, coloring, u, u2, x, images, i)
    return Automorphism(model, images)


@dataclass(frozen=True)
class PartialMap:
    """An injective map between branch-vertex lists, as (source, image) pairs."""

    pairs: tuple[tuple[int, int], ...]

    def __init__(self, pairs):
        pairs = tuple((int(a), int(b)) for a, b in pairs)
        sources = [a for a, _ in pairs]
        targets = [b for _, b in pairs]
        if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
            raise ValueError("partial map must be injective")
        object.__setattr__(self, "pairs", pairs)


def _forced_center_map(
    model: DendriteModel, sources: list[int], targets: list[int]
) -> dict[int, int] | None:
    """Extend a point correspondence to center closures; centers of matching
    triples must correspond.  None when the extension is inconsistent."""
    forced = {}
    for a, b in zip(sources, targets):
        if forced.get(a, b) != b:
            return None
        forced[a] = b
    for i, j, k in itertools.combinations(range(len(sources)), 3):
        ctr = center(model, sources[i], sources[j], sources[k])
        ctr2 = center(model, targets[i], targets[j], targets[k])
        if forced.get(ctr, ctr2) != ctr2:
            return None
        forced[ctr] = ctr2
    values = list(forced.values())
    if len(set(values)) != len(values):
        return None
    return forced


def _respects_betweenness(model: DendriteModel, forced: dict[int, int]) -> bool:
    points = sorted(forced)
    for a, b, c in itertools.permutations(points, 3):
        if between(model, a, b, c) != between(model, forced[a], forced[b], forced[c]):
            return False
    return True


def extend_partial(
    model: DendriteModel,
    coloring: Coloring,
    group: PermGroup,
    partial: PartialMap,
    node_cap: int = DEFAULT_NODE_CAP,
) -> Automorphism | None:
    """Search for a full automorphism extending the partial map whose every
    local action lies in the group; None when the search exhausts.

    Backtracks over the local action at each branch vertex, breadth-first from
    the domain's center closure outward, candidates in lexicographic order.
    """
    if not partial.pairs:
        raise ValueError("partial map must be nonempty")
    for a, b in partial.pairs:
        if not (model.is_branch(a) and model.is_branch(b)):
            raise ValueError("partial map must relate branch vertices")
    sources = [a for a, _ in partial.pairs]
    targets = [b for _, b in partial.pairs]
    forced = _forced_center_map(model, sources, targets)
    if forced is None or not _respects_betweenness(model, forced):
        raise BetweennessViolation("partial map is not a partial dendrite morphism")

    elements = closure(group)
    seeds = center_closure(model, sources)

    # Agenda: branch vertices in BFS order from the domain closure.  Interior
    # vertices of a tree are branch vertices, so by the time a vertex is
    # reached its image is already pinned by its predecessor's local action.
    agenda = list(seeds)
    seen = set(seeds)
    head = 0
    bfs = list(seeds)
    while head < len(bfs):
        v = bfs[head]
        head += 1
        for u in model.neighbors[v]:
            if u not in seen:
                seen.add(u)
                bfs.append(u)
                if model.is_branch(u):
                    agenda.append(u)

    vertex_map = dict(forced)
    used = set(vertex_map.values())
    expansions = 0

    def candidates_at(w: int) -> list[Perm]:
        w2 = vertex_map[w]
        constraint: dict[int, int] = {}
        _, step = model._tables()
        for v, v2 in vertex_map.items():
            if v == w:
                continue
            k = coloring.color_toward(w, step[w][v])
            k2 = coloring.color_toward(w2, step[w2][v2])
            if constraint.get(k, k2) != k2:
                return []
            constraint[k] = k2
        return [g for g in elements if all(g(k) == k2 for k, k2 in constraint.items())]

    def assign_neighbors(w: int, gamma: Perm) -> list[int] | None:
        """Pin images of w's neighbors through gamma; returns the vertices
        newly assigned (for undo), or None on conflict."""
        w2 = vertex_map[w]
        added = []
        for u in model.neighbors[w]:
            k = coloring.color_toward(w, u)
            u2 = coloring.direction_with_color(w2, gamma(k)).via
            if u in vertex_map:
                if vertex_map[u] != u2:
                    for v in added:
                        used.discard(vertex_map[v])
                        del vertex_map[v]
                    return None
            elif u2 in used or model.kinds[u] != model.kinds[u2]:
                for v in added:
                    used.discard(vertex_map[v])
                    del vertex_map[v]
                return None
            else:
                vertex_map[u] = u2
                used.add(u2)
                added.append(u)
        return added

    def search(idx: int) -> Automorphism | None:
        nonlocal expansions
        if idx == len(agenda):
            return Automorphism(model, [vertex_map[v] for v in range(model.vertex_count)])
        w = agenda[idx]
        for gamma in candidates_at(w):
            expansions += 1
            if expansions > node_cap:
                raise BudgetExceeded(f"extension search exceeded {node_cap} expansions")
            added = assign_neighbors(w, gamma)
            if added is None:
                continue
            result = search(idx + 1)
            if result is not None:
                return result
            for v in added:
                used.discard(vertex_map[v])
                del vertex_map[v]
        return None

    return search(0)


def _closure_order(model: DendriteModel, entries: tuple[int, ...]):
    """Closure points in canonical order: tuple entries first, then centers by
    the lexicographically first index triple that creates them.  Also returns
    the triple -> closure index map."""
    order = list(entries)
    position = {v: i for i, v in enumerate(entries)}
    center_map = {}
    for i, j, k in itertools.combinations(range(len(entries)), 3):
        ctr = center(model, entries[i], entries[j], entries[k])
        if ctr not in position:
            position[ctr] = len(order)
            order.append(ctr)
        center_map[(i, j, k)] = position[ctr]
    return order, center_map


def same_orbit(
    model: DendriteModel,
    coloring: Coloring,
    group: PermGroup,
    first: tuple[int, ...],
    second: tuple[int, ...],
) -> bool:
    """Orbit equivalence of two branch-vertex tuples under the ambient group
    acting on the full dendrite (the parametrized-orbit criterion).

    The forced bijection between center closures must be a partial dendrite
    morphism, and at each closure point some closure element of the local
    group must match the color tuple toward all other closure points.
    """
    first = tuple(first)
    second = tuple(second)
    if len(set(first)) != len(first) or len(set(second)) != len(second):
        raise ValueError("tuple entries must be distinct")
    for v in itertools.chain(first, second):
        if not model.is_branch(v):
            raise ValueError(f"vertex {v} is not a branch vertex")
    if len(first) != len(second):
        return False
    order1, centers1 = _closure_order(model, first)
    order2, centers2 = _closure_order(model, second)
    if len(order1) != len(order2):
        return False
    if centers1 != centers2:
        return False
    if len(set(order2)) != len(order2):
        return False
    pairs = dict(zip(order1, order2))
    if not _respects_betweenness(model, pairs):
        return False
    elements = closure(group)
    _, step = model._tables()
    for p, p2 in zip(order1, order2):
        constraint: dict[int, int] = {}
        ok = True
        for q, q2 in zip(order1, order2):
            if q == p:
                continue
            k = coloring.color_toward(p, step[p][q])
            k2 = coloring.color_toward(p2, step[p2][q2])
            if constraint.get(k, k2) != k2:
                ok = False
                break
            constraint[k] = k2
        if not ok:
            return False
        if not any(all(g(k) == k2 for k, k2 in constraint.items()) for g in elements):
            return False
    return True


def _tuple_signature(
    model: DendriteModel,
    coloring: Coloring,
    elements: tuple[Perm, ...],
    entries: tuple[int, ...],
):
    """Orbit invariant of a tuple: closure shape (center map and betweenness)
    plus the per-point color tuples up to the local group."""
    order, center_map = _closure_order(model, entries)
    size = len(order)
    bet = tuple(
        between(model, order[a], order[b], order[c])
        for a in range(size)
        for b in range(size)
        for c in range(size)
        if a != b and b != c and a != c
    )
    _, step = model._tables()
    labels = []
    for p in order:
        colors = tuple(coloring.color_toward(p, step[p][q]) for q in order if q != p)
        labels.append(min(tuple(g(k) for k in colors) for g in elements))
    return (size, tuple(sorted(center_map.items())), bet, tuple(labels))


def count_orbits(
    model: DendriteModel,
    coloring: Coloring,
    group: PermGroup,
    k: int,
    budget: int = DEFAULT_TUPLE_BUDGET,
) -> int:
    """Number of orbit classes of distinct k-tuples of branch vertices.

    Tuples are bucketed by an invariant signature; within a bucket, classes
    are confirmed pairwise with the orbit criterion.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    branch = model.branch_vertices()
    total = 1
    for i in range(k):
        total *= len(branch) - i
    if total > budget:
        raise BudgetExceeded(f"{total} tuples exceed budget {budget}")
    elements = closure(group)
    classes: dict[tuple, list[tuple[int, ...]]] = {}
    count = 0
    for entries in itertools.permutations(branch, k):
        signature = _tuple_signature(model, coloring, elements, entries)
        reps = classes.setdefault(signature, [])
        if not any(same_orbit(model, coloring, group, entries, rep) for rep in reps):
            reps.append(entries)
            count += 1
    return count


def parse_automorphism(model: DendriteModel, text: str) -> Automorphism:
    """Parse the automorphism format: one `u -> v` line per vertex."""
    images: dict[int, int] = {}
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        parts = [p.strip() for p in ln.split("->")]
        try:
            if len(parts) != 2:
                raise ValueError
            images[int(parts[0])] = int(parts[1])
        except ValueError as exc:
            raise ParseError(f"bad automorphism line {ln!r}") from exc
    if sorted(images) != list(range(model.vertex_count)):
        raise ParseError("automorphism file must map every vertex exactly once")
    try:
        return Automorphism(model, [images[v] for v in range(model.vertex_count)])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_automorphism(auto: Automorphism) -> str:
    return "\n".join(f"{u} -> {v}" for u, v in enumerate(auto.images)) + "\n"

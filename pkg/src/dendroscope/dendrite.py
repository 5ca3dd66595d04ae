"""Finite tree truncations of the order-n Ważewski dendrite.

A model is built by refining a single edge: each level replaces every edge by
a path through one fresh branch vertex, which also receives n-2 fresh leaf
stubs.  Branch vertices have degree exactly n; stubs (degree 1) stand in for
ends.  Regular points are not represented.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .errors import BudgetExceeded, NotCenterClosed, ParseError, SameVertex

BRANCH = "branch"
STUB = "stub"

DEFAULT_EDGE_BUDGET = 100_000


class Direction(NamedTuple):
    """A component of the complement of branch vertex ``at``, named by the
    neighbor ``via`` its edge leads to."""

    at: int
    via: int


class DendriteModel:
    """Immutable tree with kind-tagged vertices and per-vertex creation level."""

    __slots__ = ("n", "depth", "kinds", "neighbors", "levels", "_cache")

    def __init__(self, n, depth, kinds, edges, levels):
        self.n = n
        self.depth = depth
        self.kinds = tuple(kinds)
        self.levels = tuple(levels)
        adjacency = [[] for _ in self.kinds]
        for u, v in edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        self.neighbors = tuple(tuple(sorted(block)) for block in adjacency)
        self._cache: dict = {}
        self._validate()

    def _validate(self):
        v = len(self.kinds)
        e = sum(len(block) for block in self.neighbors) // 2
        if e != v - 1:
            raise ValueError(f"not a tree: {v} vertices, {e} edges")
        for x, kind in enumerate(self.kinds):
            deg = len(self.neighbors[x])
            if kind == BRANCH and deg != self.n:
                raise ValueError(f"branch vertex {x} has degree {deg} != {self.n}")
            if kind == STUB and deg != 1:
                raise ValueError(f"stub {x} has degree {deg} != 1")
        # Connectivity: BFS reach count equals the vertex count.
        seen = [False] * v
        seen[0] = True
        queue = [0]
        reached = 1
        while queue:
            x = queue.pop()
            for y in self.neighbors[x]:
                if not seen[y]:
                    seen[y] = True
                    reached += 1
                    queue.append(y)
        if reached != v:
            raise ValueError("graph is disconnected")

    @property
    def vertex_count(self) -> int:
        return len(self.kinds)

    @property
    def edge_count(self) -> int:
        return len(self.kinds) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in self.neighbors[u] if u < v]

    def is_branch(self, x: int) -> bool:
        return self.kinds[x] == BRANCH

    def branch_vertices(self) -> tuple[int, ...]:
        return tuple(x for x, k in enumerate(self.kinds) if k == BRANCH)

    def stub_vertices(self) -> tuple[int, ...]:
        return tuple(x for x, k in enumerate(self.kinds) if k == STUB)

    def directions_at(self, x: int) -> tuple[Direction, ...]:
        if not self.is_branch(x):
            raise ValueError(f"vertex {x} is not a branch vertex")
        return tuple(Direction(x, via) for via in self.neighbors[x])

    def _tables(self):
        """All-pairs distance and first-step tables (lazy, O(V^2))."""
        cached = self._cache.get("tables")
        if cached is not None:
            return cached
        v = self.vertex_count
        dist = [[-1] * v for _ in range(v)]
        step = [[-1] * v for _ in range(v)]
        for source in range(v):
            drow, srow = dist[source], step[source]
            drow[source] = 0
            srow[source] = source
            queue = [source]
            head = 0
            while head < len(queue):
                x = queue[head]
                head += 1
                for y in self.neighbors[x]:
                    if drow[y] < 0:
                        drow[y] = drow[x] + 1
                        srow[y] = y if x == source else srow[x]
                        queue.append(y)
        self._cache["tables"] = (dist, step)
        return dist, step


def build_model(n: int, depth: int, edge_budget: int = DEFAULT_EDGE_BUDGET) -> DendriteModel:
    """Refine a single edge ``depth`` times; deterministic vertex numbering.

    New vertices are appended level by level, edges processed in sorted order,
    so a depth-d model's vertices form a prefix of the depth-(d+1) model's.
    """
    if not 3 <= n <= 10:
        raise ValueError("n must be in 3..10")
    if not 1 <= depth <= 6:
        raise ValueError("depth must be in 1..6")
    if n**depth > edge_budget:
        raise BudgetExceeded(f"{n}^{depth} edges exceed budget {edge_budget}")
    kinds = [STUB, STUB]
    levels = [0, 0]
    edges = [(0, 1)]
    for level in range(1, depth + 1):
        new_edges = []
        # Normalized (min, max) tuples keep the sort order aligned with each
        # vertex's neighbor order, so numbering embeds across depths.
        for u, v in sorted(edges):
            b = len(kinds)
            kinds.append(BRANCH)
            levels.append(level)
            new_edges.append((u, b))
            new_edges.append((v, b))
            for _ in range(n - 2):
                s = len(kinds)
                kinds.append(STUB)
                levels.append(level)
                new_edges.append((b, s))
        edges = new_edges
    return DendriteModel(n, depth, kinds, edges, levels)


def distance(model: DendriteModel, x: int, y: int) -> int:
    dist, _ = model._tables()
    return dist[x][y]


def path(model: DendriteModel, x: int, y: int) -> list[int]:
    """The unique simple path from x to y, both inclusive."""
    _, step = model._tables()
    out = [x]
    while x != y:
        x = step[x][y]
        out.append(x)
    return out


def between(model: DendriteModel, x: int, y: int, z: int) -> bool:
    """True iff y lies strictly inside the path from x to z."""
    if y == x or y == z:
        return False
    dist, _ = model._tables()
    return dist[x][y] + dist[y][z] == dist[x][z]


def center(model: DendriteModel, x: int, y: int, z: int) -> int:
    """The median of three vertices; with repeats, the repeated vertex."""
    if x == y or x == z:
        return x
    if y == z:
        return y
    dist, step = model._tables()
    k = (dist[x][y] + dist[x][z] - dist[y][z]) // 2
    m = x
    for _ in range(k):
        m = step[m][y]
    return m


def center_closure(model: DendriteModel, vertices: Iterable[int]) -> tuple[int, ...]:
    """The input set plus the centers of all its triples (one pass suffices)."""
    base = sorted(set(vertices))
    if not base:
        raise ValueError("center closure of the empty set")
    closed = set(base)
    for i in range(len(base)):
        for j in range(i + 1, len(base)):
            for k in range(j + 1, len(base)):
                closed.add(center(model, base[i], base[j], base[k]))
    result = tuple(sorted(closed))
    assert _is_center_closed(model, result), "one-pass closure not a fixed point"
    return result


def _is_center_closed(model: DendriteModel, vertices: tuple[int, ...]) -> bool:
    vs = set(vertices)
    ordered = sorted(vs)
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            for k in range(j + 1, len(ordered)):
                if center(model, ordered[i], ordered[j], ordered[k]) not in vs:
                    return False
    return True


def component_of(model: DendriteModel, x: int, y: int) -> Direction:
    """The direction at branch vertex x whose edge starts the path to y."""
    if x == y:
        raise SameVertex(f"component of {x} seen from itself")
    if not model.is_branch(x):
        raise ValueError(f"vertex {x} is not a branch vertex")
    _, step = model._tables()
    return Direction(x, step[x][y])


def components_determined_by(
    model: DendriteModel, vertices: Iterable[int]
) -> list[tuple[int, ...]]:
    """Connected components of the model minus a center-closed vertex set."""
    hole = set(vertices)
    if not hole:
        raise ValueError("component decomposition of the empty set")
    if not _is_center_closed(model, tuple(hole)):
        raise NotCenterClosed(f"{sorted(hole)} is not center-closed")
    seen = set(hole)
    components = []
    for start in range(model.vertex_count):
        if start in seen:
            continue
        block = [start]
        seen.add(start)
        queue = [start]
        while queue:
            x = queue.pop()
            for y in model.neighbors[x]:
                if y not in seen:
                    seen.add(y)
                    block.append(y)
                    queue.append(y)
        components.append(tuple(sorted(block)))
    return components


def parse_model(text: str) -> DendriteModel:
    """Parse the model text format: `n depth` header, `v id kind level` and
    `e u v` lines."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty model file")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"expected header `n depth`, got {lines[0]!r}")
    try:
        n, depth = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}") from exc
    kinds: dict[int, str] = {}
    levels: dict[int, int] = {}
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        try:
            if parts[0] == "v" and len(parts) == 4:
                vid = int(parts[1])
                if parts[2] not in (BRANCH, STUB):
                    raise ParseError(f"unknown vertex kind {parts[2]!r}")
                kinds[vid] = parts[2]
                levels[vid] = int(parts[3])
            elif parts[0] == "e" and len(parts) == 3:
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise ParseError(f"unrecognized line {ln!r}")
        except (ValueError, IndexError) as exc:
            raise ParseError(f"bad line {ln!r}") from exc
    if sorted(kinds) != list(range(len(kinds))):
        raise ParseError("vertex ids must be 0..V-1")
    try:
        return DendriteModel(
            n,
            depth,
            [kinds[i] for i in range(len(kinds))],
            edges,
            [levels[i] for i in range(len(kinds))],
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_model(model: DendriteModel) -> str:
    lines = [f"{model.n} {model.depth}"]
    for x in range(model.vertex_count):
        lines.append(f"v {x} {model.kinds[x]} {model.levels[x]}")
    for u, v in model.edges():
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"

"""Finite permutation groups on [n] given by generators.

Closure is computed by plain breadth-first multiplication (no Schreier-Sims;
degrees up to about 12 are the target).  All orderings are lexicographic on
one-line image sequences so that results are deterministic.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import BudgetExceeded, CapExceeded, ParseError

DEFAULT_ELEMENT_CAP = 100_000
DEFAULT_TUPLE_BUDGET = 1_000_000


class Perm:
    """A permutation of [n], stored as its image sequence.

    ``p.images[i]`` is the image of point ``i``.  Instances are immutable and
    ordered lexicographically by image sequence.
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of [{len(images)}]: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, *_):
        raise AttributeError("Perm is immutable")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles, n: int) -> "Perm":
        """Build a permutation of [n] from a list of cycles (point lists)."""
        images = list(range(n))
        for cycle in cycles:
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"repeated point in cycle {cycle}")
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                if not 0 <= a < n:
                    raise ValueError(f"point {a} outside [{n}]")
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        # (p * q)(i) = p(q(i)): apply q first.
        return Perm(self.images[i] for i in other.images)

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other: "Perm"):
        return self.images < other.images

    def __repr__(self):
        return f"Perm({list(self.images)})"

    def __str__(self):
        return " ".join(str(i) for i in self.images)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, n: int) -> Perm:
    """Parse a permutation of [n] from cycle or one-line image notation."""
    text = text.strip()
    if not text:
        raise ParseError("empty permutation")
    if "(" in text:
        body = _CYCLE_RE.sub("", text).strip()
        if body:
            raise ParseError(f"stray text {body!r} outside cycles in {text!r}")
        cycles = []
        for group in _CYCLE_RE.findall(text):
            points = [p for p in re.split(r"[,\s]+", group.strip()) if p]
            if not points:
                continue
            try:
                cycles.append([int(p) for p in points])
            except ValueError as exc:
                raise ParseError(f"bad cycle {group!r}") from exc
        try:
            return Perm.from_cycles(cycles, n)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    try:
        images = [int(p) for p in re.split(r"[,\s]+", text) if p]
        if len(images) != n:
            raise ParseError(f"expected {n} images, got {len(images)}")
        return Perm(images)
    except ValueError as exc:
        raise ParseError(f"bad permutation {text!r}") from exc


class PermGroup:
    """A permutation group on [n] given by generators.

    The full closure is computed lazily and cached; it errors with
    ``CapExceeded`` if it grows past ``element_cap``.
    """

    __slots__ = ("degree", "generators", "element_cap", "_cache")

    def __init__(self, degree: int, generators=(), element_cap: int = DEFAULT_ELEMENT_CAP):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        gens = tuple(sorted({g if isinstance(g, Perm) else Perm(g) for g in generators}))
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != {degree}")
        self.degree = degree
        self.generators = gens
        self.element_cap = element_cap
        self._cache: dict = {}

    def __eq__(self, other):
        return (
            isinstance(other, PermGroup)
            and self.degree == other.degree
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.degree, self.generators))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, generators={list(self.generators)})"


def closure(group: PermGroup) -> tuple[Perm, ...]:
    """The subgroup generated by ``group.generators``, sorted lexicographically."""
    cached = group._cache.get("closure")
    if cached is not None:
        return cached
    identity = Perm.identity(group.degree)
    elements = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for g in group.generators:
            for h in frontier:
                prod = g * h
                if prod not in elements:
                    elements.add(prod)
                    new.append(prod)
                    if len(elements) > group.element_cap:
                        raise CapExceeded(
                            f"closure exceeded cap {group.element_cap} on degree {group.degree}"
                        )
        frontier = new
    result = tuple(sorted(elements))
    group._cache["closure"] = result
    group._cache["element_set"] = frozenset(elements)
    return result


def order(group: PermGroup) -> int:
    return len(closure(group))


def contains(group: PermGroup, perm: Perm) -> bool:
    closure(group)
    return perm in group._cache["element_set"]


def orbits_on_points(group: PermGroup) -> list[tuple[int, ...]]:
    """The partition of [n] into orbits, each sorted, ordered by least point."""
    cached = group._cache.get("orbits")
    if cached is not None:
        return cached
    seen = [False] * group.degree
    blocks = []
    for start in range(group.degree):
        if seen[start]:
            continue
        block = {start}
        queue = [start]
        seen[start] = True
        while queue:
            x = queue.pop()
            for g in group.generators:
                y = g(x)
                if not seen[y]:
                    seen[y] = True
                    block.add(y)
                    queue.append(y)
        blocks.append(tuple(sorted(block)))
    group._cache["orbits"] = blocks
    return blocks


def is_transitive(group: PermGroup) -> bool:
    return len(orbits_on_points(group)) == 1


def count_orbits_on_tuples(
    group: PermGroup, k: int, distinct: bool = False, budget: int = DEFAULT_TUPLE_BUDGET
) -> int:
    """Number of orbits of the diagonal action on [n]^k (or on distinct k-tuples)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = group.degree
    if n**k > budget:
        raise BudgetExceeded(f"{n}^{k} tuples exceed budget {budget}")
    if distinct:
        space = list(itertools.permutations(range(n), k))
    else:
        space = list(itertools.product(range(n), repeat=k))
    seen = set()
    count = 0
    for start in space:
        if start in seen:
            continue
        count += 1
        queue = [start]
        seen.add(start)
        while queue:
            t = queue.pop()
            for g in group.generators:
                image = tuple(g(x) for x in t)
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
    return count


def _swap_exists(elements, x: int, y: int) -> bool:
    return any(g(x) == y and g(y) == x for g in elements)


def is_generously_transitive(group: PermGroup) -> bool:
    """True iff every pair of points is transposed by some element."""
    elements = closure(group)
    n = group.degree
    return all(
        _swap_exists(elements, x, y) for x in range(n) for y in range(x + 1, n)
    )


def restriction(group: PermGroup, block: tuple[int, ...]) -> PermGroup:
    """The action of the group on an invariant block, reindexed to [len(block)]."""
    index = {point: i for i, point in enumerate(block)}
    gens = []
    for g in group.generators:
        images = [0] * len(block)
        for point in block:
            if g(point) not in index:
                raise ValueError(f"block {block} is not invariant under {g}")
            images[index[point]] = index[g(point)]
        gens.append(Perm(images))
    return PermGroup(len(block), gens, element_cap=group.element_cap)


def is_semi_generous(group: PermGroup) -> bool:
    """True iff the action splits into two orthogonal generously transitive orbits."""
    blocks = orbits_on_points(group)
    if len(blocks) != 2:
        return False
    p_block, q_block = blocks
    if not is_generously_transitive(restriction(group, p_block)):
        return False
    if not is_generously_transitive(restriction(group, q_block)):
        return False
    # Orthogonality: one orbit on the product under the diagonal action.
    elements = closure(group)
    start = (p_block[0], q_block[0])
    reached = {start}
    for g in elements:
        reached.add((g(start[0]), g(start[1])))
    return len(reached) == len(p_block) * len(q_block)


@dataclass(frozen=True)
class Primitivity:
    """Outcome of the primitivity test; falsy when imprimitive or intransitive."""

    primitive: bool
    reason: str | None = None
    blocks: tuple[tuple[int, ...], ...] | None = None

    def __bool__(self) -> bool:
        return self.primitive


def _minimal_blocks(group: PermGroup, x: int) -> list[tuple[int, ...]]:
    """Smallest invariant partition in which 0 and x share a block."""
    n = group.degree
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> bool:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[max(ra, rb)] = min(ra, rb)
        return True

    union(0, x)
    # Naive fixpoint: merged pairs force their generator images to merge.
    changed = True
    while changed:
        changed = False
        reps: dict[int, int] = {}
        for point in range(n):
            r = find(point)
            if r in reps:
                for g in group.generators:
                    if union(g(point), g(reps[r])):
                        changed = True
            else:
                reps[r] = point
    blocks: dict[int, list[int]] = {}
    for point in range(n):
        blocks.setdefault(find(point), []).append(point)
    return [tuple(b) for b in sorted(blocks.values())]


def is_primitive(group: PermGroup) -> Primitivity:
    """Primitivity of a transitive group; intransitive input is flagged, not an error."""
    if not is_transitive(group):
        return Primitivity(False, reason="intransitive")
    n = group.degree
    for x in range(1, n):
        blocks = _minimal_blocks(group, x)
        if 1 < len(blocks) < n:
            return Primitivity(False, reason="invariant-partition", blocks=tuple(blocks))
    return Primitivity(True)


def _point_signature(group: PermGroup) -> list[tuple[int, int]]:
    """Per-point (orbit size, point-stabilizer order); conjugation-invariant."""
    elements = closure(group)
    blocks = orbits_on_points(group)
    orbit_size = {}
    for block in blocks:
        for point in block:
            orbit_size[point] = len(block)
    return [
        (orbit_size[x], sum(1 for g in elements if g(x) == x))
        for x in range(group.degree)
    ]


def perm_groups_isomorphic(g: PermGroup, h: PermGroup) -> Perm | None:
    """A bijection f of [n] with f g f^-1 = h, or None.

    Backtracking over point images, pruned by per-point orbit sizes and
    stabilizer orders.
    """
    if g.degree != h.degree:
        return None
    if len(closure(g)) != len(closure(h)):
        return None
    n = g.degree
    sig_g = _point_signature(g)
    sig_h = _point_signature(h)
    if sorted(sig_g) != sorted(sig_h):
        return None
    candidates = [
        [y for y in range(n) if sig_h[y] == sig_g[x]] for x in range(n)
    ]
    h_set = set(closure(h))

    def conjugates_in(f_images: list[int]) -> bool:
        f = Perm(f_images)
        f_inv = f.inverse()
        return all(f * gamma * f_inv in h_set for gamma in g.generators)

    def search(pos: int, images: list[int], used: set[int]) -> Perm | None:
        if pos == n:
            return Perm(images) if conjugates_in(images) else None
        for y in candidates[pos]:
            if y in used:
                continue
            images.append(y)
            used.add(y)
            found = search(pos + 1, images, used)
            if found is not None:
                return found
            images.pop()
            used.remove(y)
        return None

    return search(0, [], set())


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, [Perm.from_cycles([list(range(n))], n)])


def symmetric_group(n: int) -> PermGroup:
    gens = [Perm.from_cycles([[0, 1]], n)] if n >= 2 else []
    if n >= 3:
        gens.append(Perm.from_cycles([list(range(n))], n))
    return PermGroup(n, gens)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup(n, [])
    if n % 2 == 1:
        gens = [Perm.from_cycles([[0, 1, 2]], n), Perm.from_cycles([list(range(n))], n)]
    else:
        gens = [Perm.from_cycles([[0, 1, 2]], n), Perm.from_cycles([list(range(1, n))], n)]
    return PermGroup(n, gens)


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of the regular n-gon on vertices 0..n-1 in cyclic order."""
    rotation = Perm.from_cycles([list(range(n))], n)
    reflection = Perm([(-i) % n for i in range(n)])
    return PermGroup(n, [rotation, reflection])


def trivial_group(n: int) -> PermGroup:
    return PermGroup(n, [])


def group_catalog(n: int) -> dict[str, PermGroup]:
    """Named test groups on [n], deterministic order, for 3 <= n <= 8."""
    if not 3 <= n <= 8:
        raise ValueError("catalog covers 3 <= n <= 8")
    catalog: dict[str, PermGroup] = {
        "trivial": trivial_group(n),
        "cyclic": cyclic_group(n),
        "symmetric": symmetric_group(n),
        "transposition": PermGroup(n, [Perm.from_cycles([[0, 1]], n)]),
    }
    if n >= 4:
        catalog["dihedral"] = dihedral_group(n)
        catalog["alternating"] = alternating_group(n)
    else:
        catalog["dihedral"] = dihedral_group(3)  # equals symmetric(3); kept for the n-gon action
    if n == 4:
        catalog["semi-generous"] = PermGroup(
            4, [Perm.from_cycles([[0, 1]], 4), Perm.from_cycles([[2, 3]], 4)]
        )
        catalog["klein"] = PermGroup(
            4,
            [Perm.from_cycles([[0, 1], [2, 3]], 4), Perm.from_cycles([[0, 2], [1, 3]], 4)],
        )
    if n == 5:
        catalog["sym2xsym3"] = PermGroup(
            5,
            [
                Perm.from_cycles([[0, 1]], 5),
                Perm.from_cycles([[2, 3]], 5),
                Perm.from_cycles([[2, 3, 4]], 5),
            ],
        )
        catalog["cyc2xcyc3"] = PermGroup(
            5, [Perm.from_cycles([[0, 1]], 5), Perm.from_cycles([[2, 3, 4]], 5)]
        )
    return catalog


def parse_group(text: str, element_cap: int = DEFAULT_ELEMENT_CAP) -> PermGroup:
    """Parse the group text format: `n=DEGREE` header, one generator per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty group file")
    header = lines[0].replace(" ", "")
    if not header.startswith("n="):
        raise ParseError(f"expected header n=DEGREE, got {lines[0]!r}")
    try:
        n = int(header[2:])
    except ValueError as exc:
        raise ParseError(f"bad degree in header {lines[0]!r}") from exc
    gens = [parse_perm(ln, n) for ln in lines[1:]]
    return PermGroup(n, gens, element_cap=element_cap)


def format_group(group: PermGroup) -> str:
    """Serialize a group: header plus one generator per line in image notation."""
    lines = [f"n={group.degree}"]
    lines.extend(str(g) for g in group.generators)
    return "\n".join(lines) + "\n"

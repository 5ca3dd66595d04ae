"""Alternating integer cochains on [n], coboundaries, invariant cocycle
spaces, the generosity obstruction, and the lift of a local cocycle to stub
triples of a model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .coloring import Coloring, color_from
from .dendrite import DendriteModel, center
from .errors import BudgetExceeded, ParseError
from .kgroup import Automorphism
from .permgroup import (
    PermGroup,
    closure,
    is_generously_transitive,
    is_semi_generous,
    restriction,
)

DEFAULT_QUAD_BUDGET = 10_000_000


def _sort_with_sign(entries):
    """Sort a tuple, tracking the permutation sign; sign 0 on repeats."""
    entries = list(entries)
    sign = 1
    for i in range(1, len(entries)):
        j = i
        while j > 0 and entries[j - 1] > entries[j]:
            entries[j - 1], entries[j] = entries[j], entries[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(entries, entries[1:]):
        if a == b:
            return entries, 0
    return entries, sign


class Cochain1:
    """Alternating integer 1-cochain on [n], stored on pairs i < j."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: dict[tuple[int, int], int] | None = None):
        self.n = n
        self.values = {}
        for (i, j), v in (values or {}).items():
            if not 0 <= i < j < n:
                raise ValueError(f"pair ({i}, {j}) is not increasing in [{n}]")
            if v:
                self.values[(i, j)] = v

    def __call__(self, i: int, j: int) -> int:
        if i == j:
            return 0
        if i < j:
            return self.values.get((i, j), 0)
        return -self.values.get((j, i), 0)

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other):
        return isinstance(other, Cochain1) and self.n == other.n and self.values == other.values


class Cochain2:
    """Alternating integer 2-cochain on [n], stored on triples i < j < k."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: dict[tuple[int, int, int], int] | None = None):
        self.n = n
        self.values = {}
        for (i, j, k), v in (values or {}).items():
            if not 0 <= i < j < k < n:
                raise ValueError(f"triple ({i}, {j}, {k}) is not increasing in [{n}]")
            if v:
                self.values[(i, j, k)] = v

    def __call__(self, i: int, j: int, k: int) -> int:
        order, sign = _sort_with_sign((i, j, k))
        if sign == 0:
            return 0
        return sign * self.values.get(tuple(order), 0)

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other):
        return isinstance(other, Cochain2) and self.n == other.n and self.values == other.values


def coboundary0(n: int, gamma) -> Cochain1:
    """Coboundary of a 0-cochain [n] -> Z given as a sequence."""
    return Cochain1(n, {(i, j): gamma[j] - gamma[i] for i, j in itertools.combinations(range(n), 2)})


def coboundary1(beta: Cochain1) -> Cochain2:
    """(d beta)(x, y, z) = beta(y, z) - beta(x, z) + beta(x, y)."""
    n = beta.n
    values = {}
    for x, y, z in itertools.combinations(range(n), 3):
        values[(x, y, z)] = beta(y, z) - beta(x, z) + beta(x, y)
    return Cochain2(n, values)


@dataclass(frozen=True)
class CocycleCheck:
    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_cocycle2(omega: Cochain2, budget: int = DEFAULT_QUAD_BUDGET) -> CocycleCheck:
    """Check d(omega) = 0 on every quadruple of [n]; witness on failure."""
    n = omega.n
    if n**4 > budget:
        raise BudgetExceeded(f"{n}^4 quadruples exceed budget {budget}")
    for w, x, y, z in itertools.product(range(n), repeat=4):
        if omega(x, y, z) - omega(w, y, z) + omega(w, x, z) - omega(w, x, y) != 0:
            return CocycleCheck(False, (w, x, y, z))
    return CocycleCheck(True)


def is_invariant(chain, group: PermGroup) -> bool:
    """Invariance of a cochain under the diagonal action of the group."""
    if group.degree != chain.n:
        raise ValueError(f"group degree {group.degree} != cochain degree {chain.n}")
    for g in group.generators:
        for key, value in chain.values.items():
            if chain(*(g(i) for i in key)) != value:
                return False
    return True


def _invariant_cocycle_system(n: int, group: PermGroup):
    triples = list(itertools.combinations(range(n), 3))
    index = {t: pos for pos, t in enumerate(triples)}
    rows = []
    for g in group.generators:
        for t in triples:
            row = [0] * len(triples)
            order, sign = _sort_with_sign(tuple(g(i) for i in t))
            row[index[tuple(order)]] += sign
            row[index[t]] -= 1
            if any(row):
                rows.append(row)
    for w, x, y, z in itertools.combinations(range(n), 4):
        row = [0] * len(triples)
        row[index[(x, y, z)]] += 1
        row[index[(w, y, z)]] -= 1
        row[index[(w, x, z)]] += 1
        row[index[(w, x, y)]] -= 1
        rows.append(row)
    return triples, rows


def cocycle_space_basis(n: int, group: PermGroup) -> list[Cochain2]:
    """Integer basis of the alternating invariant 2-cocycles on [n].

    Boundedness is vacuous for finite n, so this is the whole cocycle group.
    """
    if n > 8:
        raise BudgetExceeded("cocycle space computed for n <= 8 only")
    if group.degree != n:
        raise ValueError(f"group degree {group.degree} != {n}")
    triples, rows = _invariant_cocycle_system(n, group)
    basis = linalg.null_space(rows, len(triples))
    return [
        Cochain2(n, {t: v for t, v in zip(triples, vec) if v}) for vec in basis
    ]


def cocycle_space_rank(n: int, group: PermGroup) -> int:
    return len(cocycle_space_basis(n, group))


def _pair_orbit(group: PermGroup, p: int, q: int) -> set[tuple[int, int]]:
    return {(g(p), g(q)) for g in closure(group)}


def _swappable(group: PermGroup, p: int, q: int) -> bool:
    return any(g(p) == q and g(q) == p for g in closure(group))


def _delta_from_pair(group: PermGroup, p: int, q: int) -> Cochain1:
    """+1 on the orbit of (p, q), -1 on the orbit of (q, p), 0 elsewhere."""
    n = group.degree
    forward = _pair_orbit(group, p, q)
    values = {}
    for i, j in itertools.combinations(range(n), 2):
        if (i, j) in forward:
            values[(i, j)] = 1
        elif (j, i) in forward:
            values[(i, j)] = -1
    return Cochain1(n, values)


def _relation_witness(delta: Cochain1) -> tuple[int, int, int] | None:
    """Lexicographically first (x, y, z) with delta(x,y) != delta(x,z) + delta(z,y)."""
    n = delta.n
    for x, y, z in itertools.product(range(n), repeat=3):
        if delta(x, y) != delta(x, z) + delta(z, y):
            return (x, y, z)
    return None


def generosity_coboundary(group: PermGroup):
    """The generosity obstruction: a pairing delta in {0, +-1} whose coboundary
    is non-zero, plus a witness triple; None exactly when the group is
    generously transitive or semi-generous.

    Follows the constructive argument: pick a non-swappable pair, build the
    orbit pairing, and hunt for a violated triangle relation; if none exists
    the relation forces a two-orbit split, and re-choosing the pair inside the
    non-generous orbit is guaranteed to produce a violation.
    """
    if is_generously_transitive(group) or is_semi_generous(group):
        return None
    n = group.degree
    p, q = next(
        (a, b)
        for a, b in itertools.combinations(range(n), 2)
        if not _swappable(group, a, b)
    )
    delta = _delta_from_pair(group, p, q)
    witness = _relation_witness(delta)
    if witness is not None:
        return delta, witness
    # The relation holds everywhere: it splits [n] into the points reached
    # from p and the points that reach q, two orthogonal orbits.
    q_side = tuple(z for z in range(n) if delta(p, z) == 1)
    p_side = tuple(z for z in range(n) if delta(z, q) == 1)
    target = None
    for side in (p_side, q_side):
        if not is_generously_transitive(restriction(group, side)):
            target = side
            break
    assert target is not None, "both sides generous would make the group semi-generous"
    p, q = next(
        (a, b)
        for a, b in itertools.combinations(target, 2)
        if not _swappable(group, a, b)
    )
    delta = _delta_from_pair(group, p, q)
    witness = _relation_witness(delta)
    assert witness is not None, "re-chosen pair must violate the relation"
    return delta, witness


class OmegaEvaluator:
    """The lift of a local 2-cocycle to stub triples of a model: evaluate the
    cocycle on the three direction colors at the triple's center."""

    __slots__ = ("model", "coloring", "omega", "_memo")

    def __init__(self, model: DendriteModel, coloring: Coloring, omega: Cochain2):
        if omega.n != model.n:
            raise ValueError(f"cocycle degree {omega.n} != model order {model.n}")
        self.model = model
        self.coloring = coloring
        self.omega = omega
        self._memo: dict[tuple[int, int, int], int] = {}

    def __call__(self, xi: int, eta: int, zeta: int) -> int:
        order, sign = _sort_with_sign((xi, eta, zeta))
        if sign == 0:
            return 0
        key = tuple(order)
        base = self._memo.get(key)
        if base is None:
            for v in key:
                if self.model.kinds[v] != "stub":
                    raise ValueError(f"vertex {v} is not a stub")
            a = center(self.model, *key)
            base = self.omega(
                color_from(self.model, self.coloring, a, key[0]),
                color_from(self.model, self.coloring, a, key[1]),
                color_from(self.model, self.coloring, a, key[2]),
            )
            self._memo[key] = base
        return sign * base


def build_omega(model: DendriteModel, coloring: Coloring, omega: Cochain2) -> OmegaEvaluator:
    return OmegaEvaluator(model, coloring, omega)


@dataclass(frozen=True)
class OmegaCheck:
    ok: bool
    witness: tuple | None = None
    kind: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_omega(
    model: DendriteModel,
    coloring: Coloring,
    omega: Cochain2,
    members: tuple[Automorphism, ...] = (),
    budget: int = DEFAULT_QUAD_BUDGET,
) -> OmegaCheck:
    """Exhaustively check that the lifted cochain is a cocycle on ordered stub
    quadruples, and that it is unchanged by the supplied member automorphisms.
    """
    if not is_cocycle2(omega):
        raise ValueError("the input 2-cochain is not a cocycle")
    stubs = model.stub_vertices()
    count = len(stubs) * (len(stubs) - 1) * (len(stubs) - 2) * (len(stubs) - 3)
    if count > budget:
        raise BudgetExceeded(f"{count} stub quadruples exceed budget {budget}")
    lifted = build_omega(model, coloring, omega)
    for quad in itertools.permutations(stubs, 4):
        w, x, y, z = quad
        if lifted(x, y, z) - lifted(w, y, z) + lifted(w, x, z) - lifted(w, x, y) != 0:
            return OmegaCheck(False, quad, "cocycle")
    for auto in members:
        for triple in itertools.permutations(stubs, 3):
            mapped = tuple(auto(v) for v in triple)
            if lifted(*mapped) != lifted(*triple):
                return OmegaCheck(False, triple, "invariance")
    return OmegaCheck(True)


def parse_cochain2(text: str) -> Cochain2:
    """Parse the cochain format: `n=DEGREE` header, then `i j k value` lines."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty cochain file")
    header = lines[0].replace(" ", "")
    if not header.startswith("n="):
        raise ParseError(f"expected header n=DEGREE, got {lines[0]!r}")
    try:
        n = int(header[2:])
    except ValueError as exc:
        raise ParseError(f"bad degree in header {lines[0]!r}") from exc
    values = {}
    for ln in lines[1:]:
        parts = ln.split()
        try:
            if len(parts) != 4:
                raise ValueError
            i, j, k, v = (int(p) for p in parts)
        except ValueError as exc:
            raise ParseError(f"bad cochain line {ln!r}") from exc
        if not i < j < k:
            raise ParseError(f"triple in line {ln!r} must be increasing")
        values[(i, j, k)] = v
    try:
        return Cochain2(n, values)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_cochain2(omega: Cochain2) -> str:
    lines = [f"n={omega.n}"]
    for (i, j, k), v in sorted(omega.values.items()):
        lines.append(f"{i} {j} {k} {v}")
    return "\n".join(lines) + "\n"

import itertools

import pytest

from dendroscope.coloring import random_coloring, root_vertex, uniform_coloring
from dendroscope.dendrite import build_model
from dendroscope.errors import (
    BetweennessViolation,
    BudgetExceeded,
    NoColorIsomorphism,
)
from dendroscope.kgroup import (
    Automorphism,
    PartialMap,
    count_orbits,
    extend_partial,
    format_automorphism,
    is_member,
    local_action,
    local_action_profile,
    parse_automorphism,
    same_orbit,
    split_gamma,
)
from dendroscope.permgroup import (
    Perm,
    closure,
    cyclic_group,
    symmetric_group,
    trivial_group,
)
from dendroscope.coloring import color_from


@pytest.fixture(scope="module")
def m32():
    return build_model(3, 2)


@pytest.fixture(scope="module")
def uni32(m32):
    return uniform_coloring(m32)


def test_automorphism_validation(m32):
    with pytest.raises(ValueError):
        Automorphism(m32, [0] * m32.vertex_count)
    kind_breaking = list(range(m32.vertex_count))
    kind_breaking[0], kind_breaking[2] = 2, 0  # stub <-> branch
    with pytest.raises(ValueError):
        Automorphism(m32, kind_breaking)
    adjacency_breaking = list(range(m32.vertex_count))
    adjacency_breaking[0], adjacency_breaking[1] = 1, 0
    with pytest.raises(ValueError):
        Automorphism(m32, adjacency_breaking)


def test_local_action_identity(m32):
    col = random_coloring(m32, 7)
    identity = Automorphism.identity(m32)
    for x in m32.branch_vertices():
        assert local_action(m32, col, identity, x).is_identity()


def test_split_profile(m32, uni32):
    group = symmetric_group(3)
    root = root_vertex(m32)
    gamma = Perm.from_cycles([[0, 2]], 3)
    auto = split_gamma(m32, uni32, group, root, gamma)
    profile = local_action_profile(m32, uni32, auto)
    assert profile[root] == gamma
    for x, p in profile.items():
        if x != root:
            assert p.is_identity()


def test_split_identity_gamma(m32, uni32):
    auto = split_gamma(m32, uni32, symmetric_group(3), root_vertex(m32), Perm.identity(3))
    assert auto == Automorphism.identity(m32)


def test_split_requires_membership(m32, uni32):
    with pytest.raises(ValueError):
        split_gamma(m32, uni32, cyclic_group(3), root_vertex(m32), Perm.from_cycles([[0, 1]], 3))


def test_split_no_color_isomorphism_on_generic_coloring(m32):
    col = random_coloring(m32, 7)
    with pytest.raises(NoColorIsomorphism) as err:
        split_gamma(m32, col, symmetric_group(3), root_vertex(m32), Perm.from_cycles([[0, 1, 2]], 3))
    assert isinstance(err.value.direction, int)


def test_split_homomorphism(m32, uni32):
    group = cyclic_group(3)
    root = root_vertex(m32)
    sections = {g: split_gamma(m32, uni32, group, root, g) for g in closure(group)}
    for a, b in itertools.product(closure(group), repeat=2):
        assert sections[a] * sections[b] == sections[a * b]


def test_cocycle_identity_sampled(m32, uni32):
    group = symmetric_group(3)
    root = root_vertex(m32)
    autos = [split_gamma(m32, uni32, group, root, g) for g in closure(group)]
    extra = autos[1] * autos[2]
    for g, h in itertools.product(autos[:4] + [extra], repeat=2):
        for x in m32.branch_vertices():
            assert local_action(m32, uni32, g * h, x) == local_action(
                m32, uni32, g, h(x)
            ) * local_action(m32, uni32, h, x)
            assert local_action(m32, uni32, g, x).inverse() == local_action(
                m32, uni32, g.inverse(), g(x)
            )


def test_member_identity_and_full_group(m32, uni32):
    identity = Automorphism.identity(m32)
    assert is_member(m32, uni32, trivial_group(3), identity)
    swap = split_gamma(m32, uni32, symmetric_group(3), root_vertex(m32), Perm.from_cycles([[0, 1]], 3))
    assert is_member(m32, uni32, symmetric_group(3), swap)


def test_member_witness(m32, uni32):
    swap = split_gamma(m32, uni32, symmetric_group(3), root_vertex(m32), Perm.from_cycles([[0, 1]], 3))
    verdict = is_member(m32, uni32, cyclic_group(3), swap)
    assert not verdict
    assert verdict.vertex == root_vertex(m32)
    assert verdict.action == Perm.from_cycles([[0, 1]], 3)


def test_member_group_property(m32, uni32):
    group = cyclic_group(3)
    root = root_vertex(m32)
    autos = [split_gamma(m32, uni32, group, root, g) for g in closure(group)]
    for a, b in itertools.product(autos, repeat=2):
        assert is_member(m32, uni32, group, a * b)
        assert is_member(m32, uni32, group, a.inverse())


def test_extend_identity_forced(m32):
    col = random_coloring(m32, 3)
    auto = extend_partial(m32, col, trivial_group(3), PartialMap([(2, 2)]))
    assert auto == Automorphism.identity(m32)


def test_extend_mirror_swap(m32, uni32):
    auto = extend_partial(m32, uni32, symmetric_group(3), PartialMap([(4, 6), (6, 4)]))
    assert auto is not None
    assert auto(4) == 6 and auto(6) == 4
    assert is_member(m32, uni32, symmetric_group(3), auto)
    assert same_orbit(m32, uni32, symmetric_group(3), (4, 6), (6, 4))


def test_extend_betweenness_violation(m32):
    col = random_coloring(m32, 3)
    with pytest.raises(BetweennessViolation):
        extend_partial(m32, col, symmetric_group(3), PartialMap([(4, 4), (2, 8), (6, 6)]))


def test_extend_exhausts_under_trivial_group(m32):
    # Moving a vertex while the local action must stay trivial cannot work
    # unless the coloring happens to be symmetric; a generic one is not.
    col = random_coloring(m32, 7)
    assert extend_partial(m32, col, trivial_group(3), PartialMap([(4, 6)])) is None


def test_extend_budget(m32, uni32):
    with pytest.raises(BudgetExceeded):
        extend_partial(m32, uni32, symmetric_group(3), PartialMap([(4, 6), (6, 4)]), node_cap=1)


def test_partial_map_injective():
    with pytest.raises(ValueError):
        PartialMap([(2, 4), (2, 6)])
    with pytest.raises(ValueError):
        PartialMap([(2, 4), (6, 4)])


def test_same_orbit_reflexive(m32):
    col = random_coloring(m32, 1)
    branch = m32.branch_vertices()
    for pair in itertools.permutations(branch, 2):
        assert same_orbit(m32, col, trivial_group(3), pair, pair)


def test_same_orbit_rejects_repeats(m32):
    col = random_coloring(m32, 1)
    with pytest.raises(ValueError):
        same_orbit(m32, col, trivial_group(3), (2, 2), (2, 4))


def test_same_orbit_shape_mismatch(m32):
    col = random_coloring(m32, 1)
    assert not same_orbit(m32, col, trivial_group(3), (2,), (2, 4))


def test_same_orbit_transitive_pairs():
    model = build_model(3, 3)
    col = random_coloring(model, 6)
    group = cyclic_group(3)
    branch = model.branch_vertices()
    pairs = list(itertools.permutations(branch, 2))
    for second in pairs[::17]:
        assert same_orbit(model, col, group, pairs[0], second)


def test_same_orbit_trivial_group_color_criterion():
    model = build_model(3, 3)
    col = random_coloring(model, 6)
    group = trivial_group(3)
    branch = model.branch_vertices()
    pairs = list(itertools.permutations(branch, 2))[::7]
    for first in pairs:
        for second in pairs:
            expected = (
                color_from(model, col, first[0], first[1]),
                color_from(model, col, first[1], first[0]),
            ) == (
                color_from(model, col, second[0], second[1]),
                color_from(model, col, second[1], second[0]),
            )
            assert same_orbit(model, col, group, first, second) == expected


def test_count_orbits_matches_naive_union_find():
    model = build_model(3, 2)
    col = random_coloring(model, 6)
    branch = model.branch_vertices()
    for group in (trivial_group(3), cyclic_group(3), symmetric_group(3)):
        for k in (1, 2):
            tuples = list(itertools.permutations(branch, k))
            classes: list[tuple] = []
            for t in tuples:
                if not any(same_orbit(model, col, group, t, rep) for rep in classes):
                    classes.append(t)
            assert count_orbits(model, col, group, k) == len(classes)


def test_count_orbits_examples():
    model = build_model(3, 3)
    col = random_coloring(model, 6)
    assert count_orbits(model, col, cyclic_group(3), 1) == 1
    assert count_orbits(model, col, cyclic_group(3), 2) == 1
    assert count_orbits(model, col, trivial_group(3), 2) == 9


def test_count_orbits_budget():
    model = build_model(3, 3)
    col = random_coloring(model, 6)
    with pytest.raises(BudgetExceeded):
        count_orbits(model, col, trivial_group(3), 3, budget=10)


def test_automorphism_round_trip(m32, uni32):
    auto = split_gamma(m32, uni32, symmetric_group(3), root_vertex(m32), Perm.from_cycles([[1, 2]], 3))
    assert parse_automorphism(m32, format_automorphism(auto)) == auto

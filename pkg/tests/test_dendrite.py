import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dendroscope.dendrite import (
    BRANCH,
    STUB,
    DendriteModel,
    between,
    build_model,
    center,
    center_closure,
    component_of,
    components_determined_by,
    distance,
    format_model,
    parse_model,
    path,
)
from dendroscope.errors import BudgetExceeded, NotCenterClosed, ParseError, SameVertex


def counts_by_recurrence(n, depth):
    edges, branch, stubs = 1, 0, 2
    for _ in range(depth):
        branch += edges
        stubs += (n - 2) * edges
        edges *= n
    return edges, branch, stubs


@pytest.mark.parametrize("n,depth", [(3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (5, 2), (6, 1)])
def test_build_counts_match_recurrence(n, depth):
    model = build_model(n, depth)
    edges, branch, stubs = counts_by_recurrence(n, depth)
    assert model.edge_count == edges
    assert len(model.branch_vertices()) == branch
    assert len(model.stub_vertices()) == stubs
    for x in model.branch_vertices():
        assert len(model.neighbors[x]) == n
    for x in model.stub_vertices():
        assert len(model.neighbors[x]) == 1


def test_build_examples():
    m = build_model(3, 1)
    assert (len(m.branch_vertices()), len(m.stub_vertices()), m.edge_count) == (1, 3, 3)
    m = build_model(3, 2)
    assert (len(m.branch_vertices()), len(m.stub_vertices()), m.edge_count) == (4, 6, 9)
    m = build_model(4, 2)
    assert (len(m.branch_vertices()), len(m.stub_vertices()), m.edge_count) == (5, 12, 16)


def test_build_is_prefix_stable():
    shallow = build_model(3, 2)
    deep = build_model(3, 3)
    assert deep.kinds[: shallow.vertex_count] == shallow.kinds
    assert deep.levels[: shallow.vertex_count] == shallow.levels


def test_build_budget():
    with pytest.raises(BudgetExceeded):
        build_model(10, 6)
    with pytest.raises(ValueError):
        build_model(2, 1)


def test_path():
    m = build_model(3, 2)
    assert path(m, 0, 0) == [0]
    assert path(m, 2, 4) == [2, 4]
    # Opposite stubs: 5 vertices through 3 branch vertices.
    walk = path(m, 0, 1)
    assert len(walk) == 5
    assert [m.kinds[v] for v in walk[1:-1]] == [BRANCH] * 3


def test_path_symmetry_exhaustive():
    m = build_model(3, 2)
    for x, y in itertools.combinations(range(m.vertex_count), 2):
        assert path(m, x, y) == list(reversed(path(m, y, x)))


def test_between():
    m = build_model(3, 2)
    assert not between(m, 0, 0, 1)
    assert between(m, 0, 4, 2)
    for x, y, z in itertools.product(range(m.vertex_count), repeat=3):
        assert between(m, x, y, z) == between(m, z, y, x)


def test_center_star():
    m = build_model(3, 1)
    assert center(m, 0, 1, 3) == 2
    assert center(m, 0, 0, 3) == 0
    assert center(m, 2, 0, 1) == 2  # on the path


def test_center_path_intersection_oracle():
    m = build_model(3, 3)
    for x, y, z in itertools.combinations(range(0, m.vertex_count, 3), 3):
        common = set(path(m, x, y)) & set(path(m, y, z)) & set(path(m, z, x))
        assert common == {center(m, x, y, z)}


def test_center_lies_on_all_paths():
    m = build_model(3, 2)
    for x, y, z in itertools.combinations(range(m.vertex_count), 3):
        c = center(m, x, y, z)
        assert c in path(m, x, y) and c in path(m, y, z) and c in path(m, z, x)


@settings(max_examples=60)
@given(st.data())
def test_center_repeats(data):
    m = build_model(3, 2)
    v = st.integers(0, m.vertex_count - 1)
    x, z = data.draw(v), data.draw(v)
    assert center(m, x, x, z) == x
    assert center(m, x, z, z) == z


def test_center_closure_small_sets():
    m = build_model(3, 2)
    assert center_closure(m, [4]) == (4,)
    assert center_closure(m, [0, 1]) == (0, 1)
    assert center_closure(m, [0, 1, 3]) == (0, 1, 2, 3)


def test_center_closure_fixpoint_oracle():
    m = build_model(3, 3)
    import random

    rng = random.Random(5)
    branch = m.branch_vertices()
    for _ in range(25):
        start = set(rng.sample(branch, 4))
        # Oracle: iterate adding centers until nothing changes.
        grown = set(start)
        while True:
            added = {
                center(m, a, b, c)
                for a, b, c in itertools.combinations(sorted(grown), 3)
            }
            if added <= grown:
                break
            grown |= added
        assert center_closure(m, start) == tuple(sorted(grown))


def test_component_of():
    m = build_model(3, 1)
    assert component_of(m, 2, 0).via == 0
    # Vertices on the same side give the same direction.
    deep = build_model(3, 2)
    assert component_of(deep, 2, 0) == component_of(deep, 2, 4)
    assert component_of(deep, 2, 0) != component_of(deep, 2, 1)
    with pytest.raises(SameVertex):
        component_of(m, 2, 2)
    with pytest.raises(ValueError):
        component_of(m, 0, 2)


def test_components_single_branch_vertex():
    m = build_model(3, 2)
    parts = components_determined_by(m, [2])
    assert parts == [(0, 4, 5), (1, 6, 7), (3, 8, 9)]


def test_components_all_branch_vertices():
    m = build_model(3, 2)
    parts = components_determined_by(m, m.branch_vertices())
    assert parts == [(v,) for v in m.stub_vertices()]


def test_components_adjacent_pair_empty_strip():
    m = build_model(3, 2)
    parts = components_determined_by(m, [2, 4])
    assert len(parts) == 4  # 2(n-1) subtrees, empty strip omitted


def test_components_nonempty_strip():
    m = build_model(3, 3)
    parts = components_determined_by(m, [2, 4])
    assert len(parts) == 5
    assert (14,) in parts  # the strip between the two


def test_components_requires_center_closed():
    m = build_model(3, 2)
    with pytest.raises(NotCenterClosed):
        components_determined_by(m, [0, 1, 3])


def test_components_count_formula():
    import random

    m = build_model(3, 3)
    rng = random.Random(11)
    branch = m.branch_vertices()
    for _ in range(20):
        hole = set(center_closure(m, rng.sample(branch, 3)))
        parts = components_determined_by(m, hole)
        # Every vertex appears exactly once across the hole and the parts.
        covered = sorted(v for block in parts for v in block) + sorted(hole)
        assert sorted(covered) == list(range(m.vertex_count))
        adjacency = {
            f: sum(
                1
                for g in hole
                if g != f and all(z not in hole for z in path(m, f, g)[1:-1])
            )
            for f in hole
        }
        strips = sum(
            1
            for f, g in itertools.combinations(sorted(hole), 2)
            if all(z not in hole for z in path(m, f, g)[1:-1])
            and distance(m, f, g) > 1
        )
        expected = sum(len(m.neighbors[f]) - adjacency[f] for f in hole) + strips
        assert len(parts) == expected


def test_model_round_trip():
    m = build_model(4, 2)
    again = parse_model(format_model(m))
    assert again.kinds == m.kinds
    assert again.neighbors == m.neighbors
    assert again.levels == m.levels


def test_parse_model_errors():
    with pytest.raises(ParseError):
        parse_model("")
    with pytest.raises(ParseError):
        parse_model("3\nv 0 stub 0")
    with pytest.raises(ParseError):
        parse_model("3 1\nv 0 weird 0\ne 0 1")


def test_model_rejects_wrong_degrees():
    DendriteModel(3, 0, [STUB, STUB], [(0, 1)], [0, 0])  # a bare edge is fine
    with pytest.raises(ValueError):
        DendriteModel(3, 0, [BRANCH, STUB], [(0, 1)], [0, 0])
    with pytest.raises(ValueError):
        DendriteModel(3, 1, [STUB, STUB, STUB, BRANCH], [(0, 3), (1, 3), (2, 3), (0, 1)], [0] * 4)

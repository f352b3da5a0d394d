import pytest
from hypothesis import given, settings

from jumpnum.errors import EmptySet, MalformedProximity, NotATree
from jumpnum.graph import (
    ProximityTable,
    build_constellation,
    distance,
    distances,
    inverse_proximity,
    validate_proximity,
)

from helpers import blowup_table, constellations, five_points, three_points
from oracles import all_distances, intersection_matrix, matmul, matrix_inverse, proximity_matrix


def table(n, mapping):
    return ProximityTable.from_mapping(n, mapping)


def test_two_free_points_on_the_first_curve():
    c = build_constellation(table(3, {2: [1], 3: [1]}))
    assert c.p == ((1, 0, 0), (-1, 1, 0), (-1, 0, 1))
    assert c.q == ((1, 0, 0), (1, 1, 0), (1, 0, 1))
    assert c.graph.edges() == [(1, 2), (1, 3)]
    assert c.graph.weights == (3, 1, 1)


def test_single_blowup():
    c = build_constellation(table(1, {}))
    assert c.p == ((1,),) and c.q == ((1,),)
    assert c.graph.edges() == []
    assert c.weight(1) == 1 and c.valence(1) == 0


def test_free_chain():
    prox = {2: [1], 3: [2]}
    c = build_constellation(table(3, prox))
    expected_q = matrix_inverse(proximity_matrix(3, prox))
    assert [list(r) for r in c.q] == expected_q == [[1, 0, 0], [1, 1, 0], [1, 1, 1]]
    assert c.graph.edges() == [(1, 2), (2, 3)]
    assert c.graph.weights == (2, 2, 1)


def test_satellite_point():
    # 3 lies on E_1 and E_2, so the edge 1-2 is replaced by 1-3-2
    c = build_constellation(table(3, {2: [1], 3: [1, 2]}))
    assert c.graph.edges() == [(1, 3), (2, 3)]
    assert c.graph.weights == (3, 2, 1)
    assert c.q == ((1, 0, 0), (1, 1, 0), (2, 1, 1))


def test_proximate_points():
    c = five_points().c
    assert c.proximate_points(1) == (2, 3, 4, 5)
    assert c.proximate_points(2) == ()


@pytest.mark.parametrize(
    "n, mapping",
    [
        (2, {}),  # point 2 proximate to nothing
        (2, {2: [2]}),  # not an earlier point
        (3, {2: [1], 3: [1, 1]}),
        (4, {2: [1], 3: [2], 4: [1, 2, 3]}),
    ],
)
def test_malformed_tables(n, mapping):
    with pytest.raises(MalformedProximity):
        validate_proximity(table(n, mapping))


def test_satellite_needs_the_two_curves_to_meet():
    # 4 proximate to 1 and 3, but 3 is not proximate to 1
    with pytest.raises(MalformedProximity) as info:
        build_constellation(table(4, {2: [1], 3: [2], 4: [1, 3]}))
    assert info.value.point == 4


def test_point_one_cannot_be_proximate():
    with pytest.raises(MalformedProximity):
        validate_proximity(ProximityTable(2, ((1,), (1,))))


def test_not_a_tree():
    # after 3 (on E_1 and E_2) the curves E_1 and E_2 are separated, so a
    # point on both of them again does not exist
    with pytest.raises((NotATree, MalformedProximity)):
        build_constellation(table(4, {2: [1], 3: [1, 2], 4: [1, 2]}))


def test_three_points_on_one_curve_meet_too_often():
    # 2, 3 on E_1 and 4 proximate to 1 and 2: fine; 5 proximate to 1 and 2
    # again would need E_1 and E_2 to still meet
    with pytest.raises((NotATree, MalformedProximity)):
        build_constellation(table(5, {2: [1], 3: [1], 4: [1, 2], 5: [1, 2]}))


def test_matrix_round_trip():
    t = five_points().c.prox
    assert ProximityTable.from_matrix(t.matrix()) == t


def test_distance_examples():
    g = five_points().c.graph
    assert distance(g, 4, {1, 2, 3}) == 1
    assert distance(g, 2, {1, 2, 3}) == 0
    chain = build_constellation(table(3, {2: [1], 3: [2]})).graph
    assert distance(chain, 3, {1}) == 2
    assert distances(chain, {1}) == {1: 0, 2: 1, 3: 2}
    with pytest.raises(EmptySet):
        distance(chain, 1, set())


def test_path_and_connectivity():
    g = five_points().c.graph
    assert g.path(2, 5) == [2, 1, 5]
    assert g.is_connected_set({1, 2})
    assert not g.is_connected_set({2, 3})
    assert not g.is_connected_set(set())
    assert g.is_star(1) and not g.is_star(2)
    assert g.is_end(4) and not three_points().c.graph.is_end(1)


@settings(max_examples=150, deadline=None)
@given(constellations(max_n=9))
def test_q_is_the_inverse(data):
    c, _ = data
    assert [list(r) for r in c.q] == matrix_inverse(c.p)
    assert c.q == inverse_proximity(c.prox)


@settings(max_examples=150, deadline=None)
@given(constellations(max_n=9))
def test_graph_matches_the_blowup_history(data):
    c, edges = data
    assert set(c.graph.edges()) == edges
    icm = intersection_matrix([list(r) for r in c.p])
    assert [list(r) for r in c.icm] == icm
    assert all(w >= 1 for w in c.graph.weights)
    # the last point of every branch has self-intersection -1
    assert c.graph.weights[-1] == 1


@settings(max_examples=100, deadline=None)
@given(constellations(max_n=9))
def test_weights_count_proximate_points(data):
    c, _ = data
    for v in range(1, c.n + 1):
        assert c.weight(v) == 1 + len(c.proximate_points(v))


@settings(max_examples=100, deadline=None)
@given(constellations(max_n=9, min_n=2))
def test_distances_agree_with_floyd_warshall(data):
    c, edges = data
    g = c.graph
    dist = all_distances(c.n, edges)
    for s in ({1}, {c.n}, {1, c.n}):
        got = distances(g, s)
        for v in range(1, c.n + 1):
            assert got[v] == min(dist[v - 1][t - 1] for t in s) == distance(g, v, s)


def test_blowup_helper_tracks_satellites():
    t, edges = blowup_table([1, (1, 2), 3])
    assert edges == {(1, 3), (2, 3), (3, 4)}
    c = build_constellation(t)
    assert set(c.graph.edges()) == edges
    assert matmul([list(r) for r in c.p], [list(r) for r in c.q]) == [
        [int(i == j) for j in range(4)] for i in range(4)
    ]

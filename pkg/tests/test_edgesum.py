import pytest
from hypothesis import given

from conftest import multigraphs
from w4struct.edgesum import (Leaf, Node, compose, compose_with_maps, decompose, decompose_forest,
                              forest_from_json, forest_to_json, leaves, recompose, recompose_forest,
                              split, tree_from_json, tree_to_json)
from w4struct.flows import enumerate_internal_cuts
from w4struct.generators import complete, cycle, doubled_cycle, path, wall, wheel
from w4struct.immersion import W4, verify_model
from w4struct.invariance import (FAILS, HOLDS, attach_hub, check_invariance, default_pairing,
                                 search_t4_witness, t4_witness)
from w4struct.multigraph import GraphError, Multigraph, is_isomorphic

PRISM = Multigraph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)))


def _stubs(g, hub):
    return list(g.incidence[hub])


def test_compose_order_one():
    g = compose(path(3), 2, path(3), 2, [(1, 1)])
    assert is_isomorphic(g, path(4))


def test_compose_order_two():
    d = Multigraph(2, ((0, 1), (0, 1)))
    g = compose(d, 1, d, 1, [(0, 0), (1, 1)])
    assert g == d


def test_compose_order_three_gives_prism():
    k4 = complete(4)
    pi = list(zip(_stubs(k4, 3), _stubs(k4, 3)))
    g = compose(k4, 3, k4, 3, pi)
    assert g.n == 6 and g.m == 9
    assert is_isomorphic(g, PRISM)


def test_compose_maps_and_stub_edges():
    k4 = complete(4)
    pi = list(zip(_stubs(k4, 3), _stubs(k4, 3)))
    c = compose_with_maps(k4, 3, k4, 3, pi)
    assert c.left_map == {0: 0, 1: 1, 2: 2}
    assert c.right_map == {0: 3, 1: 4, 2: 5}
    assert sorted(c.graph.edges[e] for e in c.stub_edges) == [(0, 3), (1, 4), (2, 5)]


def test_compose_rejects_bad_pairings():
    k4 = complete(4)
    s = _stubs(k4, 3)
    with pytest.raises(GraphError):
        compose(k4, 3, k4, 3, list(zip(s, s))[:2])
    with pytest.raises(GraphError):
        compose(k4, 3, k4, 3, [(s[0], s[0]), (s[0], s[1]), (s[2], s[2])])
    with pytest.raises(GraphError):
        compose(k4, 3, k4, 3, [(0, s[0]), (s[1], s[1]), (s[2], s[2])])
    with pytest.raises(GraphError):
        compose(k4, 3, k4, 3, [])


def test_split_bridge_of_path():
    parts = split(path(5), [1])
    assert is_isomorphic(parts.g1, path(3)) and is_isomorphic(parts.g2, path(4))
    assert parts.split.left_vertices == (0, 1) and parts.split.right_vertices == (2, 3, 4)
    assert parts.v1 == 2 and parts.v2 == 3
    assert parts.split.internal


def test_split_order_four():
    g = doubled_cycle(4)
    cut = g.cut_edges([0, 1])
    assert len(cut) == 4
    parts = split(g, cut)
    assert parts.split.t == 4
    assert parts.g1.degree(parts.v1) == 4 and parts.g2.degree(parts.v2) == 4
    back = compose(parts.g1, parts.v1, parts.g2, parts.v2, parts.pi)
    assert is_isomorphic(back, g)


def test_split_errors():
    with pytest.raises(GraphError):
        split(path(5), [1, 2])  # not minimal
    with pytest.raises(GraphError):
        split(path(5), [0])  # one side is a single vertex
    assert not split(path(5), [0], allow_trivial=True).split.internal
    with pytest.raises(GraphError):
        split(path(5), [17])


def test_decompose_examples():
    assert isinstance(decompose(doubled_cycle(6)), Leaf)
    assert isinstance(decompose(complete(4)), Leaf)
    tree = decompose(path(5))
    assert isinstance(tree, Node)
    got = leaves(tree)
    assert len(got) == 3 and all(is_isomorphic(p, path(3)) for p in got)
    with pytest.raises(GraphError):
        decompose(Multigraph(2, ()))


def test_decompose_smallest_order_first():
    # two K4s joined by two edges; the order-2 cut is taken before any order-3 cut
    g = complete(4).disjoint_union(complete(4)).add_edges([(0, 4), (1, 5)])
    tree = decompose(g)
    assert isinstance(tree, Node) and tree.split.t == 2


def test_leaves_are_prime():
    for g in [wall(3), wheel(6), doubled_cycle(5), path(7), cycle(8), PRISM]:
        for p in leaves(decompose(g)):
            assert not enumerate_internal_cuts(p, 3)


def test_recompose_is_exact():
    for g in [wall(3), wheel(6), path(7), PRISM, complete(4).disjoint_union(cycle(4)).add_edges([(0, 4)])]:
        assert recompose(decompose(g)) == g


def test_tree_json_round_trip():
    tree = decompose(wall(3))
    assert tree_from_json(tree_to_json(tree)) == tree
    with pytest.raises(GraphError):
        tree_from_json({"t": 1})
    with pytest.raises(GraphError):
        tree_from_json({"prime": "not a graph"})


def test_forest_round_trip():
    g = path(4).disjoint_union(complete(4))
    forest = decompose_forest(g)
    assert len(forest.components) == 2
    assert recompose_forest(forest) == g
    assert forest_from_json(forest_to_json(forest)) == forest
    bare = forest_from_json(tree_to_json(decompose(path(5))))
    assert recompose_forest(bare) == path(5)
    with pytest.raises(GraphError):
        forest_from_json({"components": [{"vertices": [0]}], "vertex_count": 1})


@given(multigraphs(min_n=1, max_n=8, max_m=14, connected=True))
def test_decompose_recompose_round_trip(g):
    tree = decompose(g)
    assert recompose(tree) == g
    assert sum(p.n for p in leaves(tree)) >= g.n


@given(multigraphs(min_n=4, max_n=8, max_m=14, connected=True))
def test_split_compose_round_trip(g):
    cuts = enumerate_internal_cuts(g, 3)
    for cut in cuts[:3]:
        parts = split(g, cut)
        back = compose(parts.g1, parts.v1, parts.g2, parts.v2, parts.pi)
        order = list(parts.split.left_vertices) + list(parts.split.right_vertices)
        assert back.relabel(order) == g


# -- invariance ---------------------------------------------------------------


def test_invariance_prism():
    k4 = complete(4)
    pi = list(zip(_stubs(k4, 3), _stubs(k4, 3)))
    rep = check_invariance(k4, 3, k4, 3, pi)
    assert rep.t == 3 and rep.internal
    assert (rep.w4_left, rep.w4_right, rep.w4_composed) == (False, False, False)
    assert rep.verdict == HOLDS and rep.lemma_ok


def test_invariance_part_with_w4():
    left = attach_hub(complete(5), [0, 1])
    right = attach_hub(cycle(3), [0, 0])
    rep = check_invariance(left.graph, left.hub, right.graph, right.hub, default_pairing(left, right))
    assert rep.w4_left is True and rep.w4_right is False
    assert rep.w4_composed is True and rep.verdict == HOLDS
    assert rep.composed_model is not None and verify_model(rep.composed, W4, rep.composed_model)


def test_invariance_order_four_may_hold():
    g = doubled_cycle(6)
    parts = split(g, g.cut_edges([0, 1, 2]))
    rep = check_invariance(parts.g1, parts.v1, parts.g2, parts.v2, parts.pi)
    assert rep.t == 4 and rep.verdict == HOLDS and rep.lemma == []


def test_t4_witness_breaks_equivalence():
    left, right, pi = t4_witness()
    rep = check_invariance(left.graph, left.hub, right.graph, right.hub, pi)
    assert rep.t == 4 and rep.internal
    assert (rep.w4_left, rep.w4_right, rep.w4_composed) == (False, False, True)
    assert rep.verdict == FAILS
    assert is_isomorphic(rep.composed, W4)
    assert verify_model(rep.composed, W4, rep.composed_model)


def test_witness_search_finds_one():
    res = search_t4_witness()
    assert res.status == "found"
    w = res.witness
    assert w.report.verdict == FAILS
    assert verify_model(w.report.composed, W4, w.report.composed_model)


def test_witness_search_below_order_four_finds_nothing():
    res = search_t4_witness(max_n=4, max_body_m=4, t=3)
    assert res.status == "complete" and res.witness is None

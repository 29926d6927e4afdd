import pytest

from stable_pc import SkeletonConfig, run_pc_stable
from stable_pc.core import AdjacencyMatrix
from stable_pc.exceptions import DataError, PreconditionError
from stable_pc.orient import MixedGraph, apply_meek_rules, find_v_structures, orient
from stable_pc.sepsets import SeparationSets


def test_collider_oriented():
    skeleton = AdjacencyMatrix.from_edges(3, [(0, 2), (1, 2)])
    g = orient(skeleton, SeparationSets([((0, 1), ())]))
    assert g.directed == {(0, 2), (1, 2)}
    assert g.undirected == frozenset()


def test_middle_node_in_sepset_stays_undirected():
    skeleton = AdjacencyMatrix.from_edges(3, [(0, 2), (1, 2)])
    g = orient(skeleton, SeparationSets([((0, 1), (2,))]))
    assert g.directed == frozenset()
    assert g.undirected == {(0, 2), (1, 2)}


def test_triangle_has_no_unshielded_triple():
    g = orient(AdjacencyMatrix.complete(3), SeparationSets())
    assert g.directed == frozenset()
    assert len(g.undirected) == 3


def test_empty_skeleton():
    g = orient(AdjacencyMatrix.from_edges(4, []), SeparationSets())
    assert g.skeleton_pairs() == set()


def test_missing_sepset_is_an_error():
    skeleton = AdjacencyMatrix.from_edges(3, [(0, 2), (1, 2)])
    with pytest.raises(DataError):
        find_v_structures(skeleton, SeparationSets())


def test_conflicting_votes_left_undirected():
    skeleton = AdjacencyMatrix.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    sepsets = SeparationSets([((0, 2), ()), ((1, 3), ()), ((0, 3), ())])
    g = find_v_structures(skeleton, sepsets)
    assert g.directed == {(0, 1), (3, 2)}
    assert g.undirected == {(1, 2)}


def test_rule_one():
    g = apply_meek_rules(MixedGraph(3, frozenset({(0, 1)}), frozenset({(1, 2)})))
    assert g.directed == {(0, 1), (1, 2)}


def test_rule_two():
    g = apply_meek_rules(MixedGraph(3, frozenset({(0, 1), (1, 2)}), frozenset({(0, 2)})))
    assert g.directed == {(0, 1), (1, 2), (0, 2)}


def test_rule_three():
    # a - c -> b, a - d -> b, c and d nonadjacent, a - b
    a, b, c, d = 0, 1, 2, 3
    g = MixedGraph(4, frozenset({(c, b), (d, b)}), frozenset({(a, c), (a, d), (a, b)}))
    out = apply_meek_rules(g)
    assert (a, b) in out.directed


def test_no_directed_edges_is_fixed_point():
    g = MixedGraph(3, frozenset(), frozenset({(0, 1), (1, 2)}))
    assert apply_meek_rules(g) == g


def test_mixed_graph_validation():
    with pytest.raises(PreconditionError):
        MixedGraph(2, frozenset({(0, 1), (1, 0)}))
    with pytest.raises(PreconditionError):
        MixedGraph(2, frozenset({(0, 1)}), frozenset({(1, 0)}))
    with pytest.raises(PreconditionError):
        MixedGraph(2, frozenset({(0, 2)}))


def test_four_node_cpdag(four_node_correlation):
    result = run_pc_stable(four_node_correlation, 10000, SkeletonConfig(workers=1))
    g = orient(result.skeleton, result.sepsets)
    assert g.directed == {(1, 0), (2, 0), (0, 3)}
    assert g.undirected == frozenset()


def test_meek_idempotent_and_skeleton_preserving():
    edges = [(0, 1), (1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (2, 5)]
    skeleton = AdjacencyMatrix.from_edges(6, edges)
    sepsets = SeparationSets()
    for i in range(6):
        for j in range(i + 1, 6):
            if (i, j) not in edges:
                sepsets.store(i, j, ())
    g = find_v_structures(skeleton, sepsets)
    once = apply_meek_rules(g)
    assert apply_meek_rules(once) == once
    assert once.skeleton_pairs() == set(edges)
    assert g.directed <= once.directed

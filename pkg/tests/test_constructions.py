"""Extremal constructions: counts, freeness and regularity."""
import pytest

from bergeforest.berge import contains
from bergeforest.constructions import (
    BadParameters,
    CollidingShifts,
    ConstructionReport,
    OddTotal,
    build,
    check_connected_claim,
    clique_blocks,
    hhat,
    hstar,
    htilde,
    partition_regular,
)
from bergeforest.hypergraph import is_connected


class TestHstar:
    def test_small(self):
        rep = hstar(9, 2, 2, 3)
        assert rep.hypergraph.e == rep.predicted_count == 4
        assert contains(rep.hypergraph, "P2+S2") is None

    def test_single_class(self):
        assert hstar(5, 3, 3, 3).hypergraph.e == 10

    def test_formula(self):
        assert hstar(10, 3, 2, 3).hypergraph.e == 12

    def test_tree_target(self):
        rep = hstar(9, 3, 2, 3, tree="T:0-1,1-2,1-3")
        assert contains(rep.hypergraph, rep.freeness_target) is None

    def test_bad(self):
        with pytest.raises(BadParameters):
            hstar(9, 2, 1, 3)


class TestHhat:
    def test_free(self):
        rep = hhat(20, 3, 2, 2, 6)
        assert rep.hypergraph.e == 3
        assert contains(rep.hypergraph, "P3+S2") is None

    def test_single_and_empty(self):
        assert hhat(7, 3, 2, 2, 6).hypergraph.e == 1
        assert hhat(6, 3, 2, 2, 6).hypergraph.e == 0


class TestHtilde:
    def test_two_paths(self):
        rep = htilde(8, [3, 3], 3)
        assert rep.hypergraph.e == 16
        assert is_connected(rep.hypergraph)
        assert check_connected_claim(rep)

    def test_graph_case(self):
        assert htilde(6, [1, 1], 2).hypergraph.e == 5

    def test_odd(self):
        with pytest.raises(OddTotal):
            htilde(8, [3, 2], 3)


class TestCliqueBlocks:
    def test_counts(self):
        rep = clique_blocks(8, 4, 3)
        assert rep.hypergraph.e == 8
        assert contains(rep.hypergraph, "P4") is None
        assert clique_blocks(9, 4, 3).hypergraph.e == 8
        assert clique_blocks(6, 2, 3).hypergraph.e == 0


class TestPartitionRegular:
    def test_cyclic(self):
        rep = partition_regular(6, 3, 2)
        assert rep.hypergraph.edge_sets() == [(0, 1, 2), (0, 4, 5), (1, 2, 3), (3, 4, 5)]
        assert set(rep.hypergraph.degrees()) == {2}

    def test_cyclic_collision(self):
        with pytest.raises(CollidingShifts):
            partition_regular(4, 2, 3)

    def test_greedy_decomposes_k4(self):
        rep = partition_regular(4, 2, 3, method="greedy")
        assert rep.hypergraph.e == 6
        assert set(rep.hypergraph.degrees()) == {3}
        assert contains(rep.hypergraph, "S4") is None

    def test_divisibility(self):
        with pytest.raises(BadParameters):
            partition_regular(5, 3, 1)


class TestReports:
    def test_round_trip(self):
        rep = htilde(8, [3, 3], 3)
        back = ConstructionReport.from_dict(rep.to_dict())
        assert back.hypergraph == rep.hypergraph
        assert back.freeness_target == rep.freeness_target
        assert set(rep.to_dict()) == {"family", "params", "in_regime", "predicted_count", "hypergraph",
                                      "freeness_target"}

    def test_build(self):
        assert build("clique-blocks", {"n": 8, "l": 4, "r": 3}).hypergraph.e == 8
        with pytest.raises(BadParameters):
            build("nope", {})
        with pytest.raises(BadParameters):
            build("hstar", {"n": 9})

"""Hypergraph value type, serialization and the proof-machinery helpers."""
import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergeforest.hypergraph import (
    BadIntersectionSize,
    DuplicateEdge,
    Hypergraph,
    HypergraphError,
    TargetTooLarge,
    VertexOutOfRange,
    WrongEdgeSize,
    complete,
    is_connected,
    link,
    new,
    shrink_edges,
    trace,
)


@st.composite
def hypergraphs(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    r = draw(st.integers(1, n))
    pool = list(itertools.combinations(range(n), r))
    edges = draw(st.lists(st.sampled_from(pool), unique=True, max_size=8))
    return new(n, r, edges)


class TestNew:
    def test_single_edge(self):
        h = new(3, 3, [{0, 1, 2}])
        assert h.e == 1
        assert h.edge_sets() == [(0, 1, 2)]

    def test_duplicate(self):
        with pytest.raises(DuplicateEdge):
            new(3, 3, [{0, 1, 2}, {0, 1, 2}])

    def test_out_of_range(self):
        with pytest.raises(VertexOutOfRange):
            new(4, 3, [{0, 1, 4}])

    def test_wrong_size(self):
        with pytest.raises(WrongEdgeSize):
            new(4, 3, [{0, 1}])

    def test_edges_sorted_lexicographically(self):
        h = new(5, 2, [{3, 4}, {0, 4}, {0, 1}, {1, 2}])
        assert h.edge_sets() == [(0, 1), (0, 4), (1, 2), (3, 4)]

    def test_degrees(self):
        h = new(5, 3, [{0, 1, 2}, {0, 3, 4}])
        assert h.degrees() == [2, 1, 1, 1, 1]
        assert h.degree(0) == 2

    def test_complete(self):
        assert complete(5, 3).e == 10
        assert complete(6, 3, vertices=[0, 1, 2, 3]).e == 4


class TestSerialization:
    def test_round_trip(self):
        h = new(6, 3, [{0, 1, 2}, {2, 3, 4}])
        assert Hypergraph.from_json(h.to_json()) == h

    def test_format(self):
        h = new(4, 2, [{2, 3}, {0, 1}])
        assert json.loads(h.to_json()) == {"n": 4, "r": 2, "edges": [[0, 1], [2, 3]]}

    def test_rejects_unsorted_rows(self):
        with pytest.raises(HypergraphError, match=r"edges\[0\]"):
            Hypergraph.from_dict({"n": 4, "r": 2, "edges": [[1, 0]]})

    def test_rejects_unsorted_edges(self):
        with pytest.raises(HypergraphError, match=r"edges\[1\]"):
            Hypergraph.from_dict({"n": 4, "r": 2, "edges": [[2, 3], [0, 1]]})

    def test_missing_field(self):
        with pytest.raises(HypergraphError):
            Hypergraph.from_dict({"n": 4, "edges": []})

    @given(hypergraphs())
    @settings(max_examples=60)
    def test_round_trip_property(self, h):
        assert Hypergraph.from_dict(json.loads(h.to_json())) == h


class TestLink:
    def test_center(self):
        h = new(5, 3, [{0, 1, 2}, {0, 3, 4}])
        assert link(h, 0).edge_sets() == [(1, 2), (3, 4)]

    def test_degree_one_vertex(self):
        h = new(5, 3, [{0, 1, 2}, {0, 3, 4}])
        assert link(h, 1).edge_sets() == [(0, 2)]

    def test_complete(self):
        assert link(complete(4, 3), 0).e == 3

    def test_bad_vertex(self):
        with pytest.raises(VertexOutOfRange):
            link(complete(4, 3), 7)


class TestConnectivity:
    def test_complete(self):
        assert is_connected(complete(4, 3))

    def test_two_components(self):
        assert not is_connected(new(6, 3, [{0, 1, 2}, {3, 4, 5}]))

    def test_shared_vertex(self):
        assert is_connected(new(5, 3, [{0, 1, 2}, {2, 3, 4}]))

    def test_isolated_vertex(self):
        assert not is_connected(new(4, 3, [{0, 1, 2}]))

    def test_trivial(self):
        assert is_connected(new(1, 1, []))
        assert not is_connected(new(3, 3, []))


class TestTrace:
    def test_exact_intersection(self):
        h = new(5, 3, [{0, 1, 2}, {0, 1, 3}, {2, 3, 4}])
        res = trace(h, {0, 1}, 2)
        assert res.deduplicated.edge_sets() == [(2,), (3,)]
        assert res.multiplicities == (1, 1)

    def test_multiplicity(self):
        h = new(4, 3, [{0, 2, 3}, {1, 2, 3}])
        res = trace(h, {0, 1}, 1)
        assert res.deduplicated.edge_sets() == [(2, 3)]
        assert res.multiplicities == (2,)

    def test_disjoint_anchor(self):
        h = new(6, 3, [{0, 1, 2}])
        assert trace(h, {4, 5}, 1).deduplicated.e == 0

    def test_bad_j(self):
        with pytest.raises(BadIntersectionSize):
            trace(complete(4, 3), {0, 1}, 3)

    @given(hypergraphs(), st.data())
    @settings(max_examples=60)
    def test_multiplicity_bound(self, h, data):
        if h.r < 2:
            return
        anchor = data.draw(st.sets(st.integers(0, h.n - 1), min_size=1, max_size=h.n))
        j = data.draw(st.integers(1, min(h.r - 1, len(anchor))))
        res = trace(h, anchor, j)
        from math import comb
        assert all(m <= comb(len(anchor), j) for m in res.multiplicities)
        assert sum(res.multiplicities) == sum(1 for e in h.edge_sets() if len(set(e) & anchor) == j)


class TestShrink:
    def test_drop_forbidden(self):
        g, sat = shrink_edges(new(4, 4, [{0, 1, 2, 3}]), {0}, 3)
        assert g.edge_sets() == [(1, 2, 3)]
        assert sat == []

    def test_lexicographic_choice(self):
        g, _ = shrink_edges(new(5, 5, [{0, 1, 2, 3, 4}]), {0}, 3)
        assert g.edge_sets() == [(1, 2, 3)]

    def test_saturated(self):
        g, sat = shrink_edges(new(5, 4, [{0, 1, 2, 3}, {1, 2, 3, 4}]), {0, 4}, 3)
        assert g.edge_sets() == [(1, 2, 3)]
        assert sat == [1]

    def test_target_too_large(self):
        with pytest.raises(TargetTooLarge):
            shrink_edges(new(4, 3, [{0, 1, 2}]), {0}, 3)

    @given(hypergraphs(max_n=6))
    @settings(max_examples=60)
    def test_injective_subsets(self, h):
        g, sat = shrink_edges(h, set(), max(1, h.r - 1))
        assert g.e + len(sat) == h.e
        kept = [i for i in range(h.e) if i not in sat]
        assert len(set(g.edges)) == len(kept)

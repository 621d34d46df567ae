"""Augmenting-path bipartite matching."""
import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from bergeforest.matching import has_perfect_left, max_matching


def brute_size(rows):
    best = 0
    for k in range(len(rows), 0, -1):
        for lefts in itertools.combinations(range(len(rows)), k):
            for rights in itertools.permutations(range(8), k):
                if all(rows[l] >> r & 1 for l, r in zip(lefts, rights)):
                    return k
    return best


class TestMatching:
    def test_empty(self):
        assert max_matching([]) == {}

    def test_perfect(self):
        m = max_matching([0b011, 0b001, 0b110])
        assert len(m) == 3
        assert len(set(m.values())) == 3

    def test_deficient(self):
        ok, m = has_perfect_left([0b1, 0b1])
        assert not ok
        assert len(m) == 1

    def test_warm_start_is_kept_valid(self):
        m = max_matching([0b11, 0b01], seed={0: 0})
        assert m == {0: 1, 1: 0}

    @given(st.lists(st.integers(0, 31), max_size=5))
    @settings(max_examples=150)
    def test_maximum_against_brute_force(self, rows):
        m = max_matching(rows)
        for l, r in m.items():
            assert rows[l] >> r & 1
        assert len(set(m.values())) == len(m)
        assert len(m) == brute_size(rows)

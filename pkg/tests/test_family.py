"""Forest family DSL: parsing, normalization and skeleton graphs."""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bergeforest.family import (
    FamilySpec,
    FamilySyntaxError,
    MultiEdge,
    Loop,
    NotATree,
    Path,
    Star,
    ZeroSize,
    matching,
    parse,
    skeleton_graph,
    to_string,
)


class TestParse:
    def test_mixed(self):
        spec = parse("P3+2S2+M2")
        assert spec.components == (Path(3), Star(2), Star(2), Path(1), Path(1))
        assert spec.size == 9

    def test_explicit_tree(self):
        spec = parse("T:0-1,1-2,1-3")
        (comp,) = spec.components
        assert comp.size == 3
        assert comp.is_tree()

    def test_zero_size(self):
        with pytest.raises(ZeroSize):
            parse("P0")

    def test_zero_multiplier(self):
        with pytest.raises(ZeroSize):
            parse("0P2")

    def test_whitespace(self):
        assert parse(" P2 +  S3 ") == parse("S3+P2")

    def test_trailing_plus(self):
        with pytest.raises(FamilySyntaxError) as info:
            parse("P3+")
        assert info.value.pos == 3
        assert info.value.caret().splitlines()[1] == "   ^"

    def test_unknown_kind(self):
        with pytest.raises(FamilySyntaxError) as info:
            parse("P2+Q1")
        assert info.value.pos == 3

    def test_not_a_tree(self):
        with pytest.raises(NotATree):
            parse("T:0-1,1-2,2-0")

    def test_graph_accepts_cycle(self):
        assert parse("G:0-1,1-2,2-0").size == 3

    def test_loop_and_multi_edge(self):
        with pytest.raises(Loop):
            parse("G:0-0")
        with pytest.raises(MultiEdge):
            parse("G:0-1,1-0")

    def test_star_one_is_edge(self):
        assert parse("S1") == parse("P1") == parse("M1")


class TestNormalization:
    def test_order_independent(self):
        assert parse("S2+P3") == parse("P3+S2")

    def test_matching(self):
        assert matching(3) == parse("P1+P1+P1")

    def test_add(self):
        assert parse("S2") + matching(1) == parse("S2+M1")

    def test_to_string_round_trip(self):
        for text in ["P3+2S2+M2", "2P3", "T:0-1,1-2,1-3", "G:0-1,1-2,0-2+P1", "S4+M3"]:
            spec = parse(text)
            assert parse(to_string(spec)) == spec

    def test_empty(self):
        with pytest.raises(ZeroSize):
            FamilySpec(())

    @given(st.lists(st.tuples(st.sampled_from("PSM"), st.integers(1, 4), st.integers(1, 3)), min_size=1, max_size=4))
    def test_round_trip_property(self, terms):
        text = "+".join(f"{m}{k}{s}" for k, s, m in terms)
        spec = parse(text)
        assert parse(str(spec)) == spec


class TestSkeleton:
    def test_path(self):
        sk = skeleton_graph(parse("P3"))
        assert sk.order == 4
        assert sorted(sk.edges) == [(0, 1), (1, 2), (2, 3)]

    def test_star(self):
        sk = skeleton_graph(parse("S2"))
        assert sk.order == 3
        assert sorted(sk.edges) == [(0, 1), (0, 2)]

    def test_matching(self):
        sk = skeleton_graph(parse("P1+P1"))
        assert sk.order == 4
        assert sorted(sk.edges) == [(0, 1), (2, 3)]

    def test_degrees(self):
        sk = skeleton_graph(parse("S3+P2"))
        assert sorted(sk.degrees()) == [1, 1, 1, 1, 1, 2, 3]

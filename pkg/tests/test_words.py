import pytest
from hypothesis import given, settings, strategies as st

from csgk.elements import BicyclicNF, CanonC
from csgk.errors import ConfluenceFailure, EmptyWord, InvalidCharacter, ShapeViolation, WordTooLong
from csgk.words import (
    B_SYSTEM,
    C_SYSTEM,
    RewriteSystem,
    critical_pairs_check,
    from_normal_b,
    from_normal_c,
    is_irreducible,
    match_normal_c,
    parse_word,
    reduce_c,
    rewrite,
    rewrite_trace,
    to_normal_b,
    to_normal_c,
)

from oracles import naive_b, naive_c

words = st.text(alphabet="ab", min_size=1, max_size=60)


class TestParse:
    def test_plain(self):
        assert parse_word("aab") == "aab"

    def test_whitespace_dropped(self):
        assert parse_word(" a a\tb\n") == "aab"

    def test_empty_allowed(self):
        assert parse_word("") == ""

    def test_bad_character(self):
        with pytest.raises(InvalidCharacter):
            parse_word("abx")

    def test_too_long(self):
        with pytest.raises(WordTooLong):
            parse_word("ab" * 6, max_length=10)


class TestReduction:
    @pytest.mark.parametrize(
        "word, reduced",
        [("aab", "a"), ("abb", "b"), ("aabb", "ab"), ("a" * 5 + "b" * 5, "ab"), ("bab", "bab"), ("ba", "ba")],
    )
    def test_examples(self, word, reduced):
        assert reduce_c(word) == reduced

    def test_empty_word_rejected(self):
        with pytest.raises(EmptyWord):
            reduce_c("")

    @pytest.mark.parametrize("strategy", ["stack", "leftmost", "rightmost"])
    def test_strategies_agree_on_example(self, strategy):
        assert rewrite("aabbaabb", C_SYSTEM, strategy) == "abab"

    def test_trace_shrinks_by_two(self):
        trace = rewrite_trace("aaabbb", C_SYSTEM)
        assert trace[0] == "aaabbb" and trace[-1] == "ab"
        assert all(len(x) - len(y) == 2 for x, y in zip(trace, trace[1:]))

    def test_bicyclic_system(self):
        assert rewrite("aabb", B_SYSTEM) == ""
        assert rewrite("baab", B_SYSTEM) == "ba"

    @settings(max_examples=300)
    @given(words, st.sampled_from(["stack", "leftmost", "rightmost"]))
    def test_matches_naive_oracle(self, w, strategy):
        assert to_normal_c(rewrite(w, C_SYSTEM, strategy)) == CanonC(*naive_c(w))
        assert is_irreducible(rewrite(w, C_SYSTEM, strategy))


class TestNormalForms:
    def test_to_normal_c(self):
        assert to_normal_c("babab") == CanonC(1, 2, 0)
        assert to_normal_c("aaabbb") == CanonC(0, 1, 0)

    def test_round_trip(self):
        x = CanonC(2, 3, 1)
        assert from_normal_c(x) == "bbabababa"
        assert to_normal_c(from_normal_c(x)) == x

    def test_shape_violation(self):
        with pytest.raises(ShapeViolation):
            match_normal_c("aab")

    def test_bicyclic(self):
        assert to_normal_b("ba") == BicyclicNF(1, 1)
        assert to_normal_b("ab") == BicyclicNF(0, 0)
        # b-count minus a-count is invariant under ab -> empty
        assert to_normal_b("baababaaaa") == BicyclicNF(1, 5)
        assert from_normal_b(BicyclicNF(2, 1)) == "bba"

    @settings(max_examples=300)
    @given(st.text(alphabet="ab", max_size=60))
    def test_bicyclic_matches_naive(self, w):
        assert to_normal_b(w) == BicyclicNF(*naive_b(w))


class TestConfluence:
    def test_c_system_single_superposition(self):
        rep = critical_pairs_check(C_SYSTEM)
        assert rep.ok
        assert [s.word for s in rep.superpositions] == ["aabb"]
        assert rep.superpositions[0].via_left == rep.superpositions[0].via_right == "ab"

    def test_b_system_trivially_confluent(self):
        assert critical_pairs_check(B_SYSTEM).ok

    def test_non_confluent_system_detected(self):
        bad = RewriteSystem("bad", (("ab", "a"), ("ba", "b")))
        with pytest.raises(ConfluenceFailure):
            critical_pairs_check(bad)
        assert not critical_pairs_check(bad, raise_on_failure=False).ok

    def test_report_serialises(self):
        d = critical_pairs_check(C_SYSTEM).to_dict()
        assert d["ok"] is True

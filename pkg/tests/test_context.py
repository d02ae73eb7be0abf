import pytest
from hypothesis import given, strategies as st

import oracles
from strategies import contexts
from acfca import (
    FormalContext,
    InputError,
    InvalidSubsetError,
    SizeLimitError,
    attr_closure,
    enumerate_formal_concepts,
    extent,
    format_cxt,
    intent,
    is_approximable_concept,
    is_formal_concept,
    parse_cxt,
)
from acfca.context import subsets


def s(*xs):
    return frozenset(xs)


class TestDerivation:
    def test_extent_examples(self, c0):
        assert extent(c0, {1}) == s(1, 2)
        assert extent(c0, set()) == s(0, 1, 2)
        assert extent(c0, {0, 2}) == s()

    def test_intent_examples(self, c0):
        assert intent(c0, {1}) == s(0, 1)
        assert intent(c0, set()) == s(0, 1, 2)
        assert intent(c0, {0, 1, 2}) == s()

    def test_closure_examples(self, c0):
        assert attr_closure(c0, {2}) == s(1, 2)
        assert attr_closure(c0, {0, 1}) == s(0, 1)

    def test_out_of_range_index(self, c0):
        with pytest.raises(InvalidSubsetError):
            extent(c0, {3})
        with pytest.raises(InvalidSubsetError):
            intent(c0, {-1})

    def test_empty_context_is_total(self):
        empty = FormalContext((), (), ())
        assert extent(empty, set()) == s()
        assert intent(empty, set()) == s()
        assert enumerate_formal_concepts(empty) == [s()]

    @given(contexts())
    def test_matches_oracle(self, ctx):
        rows, n = ctx.incidence, ctx.n_attributes
        for b in oracles.powerset(range(n)):
            assert extent(ctx, b) == oracles.extent(rows, b)
            assert attr_closure(ctx, b) == oracles.closure(rows, n, b)
        for a in oracles.powerset(range(ctx.n_objects)):
            assert intent(ctx, a) == oracles.intent(rows, n, a)

    @given(contexts())
    def test_galois_connection(self, ctx):
        for a in oracles.powerset(range(ctx.n_objects)):
            for b in oracles.powerset(range(ctx.n_attributes)):
                assert (a <= extent(ctx, b)) == (b <= intent(ctx, a))

    @given(contexts(max_attrs=6))
    def test_closure_is_a_closure_operator(self, ctx):
        subs = list(subsets(range(ctx.n_attributes)))
        for b in subs:
            c = attr_closure(ctx, b)
            assert b <= c
            assert attr_closure(ctx, c) == c
            for b2 in subs:
                if b <= b2:
                    assert c <= attr_closure(ctx, b2)


class TestConcepts:
    def test_formal_concept_examples(self, c0):
        assert is_formal_concept(c0, {1, 2})
        assert not is_formal_concept(c0, {2})
        assert is_formal_concept(c0, {0, 1, 2})

    def test_enumeration_c0(self, c0):
        assert enumerate_formal_concepts(c0) == [s(), s(0), s(1), s(0, 1), s(1, 2), s(0, 1, 2)]

    def test_single_incident_pair(self):
        ctx = FormalContext.from_pairs(["o1"], ["m1"], [(0, 0)])
        assert enumerate_formal_concepts(ctx) == [s(0)]

    def test_empty_incidence(self):
        ctx = FormalContext.from_pairs(["o1", "o2"], ["m1", "m2"], [])
        assert enumerate_formal_concepts(ctx) == [s(), s(0, 1)]

    def test_enumeration_limit(self):
        ctx = FormalContext((), tuple(f"m{i}" for i in range(21)), ())
        with pytest.raises(SizeLimitError):
            enumerate_formal_concepts(ctx)
        assert enumerate_formal_concepts(ctx, method="closure") == [frozenset(range(21))]

    @given(contexts(max_attrs=6))
    def test_enumeration_methods_agree_with_oracle(self, ctx):
        expected = oracles.closed_sets(ctx.incidence, ctx.n_attributes)
        got = enumerate_formal_concepts(ctx)
        assert set(got) == expected and len(got) == len(expected)
        assert enumerate_formal_concepts(ctx, method="closure") == got

    @given(contexts(max_attrs=6))
    def test_closed_under_intersection(self, ctx):
        closed = set(enumerate_formal_concepts(ctx))
        for x in closed:
            for y in closed:
                assert x & y in closed

    def test_approximable_examples(self, c0):
        assert is_approximable_concept(c0, {0, 1})
        assert not is_approximable_concept(c0, {2})
        assert is_approximable_concept(c0, set())

    @given(contexts(max_attrs=6))
    def test_approximable_equals_formal(self, ctx):
        for q in subsets(range(ctx.n_attributes)):
            formal = is_formal_concept(ctx, q)
            assert is_approximable_concept(ctx, q) == formal
            assert is_approximable_concept(ctx, q, exhaustive=True) == formal


class TestCxt:
    def test_roundtrip_c0_with_name(self, c0):
        named = FormalContext(c0.objects, c0.attributes, c0.incidence, name="C0")
        text = format_cxt(named)
        assert text.startswith("B\nC0\n3\n3\n\n")
        back = parse_cxt(text)
        assert back == named and back.name == "C0"
        assert format_cxt(back) == text

    def test_parse_without_name(self):
        text = "B\n2\n1\n\ng\nh\nm\nX\n.\n"
        ctx = parse_cxt(text)
        assert ctx.objects == ("g", "h") and ctx.attributes == ("m",)
        assert ctx.incidence == ((True,), (False,))
        assert format_cxt(ctx) == text

    @pytest.mark.parametrize("bad", ["", "A\n1\n1\n\ng\nm\nX\n", "B\n1\n1\n\ng\nm\nQ\n",
                                     "B\n2\n1\n\ng\nm\nX\n"])
    def test_malformed(self, bad):
        with pytest.raises(InputError):
            parse_cxt(bad)

    @given(contexts(), st.one_of(st.none(), st.sampled_from(["ctx", "a name"])))
    def test_roundtrip_random(self, ctx, name):
        ctx = FormalContext(ctx.objects, ctx.attributes, ctx.incidence, name=name)
        text = format_cxt(ctx)
        back = parse_cxt(text)
        assert back == ctx and back.name == name
        assert format_cxt(back) == text


def test_duplicate_labels_rejected():
    with pytest.raises(InputError):
        FormalContext(("a", "a"), ("m",), ((True,), (False,)))
    with pytest.raises(InputError):
        FormalContext(("a",), ("m",), ((True, False),))

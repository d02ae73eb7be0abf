import random

import pytest
from hypothesis import given, strategies as st

import oracles
from strategies import contexts
from acfca import (
    EmptyAttributeError,
    FormalContext,
    InputError,
    KernelOperator,
    Selection,
    SizeLimitError,
    ValidationError,
    attr_closure,
    bracket,
    build_acf,
    check_ca1,
    check_fc,
    check_kernel_axioms,
    enumerate_formal_concepts,
    induced_acf,
    is_continuous_concept,
    is_f_approximable,
)
from acfca.context import subsets
from acfca.generators import random_sized_context
from acfca.kernel import nonempty_subsets


def s(*xs):
    return frozenset(xs)


def constant_empty(ctx):
    return KernelOperator.from_table({c: s() for c in enumerate_formal_concepts(ctx)})


def intersect_kernel(ctx, keep):
    return KernelOperator.from_table({c: c & keep for c in enumerate_formal_concepts(ctx)})


class TestKernelAxioms:
    def test_identity_passes(self, c0):
        r = check_kernel_axioms(c0, KernelOperator.identity())
        assert r.passed and r.a2_literal.passed

    def test_constant_empty_passes(self, c0):
        assert check_kernel_axioms(c0, constant_empty(c0)).passed

    def test_a1_counterexample(self, c0):
        table = {c: c for c in enumerate_formal_concepts(c0)}
        table[s(0, 1)] = s(2)
        r = check_kernel_axioms(c0, KernelOperator.from_table(table))
        assert not r.a1.passed and r.a1.counterexample == (s(0, 1), s(2))
        assert not r.passed

    def test_a3_failure(self, c0):
        table = {c: c for c in enumerate_formal_concepts(c0)}
        table[s(0, 1, 2)] = s()
        r = check_kernel_axioms(c0, KernelOperator.from_table(table))
        assert r.a1.passed and not r.a3.passed

    def test_missing_closed_set(self, c0):
        with pytest.raises(ValidationError):
            check_kernel_axioms(c0, KernelOperator.from_table({s(): s()}))

    def test_non_closed_key(self, c0):
        table = {c: c for c in enumerate_formal_concepts(c0)}
        table[s(2)] = s(2)
        with pytest.raises(InputError):
            check_kernel_axioms(c0, KernelOperator.from_table(table))

    def test_literal_idempotence_undetermined(self, c0):
        # {m3} is not closed, so tau({m3}) has no table entry
        table = {c: c for c in enumerate_formal_concepts(c0)}
        table[s(1, 2)] = s(2)
        table[s(0, 1, 2)] = s(0, 2)
        r = check_kernel_axioms(c0, KernelOperator.from_table(table))
        assert r.a2_literal.passed is None

    @given(contexts(max_attrs=5), st.integers(0, 31))
    def test_intersection_kernels_pass(self, ctx, keep):
        kept = frozenset(j for j in range(ctx.n_attributes) if keep >> j & 1)
        assert check_kernel_axioms(ctx, intersect_kernel(ctx, kept)).passed


class TestBracket:
    def test_identity_is_closure(self, c0):
        for b in subsets(range(3)):
            assert bracket(c0, KernelOperator.identity(), b) == attr_closure(c0, b)

    def test_constant_empty(self, c0):
        assert bracket(c0, constant_empty(c0), {0}) == s()

    @given(contexts(max_attrs=5), st.integers(0, 31))
    def test_monotone_and_idempotent(self, ctx, keep):
        kept = frozenset(j for j in range(ctx.n_attributes) if keep >> j & 1)
        k = intersect_kernel(ctx, kept)
        subs = list(subsets(range(ctx.n_attributes)))
        for b in subs:
            bb = bracket(ctx, k, b)
            assert bracket(ctx, k, bb) == bb
            for b1 in subs:
                if b1 <= bb:
                    assert bracket(ctx, k, b1) <= bb


class TestCa1:
    def test_all_subsets_identity(self, c0):
        sel = Selection(tuple(nonempty_subsets(3)))
        assert check_ca1(c0, KernelOperator.identity(), sel).passed

    def test_constant_empty_fails(self, c0):
        r = check_ca1(c0, constant_empty(c0), Selection((s(0),)))
        assert not r.passed and r.member == 0

    def test_self_contained_members_pass(self, c0):
        sel = Selection((s(0), s(2), s(1, 2)))
        assert check_ca1(c0, KernelOperator.identity(), sel).passed

    def test_finite_form_matches_literal_on_1000_instances(self):
        rng = random.Random(7)
        disagreements = 0
        for _ in range(1000):
            ctx = random_sized_context(rng, 4, 4)
            closed = enumerate_formal_concepts(ctx)
            keep = frozenset(j for j in range(ctx.n_attributes) if rng.random() < 0.6)
            kernel = (KernelOperator.identity() if rng.random() < 0.3
                      else KernelOperator.from_table({c: c & keep for c in closed}))
            members = [f for f in nonempty_subsets(ctx.n_attributes) if rng.random() < 0.4]
            if not members:
                continue
            sel = Selection(tuple(members))
            fast = check_ca1(ctx, kernel, sel).passed
            literal = check_ca1(ctx, kernel, sel, exhaustive=True).passed
            oracle = oracles.ca1_literal(ctx.incidence, ctx.n_attributes, kernel, members)
            disagreements += not (fast == literal == oracle)
        assert disagreements == 0


class TestBuild:
    def test_induced_c0(self, c0):
        acf = induced_acf(c0)
        assert len(acf.selection) == 7
        assert all(acf.brackets)

    def test_two_members(self, c0):
        acf = build_acf(c0, KernelOperator.identity(), [{0}, {2}])
        assert acf.brackets == (s(0), s(1, 2))

    def test_no_attributes(self):
        ctx = FormalContext(("o",), (), ((),))
        with pytest.raises(EmptyAttributeError):
            build_acf(ctx, KernelOperator.identity(), [{0}])
        with pytest.raises(EmptyAttributeError):
            induced_acf(ctx)

    def test_invalid_selection_carries_report(self, c0):
        with pytest.raises(ValidationError) as err:
            build_acf(c0, constant_empty(c0), [{0}])
        assert not err.value.reports["ca1"].passed

    def test_invalid_kernel_carries_report(self, c0):
        table = {c: c for c in enumerate_formal_concepts(c0)}
        table[s(0, 1)] = s(2)
        with pytest.raises(ValidationError) as err:
            build_acf(c0, KernelOperator.from_table(table), [{0}])
        assert not err.value.reports["kernel"].passed

    @pytest.mark.parametrize("members", [[], [set()], [{0}, {0}]])
    def test_selection_invariants(self, members):
        with pytest.raises(InputError):
            Selection(tuple(frozenset(m) for m in members))

    def test_single_pair_context(self):
        ctx = FormalContext.from_pairs(["o1"], ["m1"], [(0, 0)])
        acf = induced_acf(ctx)
        assert acf.selection.members == (s(0),) and acf.brackets == (s(0),)

    def test_induced_limit(self):
        ctx = FormalContext((), tuple(f"m{i}" for i in range(16)), ())
        with pytest.raises(SizeLimitError):
            induced_acf(ctx)

    @given(contexts(max_attrs=5, min_attrs=1))
    def test_every_bracket_nonempty_and_decomposes(self, ctx):
        acf = induced_acf(ctx)
        for f, b in zip(acf.selection, acf.brackets):
            assert b
            family = [bg for g, bg in zip(acf.selection, acf.brackets) if g <= b]
            assert frozenset().union(*family) == b
            for x in family:
                for y in family:
                    assert any(x <= z and y <= z for z in family)


class TestConditionalContexts:
    def test_all_subsets(self, c0):
        assert check_fc(c0, Selection(tuple(nonempty_subsets(3))))

    def test_single_member_fails(self, c0):
        sel = Selection((s(2),))
        assert not check_fc(c0, sel)
        assert not check_fc(c0, sel, exhaustive=True)

    @given(contexts(max_attrs=4, min_attrs=1), st.data())
    def test_fc_finite_form_and_ca1(self, ctx, data):
        members = data.draw(st.lists(st.sampled_from(nonempty_subsets(ctx.n_attributes)),
                                     min_size=1, unique=True))
        sel = Selection(tuple(members))
        literal = oracles.fc_literal(ctx.incidence, ctx.n_attributes, members)
        assert check_fc(ctx, sel) == literal == check_fc(ctx, sel, exhaustive=True)
        if literal:
            assert check_ca1(ctx, KernelOperator.identity(), sel).passed

    def test_f_approximable_examples(self, c0):
        sel = Selection(tuple(nonempty_subsets(3)))
        assert not is_f_approximable(c0, sel, set())
        assert is_f_approximable(c0, sel, {1, 2})

    @given(contexts(max_attrs=5, min_attrs=1))
    def test_f_approximable_equals_continuous_on_induced(self, ctx):
        acf = induced_acf(ctx)
        for q in subsets(range(ctx.n_attributes)):
            expected = is_continuous_concept(acf, q, exhaustive=True)
            assert is_f_approximable(ctx, acf.selection, q) == expected
            assert is_f_approximable(ctx, acf.selection, q, exhaustive=True) == expected

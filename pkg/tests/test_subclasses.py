import random

from hypothesis import given

from strategies import posets
from acfca import FinitePoset, KernelOperator, build_acf, induced_acf, rep
from acfca.generators import random_valid_acf
from acfca.order import domain_classify, poset_catalog
from acfca.subclasses import (
    check_ad,
    check_bc,
    check_pointed,
    check_ss,
    check_topped,
    classify,
    format_report,
)


def s(*xs):
    return frozenset(xs)


def random_acfs(n=80, seed=5):
    rng = random.Random(seed)
    return [random_valid_acf(rng, 5, 5).acf for _ in range(n)]


class TestAlgebraic:
    def test_induced(self, c0_acf):
        assert check_ad(c0_acf)

    def test_always_true_on_finite_and_algebraic(self):
        for acf in random_acfs():
            assert check_ad(acf)
            assert domain_classify(acf.concepts.poset).is_algebraic


class TestPointedTopped:
    def test_examples(self, c0_acf, rep_chain2, rep_antichain2):
        assert not check_pointed(c0_acf)
        assert check_pointed(rep_chain2.acf)
        assert check_topped(c0_acf)
        assert not check_topped(rep_antichain2.acf)

    def test_one_member(self, c0):
        acf = build_acf(c0, KernelOperator.identity(), [{2}])
        assert check_pointed(acf) and check_topped(acf)

    def test_counterexample_payload_iff_false(self, c0_acf, rep_chain2):
        r = classify(c0_acf)
        for check in (r.ad, r.pointed_cond, r.topped_cond, r.bc, r.ss1, r.ss2):
            assert (check.counterexample is None) == check.passed
        assert r.pointed_cond.counterexample == {"intersection_of_brackets": s()}

    def test_equivalences_on_random(self):
        for acf in random_acfs():
            sem = domain_classify(acf.concepts.poset)
            assert check_pointed(acf).passed == sem.is_pointed
            assert check_topped(acf).passed == sem.has_top

    @given(posets(max_size=5))
    def test_equivalences_on_rep(self, p):
        acf = rep(p).acf
        sem = domain_classify(p)
        assert check_pointed(acf).passed == sem.is_pointed
        assert check_topped(acf).passed == sem.has_top


class TestBoundedComplete:
    def test_chain(self, rep_chain2):
        assert check_bc(rep_chain2.acf)

    def test_diamond_fails(self, rep_diamond):
        r = check_bc(rep_diamond.acf)
        assert not r and r.counterexample["X"] == s(1, 2)

    def test_bc_implies_bounded_complete(self):
        for acf in random_acfs():
            if check_bc(acf):
                assert domain_classify(acf.concepts.poset, empty_is_bounded=False).is_bounded_complete

    def test_rep_bc_exactly_when_down_sets_are_chains(self):
        # BC on a representing context asks every finite subset of a principal
        # down-set to have a maximum, which is the same as down-sets being chains
        for n in range(1, 6):
            for p in poset_catalog(n):
                chains_below = all(p.leq[a][b] or p.leq[b][a]
                                   for x in range(n) for a in range(n) for b in range(n)
                                   if p.leq[a][x] and p.leq[b][x])
                assert check_bc(rep(p).acf).passed == chains_below


class TestSemilattice:
    def test_chain(self, rep_chain2):
        ss1, ss2 = check_ss(rep_chain2.acf)
        assert ss1 and ss2

    def test_antichain_fails_at_empty_intersection(self, rep_antichain2):
        ss1, _ = check_ss(rep_antichain2.acf)
        assert not ss1 and ss1.counterexample["M"] == s()

    def test_implies_stably_continuous(self):
        for acf in random_acfs():
            ss1, ss2 = check_ss(acf)
            if ss1 and ss2:
                sem = domain_classify(acf.concepts.poset)
                assert sem.is_semilattice and sem.waybelow_multiplicative

    def test_rep_of_semilattice_passes(self):
        for n in range(1, 6):
            for p in poset_catalog(n):
                if domain_classify(p).is_semilattice:
                    ss1, ss2 = check_ss(rep(p).acf)
                    assert ss1 and ss2

    def test_exhaustive_ss1_agrees(self):
        from acfca.subclasses import check_ss1
        for acf in random_acfs(40):
            assert check_ss1(acf).passed == check_ss1(acf, exhaustive=True).passed


def test_report_formats(c0_acf):
    r = classify(c0_acf)
    text = format_report(r)
    assert text.splitlines()[0].split() == ["condition", "syntactic", "semantic"]
    doc = r.as_dict()
    assert set(doc) == {"AD", "pointed", "topped", "BC", "SS1", "SS2", "semantic"}
    assert doc["semantic"]["is_pointed"] is False


def test_exploratory_note_for_diamond(rep_diamond):
    assert "bounded complete (nonempty subsets) without BC" in classify(rep_diamond.acf).exploratory_notes()


def test_induced_chain_context():
    acf = induced_acf(rep(FinitePoset.chain(3)).acf.context)
    assert classify(acf).pointed_cond

"""Closed-form branched-cover invariants of resolved diagrams."""

import itertools
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from annkh.build import braid_closure
from annkh.diagram import AnnularDiagram, FreeLoop
from annkh.sfh import check_equivalence, cover_space, predicted_ranks

LOOP1 = AnnularDiagram("loop1", [], [], [FreeLoop("u1", 1)])
SIGMA1 = braid_closure("sigma1", 2, [1], 1)


def small_words():
    return st.integers(2, 3).flatmap(
        lambda s: st.tuples(
            st.just(s),
            st.lists(st.sampled_from([v for v in range(-s + 1, s) if v]),
                     min_size=1, max_size=4),
            st.integers(0, 1)))


def test_single_nontrivial_circle():
    cs = cover_space(LOOP1.resolve(()))
    assert cs.parity == 1
    # shift ((n-p)/2,(t+n-p)/2) = (0,0); the circle class sits at (-1,-1)
    assert cs.dims() == {(Fraction(0), Fraction(0)): 1,
                         (Fraction(-1), Fraction(-1)): 1}


def test_single_trivial_circle():
    d = AnnularDiagram("loop0", [], [], [FreeLoop("u1", 0)])
    cs = cover_space(d.resolve(()))
    assert cs.parity == 0
    # shift (0, 1/2): generators at (0,1/2) and (0,-1/2)
    assert cs.dims() == {(Fraction(0), Fraction(1, 2)): 1,
                         (Fraction(0), Fraction(-1, 2)): 1}


def test_rank_is_two_to_t_plus_n():
    for bits in ((0,), (1,)):
        r = SIGMA1.resolve(bits)
        assert cover_space(r).total_dim == 1 << (r.t + r.n)
        assert predicted_ranks(r).rank == 1 << (r.t + r.n)


def test_parity_and_shape():
    rep1 = predicted_ranks(LOOP1.resolve(()))
    assert rep1.parity == 1 and not rep1.ambiguous_shift
    rep0 = predicted_ranks(SIGMA1.resolve((1,)))   # two nontrivial circles
    assert rep0.parity == 0 and rep0.ambiguous_shift
    assert rep0.shape != rep0.alternate_shape


def test_equivalence_on_sigma1():
    for bits in ((0,), (1,)):
        rep = check_equivalence(SIGMA1.resolve(bits))
        assert rep.ok, rep.detail


def test_symmetry_of_alexander_grading():
    """dim(A, M) = dim(-A-p, M-2A-p) for every resolved diagram."""
    d = braid_closure("hopf", 2, [1, 1], 1)
    for bits in itertools.product((0, 1), repeat=2):
        cs = cover_space(d.resolve(bits))
        p = cs.parity
        dims = cs.dims()
        for (a, m), v in dims.items():
            assert dims.get((-a - p, m - 2 * a - p)) == v


@settings(max_examples=20, deadline=None)
@given(small_words())
def test_equivalence_everywhere(sw):
    strands, word, winding = sw
    d = braid_closure("w", strands, word, winding)
    for bits in itertools.product((0, 1), repeat=len(word)):
        r = d.resolve(bits)
        rep = check_equivalence(r)
        assert rep.ok, rep.detail
        cs = cover_space(r)
        assert cs.total_dim == 1 << (r.t + r.n)
        # maslov gradings are half-integral exactly when t is odd
        half = any(m.denominator == 2 for _, (_a, m) in cs.generators)
        assert half == (r.t % 2 == 1)
        assert all(a.denominator == 1 for _, (a, _m) in cs.generators)

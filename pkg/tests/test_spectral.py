"""Spectral sequence pages and the abutment identity."""

from hypothesis import given, settings, strategies as st

from annkh.build import braid_closure
from annkh.diagram import AnnularDiagram, FreeLoop
from annkh.khovanov import annular_homology, build_filtered_complex, total_homology
from annkh.spectral import e_infinity, pages

SIGMA1 = braid_closure("sigma1", 2, [1], 1)


def small_words():
    return st.integers(2, 3).flatmap(
        lambda s: st.tuples(
            st.just(s),
            st.lists(st.sampled_from([v for v in range(-s + 1, s) if v]),
                     min_size=1, max_size=4),
            st.integers(0, 1)))


def collapse_k(dims):
    out = {}
    for (i, j, _k), v in dims.items():
        out[(i, j)] = out.get((i, j), 0) + v
    return out


def test_crossingless_is_stable_at_page_one():
    d = AnnularDiagram("loop", [], [], [FreeLoop("u", 1)])
    ps = pages(build_filtered_complex(d))
    assert len(ps) == 1
    assert not ps[0].differentials_present
    assert ps[0].dims == annular_homology(d)


def test_sigma1_page_progression():
    fc = build_filtered_complex(SIGMA1)
    ps = pages(fc)
    assert ps[0].total_dim == 4
    assert ps[0].differentials_present
    assert ps[1].total_dim == 2
    assert not ps[1].differentials_present
    assert e_infinity(fc).total_dim == 2


def test_first_page_is_associated_graded_homology():
    for word, w in ([1], 1), ([1, 1], 1), ([1, -2, 1], 1):
        d = braid_closure("d", max(abs(v) for v in word) + 1, word, w)
        fc = build_filtered_complex(d)
        assert pages(fc, r_max=1)[0].dims == annular_homology(fc)


def test_rmax_truncation_flags_running_differentials():
    fc = build_filtered_complex(SIGMA1)
    ps = pages(fc, r_max=1)
    assert len(ps) == 1
    assert ps[0].differentials_present   # page 2 differs, even if not computed


def test_trefoil_stable_at_page_one():
    d = braid_closure("tre", 2, [1, 1, 1], 0)
    fc = build_filtered_complex(d)
    ps = pages(fc)
    assert not ps[0].differentials_present
    assert collapse_k(ps[0].dims) == total_homology(fc)


@settings(max_examples=15, deadline=None)
@given(small_words())
def test_abutment(sw):
    strands, word, winding = sw
    d = braid_closure("w", strands, word, winding)
    fc = build_filtered_complex(d)
    assert collapse_k(e_infinity(fc).dims) == total_homology(fc)


@settings(max_examples=10, deadline=None)
@given(small_words())
def test_pages_shrink_monotonically(sw):
    strands, word, winding = sw
    d = braid_closure("w", strands, word, winding)
    fc = build_filtered_complex(d)
    ps = pages(fc)
    totals = [p.total_dim for p in ps] + [e_infinity(fc).total_dim]
    assert all(a >= b for a, b in zip(totals, totals[1:]))
    assert ps[0].dims == annular_homology(fc)

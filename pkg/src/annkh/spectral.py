"""Spectral sequence of the k-filtered cube complex over GF(2).

The filtration is by k (F_p = span of generators with k <= p; the
differential never raises k).  Pages are computed from explicit
Z_r/B_r subspace chains with basis tracking.

Because every differential entry drops k by 0 or 2, only even filtration
drops occur; the exported page index r carries the differential d_r of
(i,k)-bidegree (+1, -2r), and corresponds to the classical page 2r-1 of the
step-1 filtration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .gf2 import GradedComplex, MatrixF2, Span, TrigradedDims, kernel_basis


@dataclass(frozen=True)
class SSPage:
    r: int
    dims: TrigradedDims
    differentials_present: bool

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())


class _Block:
    """One j-homogeneous block of the complex, with local bitset coordinates."""

    def __init__(self, cplx: GradedComplex, indices: List[int]):
        gens = cplx.generators
        indices = sorted(indices, key=lambda g: (gens[g].k, gens[g].i, g))
        self.pos = {g: p for p, g in enumerate(indices)}
        self.i_of = [gens[g].i for g in indices]
        self.k_of = [gens[g].k for g in indices]
        self.by_i: Dict[int, List[int]] = {}
        for p, g in enumerate(indices):
            self.by_i.setdefault(gens[g].i, []).append(p)
        self.dcols: Dict[int, List[int]] = {}
        for g in indices:
            tgts = [self.pos[t] for t in cplx.diff.get(g, ())]
            if tgts:
                self.dcols[self.pos[g]] = tgts
        self._zcache: Dict[Tuple[int, Optional[int], Optional[int]], List[int]] = {}

    def apply_d(self, vec: int) -> int:
        out = 0
        while vec:
            low = vec & -vec
            for t in self.dcols.get(low.bit_length() - 1, ()):
                out ^= 1 << t
            vec ^= low
        return out

    def z_subspace(self, i: int, p_dom: Optional[int],
                   p_img: Optional[int]) -> List[int]:
        """Basis of {x at level i, k(x) <= p_dom : D x supported on k <= p_img}.

        ``None`` bounds mean unbounded (p_dom) / empty image allowed rows
        meaning D x = 0 is *not* required -- pass p_img=None for "no
        constraint"; use a value below min k to force D x = 0.
        """
        key = (i, p_dom, p_img)
        hit = self._zcache.get(key)
        if hit is not None:
            return hit
        domain = [p for p in self.by_i.get(i, [])
                  if p_dom is None or self.k_of[p] <= p_dom]
        if p_img is None:
            basis = [1 << p for p in domain]
            self._zcache[key] = basis
            return basis
        rows = [p for p in self.by_i.get(i + 1, []) if self.k_of[p] > p_img]
        if not rows:
            basis = [1 << p for p in domain]
            self._zcache[key] = basis
            return basis
        row_pos = {p: rp for rp, p in enumerate(rows)}
        entries = []
        for cpos, p in enumerate(domain):
            for t in self.dcols.get(p, ()):
                rp = row_pos.get(t)
                if rp is not None:
                    entries.append((rp, cpos))
        m = MatrixF2.from_entries(len(rows), len(domain), entries)
        basis = []
        for combo in kernel_basis(m):
            v = 0
            while combo:
                low = combo & -combo
                v |= 1 << domain[low.bit_length() - 1]
                combo ^= low
            basis.append(v)
        self._zcache[key] = basis
        return basis


def _validate(cplx: GradedComplex) -> None:
    gens = cplx.generators
    for c, targets in cplx.diff.items():
        for t in targets:
            if gens[t].k - gens[c].k not in (0, -2):
                raise ValueError("differential violates the k-filtration contract")


def _blocks(cplx: GradedComplex) -> Dict[int, _Block]:
    by_j: Dict[int, List[int]] = {}
    for idx, g in enumerate(cplx.generators):
        by_j.setdefault(g.j, []).append(idx)
    return {j: _Block(cplx, idxs) for j, idxs in by_j.items()}


def _page_dims(cplx: GradedComplex, blocks: Dict[int, _Block],
               s: int) -> TrigradedDims:
    """Classical page s (step-1 filtration indexing) of the k-filtration."""
    dims: TrigradedDims = {}
    for j, blk in blocks.items():
        cells = sorted({(blk.i_of[p], blk.k_of[p]) for p in range(len(blk.i_of))})
        for i, p in cells:
            z = blk.z_subspace(i, p, p - s)
            if not z:
                continue
            denom = Span(blk.z_subspace(i, p - 1, p - s))
            for x in blk.z_subspace(i - 1, p + s - 1, p):
                denom.add(blk.apply_d(x))
            # the denominator lies inside the cycle space, so the quotient
            # dimension is a plain difference
            full = Span(z)
            base = full.dim
            for v in denom.basis():
                full.add(v)
            if full.dim != base:
                raise AssertionError("page denominator escapes the cycle space")
            d = base - denom.dim
            if d:
                dims[(i, j, p)] = d
    return dims


def _k_spread(cplx: GradedComplex) -> int:
    ks = [g.k for g in cplx.generators]
    return (max(ks) - min(ks)) if ks else 0


def _resolve_complex(c) -> GradedComplex:
    if isinstance(c, GradedComplex):
        return c
    return c.complex  # FilteredComplex


def pages(c, r_max: Optional[int] = None) -> List[SSPage]:
    """Pages E^1 .. E^stable of the k-filtration spectral sequence.

    E^1 is the homology of the associated graded complex; d_r drops k by 2r.
    """
    cplx = _resolve_complex(c)
    _validate(cplx)
    blocks = _blocks(cplx)
    r_stable = _k_spread(cplx) // 2 + 1
    r_stop = r_stable if r_max is None else min(r_max, r_stable)
    r_stop = max(r_stop, 1)
    all_dims = [_page_dims(cplx, blocks, 2 * r - 1)
                for r in range(1, r_stop + 1)]
    lookahead = (_page_dims(cplx, blocks, 2 * (r_stop + 1) - 1)
                 if r_stop < r_stable else None)
    flags = [all_dims[idx] != all_dims[idx + 1]
             for idx in range(len(all_dims) - 1)]
    flags.append(lookahead is not None and all_dims[-1] != lookahead)
    # drop trailing pages that merely repeat the already-stable one
    while len(all_dims) > 1 and not flags[-1] and all_dims[-1] == all_dims[-2]:
        all_dims.pop()
        flags.pop()
        flags[-1] = False
    return [SSPage(r + 1, dims, flag)
            for r, (dims, flag) in enumerate(zip(all_dims, flags))]


def e_infinity(c) -> SSPage:
    """The stabilized page; its (i,j)-totals equal the total homology."""
    cplx = _resolve_complex(c)
    _validate(cplx)
    blocks = _blocks(cplx)
    ks = [g.k for g in cplx.generators]
    floor = (min(ks) - 3) if ks else -1   # below every k: forces D x = 0
    dims: TrigradedDims = {}
    for j, blk in blocks.items():
        cells = sorted({(blk.i_of[p], blk.k_of[p]) for p in range(len(blk.i_of))})
        for i, p in cells:
            z = blk.z_subspace(i, p, floor)
            if not z:
                continue
            denom = Span(blk.z_subspace(i, p - 1, floor))
            for x in blk.z_subspace(i - 1, None, p):
                denom.add(blk.apply_d(x))
            d = Span(z).dim - denom.dim
            if d:
                dims[(i, j, p)] = d
    r_stable = _k_spread(cplx) // 2 + 1
    return SSPage(r_stable, dims, False)

"""The annular Khovanov cube: vertex spaces, saddle maps, the filtered complex.

Each resolution carries the exterior algebra on its circles, bigraded by
(f, q): a trivial circle class has degree (0,-2), a nontrivial one (-2,-2),
and the whole space is shifted by (n, t+n).  Saddle cobordisms between
adjacent resolutions induce multiplication/comultiplication maps; the cube
differential D sums them over immediate-successor pairs, never increases the
f (= k) grading, and its f-preserving part GD defines the associated graded
complex whose homology is the annular invariant.

Monomials are bitmasks over the vertex's circles (sorted by circle id), so
generator identifiers are stable and content-derived.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import diagram as diag
from .gf2 import GradedComplex, Generator, MatrixF2, TrigradedDims, homology_dims


@dataclass(frozen=True)
class CircleInfo:
    ident: str
    nontrivial: bool
    members: FrozenSet[str]


@dataclass(frozen=True)
class VertexSpace:
    """The bigraded space attached to one resolution."""
    bits: Tuple[int, ...]
    circles: Tuple[CircleInfo, ...]   # sorted by ident

    @property
    def t(self) -> int:
        return sum(1 for c in self.circles if not c.nontrivial)

    @property
    def n(self) -> int:
        return sum(1 for c in self.circles if c.nontrivial)

    @property
    def nontrivial_mask(self) -> int:
        m = 0
        for idx, c in enumerate(self.circles):
            if c.nontrivial:
                m |= 1 << idx
        return m

    @property
    def dim(self) -> int:
        return 1 << len(self.circles)

    def degree(self, mask: int) -> Tuple[int, int]:
        """(f, q) of the monomial selected by mask, shifts included."""
        f = self.n - 2 * (mask & self.nontrivial_mask).bit_count()
        q = (self.t + self.n) - 2 * mask.bit_count()
        return f, q

    def monomial_ident(self, mask: int) -> str:
        if mask == 0:
            return "1"
        names = [self.circles[b].ident
                 for b in range(len(self.circles)) if mask >> b & 1]
        return "*".join(names)


def vertex_space(r: diag.ResolvedDiagram) -> VertexSpace:
    circles = tuple(CircleInfo(c.ident, c.nontrivial, c.member_ids)
                    for c in r.circles)
    return VertexSpace(r.bits, circles)


def generators(r: diag.ResolvedDiagram) -> List[Tuple[str, Tuple[int, int]]]:
    """All 2^(t+n) monomial generators of a resolved diagram with (f, q)."""
    vs = vertex_space(r)
    return [(vs.monomial_ident(m), vs.degree(m)) for m in range(vs.dim)]


class EdgeMapError(ValueError):
    """Raised when two resolutions are not related by a single saddle."""


@dataclass(frozen=True)
class EdgeMap:
    """A saddle-induced map between adjacent vertex spaces.

    ``columns[mask]`` lists the target masks hit by the source monomial;
    ``graded_columns`` keeps only the f-preserving entries.
    """
    src: VertexSpace
    dst: VertexSpace
    kind: str                      # "merge" or "split"
    columns: Tuple[Tuple[int, ...], ...]
    graded_columns: Tuple[Tuple[int, ...], ...]

    @property
    def matrix(self) -> MatrixF2:
        entries = [(t, c) for c, ts in enumerate(self.columns) for t in ts]
        return MatrixF2.from_entries(self.dst.dim, self.src.dim, entries)

    @property
    def graded_matrix(self) -> MatrixF2:
        entries = [(t, c) for c, ts in enumerate(self.graded_columns) for t in ts]
        return MatrixF2.from_entries(self.dst.dim, self.src.dim, entries)


def _match_circles(src: VertexSpace, dst: VertexSpace):
    """Pair up circles by member arcs; return (corr, src_odd, dst_odd)."""
    dst_by_members = {c.members: idx for idx, c in enumerate(dst.circles)}
    corr: Dict[int, int] = {}
    src_odd: List[int] = []
    for idx, c in enumerate(src.circles):
        hit = dst_by_members.get(c.members)
        if hit is None:
            src_odd.append(idx)
        else:
            corr[idx] = hit
    matched = set(corr.values())
    dst_odd = [idx for idx in range(len(dst.circles)) if idx not in matched]
    return corr, src_odd, dst_odd


def edge_map(src: VertexSpace, dst: VertexSpace) -> EdgeMap:
    """The saddle map for one cube edge, full and f-graded."""
    corr, src_odd, dst_odd = _match_circles(src, dst)
    union_src = frozenset().union(*(src.circles[i].members for i in src_odd)) \
        if src_odd else frozenset()
    union_dst = frozenset().union(*(dst.circles[i].members for i in dst_odd)) \
        if dst_odd else frozenset()
    if union_src != union_dst:
        raise EdgeMapError("unmatched circles do not cover the same arcs")

    if len(src_odd) == 2 and len(dst_odd) == 1:
        kind = "merge"
    elif len(src_odd) == 1 and len(dst_odd) == 2:
        kind = "split"
    else:
        raise EdgeMapError(
            f"not a single saddle: {len(src_odd)} circles become {len(dst_odd)}")

    def translate(mask: int) -> int:
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << corr[low.bit_length() - 1]
            mask ^= low
        return out

    columns: List[Tuple[int, ...]] = []
    if kind == "merge":
        bi, bj = (1 << src_odd[0]), (1 << src_odd[1])
        bm = 1 << dst_odd[0]
        for mask in range(src.dim):
            if mask & bi and mask & bj:
                columns.append(())          # [K'] ^ [K'] = 0
                continue
            rest = mask & ~(bi | bj)
            tgt = translate(rest)
            if mask & (bi | bj):
                tgt |= bm
            columns.append((tgt,))
    else:
        bs = 1 << src_odd[0]
        b1, b2 = (1 << dst_odd[0]), (1 << dst_odd[1])
        for mask in range(src.dim):
            rest = translate(mask & ~bs)
            if mask & bs:
                columns.append((rest | b1 | b2,))
            else:
                columns.append((rest | b1, rest | b2))

    graded = []
    for mask, tgts in enumerate(columns):
        f = src.degree(mask)[0]
        graded.append(tuple(t for t in tgts if dst.degree(t)[0] == f))
    return EdgeMap(src, dst, kind, tuple(columns), tuple(graded))


def merge_map(src: diag.ResolvedDiagram, dst: diag.ResolvedDiagram) -> EdgeMap:
    em = edge_map(vertex_space(src), vertex_space(dst))
    if em.kind != "merge":
        raise EdgeMapError("resolutions are not related by a merge saddle")
    return em


def split_map(src: diag.ResolvedDiagram, dst: diag.ResolvedDiagram) -> EdgeMap:
    em = edge_map(vertex_space(src), vertex_space(dst))
    if em.kind != "split":
        raise EdgeMapError("resolutions are not related by a split saddle")
    return em


# -- the cube ----------------------------------------------------------------

@dataclass
class FilteredComplex:
    """The whole cube: trigraded basis, full differential D, saddle registry."""
    diagram: diag.AnnularDiagram
    n_plus: int
    n_minus: int
    vertices: List[VertexSpace]            # indexed by resolution number
    offsets: List[int]                     # generator index offset per vertex
    complex: GradedComplex                 # differential D (k-drop 0 or -2)
    edge_maps: Dict[Tuple[int, int], EdgeMap]  # (src vertex, dst vertex)

    @property
    def total_dim(self) -> int:
        return len(self.complex.generators)

    def vertex_index(self, bits: Sequence[int]) -> int:
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        return idx

    def generator_index(self, vertex: int, mask: int) -> int:
        return self.offsets[vertex] + mask

    def graded_complex(self) -> GradedComplex:
        """The associated graded complex (only k-preserving entries of D)."""
        return self.complex.graded_part()


# module-level state for worker processes (fork start method)
_WORK_DIAGRAM: Optional[diag.AnnularDiagram] = None
_WORK_VERTICES: Optional[List[VertexSpace]] = None


def _init_resolve(d: diag.AnnularDiagram) -> None:
    global _WORK_DIAGRAM
    _WORK_DIAGRAM = d


def _resolve_chunk(args) -> List[Tuple[int, VertexSpace]]:
    start, stop, ell = args
    out = []
    for idx in range(start, stop):
        bits = tuple((idx >> (ell - 1 - c)) & 1 for c in range(ell))
        out.append((idx, vertex_space(_WORK_DIAGRAM.resolve(bits))))
    return out


def _init_edges(vertices: List[VertexSpace]) -> None:
    global _WORK_VERTICES
    _WORK_VERTICES = vertices


def _edge_chunk(args):
    start, stop, ell = args
    out = []
    for src_idx in range(start, stop):
        src = _WORK_VERTICES[src_idx]
        for c in range(ell):
            if src.bits[c] == 0:
                dst_idx = src_idx | (1 << (ell - 1 - c))
                em = edge_map(src, _WORK_VERTICES[dst_idx])
                out.append((src_idx, dst_idx, em))
    return out


def _chunks(n_items: int, n_chunks: int):
    step = max(1, -(-n_items // n_chunks))
    return [(lo, min(lo + step, n_items)) for lo in range(0, n_items, step)]


def build_filtered_complex(d: diag.AnnularDiagram,
                           workers: int = 1) -> FilteredComplex:
    """Assemble the cube complex; asserts D^2 = 0 and the degree contract."""
    ell = d.n_crossings
    n_plus, n_minus = d.crossing_signs()
    n_vertices = 1 << ell

    if workers > 1 and n_vertices >= 4:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_resolve,
                                 initargs=(d,)) as pool:
            tasks = [(lo, hi, ell) for lo, hi in _chunks(n_vertices, workers * 4)]
            vertices_idx: List[Tuple[int, VertexSpace]] = []
            for part in pool.map(_resolve_chunk, tasks):
                vertices_idx.extend(part)
        vertices_idx.sort(key=lambda p: p[0])
        vertices = [vs for _, vs in vertices_idx]
    else:
        _init_resolve(d)
        vertices = [vs for _, vs in _resolve_chunk((0, n_vertices, ell))]

    offsets = [0] * n_vertices
    acc = 0
    for idx, vs in enumerate(vertices):
        offsets[idx] = acc
        acc += vs.dim

    if workers > 1 and n_vertices >= 4:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_edges,
                                 initargs=(vertices,)) as pool:
            tasks = [(lo, hi, ell) for lo, hi in _chunks(n_vertices, workers * 4)]
            edge_lists = list(pool.map(_edge_chunk, tasks))
        edges = [e for part in edge_lists for e in part]
    else:
        _init_edges(vertices)
        edges = _edge_chunk((0, n_vertices, ell))

    # assemble generators and the global sparse differential
    gens: List[Generator] = []
    for idx, vs in enumerate(vertices):
        ones = sum(vs.bits)
        i = ones - n_plus
        bitstring = "".join(map(str, vs.bits))
        for mask in range(vs.dim):
            f, q = vs.degree(mask)
            j = q + ones + n_minus - 2 * n_plus
            ident = f"{bitstring}|{vs.monomial_ident(mask)}" if ell else \
                vs.monomial_ident(mask)
            gens.append(Generator(ident, i, j, f))

    diff: Dict[int, List[int]] = {}
    edge_maps: Dict[Tuple[int, int], EdgeMap] = {}
    for src_idx, dst_idx, em in edges:
        edge_maps[(src_idx, dst_idx)] = em
        src_off, dst_off = offsets[src_idx], offsets[dst_idx]
        for mask, tgts in enumerate(em.columns):
            if tgts:
                diff.setdefault(src_off + mask, []).extend(
                    dst_off + t for t in tgts)

    cplx = GradedComplex(gens, diff)   # validates the degree contract
    if not cplx.differential_squares_to_zero():
        raise AssertionError("cube differential does not square to zero")
    return FilteredComplex(d, n_plus, n_minus, vertices, offsets, cplx, edge_maps)


# -- homology front ends -----------------------------------------------------

def annular_homology(source) -> TrigradedDims:
    """Trigraded homology of the associated graded complex."""
    fc = source if isinstance(source, FilteredComplex) else \
        build_filtered_complex(source)
    return homology_dims(fc.graded_complex())


def total_homology(source) -> Dict[Tuple[int, int], int]:
    """Bigraded homology of (CV, D), forgetting the annular grading."""
    fc = source if isinstance(source, FilteredComplex) else \
        build_filtered_complex(source)
    flat_gens = [Generator(g.ident, g.i, g.j, 0) for g in fc.complex.generators]
    flat = GradedComplex(flat_gens, fc.complex.diff)
    dims = homology_dims(flat)
    out: Dict[Tuple[int, int], int] = {}
    for (i, j, _k), v in dims.items():
        out[(i, j)] = out.get((i, j), 0) + v
    return out


def euler_characteristic(source) -> Dict[Tuple[int, int], int]:
    """Chain-level graded Euler characteristic: coefficient of q^j t^k is
    the alternating sum over i of chain-group dimensions."""
    fc = source if isinstance(source, FilteredComplex) else \
        build_filtered_complex(source)
    chi: Dict[Tuple[int, int], int] = {}
    for g in fc.complex.generators:
        chi[(g.j, g.k)] = chi.get((g.j, g.k), 0) + (1 if g.i % 2 == 0 else -1)
    return {jk: c for jk, c in chi.items() if c}

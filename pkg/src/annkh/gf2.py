"""Bit-packed linear algebra over GF(2) and homology of graded chain complexes.

Vectors are Python ints used as bitsets (bit ``r`` set means coordinate ``r``
is 1).  Matrices store one bitset per row.  Everything downstream (cube
complexes, spectral sequence pages, summand checks) reduces to the rank and
kernel computations here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple


class MatrixF2:
    """A rows x cols matrix over GF(2), one int bitset per row."""

    __slots__ = ("rows", "cols", "row_bits")

    def __init__(self, rows: int, cols: int, row_bits: List[int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        if row_bits is None:
            row_bits = [0] * rows
        if len(row_bits) != rows:
            raise ValueError("row count mismatch")
        mask = (1 << cols) - 1
        for r, bits in enumerate(row_bits):
            if bits & ~mask:
                raise ValueError(f"row {r} has entries outside {cols} columns")
        self.row_bits = row_bits

    @classmethod
    def from_entries(cls, rows: int, cols: int,
                     entries: Iterable[Tuple[int, int]]) -> "MatrixF2":
        bits = [0] * rows
        for r, c in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) out of bounds")
            bits[r] ^= 1 << c
        return cls(rows, cols, bits)

    @classmethod
    def identity(cls, n: int) -> "MatrixF2":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "MatrixF2":
        return cls(rows, cols)

    def entry(self, r: int, c: int) -> int:
        return (self.row_bits[r] >> c) & 1

    def transpose(self) -> "MatrixF2":
        cols = [0] * self.cols
        for r, bits in enumerate(self.row_bits):
            while bits:
                low = bits & -bits
                cols[low.bit_length() - 1] |= 1 << r
                bits ^= low
        return MatrixF2(self.cols, self.rows, cols)

    def apply(self, vec: int) -> int:
        """Multiply by a column vector (bitset over cols)."""
        out = 0
        for r, bits in enumerate(self.row_bits):
            if (bits & vec).bit_count() & 1:
                out |= 1 << r
        return out

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, MatrixF2) and self.rows == other.rows
                and self.cols == other.cols and self.row_bits == other.row_bits)

    def __repr__(self) -> str:
        return f"MatrixF2({self.rows}x{self.cols}, nnz={sum(b.bit_count() for b in self.row_bits)})"


def rank(m: MatrixF2) -> int:
    """Rank over GF(2) via word-wise Gaussian elimination on the rows."""
    return span_rank(m.row_bits)


def span_rank(vectors: Sequence[int]) -> int:
    """Dimension of the GF(2) span of the given bitset vectors."""
    basis: List[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


class Span:
    """Incrementally built row-reduced basis of a GF(2) subspace."""

    __slots__ = ("pivots",)

    def __init__(self, vectors: Iterable[int] = ()):  # pivots: bit -> vector
        self.pivots: Dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        while v:
            p = v.bit_length() - 1
            b = self.pivots.get(p)
            if b is None:
                return v
            v ^= b
        return 0

    def add(self, v: int) -> bool:
        """Add vector to the span; return True if it was independent."""
        v = self.reduce(v)
        if v:
            self.pivots[v.bit_length() - 1] = v
            return True
        return False

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def basis(self) -> List[int]:
        return [self.pivots[p] for p in sorted(self.pivots, reverse=True)]


def kernel_basis(m: MatrixF2) -> List[int]:
    """Basis of the null space of m, as column-vector bitsets.

    The basis has size cols - rank(m).
    """
    # Eliminate on the transpose: track, for each column combination kept,
    # the combination of original columns that produced it.
    cols = m.transpose().row_bits  # column vectors of m
    pivots: Dict[int, Tuple[int, int]] = {}  # pivot bit -> (col vec, combo)
    kernel: List[int] = []
    for j, v in enumerate(cols):
        combo = 1 << j
        while v:
            p = v.bit_length() - 1
            hit = pivots.get(p)
            if hit is None:
                break
            v ^= hit[0]
            combo ^= hit[1]
        if v:
            pivots[v.bit_length() - 1] = (v, combo)
        else:
            kernel.append(combo)
    return kernel


@dataclass(frozen=True)
class Generator:
    """A basis element of a graded complex: a stable identifier plus degree."""
    ident: str
    i: int
    j: int
    k: int


@dataclass
class GradedComplex:
    """Basis-indexed chain groups with (i,j,k) degrees and a GF(2) differential.

    The differential is stored column-sparse: ``diff[c]`` lists the row
    indices of the generators hit by generator ``c``.  Every nonzero entry
    must raise i by exactly 1 and preserve j; k may change by 0 or -2.
    """
    generators: List[Generator]
    diff: Dict[int, List[int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        gens = self.generators
        for c, targets in self.diff.items():
            gc = gens[c]
            for r in targets:
                gr = gens[r]
                if gr.i != gc.i + 1:
                    raise ValueError(
                        f"differential entry {gc.ident}->{gr.ident} has i-shift "
                        f"{gr.i - gc.i}, expected +1")
                if gr.j != gc.j:
                    raise ValueError(
                        f"differential entry {gc.ident}->{gr.ident} changes j")
                if gr.k - gc.k not in (0, -2):
                    raise ValueError(
                        f"differential entry {gc.ident}->{gr.ident} has k-shift "
                        f"{gr.k - gc.k}, expected 0 or -2")

    def differential_squares_to_zero(self) -> bool:
        for c, targets in self.diff.items():
            counts: Dict[int, int] = {}
            for r in targets:
                for r2 in self.diff.get(r, ()):
                    counts[r2] = counts.get(r2, 0) + 1
            if any(v & 1 for v in counts.values()):
                return False
        return True

    def graded_part(self) -> "GradedComplex":
        """The same complex with all k-dropping differential entries removed."""
        gens = self.generators
        gd = {c: [r for r in targets if gens[r].k == gens[c].k]
              for c, targets in self.diff.items()}
        gd = {c: t for c, t in gd.items() if t}
        return GradedComplex(gens, gd)


TrigradedDims = Dict[Tuple[int, int, int], int]


def homology_dims(cplx: GradedComplex) -> TrigradedDims:
    """Trigraded homology dimensions of a complex whose differential
    preserves both j and k.

    Computed independently per (j,k) class: the differential preserves both
    gradings, so each class is a complex in its own right and
    dim H_i = dim C_i - rank(d_i) - rank(d_{i-1}).
    """
    gens = cplx.generators
    for c, targets in cplx.diff.items():
        for r in targets:
            if gens[r].k != gens[c].k:
                raise ValueError("homology_dims requires a k-preserving differential")
    if not cplx.differential_squares_to_zero():
        raise ValueError("differential does not square to zero")

    # group generator indices by (j, k), then by i
    blocks: Dict[Tuple[int, int], Dict[int, List[int]]] = {}
    for idx, g in enumerate(gens):
        blocks.setdefault((g.j, g.k), {}).setdefault(g.i, []).append(idx)

    dims: TrigradedDims = {}
    for (j, k), by_i in blocks.items():
        ranks: Dict[int, int] = {}
        for i, col_idxs in by_i.items():
            row_idxs = by_i.get(i + 1, [])
            if not row_idxs:
                ranks[i] = 0
                continue
            row_pos = {g: pos for pos, g in enumerate(row_idxs)}
            vectors = []
            for c in col_idxs:
                v = 0
                for r in cplx.diff.get(c, ()):
                    pos = row_pos.get(r)
                    if pos is not None:
                        v |= 1 << pos
                vectors.append(v)
            ranks[i] = span_rank(vectors)
        for i, col_idxs in by_i.items():
            h = len(col_idxs) - ranks.get(i, 0) - ranks.get(i - 1, 0)
            if h:
                dims[(i, j, k)] = h
    return dims


def euler_characteristic(dims: TrigradedDims) -> Dict[Tuple[int, int], int]:
    """Sum of (-1)^i dims, per (j, k) class."""
    chi: Dict[Tuple[int, int], int] = {}
    for (i, j, k), d in dims.items():
        chi[(j, k)] = chi.get((j, k), 0) + (d if i % 2 == 0 else -d)
    return {jk: c for jk, c in chi.items() if c}

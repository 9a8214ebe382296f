"""Independent brute-force plain Khovanov homology over GF(2), for braids.

Deliberately separate from the package under test: standard textbook
conventions (0-smoothing = A-smoothing, i = |I| - n_minus,
j = deg + |I| + n_plus - 2 n_minus), circles via union-find on wire
segments of the braid, homology via naive set-based row reduction.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Sequence, Tuple


class _UnionFind:
    def __init__(self):
        self.parent: Dict[tuple, tuple] = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _state_circles(strands: int, word: Sequence[int],
                   state: Sequence[int]) -> List[frozenset]:
    """Circles of a smoothed braid closure, as sets of wire nodes.

    Nodes are (layer, position).  The A-smoothing of a positive crossing is
    the identity smoothing (wires pass through); the B-smoothing is the
    cap-cup.  State bit 0 selects A for positive letters and B for negative
    ones, matching the usual 0/1 convention.
    """
    uf = _UnionFind()
    L = len(word)
    for m, letter in enumerate(word):
        p = abs(letter) - 1
        positive = letter > 0
        identity = (state[m] == 0) if positive else (state[m] == 1)
        for pos in range(strands):
            if pos in (p, p + 1) and not identity:
                continue
            uf.union((m, pos), (m + 1, pos))
        if not identity:
            uf.union((m, p), (m, p + 1))
            uf.union((m + 1, p), (m + 1, p + 1))
    for pos in range(strands):
        uf.union((L, pos), (0, pos))
    groups: Dict[tuple, set] = {}
    for m in range(L + 1):
        for pos in range(strands):
            groups.setdefault(uf.find((m, pos)), set()).add((m, pos))
    return [frozenset(g) for g in groups.values()]


def _rank_gf2(rows: List[frozenset]) -> int:
    """Rank of a GF(2) matrix given as rows of column-index sets."""
    reduced: List[set] = []
    for row in rows:
        cur = set(row)
        changed = True
        while changed and cur:
            changed = False
            for b in reduced:
                if max(b) in cur:
                    cur ^= b
                    changed = True
        if cur:
            reduced.append(cur)
    return len(reduced)


def kh_gf2_braid(strands: int, word: Sequence[int]) -> Dict[Tuple[int, int], int]:
    """Bigraded dims of plain GF(2) Khovanov homology of a braid closure."""
    L = len(word)
    n_plus = sum(1 for v in word if v > 0)
    n_minus = L - n_plus

    states = list(itertools.product((0, 1), repeat=L))
    circles = {s: sorted(_state_circles(strands, word, s), key=min)
               for s in states}

    # generators: (state, labels) with labels a bit per circle (1 = "X")
    gen_index: Dict[Tuple[Tuple[int, ...], int], int] = {}
    gen_info = []
    for s in states:
        for lab in range(1 << len(circles[s])):
            gen_index[(s, lab)] = len(gen_info)
            gen_info.append((s, lab))

    def bigrading(s, lab):
        w = sum(s)
        c = len(circles[s])
        deg = (c - lab.bit_count()) - lab.bit_count()
        return (w - n_minus, deg + w + n_plus - 2 * n_minus)

    # differential columns
    cols: Dict[int, List[int]] = {}
    for s in states:
        for m in range(L):
            if s[m]:
                continue
            s2 = tuple(b if idx != m else 1 for idx, b in enumerate(s))
            src_c, dst_c = circles[s], circles[s2]
            # correspondences by node-set inclusion
            changed_src = [a for a, cs in enumerate(src_c)
                           if cs not in dst_c]
            changed_dst = [b for b, cs in enumerate(dst_c)
                           if cs not in src_c]
            keep = {a: dst_c.index(cs) for a, cs in enumerate(src_c)
                    if cs in dst_c}
            for lab in range(1 << len(src_c)):
                rest = 0
                for a, b in keep.items():
                    if lab >> a & 1:
                        rest |= 1 << b
                outs = []
                if len(changed_src) == 2:      # merge: m(1,1)=1, m(1,X)=X, m(X,X)=0
                    xa = lab >> changed_src[0] & 1
                    xb = lab >> changed_src[1] & 1
                    if not (xa and xb):
                        outs.append(rest | ((xa | xb) << changed_dst[0]))
                else:                           # split: D(1)=1X+X1, D(X)=XX
                    xa = lab >> changed_src[0] & 1
                    b1, b2 = changed_dst
                    if xa:
                        outs.append(rest | 1 << b1 | 1 << b2)
                    else:
                        outs.append(rest | 1 << b1)
                        outs.append(rest | 1 << b2)
                src_idx = gen_index[(s, lab)]
                cols.setdefault(src_idx, []).extend(
                    gen_index[(s2, o)] for o in outs)

    # homology per j, ranks per i
    by_j: Dict[int, Dict[int, List[int]]] = {}
    grading = [bigrading(s, lab) for s, lab in gen_info]
    for idx, (i, j) in enumerate(grading):
        by_j.setdefault(j, {}).setdefault(i, []).append(idx)

    dims: Dict[Tuple[int, int], int] = {}
    for j, by_i in by_j.items():
        ranks: Dict[int, int] = {}
        for i, idxs in by_i.items():
            rows = []
            target = set(by_i.get(i + 1, []))
            for c in idxs:
                row = frozenset(x for x in cols.get(c, [])
                                if x in target and cols.get(c, []).count(x) % 2)
                rows.append(row)
            ranks[i] = _rank_gf2(rows)
        for i, idxs in by_i.items():
            h = len(idxs) - ranks.get(i, 0) - ranks.get(i - 1, 0)
            if h:
                dims[(i, j)] = h
    return dims

"""Property battery run over corpus diagrams.

Each check returns (name, ok, detail); the CLI ``check`` command and the
acceptance suite share these.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Tuple

from . import khovanov, sfh, spectral, tangle
from .diagram import AnnularDiagram, finger_move
from .gf2 import euler_characteristic as homology_euler

CheckResult = Tuple[str, bool, str]


def _all_resolutions(d: AnnularDiagram):
    for bits in itertools.product((0, 1), repeat=d.n_crossings):
        yield d.resolve(bits)


def check_rank_law(d: AnnularDiagram) -> CheckResult:
    """Both model spaces have total dimension 2^(t+n) at every resolution."""
    for r in _all_resolutions(d):
        want = 1 << (r.t + r.n)
        got_cover = sfh.cover_space(r).total_dim
        got_cube = len(khovanov.generators(r))
        if got_cover != want or got_cube != want:
            return ("rank-law", False,
                    f"resolution {r.bitstring}: cover {got_cover}, cube "
                    f"{got_cube}, expected {want}")
    return ("rank-law", True, "2^(t+n) at every resolution")


def check_equivalence_all(d: AnnularDiagram) -> CheckResult:
    """The cube/cover bigraded dictionary holds at every resolution."""
    for r in _all_resolutions(d):
        rep = sfh.check_equivalence(r)
        if not rep.ok:
            return ("resolved-equivalence", False,
                    f"resolution {r.bitstring}: {rep.detail}")
    return ("resolved-equivalence", True, "all resolutions match")


def check_abutment(d: AnnularDiagram,
                   fc: Optional[khovanov.FilteredComplex] = None) -> CheckResult:
    """The stable page totals over k agree with the unfiltered homology."""
    if fc is None:
        fc = khovanov.build_filtered_complex(d)
    einf = spectral.e_infinity(fc)
    collapsed: Dict[Tuple[int, int], int] = {}
    for (i, j, _k), v in einf.dims.items():
        collapsed[(i, j)] = collapsed.get((i, j), 0) + v
    total = khovanov.total_homology(fc)
    if collapsed != total:
        diff = {ij for ij in set(collapsed) | set(total)
                if collapsed.get(ij, 0) != total.get(ij, 0)}
        return ("abutment", False, f"mismatch at (i,j) in {sorted(diff)}")
    return ("abutment", True, "stable page abuts to the unfiltered homology")


def check_euler(d: AnnularDiagram,
                fc: Optional[khovanov.FilteredComplex] = None) -> CheckResult:
    """Chain-level and homology-level graded Euler characteristics agree."""
    if fc is None:
        fc = khovanov.build_filtered_complex(d)
    chain = khovanov.euler_characteristic(fc)
    hom = homology_euler(khovanov.annular_homology(fc))
    if chain != hom:
        return ("euler-conservation", False,
                f"chain {chain} != homology {hom}")
    return ("euler-conservation", True, "chi agrees at chain and homology level")


def check_summand(d: AnnularDiagram,
                  fc: Optional[khovanov.FilteredComplex] = None) -> CheckResult:
    """The tangle complex is the k=n block, and homologies agree there."""
    if fc is None:
        fc = khovanov.build_filtered_complex(d)
    rep = tangle.summand_check(d, fc)
    if not rep.ok:
        return ("summand", False, rep.detail)
    if rep.verdict == "summand":
        t_dims = tangle.tangle_homology(d)
        a_dims: Dict[Tuple[int, int], int] = {}
        for (i, j, k), v in khovanov.annular_homology(fc).items():
            if k == rep.n:
                a_dims[(i, j)] = a_dims.get((i, j), 0) + v
        if t_dims != a_dims:
            return ("summand", False,
                    f"homology mismatch: tangle {t_dims} vs k={rep.n} "
                    f"block {a_dims}")
    return ("summand", True, f"verdict {rep.verdict}: {rep.detail}")


def check_finger_trivial(d: AnnularDiagram,
                         fc: Optional[khovanov.FilteredComplex] = None) -> CheckResult:
    """A finger move across the ray forces the trivial verdict but leaves the
    annular homology untouched."""
    if fc is None:
        fc = khovanov.build_filtered_complex(d)
    moved = finger_move(d)
    fc2 = khovanov.build_filtered_complex(moved)
    rep = tangle.summand_check(moved, fc2)
    if rep.verdict != "trivial" or not rep.ok:
        return ("finger-triviality", False,
                f"verdict {rep.verdict}: {rep.detail}")
    if khovanov.annular_homology(fc) != khovanov.annular_homology(fc2):
        return ("finger-triviality", False,
                "annular homology changed under the finger move")
    return ("finger-triviality", True,
            "trivial verdict, annular homology unchanged")


def run_battery(d: AnnularDiagram) -> List[CheckResult]:
    fc = khovanov.build_filtered_complex(d)
    return [
        check_rank_law(d),
        check_equivalence_all(d),
        check_abutment(d, fc),
        check_euler(d, fc),
        check_summand(d, fc),
        check_finger_trivial(d, fc),
    ]

"""Command-line front end.

Commands: ``kh`` (annular homology), ``ss`` (spectral sequence pages),
``sfh`` (resolved-diagram cover invariant), ``cut`` (tangle and summand
check), ``euler`` (graded Euler characteristic), ``check`` (corpus battery).

Exit codes: 0 success, 1 a requested check failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from . import khovanov, sfh, spectral, tangle, verify
from .diagram import AnnularDiagram, DiagramError, load


def _fmt_num(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else str(x)
    return str(x)


def _dims_rows(dims: Dict[Tuple[int, int, int], int]) -> List[dict]:
    rows = [{"i": i, "j": j, "k": k, "dim": d}
            for (i, j, k), d in dims.items()]
    rows.sort(key=lambda r: (-r["i"], -r["j"], -r["k"]))
    return rows


def _poincare(dims: Dict[Tuple[int, int, int], int]) -> str:
    """Poincare polynomial in u (homological), q, t; descending i, j, k."""
    terms = []
    for (i, j, k), d in sorted(dims.items(), key=lambda p: (-p[0][0], -p[0][1], -p[0][2])):
        factors = [] if d == 1 else [str(d)]
        for var, e in (("u", i), ("q", j), ("t", k)):
            if e:
                factors.append(f"{var}^{e}" if e != 1 else var)
        terms.append("*".join(factors) or "1")
    return " + ".join(terms) if terms else "0"


def _chi_poly(chi: Dict[Tuple[int, int], int]) -> str:
    terms = []
    for (j, k), c in sorted(chi.items(), key=lambda p: (-p[0][0], -p[0][1])):
        if c == 0:
            continue
        mag = [] if abs(c) == 1 else [str(abs(c))]
        for var, e in (("q", j), ("t", k)):
            if e:
                mag.append(f"{var}^{e}" if e != 1 else var)
        term = "*".join(mag) or "1"
        terms.append(("-" if c < 0 else "+", term))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, term in terms[1:]:
        out += f" {sign} {term}"
    return out


def _emit(report: dict, args) -> None:
    if args.format == "structured":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = _render_table(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _render_table(report: dict) -> str:
    lines = [f"diagram: {report['diagram']}", f"command: {report['command']}"]
    for key, value in report.items():
        if key in ("diagram", "command", "dims", "checks", "polynomials"):
            continue
        lines.append(f"{key}: {value}")
    dims = report.get("dims")
    if dims:
        keys = [k for k in ("i", "j", "k", "a", "m", "r") if k in dims[0]]
        lines.append("  ".join(f"{k:>5}" for k in keys) + f"  {'dim':>5}")
        for row in dims:
            lines.append("  ".join(f"{str(row[k]):>5}" for k in keys)
                         + f"  {row['dim']:>5}")
    for name, text in (report.get("polynomials") or {}).items():
        lines.append(f"{name}: {text}")
    for chk in report.get("checks", ()):
        mark = "PASS" if chk["pass"] else "FAIL"
        lines.append(f"[{mark}] {chk['name']}: {chk['detail']}")
    return "\n".join(lines) + "\n"


def _checks_pass(report: dict) -> bool:
    return all(c["pass"] for c in report.get("checks", ()))


# -- commands ----------------------------------------------------------------

def cmd_kh(d: AnnularDiagram, args) -> dict:
    fc = khovanov.build_filtered_complex(d, workers=args.threads)
    dims = khovanov.annular_homology(fc)
    return {
        "diagram": d.name, "command": "kh",
        "dims": _dims_rows(dims),
        "polynomials": {"poincare": _poincare(dims)},
        "checks": [],
    }


def cmd_ss(d: AnnularDiagram, args) -> dict:
    fc = khovanov.build_filtered_complex(d, workers=args.threads)
    pages = spectral.pages(fc, r_max=args.rmax)
    einf = spectral.e_infinity(fc)
    abut = verify.check_abutment(d, fc)
    page_rows = [{"r": p.r,
                  "dims": _dims_rows(p.dims),
                  "total_dim": p.total_dim,
                  "stable": not p.differentials_present}
                 for p in pages]
    return {
        "diagram": d.name, "command": "ss",
        "pages": page_rows,
        "dims": _dims_rows(einf.dims),
        "polynomials": {"stable_poincare": _poincare(einf.dims)},
        "checks": [{"name": abut[0], "pass": abut[1], "detail": abut[2]}],
    }


def cmd_sfh(d: AnnularDiagram, args) -> dict:
    bits = tuple(int(b) for b in args.bits) if args.bits else ()
    if any(b not in (0, 1) for b in bits):
        raise DiagramError("resolution bits must be 0 or 1")
    r = d.resolve(bits)
    cs = sfh.cover_space(r)
    ranks = sfh.predicted_ranks(r)
    eq = sfh.check_equivalence(r)
    rows = [{"a": _fmt_num(a), "m": _fmt_num(m), "dim": n}
            for (a, m), n in sorted(cs.dims().items(), reverse=True)]
    report = {
        "diagram": d.name, "command": "sfh",
        "resolution": r.bitstring,
        "t": cs.t, "n": cs.n, "parity": cs.parity,
        "rank": ranks.rank,
        "shape": ranks.shape,
        "dims": rows,
        "checks": [{"name": "resolved-equivalence", "pass": eq.ok,
                    "detail": eq.detail}],
    }
    if ranks.ambiguous_shift:
        report["alternate_shape"] = ranks.alternate_shape
        report["shape_ambiguous"] = True
    return report


def cmd_cut(d: AnnularDiagram, args) -> dict:
    fc = khovanov.build_filtered_complex(d, workers=args.threads)
    t = tangle.cut(d)
    rep = tangle.summand_check(d, fc)
    ell = d.n_crossings
    backtracking = 0
    for idx in range(1 << ell):
        bits = tuple((idx >> (ell - 1 - c)) & 1 for c in range(ell))
        if tangle.resolve_tangle(t, bits).backtracking:
            backtracking += 1
    t_dims = tangle.tangle_homology(t)
    a_dims: Dict[Tuple[int, int], int] = {}
    for (i, j, k), v in khovanov.annular_homology(fc).items():
        if k == t.n:
            a_dims[(i, j)] = a_dims.get((i, j), 0) + v
    side = [{"i": i, "j": j,
             "tangle": t_dims.get((i, j), 0),
             "annular_top_block": a_dims.get((i, j), 0)}
            for (i, j) in sorted(set(t_dims) | set(a_dims),
                                 key=lambda p: (-p[0], -p[1]))]
    return {
        "diagram": d.name, "command": "cut",
        "n": t.n,
        "resolutions": 1 << ell,
        "backtracking_resolutions": backtracking,
        "verdict": rep.verdict,
        "comparison": side,
        "dims": [{"i": i, "j": j, "k": t.n, "dim": v}
                 for (i, j), v in sorted(t_dims.items(),
                                         key=lambda p: (-p[0][0], -p[0][1]))],
        "checks": [{"name": "summand", "pass": rep.ok, "detail": rep.detail}],
    }


def cmd_euler(d: AnnularDiagram, args) -> dict:
    fc = khovanov.build_filtered_complex(d, workers=args.threads)
    chk = verify.check_euler(d, fc)
    chi = khovanov.euler_characteristic(fc)
    return {
        "diagram": d.name, "command": "euler",
        "polynomials": {"euler": _chi_poly(chi)},
        "dims": [],
        "checks": [{"name": chk[0], "pass": chk[1], "detail": chk[2]}],
    }


def cmd_check(args) -> int:
    root = Path(args.path)
    if not root.is_dir():
        sys.stderr.write(f"error: {root} is not a directory\n")
        return 2
    files = sorted(root.glob("*.json"))
    if not files:
        sys.stdout.write(f"warning: no diagram files in {root}\n")
        return 0
    failed = 0
    lines = []
    for path in files:
        try:
            d = load(path)
            results = verify.run_battery(d)
        except DiagramError as exc:
            results = [("validate", False, str(exc))]
        for name, ok, detail in results:
            mark = "PASS" if ok else "FAIL"
            lines.append(f"[{mark}] {path.name} :: {name}: {detail}")
            if not ok:
                failed += 1
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 1 if failed else 0


# -- entry point -------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "structured"),
                        default="table")
    common.add_argument("--out", default=None)
    common.add_argument("--threads", type=int, default=None)

    p = argparse.ArgumentParser(prog="annkh",
                                description="annular Khovanov homology toolkit")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("kh", "cut", "euler"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("file")
    sp = sub.add_parser("ss", parents=[common])
    sp.add_argument("file")
    sp.add_argument("--rmax", type=int, default=None)
    sp = sub.add_parser("sfh", parents=[common])
    sp.add_argument("file")
    sp.add_argument("--bits", required=True)
    sp = sub.add_parser("check", parents=[common])
    sp.add_argument("path")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    if args.threads is None:
        env = os.environ.get("ANNULARKH_THREADS")
        args.threads = int(env) if env else 1

    if args.command == "check":
        return cmd_check(args)

    try:
        d = load(args.file)
    except FileNotFoundError:
        sys.stderr.write(f"error: no such file: {args.file}\n")
        return 2
    except DiagramError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2

    handlers = {"kh": cmd_kh, "ss": cmd_ss, "sfh": cmd_sfh,
                "cut": cmd_cut, "euler": cmd_euler}
    try:
        report = handlers[args.command](d, args)
    except DiagramError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    _emit(report, args)
    return 0 if _checks_pass(report) else 1


if __name__ == "__main__":
    sys.exit(main())

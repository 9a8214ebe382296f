"""Regenerate the committed diagram corpus.

Usage: python3 tools/make_corpus.py [corpus-dir]

Layout:
  main/      diagrams for the property battery (``annkh check corpus/main``)
  pairs/     Reidemeister-related pairs <name>__a.json / <name>__b.json
  perf/      the 12-crossing performance diagram
  fixtures/  deliberately broken inputs (never expected to validate)
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from annkh.build import add_kink, braid_closure  # noqa: E402
from annkh.diagram import AnnularDiagram, FreeLoop  # noqa: E402


def _with_loop(d: AnnularDiagram, winding: int) -> AnnularDiagram:
    loops = list(d.free_loops) + [FreeLoop(f"u{len(d.free_loops) + 9}", winding)]
    return AnnularDiagram(d.name + "+loop", d.crossings, d.edges, loops)


def main_diagrams():
    loop1 = AnnularDiagram("loop1", [], [], [FreeLoop("u1", 1)])
    loop0 = AnnularDiagram("loop0", [], [], [FreeLoop("u1", 0)])
    two_loops = AnnularDiagram("two_loops", [], [],
                               [FreeLoop("u1", 1), FreeLoop("u2", 0)])
    doubled_loop = AnnularDiagram("doubled_loop", [], [],
                                  [FreeLoop("u1", 0, (1, -1))])
    yield loop1
    yield loop0
    yield two_loops
    yield doubled_loop
    yield braid_closure("sigma1", 2, [1], 1)
    yield braid_closure("sigma1_neg", 2, [-1], 1)
    yield braid_closure("twist_neg2", 2, [-1, -1], 1)
    yield braid_closure("hopf_ann", 2, [1, 1], 1)
    yield braid_closure("hopf_disk", 2, [1, 1], 0)
    yield braid_closure("rtrefoil_disk", 2, [1, 1, 1], 0)
    yield braid_closure("rtrefoil_ann", 2, [1, 1, 1], 1)
    yield braid_closure("ltrefoil_ann", 2, [-1, -1, -1], 1)
    yield braid_closure("sol4_ann", 2, [1, 1, 1, 1], 1)
    yield braid_closure("neg4_ann", 2, [-1, -1, -1, -1], 1)
    yield braid_closure("torus5_ann", 2, [1, 1, 1, 1, 1], 1)
    yield braid_closure("torus6_disk", 2, [1, 1, 1, 1, 1, 1], 0)
    yield braid_closure("fig8_ann", 3, [1, -2, 1, -2], 1)
    yield braid_closure("fig8_disk", 3, [1, -2, 1, -2], 0)
    yield braid_closure("braid3_pos", 3, [1, 2, 1, 2], 1)
    yield braid_closure("mixed5_ann", 3, [1, -2, 1, -2, 1], 1)
    yield braid_closure("braid3_6_disk", 3, [1, 2, 1, 2, 1, 2], 0)
    yield _with_loop(braid_closure("sigma1", 2, [1], 1), 0)


def pair_diagrams():
    s1 = braid_closure("sigma1", 2, [1], 1)
    hopf = braid_closure("hopf_ann", 2, [1, 1], 1)
    tre = braid_closure("rtrefoil_disk", 2, [1, 1, 1], 0)
    yield "r1_pos_sigma1", s1, add_kink(s1, "e2", 1)
    yield "r1_neg_sigma1", s1, add_kink(s1, "e2", -1)
    yield "r1_pos_trefoil", tre, add_kink(tre, "e1", 1)
    yield "r1_neg_hopf", hopf, add_kink(hopf, "e1", -1)
    yield ("r2_sigma1", s1, braid_closure("sigma1_r2", 2, [1, 1, -1], 1))
    yield ("r2_trefoil", tre,
           braid_closure("rtrefoil_r2", 2, [1, 1, 1, 1, -1], 0))
    yield ("r2_neg", braid_closure("sigma1_neg", 2, [-1], 1),
           braid_closure("sigma1_neg_r2", 2, [-1, 1, -1], 1))
    yield ("r3_basic", braid_closure("r3_a", 3, [1, 2, 1], 1),
           braid_closure("r3_b", 3, [2, 1, 2], 1))
    yield ("r3_context", braid_closure("r3c_a", 3, [1, 2, 1, 2], 1),
           braid_closure("r3c_b", 3, [2, 1, 2, 2], 1))
    yield ("conj_12", braid_closure("conj_a", 3, [1, 2], 1),
           braid_closure("conj_b", 3, [2, 1], 1))
    yield ("conj_fig8", braid_closure("fig8_ann", 3, [1, -2, 1, -2], 1),
           braid_closure("fig8_conj", 3, [-2, 1, -2, 1], 1))
    yield ("far_commute", braid_closure("far_a", 4, [1, 3], 1),
           braid_closure("far_b", 4, [3, 1], 1))


def perf_diagram():
    return braid_closure("perf12", 4, [1, 2, 3] * 4, 1)


def missigned_fixture() -> dict:
    """A diagram whose edge directions contradict the crossing slots."""
    data = braid_closure("sigma1", 2, [1], 1).to_dict()
    data["name"] = "missigned"
    bad = data["edges"][0]
    bad["from"], bad["to"] = bad["to"], bad["from"]
    return data


def write(root: Path) -> None:
    for sub in ("main", "pairs", "perf", "fixtures"):
        (root / sub).mkdir(parents=True, exist_ok=True)
    for d in main_diagrams():
        (root / "main" / f"{d.name}.json").write_text(d.to_json())
    for name, a, b in pair_diagrams():
        (root / "pairs" / f"{name}__a.json").write_text(a.to_json())
        (root / "pairs" / f"{name}__b.json").write_text(b.to_json())
    d = perf_diagram()
    (root / "perf" / f"{d.name}.json").write_text(d.to_json())
    fx = missigned_fixture()
    (root / "fixtures" / "missigned.json").write_text(
        json.dumps(fx, indent=2) + "\n")


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else \
        Path(__file__).resolve().parent.parent / "corpus"
    write(target)
    print(f"corpus written to {target}")

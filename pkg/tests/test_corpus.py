"""The committed diagram corpus is well-formed and regenerable."""

import itertools
from pathlib import Path

import pytest

from annkh.diagram import DiagramError, load

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def main_files():
    return sorted((CORPUS / "main").glob("*.json"))


def test_corpus_exists():
    for sub in ("main", "pairs", "perf", "fixtures"):
        assert (CORPUS / sub).is_dir()
    assert main_files()


def test_main_diagrams_validate():
    for path in main_files():
        d = load(path)
        assert d.n_crossings <= 10


def test_resolution_census():
    total = 0
    span = set()
    for path in main_files():
        d = load(path)
        total += 1 << d.n_crossings
        for bits in itertools.product((0, 1), repeat=d.n_crossings):
            r = d.resolve(bits)
            span.add(r.t + r.n)
    assert total >= 200
    assert span >= {1, 2, 3, 4, 5, 6}


def test_pairs_come_in_pairs():
    files = sorted((CORPUS / "pairs").glob("*.json"))
    bases = {}
    for p in files:
        base, side = p.stem.rsplit("__", 1)
        bases.setdefault(base, set()).add(side)
    assert len(bases) >= 10
    assert all(sides == {"a", "b"} for sides in bases.values())


def test_perf_diagram_has_twelve_crossings():
    d = load(CORPUS / "perf" / "perf12.json")
    assert d.n_crossings == 12


def test_missigned_fixture_rejected():
    with pytest.raises(DiagramError, match="orientation"):
        load(CORPUS / "fixtures" / "missigned.json")


def test_corpus_matches_generator(tmp_path):
    import subprocess
    import sys
    tool = CORPUS.parent / "tools" / "make_corpus.py"
    subprocess.run([sys.executable, str(tool), str(tmp_path)], check=True,
                   capture_output=True)
    ours = sorted(p.relative_to(CORPUS) for p in CORPUS.rglob("*.json"))
    theirs = sorted(p.relative_to(tmp_path) for p in tmp_path.rglob("*.json"))
    assert ours == theirs
    for rel in ours:
        assert (CORPUS / rel).read_text() == (tmp_path / rel).read_text()

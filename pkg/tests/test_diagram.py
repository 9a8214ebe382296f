"""Diagram parsing, validation, smoothing, and winding bookkeeping."""

import itertools
import json

import pytest
from hypothesis import given, strategies as st

from annkh.build import braid_closure
from annkh.diagram import (AnnularDiagram, DiagramError, Edge, FreeLoop,
                           finger_move, load, negate_windings, parse)

SIGMA1 = braid_closure("sigma1", 2, [1], 1)


def small_words():
    return st.integers(2, 3).flatmap(
        lambda s: st.tuples(
            st.just(s),
            st.lists(st.sampled_from([v for v in range(-s + 1, s) if v]),
                     max_size=4)))


def test_sigma1_shape():
    assert SIGMA1.n_crossings == 1
    assert SIGMA1.crossing_signs() == (1, 0)
    assert SIGMA1.total_winding_parity() == 0


def test_resolutions_of_sigma1():
    r0 = SIGMA1.resolve((0,))
    assert (r0.t, r0.n) == (1, 0)          # one trivial circle
    r1 = SIGMA1.resolve((1,))
    assert (r1.t, r1.n) == (0, 2)          # two winding-1 circles


def test_resolution_length_checked():
    with pytest.raises(DiagramError, match="resolution length"):
        SIGMA1.resolve((0, 1))
    with pytest.raises(DiagramError):
        SIGMA1.resolve((2,))


def test_duplicate_edge_rejected():
    with pytest.raises(DiagramError, match="duplicate"):
        AnnularDiagram("bad", [], [], [FreeLoop("u", 0), FreeLoop("u", 1)])


def test_edge_multiplicity_rejected():
    data = SIGMA1.to_dict()
    data["crossings"][0]["slots"][1] = data["crossings"][0]["slots"][0]
    with pytest.raises(DiagramError, match="edge multiplicity"):
        parse(json.dumps(data))


def test_orientation_consistency_rejected():
    data = SIGMA1.to_dict()
    e = data["edges"][0]
    e["from"], e["to"] = e["to"], e["from"]
    with pytest.raises(DiagramError, match="orientation"):
        parse(json.dumps(data))


def test_ray_signs_must_sum_to_winding():
    with pytest.raises(DiagramError, match="sum"):
        Edge("e", ("x", 0), ("x", 2), 1, (1, 1))


def test_circle_winding_bound():
    loop = AnnularDiagram("w2", [], [], [])
    with pytest.raises(DiagramError, match="winding"):
        AnnularDiagram("w2", [], [], [FreeLoop("u", 2)])
    assert loop.n_crossings == 0


def test_json_round_trip(tmp_path):
    path = tmp_path / "d.json"
    path.write_text(SIGMA1.to_json())
    d2 = load(path)
    assert d2.to_dict() == SIGMA1.to_dict()


def test_malformed_json():
    with pytest.raises(DiagramError, match="JSON"):
        parse("{not json")


def test_mirror_is_involution():
    for word, w in ([1], 1), ([1, 1, 1], 0), ([1, -2, 1, -2], 1):
        d = braid_closure("d", max(abs(v) for v in word) + 1, word, w)
        m = d.mirror()
        assert m.crossing_signs() == tuple(reversed(d.crossing_signs()))
        assert m.mirror().to_dict() == d.to_dict()


@given(small_words())
def test_winding_parity_is_resolution_independent(sw):
    strands, word = sw
    d = braid_closure("w", strands, word, 1)
    p = d.total_winding_parity()
    for bits in itertools.product((0, 1), repeat=len(word)):
        r = d.resolve(bits)
        assert sum(c.winding for c in r.circles) % 2 == p
        assert r.parity == (r.n & 1)


def test_negate_windings():
    d = negate_windings(SIGMA1)
    r = d.resolve((1,))
    assert sorted(c.winding for c in r.circles) == [-1, -1]


def test_finger_move_bookkeeping():
    d = finger_move(SIGMA1)
    assert d.total_geometric_ray_crossings() == \
        SIGMA1.total_geometric_ray_crossings() + 2
    assert d.total_winding_parity() == SIGMA1.total_winding_parity()
    loop_d = finger_move(AnnularDiagram("l", [], [], [FreeLoop("u", 0)]))
    assert loop_d.free_loops[0].ray_signs == (1, -1)
    with pytest.raises(DiagramError, match="no edge"):
        finger_move(SIGMA1, "zzz")

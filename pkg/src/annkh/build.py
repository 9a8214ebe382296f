"""Programmatic diagram construction: braid closures and local moves.

Closures of braid words give a convenient supply of annular diagrams.  The
braid runs top to bottom in a disk away from the cut ray; the closure strands
return around the annulus, each crossing the ray once (``closure_winding=1``)
or staying inside a disk (``closure_winding=0``).

Crossing slots follow the package convention (counterclockwise from the
incoming under-strand).  For a positive braid letter the strand entering from
the upper left passes over; compass corners map to slots as
NE,NW,SW,SE -> 0,1,2,3 (positive) or 3,0,1,2 (negative).
"""

from __future__ import annotations

from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import AnnularDiagram, Crossing, Edge, Endpoint, FreeLoop

_POS_SLOTS = {"NE": 0, "NW": 1, "SW": 2, "SE": 3}
_NEG_SLOTS = {"NE": 3, "NW": 0, "SW": 1, "SE": 2}


def braid_closure(name: str, strands: int, word: Sequence[int],
                  closure_winding: int = 1) -> AnnularDiagram:
    """The annular closure of a braid word.

    ``word`` lists nonzero letters: ``+p`` is a positive crossing of strands
    p and p+1 (1-based), ``-p`` the negative one.
    """
    for v in word:
        if v == 0 or abs(v) >= strands:
            raise ValueError(f"letter {v} invalid for {strands} strands")

    slot_edge: Dict[Tuple[str, int], str] = {}
    edge_specs: List[Tuple[str, Endpoint, Endpoint, int]] = []
    counter = 0

    def new_edge(src: Optional[Endpoint], dst: Endpoint, winding: int) -> str:
        nonlocal counter
        counter += 1
        ident = f"e{counter}"
        edge_specs.append((ident, src, dst, winding))  # type: ignore[arg-type]
        if src is not None:
            slot_edge[src] = ident
        slot_edge[dst] = ident
        return ident

    loose: List[Optional[Endpoint]] = [None] * strands
    top_entry: List[Optional[Endpoint]] = [None] * strands
    crossing_ids: List[str] = []

    for m, v in enumerate(word):
        p, sign = abs(v) - 1, (1 if v > 0 else -1)
        xid = f"x{m + 1}"
        crossing_ids.append(xid)
        slots = _POS_SLOTS if sign > 0 else _NEG_SLOTS
        for pos, corner in ((p, "NW"), (p + 1, "NE")):
            dst = (xid, slots[corner])
            if loose[pos] is None:
                top_entry[pos] = dst
            else:
                new_edge(loose[pos], dst, 0)
            loose[pos] = None
        loose[p] = (xid, slots["SW"])
        loose[p + 1] = (xid, slots["SE"])

    free_loops: List[FreeLoop] = []
    n_loops = 0
    for pos in range(strands):
        if loose[pos] is None:
            n_loops += 1
            free_loops.append(FreeLoop(f"u{n_loops}", closure_winding))
        else:
            new_edge(loose[pos], top_entry[pos], closure_winding)

    # the pending top entries were all resolved by the closure pass above
    edges = [Edge(ident, src, dst, winding)
             for ident, src, dst, winding in edge_specs]
    crossings = []
    for m, v in enumerate(word):
        xid = crossing_ids[m]
        crossings.append(Crossing(
            xid, tuple(slot_edge[(xid, s)] for s in range(4))))  # type: ignore[arg-type]
    return AnnularDiagram(name, crossings, edges, free_loops)


def add_kink(d: AnnularDiagram, edge_ident: str, sign: int = 1,
             name: Optional[str] = None) -> AnnularDiagram:
    """Insert a twist (first Reidemeister move) on an edge, away from the ray.

    The kink sits past the edge's ray crossings, so the original edge keeps
    its winding data and the two new edges carry none.
    """
    if sign not in (1, -1):
        raise ValueError("kink sign must be +-1")
    old = d.edge(edge_ident)
    n = 0
    while f"kink{n}" in {x.ident for x in d.crossings}:
        n += 1
    xid = f"kink{n}"
    loop_id, exit_id = f"{edge_ident}_kl", f"{edge_ident}_kx"

    if sign == 1:
        loop = Edge(loop_id, (xid, 2), (xid, 1), 0)
        exit_edge = Edge(exit_id, (xid, 3), old.dst, 0)
    else:
        loop = Edge(loop_id, (xid, 2), (xid, 3), 0)
        exit_edge = Edge(exit_id, (xid, 1), old.dst, 0)
    trimmed = replace(old, dst=(xid, 0))

    slot_edge = {0: edge_ident, 2: loop_id}
    if sign == 1:
        slot_edge[1], slot_edge[3] = loop_id, exit_id
    else:
        slot_edge[3], slot_edge[1] = loop_id, exit_id
    kink = Crossing(xid, tuple(slot_edge[s] for s in range(4)))  # type: ignore[arg-type]

    edges = [trimmed if e.ident == edge_ident else e for e in d.edges]
    edges += [loop, exit_edge]
    # the crossing at the old head now receives the exit edge instead
    head_xid, head_slot = old.dst
    crossings = []
    for x in d.crossings:
        if x.ident == head_xid:
            slots = list(x.slots)
            slots[head_slot] = exit_id
            x = Crossing(x.ident, tuple(slots))  # type: ignore[arg-type]
        crossings.append(x)
    crossings.append(kink)
    return AnnularDiagram(name or f"{d.name}+kink", crossings, edges,
                          d.free_loops)

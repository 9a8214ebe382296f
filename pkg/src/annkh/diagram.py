"""Annular link diagrams: parsing, validation, smoothing, winding bookkeeping.

A diagram lives in an annulus with a fixed cut ray; the ray itself is never
represented geometrically.  Each edge records the signed sequence of its
transverse crossings with the ray (``ray_signs``); the algebraic sum is the
edge's winding contribution.

Crossing slots are listed counterclockwise starting from the incoming
under-strand, so slot 0 is the incoming under-strand and slot 2 the outgoing
under-strand; the over-strand occupies slots 1 and 3.  A crossing is positive
exactly when the over-strand enters at slot 1.

Smoothing convention: the 0-resolution joins slots 0-1 and 2-3, the
1-resolution joins slots 0-3 and 1-2.  This choice is pinned by the trefoil
acceptance test against an independent plain Khovanov oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple


class DiagramError(ValueError):
    """Raised for malformed or inconsistent diagram data."""


Endpoint = Tuple[str, int]  # (crossing id, slot index 0..3)


@dataclass(frozen=True)
class Edge:
    ident: str
    src: Endpoint            # outgoing endpoint (tail)
    dst: Endpoint            # incoming endpoint (head)
    winding: int             # algebraic count of ray crossings along orientation
    ray_signs: Tuple[int, ...] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.ray_signs is None:
            sign = 1 if self.winding >= 0 else -1
            object.__setattr__(self, "ray_signs", (sign,) * abs(self.winding))
        if any(s not in (1, -1) for s in self.ray_signs):
            raise DiagramError(f"edge {self.ident}: ray signs must be +-1")
        if sum(self.ray_signs) != self.winding:
            raise DiagramError(
                f"edge {self.ident}: ray signs {list(self.ray_signs)} do not sum "
                f"to winding {self.winding}")

    @property
    def geometric(self) -> int:
        return len(self.ray_signs)


@dataclass(frozen=True)
class FreeLoop:
    ident: str
    winding: int
    ray_signs: Tuple[int, ...] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.ray_signs is None:
            sign = 1 if self.winding >= 0 else -1
            object.__setattr__(self, "ray_signs", (sign,) * abs(self.winding))
        if self.winding not in (-1, 0, 1):
            raise DiagramError(
                f"free loop {self.ident}: winding {self.winding} outside -1..1")
        if sum(self.ray_signs) != self.winding:
            raise DiagramError(f"free loop {self.ident}: ray signs do not sum to winding")

    @property
    def geometric(self) -> int:
        return len(self.ray_signs)


@dataclass(frozen=True)
class Crossing:
    ident: str
    slots: Tuple[str, str, str, str]  # edge ids, CCW from incoming under-strand

    # sign is derived during validation; see AnnularDiagram.crossing_sign


class AnnularDiagram:
    """A validated oriented link diagram in the annulus."""

    def __init__(self, name: str, crossings: Sequence[Crossing],
                 edges: Sequence[Edge], free_loops: Sequence[FreeLoop] = ()):
        self.name = name
        self.crossings = list(crossings)
        self.edges = list(edges)
        self.free_loops = list(free_loops)
        self._edge_by_id = {e.ident: e for e in self.edges}
        self._crossing_by_id = {c.ident: c for c in self.crossings}
        self._signs: Dict[str, int] = {}
        self._validate()

    # -- validation ---------------------------------------------------------

    def _validate(self) -> None:
        if len(self._edge_by_id) != len(self.edges):
            raise DiagramError("duplicate edge id")
        if len(self._crossing_by_id) != len(self.crossings):
            raise DiagramError("duplicate crossing id")
        loop_ids = [l.ident for l in self.free_loops]
        if len(set(loop_ids)) != len(loop_ids):
            raise DiagramError("duplicate free loop id")

        counts: Dict[str, int] = {}
        for x in self.crossings:
            if len(x.slots) != 4:
                raise DiagramError(f"crossing {x.ident}: needs exactly 4 slots")
            for eid in x.slots:
                counts[eid] = counts.get(eid, 0) + 1
        for eid, n in counts.items():
            if n != 2:
                raise DiagramError(
                    f"edge multiplicity: edge {eid} appears {n} times among "
                    f"crossing slots, expected 2")
        for e in self.edges:
            if counts.get(e.ident, 0) != 2:
                raise DiagramError(
                    f"edge multiplicity: edge {e.ident} appears "
                    f"{counts.get(e.ident, 0)} times among crossing slots, expected 2")
        for eid in counts:
            if eid not in self._edge_by_id:
                raise DiagramError(f"crossing slot references unknown edge {eid}")

        # endpoint consistency: slots agree with edge src/dst declarations
        endpoint_of: Dict[Endpoint, Tuple[str, str]] = {}
        for e in self.edges:
            for ep, role in ((e.src, "src"), (e.dst, "dst")):
                xid, slot = ep
                if xid not in self._crossing_by_id:
                    raise DiagramError(f"edge {e.ident}: unknown crossing {xid}")
                if not 0 <= slot <= 3:
                    raise DiagramError(f"edge {e.ident}: slot {slot} out of range")
                if self._crossing_by_id[xid].slots[slot] != e.ident:
                    raise DiagramError(
                        f"edge {e.ident}: endpoint ({xid},{slot}) disagrees with "
                        f"crossing slot {self._crossing_by_id[xid].slots[slot]}")
                if ep in endpoint_of:
                    raise DiagramError(
                        f"endpoint ({xid},{slot}) used by both edge "
                        f"{endpoint_of[ep][0]} and edge {e.ident}")
                endpoint_of[ep] = (e.ident, role)

        # orientation consistency and crossing signs
        for x in self.crossings:
            roles = []
            for slot in range(4):
                ep = (x.ident, slot)
                if ep not in endpoint_of:
                    raise DiagramError(
                        f"crossing {x.ident}: slot {slot} has no edge endpoint")
                roles.append(endpoint_of[ep][1])
            if roles[0] != "dst" or roles[2] != "src":
                raise DiagramError(
                    f"orientation inconsistency at crossing {x.ident}: slot 0 must "
                    f"be the incoming under-strand and slot 2 the outgoing one")
            if {roles[1], roles[3]} != {"src", "dst"}:
                raise DiagramError(
                    f"orientation inconsistency at crossing {x.ident}: over-strand "
                    f"must have one incoming and one outgoing slot")
            self._signs[x.ident] = 1 if roles[1] == "dst" else -1

    # -- basic queries -------------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def edge(self, ident: str) -> Edge:
        return self._edge_by_id[ident]

    def crossing_sign(self, ident: str) -> int:
        return self._signs[ident]

    def crossing_signs(self) -> Tuple[int, int]:
        """(n_plus, n_minus)."""
        n_plus = sum(1 for s in self._signs.values() if s == 1)
        return n_plus, len(self._signs) - n_plus

    def total_winding_parity(self) -> int:
        total = sum(e.winding for e in self.edges)
        total += sum(l.winding for l in self.free_loops)
        return total & 1

    def total_geometric_ray_crossings(self) -> int:
        return (sum(e.geometric for e in self.edges)
                + sum(l.geometric for l in self.free_loops))

    # -- operations ----------------------------------------------------------

    def mirror(self) -> "AnnularDiagram":
        """Swap under/over roles at every crossing; windings are unchanged."""
        rotations = {x.ident: (1 if self._signs[x.ident] == 1 else 3)
                     for x in self.crossings}
        new_crossings = []
        for x in self.crossings:
            r = rotations[x.ident]
            slots = tuple(x.slots[(i + r) % 4] for i in range(4))
            new_crossings.append(Crossing(x.ident, slots))  # type: ignore[arg-type]
        new_edges = []
        for e in self.edges:
            src = (e.src[0], (e.src[1] - rotations[e.src[0]]) % 4)
            dst = (e.dst[0], (e.dst[1] - rotations[e.dst[0]]) % 4)
            new_edges.append(replace(e, src=src, dst=dst))
        return AnnularDiagram(self.name, new_crossings, new_edges, self.free_loops)

    def resolve(self, bits: Sequence[int]) -> "ResolvedDiagram":
        """Smooth every crossing per the 0/1 assignment (crossing order)."""
        if len(bits) != self.n_crossings:
            raise DiagramError(
                f"resolution length {len(bits)} != crossing count {self.n_crossings}")
        if any(b not in (0, 1) for b in bits):
            raise DiagramError("resolution bits must be 0 or 1")

        # slot pairing at each smoothed crossing
        pair: Dict[Endpoint, Endpoint] = {}
        for x, b in zip(self.crossings, bits):
            pairs = ((0, 1), (2, 3)) if b == 0 else ((0, 3), (1, 2))
            for s, t in pairs:
                pair[(x.ident, s)] = (x.ident, t)
                pair[(x.ident, t)] = (x.ident, s)

        at_endpoint: Dict[Endpoint, Tuple[str, int]] = {}
        for e in self.edges:
            at_endpoint[e.src] = (e.ident, 1)    # leaving this endpoint goes forward
            at_endpoint[e.dst] = (e.ident, -1)

        circles: List[Circle] = []
        seen: set[str] = set()
        for e0 in self.edges:
            if e0.ident in seen:
                continue
            members: List[Tuple[str, int]] = []
            winding = 0
            geometric = 0
            eid, direction = e0.ident, 1
            while True:
                seen.add(eid)
                members.append((eid, direction))
                edge = self._edge_by_id[eid]
                winding += direction * edge.winding
                geometric += edge.geometric
                arrive = edge.dst if direction == 1 else edge.src
                nxt = pair[arrive]
                eid, direction = at_endpoint[nxt]
                if eid == e0.ident and direction == 1:
                    break
            circles.append(Circle(tuple(members), winding, geometric))
        for loop in self.free_loops:
            circles.append(Circle(((loop.ident, 1),), loop.winding, loop.geometric))
        circles.sort(key=lambda c: c.ident)
        return ResolvedDiagram(self, tuple(bits), tuple(circles))

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "crossings": [{"id": x.ident, "slots": list(x.slots)}
                          for x in self.crossings],
            "edges": [self._edge_dict(e) for e in self.edges],
            "free_loops": [self._loop_dict(l) for l in self.free_loops],
        }

    @staticmethod
    def _edge_dict(e: Edge) -> dict:
        d = {"id": e.ident,
             "from": {"crossing": e.src[0], "slot": e.src[1]},
             "to": {"crossing": e.dst[0], "slot": e.dst[1]},
             "winding": e.winding}
        if e.geometric != abs(e.winding):
            d["ray_signs"] = list(e.ray_signs)
        return d

    @staticmethod
    def _loop_dict(l: FreeLoop) -> dict:
        d = {"id": l.ident, "winding": l.winding}
        if l.geometric != abs(l.winding):
            d["ray_signs"] = list(l.ray_signs)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


@dataclass(frozen=True)
class Circle:
    """One circle of a resolved diagram.

    ``members`` lists (edge or loop id, traversal direction) in traversal
    order; ``winding`` is the algebraic ray-intersection number and
    ``geometric`` the unsigned one.
    """
    members: Tuple[Tuple[str, int], ...]
    winding: int
    geometric: int

    def __post_init__(self) -> None:
        if self.winding not in (-1, 0, 1):
            raise DiagramError(
                f"circle through {self.members[0][0]} has winding {self.winding}; "
                f"an embedded circle in the annulus must have winding in -1..1")

    @property
    def ident(self) -> str:
        return min(m[0] for m in self.members)

    @property
    def nontrivial(self) -> bool:
        return self.winding != 0

    @property
    def member_ids(self) -> frozenset:
        return frozenset(m[0] for m in self.members)


@dataclass(frozen=True)
class ResolvedDiagram:
    diagram: AnnularDiagram
    bits: Tuple[int, ...]
    circles: Tuple[Circle, ...]

    @property
    def t(self) -> int:
        """Number of trivial circles."""
        return sum(1 for c in self.circles if not c.nontrivial)

    @property
    def n(self) -> int:
        """Number of nontrivial circles."""
        return sum(1 for c in self.circles if c.nontrivial)

    @property
    def parity(self) -> int:
        return self.n & 1

    @property
    def bitstring(self) -> str:
        return "".join(map(str, self.bits))


# -- parsing ----------------------------------------------------------------

def parse(text: str, name_hint: str = "") -> AnnularDiagram:
    """Parse the JSON diagram format.

    Top level fields: ``name``, ``crossings`` (id, slots), ``edges``
    (id, from/to endpoints, winding, optional ray_signs), ``free_loops``.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise DiagramError("top level must be an object")
    name = data.get("name", name_hint)

    crossings = []
    for item in data.get("crossings", []):
        try:
            slots = tuple(item["slots"])
        except (KeyError, TypeError) as exc:
            raise DiagramError(f"crossing entry {item!r}: missing slots") from exc
        if len(slots) != 4 or not all(isinstance(s, str) for s in slots):
            raise DiagramError(
                f"crossing {item.get('id')!r}: slots must be 4 edge ids")
        crossings.append(Crossing(str(item.get("id")), slots))

    edges = []
    loops = [dict(l) for l in data.get("free_loops", [])]
    for item in data.get("edges", []):
        eid = str(item.get("id"))
        src, dst = item.get("from"), item.get("to")
        if src == "loop" or dst == "loop":
            # a crossingless component written as an edge; treat as a free loop
            loops.append({"id": eid, "winding": item.get("winding", 0),
                          "ray_signs": item.get("ray_signs")})
            continue
        try:
            src_ep = (str(src["crossing"]), int(src["slot"]))
            dst_ep = (str(dst["crossing"]), int(dst["slot"]))
        except (KeyError, TypeError) as exc:
            raise DiagramError(f"edge {eid}: malformed endpoint") from exc
        winding = item.get("winding", 0)
        if not isinstance(winding, int):
            raise DiagramError(f"edge {eid}: winding must be an integer")
        signs = item.get("ray_signs")
        edges.append(Edge(eid, src_ep, dst_ep, winding,
                          tuple(signs) if signs is not None else None))

    free_loops = []
    for item in loops:
        winding = item.get("winding", 0)
        if not isinstance(winding, int) or winding not in (-1, 0, 1):
            raise DiagramError(
                f"free loop {item.get('id')!r}: winding {winding!r} outside -1..1")
        signs = item.get("ray_signs")
        free_loops.append(FreeLoop(str(item.get("id")), winding,
                                   tuple(signs) if signs is not None else None))

    return AnnularDiagram(str(name), crossings, edges, free_loops)


def load(path) -> AnnularDiagram:
    from pathlib import Path
    p = Path(path)
    return parse(p.read_text(), name_hint=p.stem)


# -- diagram surgery helpers -------------------------------------------------

def negate_windings(d: AnnularDiagram) -> AnnularDiagram:
    """Reverse the positive ray-transverse direction (all windings negate)."""
    edges = [replace(e, winding=-e.winding,
                     ray_signs=tuple(-s for s in e.ray_signs)) for e in d.edges]
    loops = [FreeLoop(l.ident, -l.winding, tuple(-s for s in l.ray_signs))
             for l in d.free_loops]
    return AnnularDiagram(d.name, d.crossings, edges, loops)


def finger_move(d: AnnularDiagram, ident: Optional[str] = None) -> AnnularDiagram:
    """Isotope one strand across the cut ray and back.

    Raises the geometric ray intersection by 2 on the named edge or free loop
    (default: the first edge, else the first free loop) without changing any
    algebraic winding.
    """
    if ident is None:
        ident = d.edges[0].ident if d.edges else d.free_loops[0].ident
    edges = list(d.edges)
    loops = list(d.free_loops)
    for idx, e in enumerate(edges):
        if e.ident == ident:
            edges[idx] = replace(e, ray_signs=e.ray_signs + (1, -1))
            return AnnularDiagram(d.name + "+finger", d.crossings, edges, loops)
    for idx, l in enumerate(loops):
        if l.ident == ident:
            loops[idx] = FreeLoop(l.ident, l.winding, l.ray_signs + (1, -1))
            return AnnularDiagram(d.name + "+finger", d.crossings, edges, loops)
    raise DiagramError(f"no edge or free loop named {ident}")

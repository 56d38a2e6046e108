"""Knot diagrams as combinatorial maps, plus PD/Gauss/DT parsing.

PD convention: each crossing lists its four edge labels counterclockwise,
starting at the incoming under-strand.  The over-strand enters either at
position 1 or at position 3; which one is recovered from the strand walk.
Dart ``4*c + k`` is the end of crossing ``c`` at position ``k``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import networkx as nx

from .errors import MalformedCode, MultiComponent, NonRealizable
from .fatgraph import FatGraph, rotate, trace_faces

FORMATS = ("pd", "gauss", "dt")


@dataclass(frozen=True)
class Crossing:
    id: int
    edge_ends: tuple[int, int, int, int]
    over_in: int  # 1 or 3

    @property
    def sign(self) -> int:
        """Writhe contribution (+1 when the over-strand enters at position 3)."""
        return 1 if self.over_in == 3 else -1

    @property
    def over_out(self) -> int:
        return 4 - self.over_in


@dataclass(frozen=True)
class Face:
    boundary: tuple[tuple[int, int], ...]  # (crossing id, corner index)

    @property
    def size(self) -> int:
        return len(self.boundary)


@dataclass(frozen=True)
class DiagramCode:
    format: str
    payload: tuple

    def __post_init__(self):
        if self.format not in FORMATS:
            raise MalformedCode(f"unknown diagram format {self.format!r}")

    @classmethod
    def from_text(cls, fmt: str, text: str) -> "DiagramCode":
        """Read a code from JSON text; Gauss and DT also accept bare integer lists."""
        text = text.strip()
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            if fmt == "pd":
                raise MalformedCode("PD code must be a JSON array of 4-element arrays") from None
            try:
                data = [int(tok) for tok in text.replace(",", " ").replace("(", " ").replace(")", " ").split()]
            except ValueError:
                raise MalformedCode(f"cannot read {fmt} code {text!r}") from None
        if isinstance(data, int):
            data = [data]
        if not isinstance(data, list):
            raise MalformedCode(f"{fmt} code must be a list")
        if fmt == "pd":
            return cls(fmt, tuple(tuple(x) if isinstance(x, list) else x for x in data))
        return cls(fmt, tuple(data))


@dataclass(frozen=True)
class PrimalityReport:
    connected: bool
    prime: bool
    has_nugatory_crossing: bool
    witness: Optional[tuple[int, int]] = None  # edge labels of a splitting pair

    def to_dict(self) -> dict:
        out = {"connected": self.connected, "prime": self.prime, "nugatory": self.has_nugatory_crossing}
        if self.witness:
            out["witness_edges"] = list(self.witness)
        return out


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[Crossing, ...]

    # ---- construction ----------------------------------------------------

    @classmethod
    def unknot(cls) -> "PlanarDiagram":
        """The 0-crossing sentinel."""
        return cls(())

    @classmethod
    def from_pd(cls, pd: Sequence[Sequence[int]]) -> "PlanarDiagram":
        if not isinstance(pd, (list, tuple)) or len(pd) == 0:
            raise MalformedCode("PD code must list at least one crossing")
        rows = []
        for row in pd:
            if not isinstance(row, (list, tuple)) or len(row) != 4 or not all(_is_int(x) for x in row):
                raise MalformedCode(f"PD entry {row!r} is not four integer labels")
            rows.append(tuple(row))
        counts = Counter(x for row in rows for x in row)
        bad = sorted(lab for lab, k in counts.items() if k != 2)
        if bad:
            raise MalformedCode(f"edge labels must occur exactly twice; offending: {bad}")

        n = len(rows)
        partner = _pairing(rows)
        orbit = _walk(partner, 0)
        if len(orbit) != 2 * n:
            raise MultiComponent(f"strand starting at edge {rows[0][0]} covers {len(orbit)} of {2 * n} edges")
        over_in = [0] * n
        for d in orbit:
            c, k = divmod(d, 4)
            if k == 2:
                raise MalformedCode(f"crossing {c}: under-strand runs against the PD convention")
            if k in (1, 3):
                over_in[c] = k
        diagram = cls(tuple(Crossing(i, rows[i], over_in[i]) for i in range(n)))
        faces = trace_faces(partner)
        if len(faces) != n + 2:
            raise NonRealizable(f"PD code does not embed in the sphere: V - E + F = {n - 2 * n + len(faces)}")
        return diagram

    # ---- basic structure -------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def edge_count(self) -> int:
        return 2 * len(self.crossings)

    @property
    def is_unknot_sentinel(self) -> bool:
        return not self.crossings

    @cached_property
    def pairing(self) -> tuple[int, ...]:
        return tuple(_pairing([c.edge_ends for c in self.crossings]))

    def label(self, dart: int) -> int:
        c, k = divmod(dart, 4)
        return self.crossings[c].edge_ends[k]

    @cached_property
    def strand(self) -> tuple[int, ...]:
        """Entering darts in the order the knot visits them."""
        if not self.crossings:
            return ()
        return tuple(_walk(self.pairing, 0))

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def is_over(self, dart: int) -> bool:
        return dart % 2 == 1

    def projection_map(self) -> FatGraph:
        """The underlying 4-valent plane graph, forgetting crossing data."""
        return FatGraph(self.pairing)

    # ---- derived diagrams ------------------------------------------------

    def to_pd(self) -> list[list[int]]:
        return [list(c.edge_ends) for c in self.crossings]

    def to_json(self) -> str:
        return json.dumps(self.to_pd())

    def flip_crossing(self, i: int) -> "PlanarDiagram":
        """Swap over and under at crossing ``i`` (the result may be non-alternating)."""
        rows = self.to_pd()
        c = self.crossings[i]
        start = c.over_in
        rows[i] = [c.edge_ends[(start + j) % 4] for j in range(4)]
        return PlanarDiagram.from_pd(rows)

    def mirror(self) -> "PlanarDiagram":
        out = self
        for i in range(self.n_crossings):
            out = out.flip_crossing(i)
        return out

    def relabel(self, mapping: dict) -> "PlanarDiagram":
        labels = {x for c in self.crossings for x in c.edge_ends}
        if not labels <= mapping.keys() or len({mapping[x] for x in labels}) != len(labels):
            raise MalformedCode("relabeling must be injective on the edge labels")
        return PlanarDiagram.from_pd([[mapping[x] for x in c.edge_ends] for c in self.crossings])


def _pairing(rows) -> list[int]:
    seen: dict = {}
    partner = [-1] * (4 * len(rows))
    for c, row in enumerate(rows):
        for k, lab in enumerate(row):
            d = 4 * c + k
            if lab in seen:
                e = seen.pop(lab)
                partner[d], partner[e] = e, d
            else:
                seen[lab] = d
    return partner


def _walk(partner, start: int) -> list[int]:
    orbit = [start]
    d = partner[rotate(start, 2)]
    while d != start:
        orbit.append(d)
        d = partner[rotate(d, 2)]
    return orbit


# ---- queries -------------------------------------------------------------


def faces(d: PlanarDiagram) -> list[Face]:
    return [
        Face(tuple((d.crossings[c // 4].id, c % 4) for c in face))
        for face in trace_faces(d.pairing)
    ]


def is_alternating(d: PlanarDiagram) -> bool:
    overs = [d.is_over(x) for x in d.strand]
    return all(overs[i] != overs[i - 1] for i in range(len(overs)))


def is_connected_prime(d: PlanarDiagram) -> PrimalityReport:
    """Primality via dual 2-cycles.

    On the sphere, two edges split the crossings into two nonempty groups
    exactly when they border the same pair of distinct faces.
    """
    if d.is_unknot_sentinel:
        return PrimalityReport(True, True, False)
    g = d.projection_map()
    cf = g.corner_face
    nugatory = any(cf[4 * c] == cf[4 * c + 2] or cf[4 * c + 1] == cf[4 * c + 3] for c in range(d.n_crossings))
    bonds = g.two_edge_bonds()
    witness = None
    if bonds:
        a, b = bonds[0]
        witness = (d.label(a), d.label(b))
    return PrimalityReport(g.is_connected, not bonds, nugatory, witness)


# ---- Gauss and DT realization --------------------------------------------


def _realize(visits: list[tuple[int, bool]]) -> PlanarDiagram:
    """Embed a signed Gauss word via a planarity test on a gadget graph.

    Each crossing becomes a wheel with hub ``('h', c)`` and rim
    ``r0 = under-in, r1 = over-out, r2 = under-out, r3 = over-in``; the rim
    cycle forces the two strands to cross.  Each strand segment is
    subdivided so that the graph is simple.  Reading the hub rotation back
    gives the counterclockwise order of edge labels.
    """
    m = len(visits)
    g = nx.Graph()
    crossings = sorted({c for c, _ in visits})
    for c in crossings:
        rim = [("r", c, i) for i in range(4)]
        for i in range(4):
            g.add_edge(("h", c), rim[i])
            g.add_edge(rim[i], rim[(i + 1) % 4])
    for k in range(m):
        c, over = visits[k]
        c2, over2 = visits[(k + 1) % m]
        g.add_edge(("r", c, 1 if over else 2), ("m", k))
        g.add_edge(("m", k), ("r", c2, 3 if over2 else 0))
    planar, emb = nx.check_planarity(g)
    if not planar:
        raise NonRealizable("code admits no planar embedding")

    label_in = {}
    for k, (c, over) in enumerate(visits):
        label_in[(c, over)] = (k - 1) % m + 1
    pd = []
    for c in crossings:
        ccw = list(reversed(list(emb.neighbors_cw_order(("h", c)))))
        i = ccw.index(("r", c, 0))
        ccw = ccw[i:] + ccw[:i]
        in_u = label_in[(c, False)]
        in_o = label_in[(c, True)]
        out_u = in_u % m + 1
        out_o = in_o % m + 1
        if ccw[1] == ("r", c, 1):
            pd.append([in_u, out_o, out_u, in_o])
        else:
            pd.append([in_u, in_o, out_u, out_o])
    return PlanarDiagram.from_pd(pd)


def _check_visits(visits):
    seen: dict = {}
    for c, over in visits:
        seen.setdefault(c, []).append(over)
    for c, marks in seen.items():
        if sorted(marks) != [False, True]:
            raise MalformedCode(f"crossing {c} must be passed once over and once under")


def from_gauss(code: Sequence[int]) -> PlanarDiagram:
    """Gauss word: ``+i`` passes over crossing ``i``, ``-i`` passes under."""
    if not code or not all(_is_int(x) and x != 0 for x in code):
        raise MalformedCode("Gauss code must be a nonempty list of nonzero integers")
    visits = [(abs(x), x > 0) for x in code]
    _check_visits(visits)
    return _realize(visits)


def from_dt(code: Sequence[int]) -> PlanarDiagram:
    """DT code: the i-th entry pairs odd visit ``2i-1`` with an even visit.

    A positive entry means the even visit passes under; a negative entry
    means it passes over.
    """
    if not code or not all(_is_int(x) and x != 0 and x % 2 == 0 for x in code):
        raise MalformedCode("DT code must be a nonempty list of nonzero even integers")
    n = len(code)
    if sorted(abs(x) for x in code) != list(range(2, 2 * n + 1, 2)):
        raise MalformedCode(f"DT code must use each even number 2..{2 * n} once")
    visits: list = [None] * (2 * n)
    for i, a in enumerate(code):
        even_over = a < 0
        visits[2 * i] = (i, not even_over)
        visits[abs(a) - 1] = (i, even_over)
    return _realize(visits)


def parse(code: DiagramCode) -> PlanarDiagram:
    payload = list(code.payload)
    if code.format == "pd":
        return PlanarDiagram.from_pd(payload)
    if code.format == "gauss":
        return from_gauss(payload)
    return from_dt(payload)

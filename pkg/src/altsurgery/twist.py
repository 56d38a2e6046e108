"""Twist regions, twist number and the reduced twist graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .diagram import PlanarDiagram, is_alternating, is_connected_prime
from .errors import InternalInvariantError, NotAlternating, NotPrime
from .fatgraph import VERTICAL, FatGraph, trace_faces


@dataclass(frozen=True)
class TwistRegion:
    """A maximal chain of crossings joined by bigons, or a lone crossing.

    ``ports`` lists the four outward darts counterclockwise.  In that frame
    the long sides of a chain are corners 1 and 3, so every chain is
    vertical in its own frame; a lone crossing has no axis.
    """

    crossing_ids: tuple[int, ...]
    ports: tuple[int, int, int, int]
    cyclic: bool = False

    @property
    def size(self) -> int:
        return len(self.crossing_ids)

    @property
    def kind(self) -> str:
        return "bigon_chain" if self.size > 1 else "isolated_crossing"

    @property
    def axis(self) -> Optional[int]:
        return VERTICAL if self.size > 1 else None

    @property
    def orientation(self) -> str:
        # lone crossings are stored as vertical by convention
        return "vertical"

    def to_dict(self) -> dict:
        return {"crossings": list(self.crossing_ids), "kind": self.kind, "orientation": self.orientation}


def _bigons(pairing) -> list[tuple[int, int]]:
    """Bigon faces as pairs of corners at distinct crossings."""
    out = []
    for face in trace_faces(pairing):
        if len(face) == 2 and face[0] // 4 != face[1] // 4:
            out.append((face[0], face[1]))
    return out


def regions_of(pairing) -> list[TwistRegion]:
    """Twist regions of any 4-valent plane map, without diagram checks."""
    n = len(pairing) // 4
    links: dict = {c: [] for c in range(n)}  # crossing -> [(own corner, other crossing, other corner)]
    for a, b in _bigons(pairing):
        links[a // 4].append((a % 4, b // 4, b % 4))
        links[b // 4].append((b % 4, a // 4, a % 4))
    for c, ls in links.items():
        if len(ls) > 2 or (len(ls) == 2 and (ls[0][0] - ls[1][0]) % 4 != 2):
            raise InternalInvariantError(f"crossing {c} has bigons on adjacent corners")

    seen = set()
    regions = []
    for start in range(n):
        if start in seen:
            continue
        # find an end of the chain (or detect a cycle)
        comp = {start}
        stack = [start]
        while stack:
            c = stack.pop()
            for _, o, _ in links[c]:
                if o not in comp:
                    comp.add(o)
                    stack.append(o)
        seen |= comp
        ends = [c for c in comp if len(links[c]) < 2]
        cyclic = not ends
        first = min(comp) if cyclic else min(ends)
        if len(comp) == 1:
            regions.append(TwistRegion((first,), tuple(4 * first + k for k in range(4))))
            continue
        # walk the chain; a cycle is cut open at the far bigon of `first`
        kf, cur, back = links[first][0]
        order = [first]
        jb = back
        while cur != first and len(order) < len(comp):
            order.append(cur)
            jb = back
            fwd = [link for link in links[cur] if link[0] != back]
            if not fwd:
                break
            _, cur, back = fwd[0]
        last = order[-1]
        ports = (
            4 * first + (kf + 2) % 4,
            4 * first + (kf + 3) % 4,
            4 * last + (jb + 2) % 4,
            4 * last + (jb + 3) % 4,
        )
        regions.append(TwistRegion(tuple(order), ports, cyclic))
    return regions


def _require(d: PlanarDiagram) -> None:
    if not is_alternating(d):
        raise NotAlternating("twist analysis needs an alternating diagram")
    rep = is_connected_prime(d)
    if not rep.prime:
        raise NotPrime(f"diagram splits along edges {rep.witness}")


def twist_regions(d: PlanarDiagram) -> list[TwistRegion]:
    _require(d)
    if d.is_unknot_sentinel:
        return []
    return regions_of(d.pairing)


def twist_number(d: PlanarDiagram) -> int:
    return len(twist_regions(d))


def contract(pairing, regions: list[TwistRegion]) -> FatGraph:
    """Collapse each region to one fat vertex, keeping the sphere rotation."""
    where = {}
    for v, r in enumerate(regions):
        for i, d in enumerate(r.ports):
            where[d] = 4 * v + i
    new = [-1] * (4 * len(regions))
    for d, slot in where.items():
        e = pairing[d]
        if e not in where:
            raise InternalInvariantError("a region port is attached to the inside of another region")
        new[slot] = where[e]
    return FatGraph(
        tuple(new),
        names=tuple(f"R{v}" for v in range(len(regions))),
        sizes=tuple(r.size for r in regions),
        axes=tuple(r.axis for r in regions),
    )


def reduced_twist_graph(d: PlanarDiagram) -> FatGraph:
    return contract(d.pairing, twist_regions(d))


def twist_graph_of(pairing) -> FatGraph:
    """Reduced graph of any map; used where diagram checks are done elsewhere."""
    return contract(pairing, regions_of(pairing))

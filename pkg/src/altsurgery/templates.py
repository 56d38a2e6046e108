"""The six reduced graphs with at most four vertices, drawn with box frames.

Every vertex is a box with ends NE, NW, SW, SE.  A vertical fill of k
crossings is the tangle 1/k in that frame and a horizontal fill is the
integer tangle k.  The E/W corners of all boxes lie in faces of one
checkerboard colour, so an alternating fill makes every box positive
(or every box negative, for the mirror image).

Closures, as tangle expressions:

* ``loop1``     D(X)
* ``ring2``     N(A + B)
* ``ring3``     N(A + B + C)
* ``stacked4``  N(L1 + L2 + Rt*Rb), where ``*`` stacks Rt above Rb
* ``ring4``     N(A + B + C + D)
* ``triple4``   two pairs of boxes joined by triple edges (never prime)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fatgraph import NE, NW, SE, SW, FatGraph, Isomorphism


def _build(name, vertex_names, edges, flags=()):
    idx = {v: i for i, v in enumerate(vertex_names)}
    pairs = [((idx[a], pa), (idx[b], pb)) for (a, pa), (b, pb) in edges]
    return FatGraph.from_edges(len(vertex_names), pairs, names=tuple(vertex_names), name=name, flags=frozenset(flags))


def _ring(names):
    edges = []
    for i, a in enumerate(names):
        b = names[(i + 1) % len(names)]
        edges.append(((a, NE), (b, NW)))
        edges.append(((a, SE), (b, SW)))
    return edges


LOOP1 = _build("loop1", ["X"], [(("X", NE), ("X", SE)), (("X", NW), ("X", SW))])
RING2 = _build("ring2", ["A", "B"], _ring(["A", "B"]))
RING3 = _build("ring3", ["A", "B", "C"], _ring(["A", "B", "C"]))
STACKED4 = _build(
    "stacked4",
    ["L1", "L2", "Rt", "Rb"],
    [
        (("Rt", SW), ("Rb", NW)),
        (("Rt", SE), ("Rb", NE)),
        (("L1", NE), ("L2", NW)),
        (("L1", SE), ("L2", SW)),
        (("L2", NE), ("Rt", NW)),
        (("L2", SE), ("Rb", SW)),
        (("L1", NW), ("Rt", NE)),
        (("L1", SW), ("Rb", SE)),
    ],
)
RING4 = _build("ring4", ["A", "B", "C", "D"], _ring(["A", "B", "C", "D"]))
TRIPLE4 = _build(
    "triple4",
    ["TL", "TR", "BL", "BR"],
    [
        (("TL", NE), ("TR", NW)),
        (("TR", SW), ("BR", NW)),
        (("BL", NE), ("TL", SE)),
        (("TL", SW), ("BL", NW)),
        (("BR", NE), ("TR", SE)),
        (("TR", NE), ("BR", SE)),
        (("BR", SW), ("BL", SE)),
        (("BL", SW), ("TL", NW)),
    ],
    flags=("prime-unfillable",),
)

TEMPLATES: tuple[FatGraph, ...] = (LOOP1, RING2, RING3, STACKED4, RING4, TRIPLE4)
BY_NAME = {t.name: t for t in TEMPLATES}


@dataclass(frozen=True)
class TemplateMatch:
    template: FatGraph
    iso: Isomorphism  # source graph -> template
    fills: dict  # template vertex name -> (axis or None, size)


def match_template(g: FatGraph) -> Optional[TemplateMatch]:
    """Locate ``g`` among the templates and read its boxes in template frames.

    Sizes and axes are transported along the first isomorphism found; the
    knot described does not depend on that choice.
    """
    for t in TEMPLATES:
        if t.n_vertices != g.n_vertices:
            continue
        iso = g.isomorphism(t)
        if iso is None:
            continue
        fills = {}
        for v in range(g.n_vertices):
            w = iso.vertex(v)
            size = g.sizes[v] if g.sizes else 1
            axis = iso.axis(v, g.axes[v]) if g.axes else None
            fills[t.vertex_name(w)] = (axis, size)
        return TemplateMatch(t, iso, fills)
    return None

"""Combinatorial maps of 4-valent graphs on the sphere.

A map is stored as an involution on darts.  Dart ``4*v + i`` is the
``i``-th end at vertex ``v``; ends are numbered counterclockwise, so the
vertex rotation is implicit.  Corner ``4*v + i`` is the angle between ends
``i`` and ``i + 1`` at ``v``.

Template frames use the box convention NE=0, NW=1, SW=2, SE=3, which puts
the corners N=0, W=1, S=2, E=3.  A twist box whose long sides are W/E is
*vertical* (axis 1); long sides N/S make it *horizontal* (axis 0).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

NE, NW, SW, SE = range(4)
HORIZONTAL, VERTICAL = 0, 1
AXIS_NAMES = {HORIZONTAL: "horizontal", VERTICAL: "vertical"}


def rotate(dart: int, step: int = 1) -> int:
    return 4 * (dart // 4) + (dart % 4 + step) % 4


def trace_faces(pairing: Sequence[int]) -> list[list[int]]:
    """Partition all corners into faces.

    Walking out of a corner along its counterclockwise end and arriving at
    the far end ``j`` of that edge lands in corner ``j``.
    """
    seen = [False] * len(pairing)
    faces = []
    for start in range(len(pairing)):
        if seen[start]:
            continue
        face = []
        cur = start
        while not seen[cur]:
            seen[cur] = True
            face.append(cur)
            cur = pairing[rotate(cur)]
        faces.append(face)
    return faces


@dataclass(frozen=True)
class Isomorphism:
    """Dart bijection between two maps, possibly orientation reversing."""

    darts: dict
    reflected: bool

    def vertex(self, v: int) -> int:
        return self.darts[4 * v] // 4

    def position(self, dart: int) -> int:
        return self.darts[dart] % 4

    def corner(self, corner: int) -> int:
        """Image of a corner (encoded like a dart)."""
        image = self.darts[corner]
        if self.reflected:
            return rotate(image, -1)
        return image

    def axis(self, v: int, axis: Optional[int]) -> Optional[int]:
        if axis is None:
            return None
        return self.corner(4 * v + axis) % 2


@dataclass(frozen=True)
class FatGraph:
    """4-valent plane multigraph, optionally decorated with twist data.

    ``sizes[v]`` counts the crossings of the twist contracted to ``v`` and
    ``axes[v]`` says which pair of opposite corners are its long sides
    (``None`` for a single crossing, which has no preferred direction).
    """

    pairing: tuple[int, ...]
    names: tuple[str, ...] = ()
    sizes: tuple[int, ...] = ()
    axes: tuple[Optional[int], ...] = ()
    name: str = ""
    flags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        n = len(self.pairing)
        if n % 4:
            raise ValueError("dart count must be a multiple of 4")
        for d, e in enumerate(self.pairing):
            if not 0 <= e < n or e == d or self.pairing[e] != d:
                raise ValueError(f"pairing is not a fixed-point-free involution at dart {d}")

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[tuple[tuple[int, int], tuple[int, int]]], **kw) -> "FatGraph":
        pairing = [-1] * (4 * n_vertices)
        for (v, i), (w, j) in edges:
            a, b = 4 * v + i, 4 * w + j
            if pairing[a] != -1 or pairing[b] != -1:
                raise ValueError(f"end used twice: {(v, i)} or {(w, j)}")
            pairing[a], pairing[b] = b, a
        if -1 in pairing:
            raise ValueError("some vertex end is not attached to an edge")
        return cls(tuple(pairing), **kw)

    # ---- basic structure -------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.pairing) // 4

    @property
    def n_edges(self) -> int:
        return len(self.pairing) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(d, e) for d, e in enumerate(self.pairing) if d < e]

    def vertex_name(self, v: int) -> str:
        return self.names[v] if self.names else f"v{v}"

    @cached_property
    def faces(self) -> list[list[int]]:
        return trace_faces(self.pairing)

    @cached_property
    def corner_face(self) -> tuple[int, ...]:
        out = [0] * len(self.pairing)
        for f, face in enumerate(self.faces):
            for c in face:
                out[c] = f
        return tuple(out)

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + len(self.faces)

    @property
    def is_planar(self) -> bool:
        return self.is_connected and self.euler_characteristic == 2

    @property
    def has_loops(self) -> bool:
        return any(d // 4 == e // 4 for d, e in self.edges())

    @cached_property
    def is_connected(self) -> bool:
        if not self.pairing:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for i in range(4):
                w = self.pairing[4 * v + i] // 4
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices

    def edge_faces(self, d: int) -> frozenset:
        """Faces on the two sides of the edge holding dart ``d``."""
        return frozenset((self.corner_face[d], self.corner_face[rotate(d, -1)]))

    def two_edge_bonds(self) -> list[tuple[int, int]]:
        """Pairs of edges whose removal disconnects the graph.

        On the sphere these are exactly the pairs of edges bordering the same
        two distinct faces.
        """
        by_faces: dict = {}
        for d, e in self.edges():
            fs = self.edge_faces(d)
            if len(fs) == 2:
                by_faces.setdefault(fs, []).append((d, e))
        bonds = []
        for group in by_faces.values():
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    bonds.append((group[i][0], group[j][0]))
        return bonds

    # ---- canonical form --------------------------------------------------

    def _code(self, start: int, orient: int) -> tuple[tuple[int, ...], dict]:
        label = {start: 0}
        order = [start]
        i = 0
        while i < len(order):
            d = order[i]
            i += 1
            for nxt in (rotate(d, orient), self.pairing[d]):
                if nxt not in label:
                    label[nxt] = len(order)
                    order.append(nxt)
        code = []
        for d in order:
            code.append(label[rotate(d, orient)])
            code.append(label[self.pairing[d]])
        return tuple(code), label

    @cached_property
    def canonical(self) -> tuple[tuple[int, ...], dict, int]:
        """Minimal BFS code over all start darts and both orientations."""
        if not self.is_connected:
            raise ValueError("canonical form needs a connected map")
        best = None
        for orient in (1, -1):
            for start in range(len(self.pairing)):
                code, label = self._code(start, orient)
                if best is None or code < best[0]:
                    best = (code, label, orient)
        return best

    @property
    def canonical_code(self) -> tuple[int, ...]:
        return self.canonical[0]

    def isomorphism(self, other: "FatGraph") -> Optional[Isomorphism]:
        """Sphere homeomorphism (reflections allowed) onto ``other``, if any."""
        if len(self.pairing) != len(other.pairing):
            return None
        c1, l1, o1 = self.canonical
        c2, l2, o2 = other.canonical
        if c1 != c2:
            return None
        inv = {idx: d for d, idx in l2.items()}
        return Isomorphism({d: inv[idx] for d, idx in l1.items()}, o1 != o2)

    def isomorphisms(self, other: "FatGraph"):
        """Yield every sphere homeomorphism onto ``other``."""
        if len(self.pairing) != len(other.pairing):
            return
        c2, l2, o2 = other.canonical
        inv = {idx: d for d, idx in l2.items()}
        for orient in (1, -1):
            for start in range(len(self.pairing)):
                code, label = self._code(start, orient)
                if code == c2:
                    yield Isomorphism({d: inv[idx] for d, idx in label.items()}, orient != o2)

    def is_isomorphic(self, other: "FatGraph") -> bool:
        return self.isomorphism(other) is not None

    # ---- serialization ---------------------------------------------------

    def edge_ids(self) -> dict:
        ids = {}
        for k, (d, e) in enumerate(self.edges()):
            ids[d] = ids[e] = k
        return ids

    def to_dict(self) -> dict:
        ids = self.edge_ids()
        vertices = []
        for v in range(self.n_vertices):
            entry = {"name": self.vertex_name(v), "rotation": [ids[4 * v + i] for i in range(4)]}
            if self.sizes:
                entry["crossings"] = self.sizes[v]
            if self.axes:
                ax = self.axes[v]
                entry["direction"] = AXIS_NAMES.get(ax, "isolated")
            vertices.append(entry)
        out = {"vertices": vertices, "edges": self.n_edges, "faces": len(self.faces)}
        if self.name:
            out["name"] = self.name
        if self.flags:
            out["flags"] = sorted(self.flags)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

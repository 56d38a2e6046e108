"""Enumerate small reduced graphs, refill them and re-check the case table."""

from __future__ import annotations

import itertools
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .classify import VARIANTS, KnotClass, classify_fills, classify_small_twist_diagram
from .diagram import PlanarDiagram, is_connected_prime
from .errors import (
    AltSurgeryError,
    ClassificationGap,
    FillMergesTwists,
    MultiComponent,
    NonAlternatingResult,
)
from .fatgraph import HORIZONTAL, NE, NW, SE, SW, VERTICAL, FatGraph, rotate
from .templates import TEMPLATES
from .twist import regions_of, twist_graph_of

DIRECTIONS = {"vertical": VERTICAL, "horizontal": HORIZONTAL}


@dataclass(frozen=True)
class BoxFill:
    vertex: int
    direction: str  # "vertical" or "horizontal"
    crossings: int
    handedness: Optional[str] = None  # "positive", "negative" or None for automatic

    def __post_init__(self):
        if self.crossings < 1:
            raise ValueError("a box needs at least one crossing")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be vertical or horizontal, not {self.direction!r}")
        if self.handedness not in (None, "positive", "negative"):
            raise ValueError(f"bad handedness {self.handedness!r}")

    @property
    def axis(self) -> int:
        return DIRECTIONS[self.direction]

    def short(self) -> str:
        return f"{self.direction[0].upper()}{self.crossings}"


# ---- substitution --------------------------------------------------------


def _box(fill: BoxFill, base: int):
    """Internal edges and the four external darts (NE, NW, SW, SE) of a twist box."""
    k = fill.crossings
    cs = [base + i for i in range(k)]
    internal = []
    if fill.axis == VERTICAL:
        for a, b in zip(cs, cs[1:]):
            internal += [(4 * a + SW, 4 * b + NW), (4 * a + SE, 4 * b + NE)]
        ext = (4 * cs[0] + NE, 4 * cs[0] + NW, 4 * cs[-1] + SW, 4 * cs[-1] + SE)
    else:
        for a, b in zip(cs, cs[1:]):
            internal += [(4 * a + NE, 4 * b + NW), (4 * a + SE, 4 * b + SW)]
        ext = (4 * cs[-1] + NE, 4 * cs[0] + NW, 4 * cs[0] + SW, 4 * cs[-1] + SE)
    return cs, internal, ext


def substitute(g: FatGraph, fills: Sequence[BoxFill], strict: bool = False) -> PlanarDiagram:
    """Replace every fat vertex by a twist box and make the result alternating.

    Over/under is assigned alternately along the strand, which fixes the
    diagram up to a global mirror.  Box handedness (NE-SW strand over is
    positive) is then compared with any requested handedness.  With
    ``strict`` a fill whose boxes fuse into fewer twist regions raises
    :class:`FillMergesTwists`; otherwise the fused diagram is returned.
    """
    by_vertex = {f.vertex: f for f in fills}
    if sorted(by_vertex) != list(range(g.n_vertices)) or len(fills) != g.n_vertices:
        raise ValueError("need exactly one fill per vertex")
    boxes = []
    n = 0
    pairing: dict = {}
    for v in range(g.n_vertices):
        cs, internal, ext = _box(by_vertex[v], n)
        n += len(cs)
        boxes.append((cs, ext))
        for a, b in internal:
            pairing[a], pairing[b] = b, a
    for d, e in g.edges():
        a = boxes[d // 4][1][d % 4]
        b = boxes[e // 4][1][e % 4]
        pairing[a], pairing[b] = b, a
    partner = [pairing[i] for i in range(4 * n)]

    # walk the single strand from crossing 0
    orbit = [0]
    x = partner[rotate(0, 2)]
    while x != 0:
        orbit.append(x)
        x = partner[rotate(x, 2)]
    if len(orbit) != 2 * n:
        raise MultiComponent("the filled graph is a link")

    m = 2 * n
    under_in: dict = {}
    over_in: dict = {}
    for i, dart in enumerate(orbit):
        (under_in if i % 2 == 0 else over_in)[dart // 4] = (dart % 4, i)
    if len(under_in) != n or len(over_in) != n:
        raise NonAlternatingResult("no alternating over/under choice exists")

    # handedness: positive boxes have the NE-SW strand over
    signs = []
    for v, (cs, _) in enumerate(boxes):
        hs = {over_in[c][0] % 2 == 0 for c in cs}
        if len(hs) != 1:
            raise NonAlternatingResult(f"box {v} is not a twist after alternation")
        signs.append(hs.pop())
    want = [by_vertex[v].handedness for v in range(g.n_vertices)]
    mirrored = False
    if any(w is not None for w in want):
        got = ["positive" if s else "negative" for s in signs]
        flip = ["negative" if s else "positive" for s in signs]
        if all(w is None or w == a for w, a in zip(want, got)):
            mirrored = False
        elif all(w is None or w == a for w, a in zip(want, flip)):
            mirrored = True
        else:
            raise NonAlternatingResult("requested handedness pattern is not alternating")

    label_of = {}
    for i, dart in enumerate(orbit):
        label_of[dart] = (i - 1) % m + 1  # entering end of visit i
        label_of[partner[dart]] = (i - 1) % m + 1
    pd = []
    for c in range(n):
        pos, _ = (over_in if mirrored else under_in)[c]
        pd.append([label_of[4 * c + (pos + j) % 4] for j in range(4)])
    diagram = PlanarDiagram.from_pd(pd)
    if strict and len(regions_of(diagram.pairing)) < g.n_vertices:
        raise FillMergesTwists("neighbouring boxes fuse into a single twist region")
    return diagram


# ---- enumeration ---------------------------------------------------------


def _multigraphs(v: int):
    """Connected multiplicity matrices with all row sums 4 (loops only for v = 1)."""
    if v == 1:
        yield ((2,),)
        return
    pairs = list(itertools.combinations(range(v), 2))

    def rec(i, deg, mult):
        if i == len(pairs):
            if all(x == 4 for x in deg):
                yield dict(mult)
            return
        a, b = pairs[i]
        for m in range(0, min(4 - deg[a], 4 - deg[b]) + 1):
            deg[a] += m
            deg[b] += m
            mult[(a, b)] = m
            yield from rec(i + 1, deg, mult)
            deg[a] -= m
            deg[b] -= m
        mult.pop((a, b), None)

    for mult in rec(0, [0] * v, {}):
        adj = {i: set() for i in range(v)}
        for (a, b), m in mult.items():
            if m:
                adj[a].add(b)
                adj[b].add(a)
        seen, stack = {0}, [0]
        while stack:
            x = stack.pop()
            for y in adj[x] - seen:
                seen.add(y)
                stack.append(y)
        if len(seen) == v:
            yield tuple(tuple(mult.get((min(a, b), max(a, b)), 0) if a != b else 0 for b in range(v)) for a in range(v))


def _necklaces(items: list) -> list[tuple]:
    reps = set()
    for perm in set(itertools.permutations(items)):
        reps.add(min(perm[k:] + perm[:k] for k in range(len(perm))))
    return sorted(reps)


def _maps_of(mult) -> list[FatGraph]:
    v = len(mult)
    if v == 1:
        return [FatGraph(p) for p in ((1, 0, 3, 2), (3, 2, 1, 0), (2, 3, 0, 1))]
    choices = []
    for a in range(v):
        items = [b for b in range(v) for _ in range(mult[a][b])]
        choices.append(_necklaces(items))
    out = []
    for rot in itertools.product(*choices):
        ends = {}  # (a, b) -> darts at a leading to b
        for a in range(v):
            for i, b in enumerate(rot[a]):
                ends.setdefault((a, b), []).append(4 * a + i)
        pair_opts = []
        for a in range(v):
            for b in range(a + 1, v):
                if mult[a][b]:
                    xs = ends[(a, b)]
                    pair_opts.append([list(zip(xs, perm)) for perm in itertools.permutations(ends[(b, a)])])
        for combo in itertools.product(*pair_opts):
            pairing = [0] * (4 * v)
            for group in combo:
                for x, y in group:
                    pairing[x], pairing[y] = y, x
            out.append(FatGraph(tuple(pairing)))
    return out


def _describe(g: FatGraph) -> FatGraph:
    for t in TEMPLATES:
        if t.n_vertices == g.n_vertices and g.is_isomorphic(t):
            return t
    flags = {"unmatched"}
    if g.two_edge_bonds():
        flags.add("prime-unfillable")
    return FatGraph(g.pairing, name=f"extra-{g.n_vertices}", flags=frozenset(flags))


def enumerate_fat_graphs(v_max: int) -> list[FatGraph]:
    """All connected 4-regular plane multigraphs with at most ``v_max`` vertices.

    Graphs are listed up to homeomorphism of the sphere, reflections
    included.  Known graphs come back as the matching template (with box
    names); a graph with a two-edge cut is flagged ``prime-unfillable``.
    """
    if not 1 <= v_max <= 4:
        raise ValueError("v_max must be between 1 and 4")
    found = []
    for v in range(1, v_max + 1):
        codes = {}
        for mult in _multigraphs(v):
            for g in _maps_of(mult):
                if g.is_planar:
                    codes.setdefault(g.canonical_code, g)
        found.extend(_describe(g) for _, g in sorted(codes.items()))
    return found


# ---- the sweep -----------------------------------------------------------

REQUIRED_BRANCHES = (
    "t1_torus",
    "t2_two_bridge",
    "t3_pretzel",
    "r4_pretzel",
    "s_montesinos",
    "r4_montesinos",
    "s_type_ii",
    "s_type_iii",
)

BRANCH_TEXT = {
    "t1_torus": "one vertex: unknot or (2,p)-torus knot",
    "t2_two_bridge": "two vertices, one vertical and one horizontal box: two-bridge",
    "t3_pretzel": "three vertical boxes: 3-strand pretzel",
    "t3_two_bridge": "three boxes, one horizontal: two-bridge",
    "s_two_bridge": "stacked4, mixed left and right pairs: two-bridge",
    "s_montesinos": "stacked4, left vertical pair, right mixed: M(1/q1, 1/q2, 1/(q3 + 1/q4))",
    "s_montesinos_rotated": "stacked4, left mixed, right horizontal pair: same case turned a quarter",
    "s_type_ii": "stacked4, left vertical pair, right horizontal pair, full twists on both sides: type II",
    "s_type_iii": "stacked4, left vertical pair, right horizontal pair otherwise: type III",
    "r4_pretzel": "ring4, four vertical boxes: 4-strand pretzel",
    "r4_montesinos": "ring4, one horizontal box: M(1/p, 1/q, n + 1/r)",
    "r4_two_bridge": "ring4, alternating directions: two-bridge",
}


def fill_options(fill_bound: int) -> list[tuple[str, int]]:
    opts = [("vertical", 1)]
    for k in range(2, fill_bound + 1):
        opts += [("vertical", k), ("horizontal", k)]
    return opts


@dataclass
class Record:
    graph: str
    fills: tuple[tuple[str, int], ...]
    n_crossings: int
    components: int
    prime: bool = False
    nugatory: bool = False
    twist_number: Optional[int] = None
    merged: bool = False
    knot_class: Optional[KnotClass] = None
    direct_class: Optional[KnotClass] = None
    branch: str = ""
    roundtrip: Optional[bool] = None
    pd: Optional[list] = None
    error: str = ""

    @property
    def is_knot(self) -> bool:
        return self.components == 1

    @property
    def counted(self) -> bool:
        """Prime knot diagrams, which every case of the table must cover."""
        return self.is_knot and self.prime and not self.nugatory

    def fill_text(self) -> str:
        return " ".join(f"{d[0].upper()}{k}" for d, k in self.fills)

    def to_dict(self) -> dict:
        out = {
            "graph": self.graph,
            "fills": self.fill_text(),
            "crossings": self.n_crossings,
            "knot": self.is_knot,
        }
        if self.is_knot:
            out.update(prime=self.prime, nugatory=self.nugatory, twist_number=self.twist_number, merged=self.merged)
        if self.knot_class is not None:
            out["class"] = self.knot_class.to_dict()
        if self.branch:
            out["branch"] = self.branch
        if self.roundtrip is not None:
            out["roundtrip"] = self.roundtrip
        if self.error:
            out["error"] = self.error
        return out


def _decorated_match(g: FatGraph, target: FatGraph, fills: Sequence[BoxFill]) -> bool:
    """Is there an isomorphism g -> target carrying sizes and directions to the fills?"""
    for iso in g.isomorphisms(target):
        ok = True
        for v in range(g.n_vertices):
            f = fills[iso.vertex(v)]
            if g.sizes[v] != f.crossings:
                ok = False
                break
            if f.crossings > 1 and iso.axis(v, g.axes[v]) != f.axis:
                ok = False
                break
        if ok:
            return True
    return False


def run_record(graph: FatGraph, combo: tuple[tuple[str, int], ...]) -> Record:
    fills = [BoxFill(v, d, k) for v, (d, k) in enumerate(combo)]
    n = sum(k for _, k in combo)
    try:
        diagram = substitute(graph, fills)
    except MultiComponent:
        return Record(graph.name, combo, n, components=2)
    rep = is_connected_prime(diagram)
    rec = Record(graph.name, combo, n, 1, rep.prime, rep.has_nugatory_crossing, pd=diagram.to_pd())
    if not rec.counted:
        return rec
    reduced = twist_graph_of(diagram.pairing)
    rec.twist_number = reduced.n_vertices
    rec.merged = reduced.n_vertices < graph.n_vertices
    direct = classify_fills(graph.name, {graph.vertex_name(v): (f.axis, f.crossings) for v, f in enumerate(fills)})
    rec.direct_class = direct
    try:
        rec.knot_class = classify_small_twist_diagram(diagram)
    except AltSurgeryError as exc:
        rec.error = f"{type(exc).__name__}: {exc}"
        return rec
    if not rec.merged:
        rec.branch = direct.branch if direct is not None else ""
        rec.roundtrip = reduced.n_vertices == graph.n_vertices and _decorated_match(reduced, graph, fills)
    else:
        rec.branch = "merged"
    return rec


@lru_cache(maxsize=None)
def _census4() -> tuple:
    return tuple(enumerate_fat_graphs(4))


def _job(args):
    index, combo = args
    return run_record(_census4()[index], combo)


def _generality(r: Record) -> int:
    return VARIANTS.index(r.knot_class.variant) if r.knot_class is not None else -1


@dataclass
class Lemma2Report:
    fill_bound: int
    graphs: list
    records: list = field(default_factory=list)

    @property
    def knots(self) -> list[Record]:
        return [r for r in self.records if r.is_knot]

    @property
    def counted(self) -> list[Record]:
        return [r for r in self.records if r.counted]

    @property
    def gaps(self) -> list[Record]:
        out = []
        for r in self.counted:
            if r.knot_class is None or not r.knot_class.arborescent:
                out.append(r)
            elif not r.merged and (r.direct_class is None or r.direct_class.key != r.knot_class.key):
                out.append(r)
        return out

    @property
    def branch_counts(self) -> Counter:
        return Counter(r.branch for r in self.counted if r.branch and r.branch != "merged")

    @property
    def class_counts(self) -> Counter:
        return Counter(r.knot_class.variant for r in self.counted if r.knot_class is not None)

    @property
    def missing_branches(self) -> list[str]:
        return [b for b in REQUIRED_BRANCHES if not self.branch_counts.get(b)]

    def examples(self) -> dict:
        """One record per branch, preferring the most general knot class."""
        out = {}
        for r in self.counted:
            if not r.branch or r.branch == "merged":
                continue
            if r.branch not in out or _generality(r) > _generality(out[r.branch]):
                out[r.branch] = r
        return out

    def summary(self) -> dict:
        return {
            "fill_bound": self.fill_bound,
            "records": len(self.records),
            "knots": len(self.knots),
            "prime_knots": len(self.counted),
            "merged": sum(1 for r in self.counted if r.merged),
            "gaps": len(self.gaps),
            "roundtrip_failures": sum(1 for r in self.counted if r.roundtrip is False),
            "branches": dict(sorted(self.branch_counts.items())),
            "classes": dict(sorted(self.class_counts.items())),
            "missing_branches": self.missing_branches,
        }

    def to_dict(self, records: bool = False) -> dict:
        out = {
            "summary": self.summary(),
            "graphs": [g.to_dict() for g in self.graphs],
            "branches": [
                {
                    "branch": b,
                    "description": BRANCH_TEXT[b],
                    "count": self.branch_counts.get(b, 0),
                    "example": (ex.graph + " " + ex.fill_text()) if (ex := self.examples().get(b)) else None,
                    "class": ex.knot_class.to_dict() if ex and ex.knot_class else None,
                }
                for b in BRANCH_TEXT
            ],
            "gaps": [r.to_dict() for r in self.gaps],
        }
        if records:
            out["records"] = [r.to_dict() for r in self.records]
        return out

    def to_json(self, records: bool = False) -> str:
        return json.dumps(self.to_dict(records), indent=2, sort_keys=True)

    def table(self) -> str:
        rows = [("branch", "count", "example", "class")]
        ex = self.examples()
        for b in BRANCH_TEXT:
            r = ex.get(b)
            cls = ""
            if r is not None and r.knot_class is not None:
                k = r.knot_class
                cls = k.variant + (f" {k.two_bridge}" if k.two_bridge else "") + (f" {k.montesinos}" if k.montesinos else "")
            rows.append((b, str(self.branch_counts.get(b, 0)), f"{r.graph} {r.fill_text()}" if r else "-", cls))
        widths = [max(len(row[i]) for row in rows) for i in range(4)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
        s = self.summary()
        lines.append("")
        lines.append(
            f"records={s['records']} prime_knots={s['prime_knots']} merged={s['merged']} "
            f"gaps={s['gaps']} missing_branches={len(s['missing_branches'])}"
        )
        return "\n".join(lines)


def verify_lemma2(fill_bound: int = 4, jobs: int = 1, raise_on_gap: bool = False) -> Lemma2Report:
    """Fill every graph with every box choice up to ``fill_bound`` and classify.

    Records come back in a fixed order whatever ``jobs`` is.
    """
    if fill_bound < 2:
        raise ValueError("fill_bound must be at least 2")
    graphs = list(_census4())
    opts = fill_options(fill_bound)
    tasks = []
    for i, g in enumerate(graphs):
        for combo in itertools.product(opts, repeat=g.n_vertices):
            tasks.append((i, combo))
    if jobs <= 1:
        records = [run_record(graphs[i], combo) for i, combo in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_job, tasks, chunksize=64))
    report = Lemma2Report(fill_bound, graphs, records)
    if raise_on_gap and report.gaps:
        raise ClassificationGap(f"{len(report.gaps)} prime diagrams were not classified")
    return report


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("ALTSURGERY_JOBS", "1")))
    except ValueError:
        return 1

"""Knot recognition for prime alternating diagrams with at most four twists.

Everything is exact.  Rational tangles are ``Fraction`` values and the
knots come from closing sums of them, so the tools here are continued
fractions, two-bridge normal forms and Montesinos normal forms.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .diagram import PlanarDiagram
from .errors import (
    DivisionByZeroInTail,
    IntegerTangle,
    MalformedCode,
    NotLinearPattern,
    TwistTooLarge,
    UnmatchedPattern,
)
from .fatgraph import HORIZONTAL, VERTICAL
from .templates import match_template
from .twist import reduced_twist_graph

# ---- continued fractions -------------------------------------------------


@dataclass(frozen=True)
class ContinuedFraction:
    terms: tuple[int, ...]

    def __post_init__(self):
        if not self.terms or any(t == 0 for t in self.terms):
            raise ValueError("continued fraction terms must be nonzero and nonempty")


def eval_continued_fraction(cf: Union[ContinuedFraction, Sequence[int]]) -> Fraction:
    """[a1, a2, ..., an] = a1 + 1/(a2 + 1/(... + 1/an))."""
    terms = cf.terms if isinstance(cf, ContinuedFraction) else tuple(cf)
    if not terms:
        raise ValueError("empty continued fraction")
    x = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        if x == 0:
            raise DivisionByZeroInTail(f"tail evaluates to zero before term {a}")
        x = a + 1 / x
    return x


# ---- two-bridge knots ----------------------------------------------------


def _class_of(p: int, q: int) -> set:
    q %= p
    out = {q, (-q) % p}
    if math.gcd(p, q) == 1 and p > 1:
        inv = pow(q, -1, p)
        out |= {inv, (-inv) % p}
    return out


@dataclass(frozen=True)
class TwoBridgeFraction:
    """Schubert normal form b(p, q) with q the least member of its class.

    The class of q is {q, p - q, q^-1, p - q^-1} mod p, which identifies
    mirror images and the two ways of reading the chain.
    """

    p: int
    q: int

    @classmethod
    def of(cls, p: int, q: int) -> "TwoBridgeFraction":
        p = abs(p)
        if p == 0:
            raise ValueError("p = 0 describes a split link")
        if p == 1:
            return cls(1, 0)
        if math.gcd(p, q) != 1:
            raise ValueError(f"{p}/{q} is not in lowest terms")
        return cls(p, min(_class_of(p, q)))

    def equivalent(self, p: int, q: int) -> bool:
        return abs(p) == self.p and (q % self.p) in _class_of(self.p, self.q)

    @property
    def is_torus_2p(self) -> bool:
        return self.p > 1 and self.q == 1

    @property
    def is_twist_knot(self) -> bool:
        """Some continued fraction [a, b] with |a|, |b| >= 2 gives this knot."""
        if self.p < 3:
            return False
        cls_ = _class_of(self.p, self.q)
        for b in range(2, self.p):
            for target in (self.p, -self.p):
                if (target - 1) % b == 0 and abs((target - 1) // b) >= 2 and b % self.p in cls_:
                    return True
        return False

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "torus_2p": self.is_torus_2p, "twist_knot": self.is_twist_knot}

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def two_bridge_of_sum(r: Fraction, s: Fraction) -> TwoBridgeFraction:
    """N(r + s) for rational tangles r = a/b and s = c/d.

    With a*b' - b*a' = 1 the closure is b(ad + bc, a'd + b'c).
    """
    a, b = r.numerator, r.denominator
    c, d = s.numerator, s.denominator
    g, x, y = _egcd(a, b)  # a*x + b*y = 1
    b1, a1 = x, -y
    p = a * d + b * c
    q = a1 * d + b1 * c
    return TwoBridgeFraction.of(p, q % abs(p) if p else 0)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


# ---- Montesinos forms ----------------------------------------------------


@dataclass(frozen=True)
class MontesinosForm:
    """M(e; r_1, ..., r_n), the closure of integer e plus the r_i in a row."""

    tangles: tuple[Fraction, ...]
    e: int = 0
    flags: frozenset = field(default_factory=frozenset)

    @property
    def length(self) -> int:
        return len(self.tangles)

    @classmethod
    def parse(cls, text: str) -> "MontesinosForm":
        m = re.fullmatch(r"\s*M\s*\((.*)\)\s*", text)
        if not m:
            raise MalformedCode(f"expected M(a/b, c/d, ...), got {text!r}")
        try:
            tangles = tuple(Fraction(tok.strip().replace("−", "-")) for tok in m.group(1).split(","))
        except (ValueError, ZeroDivisionError):
            raise MalformedCode(f"bad tangle list in {text!r}") from None
        return cls(tangles)

    def mirror(self) -> "MontesinosForm":
        return MontesinosForm(tuple(-r for r in self.tangles), -self.e, self.flags)

    def value_list(self) -> list[Fraction]:
        return list(self.tangles) + ([Fraction(self.e)] if self.e else [])

    def __str__(self) -> str:
        body = ", ".join(str(r) for r in self.tangles)
        return f"M({body}; e={self.e})" if self.e else f"M({body})"

    def to_dict(self) -> dict:
        return {"e": self.e, "tangles": [str(r) for r in self.tangles], "length": self.length}


def montesinos_normalize(form: MontesinosForm) -> MontesinosForm:
    """Fractional parts in (0, 1), integer parts summed into e, order kept."""
    e = form.e
    out = []
    for r in form.tangles:
        r = Fraction(r)
        fl = math.floor(r)
        if r == fl:
            raise IntegerTangle(f"tangle {r} is an integer")
        e += fl
        out.append(r - fl)
    flags = set(form.flags) - {"two-bridge"}
    if len(out) < 3:
        flags.add("two-bridge")
    return MontesinosForm(tuple(out), e, frozenset(flags))


def is_alternating_montesinos(form: MontesinosForm) -> bool:
    """Same-sign representative rule.

    With every r_i in (0, 1) an all-positive representative exists iff
    e >= 0 and an all-negative one iff e <= -n.
    """
    f = montesinos_normalize(form)
    return f.e >= 0 or f.e <= -f.length


def _half_reciprocal(y: Fraction) -> bool:
    """Is y = 1/(2n) for a positive integer n?"""
    return y > 0 and y.numerator == 1 and y.denominator % 2 == 0


def in_delman_set(x: Fraction) -> bool:
    """x in {-1/(2n), -1 - 1/(2n), -1 + 1/(2n), -2 + 1/(2n)} for some n >= 1."""
    return (
        _half_reciprocal(-x)
        or _half_reciprocal(-1 - x)
        or _half_reciprocal(x + 1)
        or _half_reciprocal(x + 2)
    )


def is_delman_exception(form: MontesinosForm) -> bool:
    """Does some ordering read M(x, 1/p, 1/q) with x in the exceptional set?"""
    f = montesinos_normalize(form)
    if f.length != 3:
        return False
    for i in range(3):
        others = [f.tangles[j] for j in range(3) if j != i]
        if all(r.numerator == 1 for r in others) and in_delman_set(f.e + f.tangles[i]):
            return True
    return False


def _dihedral(seq: tuple) -> list[tuple]:
    n = len(seq)
    out = []
    for s in (seq, tuple(reversed(seq))):
        for k in range(n):
            out.append(s[k:] + s[:k])
    return out


def montesinos_key(form: MontesinosForm) -> tuple:
    """Invariant of the form under dihedral reordering and mirror image."""
    f = montesinos_normalize(form)
    n = f.length
    best = None
    for e, ts in ((f.e, f.tangles), (-f.e - n, tuple(1 - r for r in f.tangles))):
        for arr in _dihedral(ts):
            cand = (e, tuple((r.numerator, r.denominator) for r in arr))
            if best is None or cand < best:
                best = cand
    return best


# ---- knot classes --------------------------------------------------------

VARIANTS = ("Unknot", "TorusTwoP", "TwoBridge", "MontesinosLen3", "Pretzel", "ArborescentII", "ArborescentIII")


@dataclass(frozen=True)
class KnotClass:
    variant: str
    hyperbolic: str  # "yes", "no" or "unknown"
    determinant: int
    two_bridge: Optional[TwoBridgeFraction] = None
    montesinos: Optional[MontesinosForm] = None
    parts: tuple = ()  # box sizes for arborescent II/III: ((l1, l2), (r1, r2))
    branch: str = ""

    @property
    def arborescent(self) -> bool:
        return self.variant in VARIANTS

    @property
    def key(self) -> tuple:
        if self.variant in ("Unknot",):
            return ("Unknot",)
        if self.two_bridge is not None:
            return ("TwoBridge", self.two_bridge.p, self.two_bridge.q)
        if self.montesinos is not None:
            return ("Montesinos",) + montesinos_key(self.montesinos)
        return ("Arborescent", tuple(sorted(tuple(sorted(p)) for p in self.parts)))

    def with_branch(self, branch: str) -> "KnotClass":
        return KnotClass(self.variant, self.hyperbolic, self.determinant, self.two_bridge, self.montesinos, self.parts, branch)

    def to_dict(self) -> dict:
        out = {"variant": self.variant, "hyperbolic": self.hyperbolic, "determinant": self.determinant}
        if self.two_bridge is not None:
            out["two_bridge"] = self.two_bridge.to_dict()
        if self.montesinos is not None:
            out["montesinos"] = self.montesinos.to_dict()
            out["text"] = str(self.montesinos)
        if self.parts:
            out["boxes"] = [list(p) for p in self.parts]
        if self.branch:
            out["branch"] = self.branch
        return out


def _from_two_bridge(tb: TwoBridgeFraction) -> KnotClass:
    if tb.p == 1:
        return KnotClass("Unknot", "no", 1)
    if tb.is_torus_2p:
        return KnotClass("TorusTwoP", "no", tb.p, tb)
    return KnotClass("TwoBridge", "yes", tb.p, tb)


def torus(p: int) -> KnotClass:
    return _from_two_bridge(TwoBridgeFraction.of(p, 1))


def sum_determinant(values: Sequence[Fraction]) -> int:
    """|det| of N(r_1 + ... + r_n) from the unreduced fraction sum."""
    dens = [v.denominator for v in values]
    total = 0
    for i, v in enumerate(values):
        prod = v.numerator
        for j, d in enumerate(dens):
            if j != i:
                prod *= d
        total += prod
    return abs(total)


def ring(values: Sequence[Fraction]) -> KnotClass:
    """Class of N(r_1 + ... + r_n) for rational tangles in cyclic order."""
    values = [Fraction(v) for v in values]
    e = sum(int(v) for v in values if v.denominator == 1)
    rest = [v for v in values if v.denominator != 1]
    if not rest:
        return torus(abs(e)) if abs(e) > 1 else KnotClass("Unknot", "no", 1)
    if len(rest) == 1:
        r = rest[0] + e
        return _from_two_bridge(TwoBridgeFraction.of(r.numerator, r.denominator))
    if len(rest) == 2:
        return _from_two_bridge(two_bridge_of_sum(rest[0] + e, rest[1]))
    form = montesinos_normalize(MontesinosForm(tuple(rest), e))
    det = sum_determinant(rest + [Fraction(e)])
    if e == 0 and all(r.numerator == 1 for r in rest):
        return KnotClass("Pretzel", "yes", det, montesinos=MontesinosForm(tuple(rest)))
    if len(rest) == 3:
        return KnotClass("MontesinosLen3", "yes", det, montesinos=form)
    return KnotClass("ArborescentIII", "yes", det, montesinos=form)


def arborescent(left: tuple[int, int], right: tuple[int, int]) -> KnotClass:
    """N(1/l1 + 1/l2 + r1*r2), the union of two Montesinos tangles."""
    (l1, l2), (r1, r2) = left, right
    det = (l1 + l2) * (r1 + r2) + l1 * l2 * r1 * r2
    full = 2 in left and 2 in right
    return KnotClass("ArborescentII" if full else "ArborescentIII", "yes", det, parts=(tuple(left), tuple(right)))


# ---- the case table ------------------------------------------------------


def _val(fill) -> Fraction:
    axis, k = fill
    if k == 1:
        return Fraction(1)
    if axis is None:
        raise ValueError("a box with several crossings needs a direction")
    return Fraction(1, k) if axis == VERTICAL else Fraction(k)


def _h(fill) -> bool:
    """A genuinely horizontal box (at least two crossings)."""
    return fill[1] > 1 and fill[0] == HORIZONTAL


def _v(fill) -> bool:
    return fill[1] > 1 and fill[0] == VERTICAL


def _hcap(fill) -> bool:
    return fill[1] == 1 or fill[0] == HORIZONTAL


def _vcap(fill) -> bool:
    return fill[1] == 1 or fill[0] == VERTICAL


def classify_fills(template: str, fills: dict) -> Optional[KnotClass]:
    """Knot obtained by filling a template's boxes.

    ``fills`` maps box names to ``(axis, crossings)`` in template frames.
    Returns ``None`` when neighbouring boxes fuse into one twist region, so
    the diagram really belongs to a template with fewer vertices, and for
    the never-prime graph.
    """
    if template == "loop1":
        x = fills["X"]
        if x[1] > 1 and x[0] == HORIZONTAL:
            return None
        return torus(x[1]).with_branch("t1_torus") if x[1] > 1 else KnotClass("Unknot", "no", 1, branch="t1_torus")

    if template == "ring2":
        a, b = fills["A"], fills["B"]
        if (_vcap(a) and _vcap(b)) or (_hcap(a) and _hcap(b)):
            return None
        return ring([_val(a), _val(b)]).with_branch("t2_two_bridge")

    if template in ("ring3", "ring4"):
        names = ["A", "B", "C"] if template == "ring3" else ["A", "B", "C", "D"]
        boxes = [fills[n] for n in names]
        m = len(boxes)
        if any(_hcap(boxes[i]) and _hcap(boxes[(i + 1) % m]) for i in range(m)):
            return None
        n_h = sum(_h(b) for b in boxes)
        cls = ring([_val(b) for b in boxes])
        if template == "ring3":
            branch = "t3_pretzel" if n_h == 0 else "t3_two_bridge"
        else:
            branch = {0: "r4_pretzel", 1: "r4_montesinos", 2: "r4_two_bridge"}[n_h]
        return cls.with_branch(branch)

    if template == "stacked4":
        l1, l2, rt, rb = fills["L1"], fills["L2"], fills["Rt"], fills["Rb"]
        if (_hcap(l1) and _hcap(l2)) or (_vcap(rt) and _vcap(rb)):
            return None
        left_vv = _v(l1) and _v(l2)
        if _h(rt) and _h(rb):
            if left_vv:
                cls = arborescent((l1[1], l2[1]), (rt[1], rb[1]))
                return cls.with_branch("s_type_ii" if cls.variant == "ArborescentII" else "s_type_iii")
            # the rotated picture of the Montesinos case
            vert = l1 if _v(l1) else l2
            horiz = l2 if vert is l1 else l1
            tail = 1 / (_val(horiz) + 1 / Fraction(vert[1]))
            return ring([Fraction(1, rt[1]), Fraction(1, rb[1]), tail]).with_branch("s_montesinos_rotated")
        product = 1 / (1 / _val(rt) + 1 / _val(rb))
        cls = ring([_val(l1), _val(l2), product])
        return cls.with_branch("s_montesinos" if left_vv else "s_two_bridge")

    if template == "triple4":
        return None
    raise UnmatchedPattern(f"unknown template {template!r}")


def classify_small_twist_diagram(d: PlanarDiagram) -> KnotClass:
    if d.is_unknot_sentinel:
        return KnotClass("Unknot", "no", 1)
    g = reduced_twist_graph(d)
    if g.n_vertices > 4:
        raise TwistTooLarge(f"twist number {g.n_vertices} exceeds 4")
    match = match_template(g)
    if match is None:
        raise UnmatchedPattern(f"reduced graph with {g.n_vertices} vertices matches no template")
    cls = classify_fills(match.template.name, match.fills)
    if cls is None:
        raise UnmatchedPattern(f"boxes of {match.template.name} fuse, contradicting maximal twist regions")
    return cls


def classify_two_bridge(d: PlanarDiagram) -> TwoBridgeFraction:
    cls = classify_small_twist_diagram(d)
    if cls.two_bridge is None:
        raise NotLinearPattern(f"diagram is {cls.variant}, not a two-bridge pattern")
    return cls.two_bridge

"""Slopes and the length criterion for hyperbolic surgery."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import MeridianSlope, SlopeSyntaxError

THRESHOLD = 8  # |q| * t > 8  <=>  |q| * t * pi / 4 > 2 pi


@dataclass(frozen=True)
class Slope:
    """A surgery slope p/q in lowest terms with q >= 0."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 0:
            raise ValueError("use Slope.of to normalize a negative denominator")
        if self.p == 0 and self.q == 0:
            raise ValueError("0/0 is not a slope")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not in lowest terms")
        if self.q == 0 and self.p != 1:
            raise ValueError("the meridian is written 1/0")

    @classmethod
    def of(cls, p: int, q: int = 1) -> "Slope":
        if p == 0 and q == 0:
            raise SlopeSyntaxError("0/0 is not a slope")
        if q == 0:
            return cls(1, 0)
        if q < 0:
            p, q = -p, -q
        g = math.gcd(p, q)
        return cls(p // g, q // g)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?", text)
        if not m:
            raise SlopeSyntaxError(f"cannot read slope {text!r}; expected p/q or n")
        p = int(m.group(1))
        q = int(m.group(2)) if m.group(2) is not None else 1
        return cls.of(p, q)

    @property
    def is_meridian(self) -> bool:
        return self.q == 0

    @property
    def is_integral(self) -> bool:
        return self.q == 1

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class PiMultiple:
    """A length written as coefficient * pi."""

    coefficient: Fraction

    def __post_init__(self):
        if self.coefficient < 0:
            raise ValueError("lengths are nonnegative")

    def exceeds_two_pi(self) -> bool:
        return self.coefficient > 2

    def __str__(self) -> str:
        return f"{self.coefficient}*pi"


@dataclass(frozen=True)
class GateResult:
    certified: bool
    t: int
    slope: Slope
    product: int  # |q| * t

    @property
    def inequality(self) -> str:
        op = ">" if self.certified else "<="
        return f"|q|*t = {abs(self.slope.q)}*{self.t} = {self.product} {op} {THRESHOLD}"

    def inputs(self) -> dict:
        return {"t": self.t, "slope": str(self.slope), "q_times_t": self.product, "threshold": THRESHOLD}


def _check(t: int, s: Slope) -> None:
    if t < 1:
        raise ValueError("twist number must be at least 1")
    if s.is_meridian:
        raise MeridianSlope("the meridian has no length bound")


def _slope(s: Union[Slope, str]) -> Slope:
    return Slope.parse(s) if isinstance(s, str) else s


def length_lower_bound(t: int, s: Union[Slope, str]) -> PiMultiple:
    s = _slope(s)
    _check(t, s)
    return PiMultiple(Fraction(abs(s.q) * t, 4))


def certify_by_length(t: int, s: Union[Slope, str]) -> GateResult:
    """Certified exactly when |q| * t > 8; the boundary value 8 is not enough."""
    s = _slope(s)
    _check(t, s)
    product = abs(s.q) * t
    return GateResult(product > THRESHOLD, t, s, product)

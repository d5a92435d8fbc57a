"""p-adic valuations on exact rationals and convergence certificates.

The completed modules are modelled by a finite explicit part together with a
:class:`GaugeStaircase` that bounds the coefficients of the (never stored)
tail from below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

INF = math.inf


def valuation(x, p: int) -> float:
    """Return the ``p``-adic valuation of a rational, ``inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class PScalar:
    value: Fraction
    prime: int = 5

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def valuation(self) -> float:
        return valuation(self.value, self.prime)

    def __add__(self, other: "PScalar") -> "PScalar":
        return PScalar(self.value + other.value, self.prime)

    def __mul__(self, other: "PScalar") -> "PScalar":
        return PScalar(self.value * other.value, self.prime)

    def __str__(self) -> str:
        return format_rational(self.value)


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def coefficient_gauge(c, size: int, n: int, p: int) -> float:
    """``val_p(c) - n*size`` where ``size`` is the number of f-factors."""
    return valuation(c, p) - n * size


@dataclass(frozen=True)
class GaugeStaircase:
    """Nondecreasing lower bound ``height -> gauge``.

    ``breakpoints`` are ``(height, gauge)`` pairs; between breakpoints the
    bound is the value of the last breakpoint at or below the height, beyond
    the last breakpoint it grows linearly with ``slope``.
    """

    breakpoints: tuple[tuple[int, float], ...] = ((0, 0),)
    slope: int = 1

    def __post_init__(self):
        pts = tuple(sorted((int(h), g) for h, g in self.breakpoints))
        if not pts:
            raise ValueError("staircase needs at least one breakpoint")
        for (_, a), (_, b) in zip(pts, pts[1:]):
            if b < a:
                raise ValueError("staircase must be nondecreasing")
        object.__setattr__(self, "breakpoints", pts)

    @classmethod
    def linear(cls, slope: int = 1, offset: int = 0) -> "GaugeStaircase":
        return cls(((0, offset),), slope)

    @property
    def unbounded(self) -> bool:
        return self.slope >= 1

    def __call__(self, height: int) -> float:
        pts = self.breakpoints
        if height < pts[0][0]:
            return -INF
        last_h, last_g = pts[-1]
        if height >= last_h:
            return last_g + self.slope * (height - last_h)
        value = pts[0][1]
        for h, g in pts:
            if h > height:
                break
            value = g
        return value

    def shifted(self, amount: float) -> "GaugeStaircase":
        return GaugeStaircase(
            tuple((h, g + amount) for h, g in self.breakpoints), self.slope
        )

    def loosened(self, amount: float) -> "GaugeStaircase":
        return self.shifted(-abs(amount))


@dataclass
class ConvergenceCertificate:
    ok: bool
    violation: object = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def certify_convergence(
    coeffs: Mapping[Sequence[int], object],
    n: int,
    staircase: GaugeStaircase,
    p: int,
    height_of,
) -> ConvergenceCertificate:
    """Check every explicit coefficient against ``staircase``.

    ``coeffs`` maps f-exponent vectors to rationals; ``height_of`` gives the
    height of an exponent vector. The gauge uses ``|B| = sum(B)``.
    """
    if not staircase.unbounded:
        return ConvergenceCertificate(False, None, "staircase slope < 1")
    for B in sorted(coeffs, key=lambda b: (height_of(b), tuple(b))):
        c = coeffs[B]
        if c == 0:
            continue
        g = coefficient_gauge(c, sum(B), n, p)
        if g < staircase(height_of(B)):
            return ConvergenceCertificate(False, tuple(B), "gauge below staircase")
    return ConvergenceCertificate(True)

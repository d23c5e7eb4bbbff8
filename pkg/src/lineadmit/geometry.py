"""Exact projective-plane primitives over the rationals.

Lines and points are stored as coprime integer triples whose first nonzero
entry is positive, so two proportional triples compare and hash equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Tuple

Triple = Tuple[int, int, int]


class DegenerateInput(ValueError):
    """Raised for the zero triple, which names no line or point."""


class NoUniqueIntersection(ValueError):
    """Raised when intersecting a line with itself."""


def _canonical(raw: Iterable) -> Triple:
    vals = [Fraction(v) for v in raw]
    if len(vals) != 3:
        raise DegenerateInput(f"expected 3 coordinates, got {len(vals)}")
    if not any(vals):
        raise DegenerateInput("all three coefficients are zero")
    den = lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    g = gcd(*ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return (ints[0], ints[1], ints[2])


@dataclass(frozen=True, order=True)
class Line:
    """The line a*x + b*y + c*z = 0."""

    coeffs: Triple

    def __post_init__(self):
        if _canonical(self.coeffs) != tuple(self.coeffs):
            raise DegenerateInput(f"{self.coeffs} is not in canonical form")

    def __str__(self):
        return "({}, {}, {})".format(*self.coeffs)

    @property
    def at_infinity(self) -> bool:
        """True for z = 0, the line at infinity of the chart z = 1."""
        return self.coeffs == (0, 0, 1)


@dataclass(frozen=True, order=True)
class Point:
    """Homogeneous point [x:y:z]."""

    coords: Triple

    def __post_init__(self):
        if _canonical(self.coords) != tuple(self.coords):
            raise DegenerateInput(f"{self.coords} is not in canonical form")

    def __str__(self):
        return "[{}:{}:{}]".format(*self.coords)

    @property
    def at_infinity(self) -> bool:
        return self.coords[2] == 0


def canonicalize_line(raw) -> Line:
    """Scale a rational triple to its canonical integer form."""
    return Line(_canonical(raw))


def canonicalize_point(raw) -> Point:
    return Point(_canonical(raw))


def cross(u: Triple, v: Triple) -> Triple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def intersect(l1: Line, l2: Line) -> Point:
    if l1 == l2:
        raise NoUniqueIntersection(f"lines {l1} and {l2} coincide")
    return Point(_canonical(cross(l1.coeffs, l2.coeffs)))


def join(p: Point, q: Point) -> Line:
    """The line through two distinct points."""
    if p == q:
        raise NoUniqueIntersection(f"points {p} and {q} coincide")
    return Line(_canonical(cross(p.coords, q.coords)))


def on_line(p: Point, l: Line) -> bool:
    a, b, c = l.coeffs
    x, y, z = p.coords
    return a * x + b * y + c * z == 0

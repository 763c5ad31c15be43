"""Exact arithmetic on the unit circle and the torus.

Every distance, time, and threshold in this package is a
``fractions.Fraction``; no floating point enters any computation here.
Integer vectors are plain tuples of Python ints, so nothing overflows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Tuple, Union

Rational = Fraction
IntVector = Tuple[int, ...]
TorusPoint = Tuple[Fraction, ...]
RationalLike = Union[Fraction, int, str]

HALF = Fraction(1, 2)


class ZeroVector(ValueError):
    """Raised when an operation needs an integer vector with a nonzero entry."""


class UnsupportedDimension(ValueError):
    """The requested dimension is outside the implemented range."""


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" (or a bare "p") into an exact rational."""
    return Fraction(text.strip())


def format_rational(x: RationalLike) -> str:
    """Render an exact rational as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(x))


def circle_distance(x: RationalLike) -> Fraction:
    """Distance from x to the nearest integer, always in [0, 1/2].

    Periodic with period 1 and even, so the sign and integer part of x
    never matter.
    """
    f = Fraction(x) % 1
    return min(f, 1 - f)


def torus_point(coords: Iterable[RationalLike]) -> TorusPoint:
    """Wrap rational coordinates into the fundamental domain [0,1)^n."""
    return tuple(Fraction(c) % 1 for c in coords)


def linf_center_distance(point: Sequence[RationalLike]) -> Fraction:
    """L-infinity distance from a torus point to the center (1/2, ..., 1/2).

    Coordinates are wrapped into [0,1) first; on that interval |c - 1/2|
    equals the circle distance from c to 1/2, so the max over coordinates
    is the true torus distance.
    """
    coords = torus_point(point)
    if not coords:
        raise ValueError("need at least one coordinate")
    return max(abs(c - HALF) for c in coords)


def primitive_part(vector: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries.

    The sign is normalized so that the first nonzero entry comes out
    positive; the zero vector is rejected.
    """
    vec = tuple(int(c) for c in vector)
    g = 0
    for c in vec:
        g = gcd(g, c)
    if g == 0:
        raise ZeroVector("cannot normalize the zero vector")
    first = next(c for c in vec if c != 0)
    if first < 0:
        g = -g
    return tuple(c // g for c in vec)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v, strict=True))


def norm_sq(v: Sequence[int]) -> int:
    return sum(c * c for c in v)

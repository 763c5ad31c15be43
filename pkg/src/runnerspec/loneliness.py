"""Exact engines for maximum loneliness and line-orbit center distances.

The orbit of a speed vector v is the line {t*v mod 1}.  Its maximum
loneliness is the largest value of min_i ||t*v_i|| over t, where ||.||
is distance to the nearest integer; the L-infinity distance from the
orbit closure to the torus center is exactly 1/2 minus that maximum.

Both quantities are computed by scanning a finite candidate set of
rational times: peaks of the individual sawtooth functions sit at odd
multiples of 1/(2*v_i), and a local maximum of the pointwise minimum
that is not a peak must be a crossing of a rising branch with a falling
branch, which forces t*(v_i + v_j) to be an integer.  A dense-grid
oracle for this candidate argument lives in the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from .core import HALF, IntVector, RationalLike, circle_distance, torus_point

# The int64 scan is used only when every intermediate is provably below
# this bound; anything larger falls back to arbitrary precision.
_INT64_LIMIT = 1 << 60

_ARANGE_CACHE: dict[int, "np.ndarray"] = {}


class InvalidSpeeds(ValueError):
    """Speed tuples must be nonzero in every entry with gcd 1 overall."""


class InvalidNormal(ValueError):
    """Hyperplane normals must be primitive and not axis-parallel."""


@dataclass(frozen=True, init=False)
class SpeedTuple:
    """Primitive nonzero integer speeds: the data of a proper line orbit.

    Signs are dropped on construction (circle distance is even), so
    ``speeds`` holds absolute values in input order and ``canonical_form``
    the sorted variant shared by the whole sign/permutation class.
    """

    speeds: IntVector
    canonical_form: IntVector

    def __init__(self, speeds: Iterable[int]):
        vals = tuple(int(s) for s in speeds)
        if not vals:
            raise InvalidSpeeds("need at least one speed")
        if any(s == 0 for s in vals):
            raise InvalidSpeeds(f"zero speed in {vals}")
        g = 0
        for s in vals:
            g = gcd(g, s)
        if g != 1:
            raise InvalidSpeeds(f"speeds {vals} share the common factor {g}")
        object.__setattr__(self, "speeds", tuple(abs(s) for s in vals))
        object.__setattr__(self, "canonical_form", tuple(sorted(abs(s) for s in vals)))

    @property
    def dimension(self) -> int:
        return len(self.speeds)

    @property
    def volume_sq(self) -> int:
        return sum(s * s for s in self.speeds)


@dataclass(frozen=True)
class LonelinessResult:
    """Exact maximum loneliness with its witness time.

    ``d_value`` is the L-infinity distance from the orbit closure to the
    torus center; it always equals 1/2 - ml.
    """

    ml: Fraction
    witness_time: Fraction
    d_value: Fraction


SpeedsLike = Union[SpeedTuple, Sequence[int]]


def _as_speed_tuple(v: SpeedsLike) -> SpeedTuple:
    return v if isinstance(v, SpeedTuple) else SpeedTuple(v)


def _denominators(speeds: Sequence[int]) -> List[int]:
    qs = {2 * v for v in speeds}
    qs.update(a + b for a, b in itertools.combinations(speeds, 2))
    return sorted(qs)


def _int64_ok(speeds: Sequence[int]) -> bool:
    qmax = 2 * max(speeds)
    return qmax * max(speeds) < _INT64_LIMIT and qmax * qmax < _INT64_LIMIT


def _scan_best_numpy(speeds: Sequence[int]) -> Tuple[int, int, int, int]:
    """Best (value, time) over the candidate grid in int64 arithmetic.

    Returns (a, q, tn, td) meaning the maximum of min_i ||t v_i|| over all
    candidates is a/q, first attained at t = tn/td.  Evaluating every
    j/q instead of only the peak/crossing numerators costs little and
    keeps the loop branch-free; extra points can never raise the maximum.
    """
    bn = -1
    bd = 1
    btn = 0
    btd = 1
    for q in _denominators(speeds):
        j = _ARANGE_CACHE.get(q)
        if j is None:
            j = np.arange(q, dtype=np.int64)
            _ARANGE_CACHE[q] = j
        dmin = None
        for v in speeds:
            r = (j * v) % q
            np.minimum(r, q - r, out=r)
            if dmin is None:
                dmin = r
            else:
                np.minimum(dmin, r, out=dmin)
        k = int(dmin.argmax())
        a = int(dmin[k])
        left = a * bd
        right = bn * q
        if left > right or (left == right and k * btd < btn * q):
            bn, bd, btn, btd = a, q, k, q
    return bn, bd, btn, btd


def _scan_best_python(speeds: Sequence[int]) -> Tuple[int, int, int, int]:
    """Arbitrary-precision twin of the int64 scan; same result, any size."""
    bn = -1
    bd = 1
    btn = 0
    btd = 1
    for q in _denominators(speeds):
        a = -1
        k = 0
        for j in range(q):
            worst = q
            for v in speeds:
                r = (j * v) % q
                if q - r < r:
                    r = q - r
                if r < worst:
                    worst = r
                    if r <= a:
                        break
            if worst > a:
                a = worst
                k = j
        left = a * bd
        right = bn * q
        if left > right or (left == right and k * btd < btn * q):
            bn, bd, btn, btd = a, q, k, q
    return bn, bd, btn, btd


def _scan_best(speeds: Sequence[int]) -> Tuple[int, int, int, int]:
    if _int64_ok(speeds):
        return _scan_best_numpy(speeds)
    return _scan_best_python(speeds)


def max_loneliness(v: SpeedsLike) -> LonelinessResult:
    """Exact maximum over t of min_i ||t * v_i||, with its earliest witness.

    The witness time is the smallest maximizing candidate in [0, 1).
    """
    st = _as_speed_tuple(v)
    a, q, tn, td = _scan_best(st.speeds)
    ml = Fraction(a, q)
    return LonelinessResult(ml=ml, witness_time=Fraction(tn, td), d_value=HALF - ml)


def d_subtorus1(v: SpeedsLike) -> Fraction:
    """Center distance of the line subtorus with direction v: 1/2 - ml."""
    return max_loneliness(v).d_value


def maximizing_times(v: SpeedsLike) -> Tuple[Fraction, ...]:
    """All candidate times attaining the maximum loneliness, ascending."""
    st = _as_speed_tuple(v)
    speeds = st.speeds
    bn, bd, _, _ = _scan_best(speeds)
    times = set()
    use_numpy = _int64_ok(speeds)
    for q in _denominators(speeds):
        if use_numpy:
            j = _ARANGE_CACHE.get(q)
            if j is None:
                j = np.arange(q, dtype=np.int64)
                _ARANGE_CACHE[q] = j
            dmin = None
            for v_ in speeds:
                r = (j * v_) % q
                np.minimum(r, q - r, out=r)
                dmin = r if dmin is None else np.minimum(dmin, r, out=dmin)
            hits = np.nonzero(dmin * bd == bn * q)[0]
            times.update(Fraction(int(h), q) for h in hits)
        else:
            for jj in range(q):
                worst = q
                for v_ in speeds:
                    r = (jj * v_) % q
                    if q - r < r:
                        r = q - r
                    if r < worst:
                        worst = r
                if worst * bd == bn * q:
                    times.add(Fraction(jj, q))
    return tuple(sorted(times))


def d_hyperplane(normal: Sequence[int]) -> Fraction:
    """Center distance of the codimension-1 subgroup {x : normal . x in Z}.

    Closed form: the circle distance of (sum of entries)/2, divided by the
    l1 norm of the normal.  Axis-parallel normals are rejected because the
    subgroup they cut out is contained in a coordinate hyperplane.
    """
    vec = tuple(int(c) for c in normal)
    if not vec or all(c == 0 for c in vec):
        raise InvalidNormal("zero normal")
    g = 0
    for c in vec:
        g = gcd(g, c)
    if g != 1:
        raise InvalidNormal(f"normal {vec} is not primitive")
    if sum(1 for c in vec if c != 0) == 1:
        raise InvalidNormal(f"normal {vec} is axis-parallel")
    return circle_distance(Fraction(sum(vec), 2)) / sum(abs(c) for c in vec)


def _coset_candidates(vec: Sequence[int], pt: Sequence[Fraction]) -> set:
    """Generous finite superset of the vertices of max_i ||t v_i + s_i - 1/2||.

    Includes every half-integer crossing of each coordinate and every
    pairwise branch crossing, for both the sum and difference denominators.
    """
    cands = {Fraction(0)}
    items = [(v, s) for v, s in zip(vec, pt)]
    for v, s in items:
        if v == 0:
            continue
        lo, hi = (s, s + v) if v > 0 else (s + v, s)
        for m in range(floor(2 * lo) - 1, ceil(2 * hi) + 2):
            t = (Fraction(m, 2) - s) / v
            if 0 <= t < 1:
                cands.add(t)
    for (vi, si), (vj, sj) in itertools.combinations(items, 2):
        for den, off in ((vi - vj, sj - si), (vi + vj, 1 - si - sj)):
            if den == 0:
                continue
            a, b = -off, den - off
            lo, hi = (a, b) if a <= b else (b, a)
            for c in range(floor(lo) - 1, ceil(hi) + 2):
                t = (off + c) / den
                if 0 <= t < 1:
                    cands.add(t)
    return cands


def coset_center_distance(
    direction: Sequence[int],
    shift: Sequence[RationalLike],
    with_witness: bool = False,
):
    """Exact min over t of the center distance of the coset t*direction + shift.

    Zero entries in ``direction`` are allowed; those coordinates are frozen
    at their shift value and contribute a constant term.  This generality
    is what padded subgroups and explicit cosets need.
    """
    vec = tuple(int(c) for c in direction)
    pt = torus_point(shift)
    if len(pt) != len(vec) or not vec:
        raise ValueError("direction and shift must have the same positive length")

    def value(t: Fraction) -> Fraction:
        return max(circle_distance(t * vi + si - HALF) for vi, si in zip(vec, pt))

    if all(c == 0 for c in vec):
        best_t = Fraction(0)
        best = value(best_t)
    else:
        best = None
        best_t = None
        for t in sorted(_coset_candidates(vec, pt)):
            val = value(t)
            if best is None or val < best:
                best, best_t = val, t
    if with_witness:
        return best, best_t
    return best


def d_min_max(v: SpeedsLike, shift: Sequence[RationalLike]) -> Fraction:
    """Min over t of max_i ||t v_i + shift_i - 1/2||, exactly.

    With a zero shift this is d_subtorus1 again, which the test suite
    checks; the two implementations share nothing but circle_distance.
    """
    if isinstance(v, SpeedTuple):
        vec: Sequence[int] = v.speeds
    else:
        vec = tuple(int(s) for s in v)
        SpeedTuple(vec)  # validate: nonzero entries, gcd 1
    shift_t = tuple(shift)
    if len(shift_t) != len(vec):
        raise InvalidSpeeds("shift dimension does not match the speeds")
    return coset_center_distance(vec, shift_t)

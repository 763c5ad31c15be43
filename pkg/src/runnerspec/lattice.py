"""Exact lattice geometry for plane subtori and density certificates.

Everything runs over Python ints and fractions: integer kernels via
unimodular column reduction, Hermite forms for canonical bases, shortest
vectors through greedy Gram reduction plus a certified box enumeration,
and small exact linear programs for plane center distances.  The named
constants at the bottom are carried symbolically as rational multiples
of integer powers of pi, with rigorous rational enclosures.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from .core import (
    HALF,
    IntVector,
    RationalLike,
    UnsupportedDimension,
    circle_distance,
    dot,
    norm_sq,
    primitive_part,
)

# 3.14159 < pi < 3.14160; enough for every check in this package, and
# deliberately coarse so that sensitivity tests can show the first five
# digits genuinely matter.  Swap in the refined pair when more slack is
# needed.
DEFAULT_PI_BOUNDS: Tuple[Fraction, Fraction] = (
    Fraction(314159, 100000),
    Fraction(314160, 100000),
)
REFINED_PI_BOUNDS: Tuple[Fraction, Fraction] = (
    Fraction(3141592653589793, 10**15),
    Fraction(3141592653589794, 10**15),
)


class DegenerateBasis(ValueError):
    """The supplied generators do not span a plane (or miss a coordinate)."""


class InvalidDirection(ValueError):
    """Directions must be primitive integer vectors."""


class NotContained(ValueError):
    """The direction does not lie in the span of the plane."""


class BudgetExceeded(ValueError):
    """Offset enumeration would exceed the configured per-coordinate budget."""


def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _require_primitive(vec: Sequence[int]) -> None:
    g = 0
    for c in vec:
        g = gcd(g, c)
    if g != 1:
        raise InvalidDirection(f"{tuple(vec)} is not primitive (gcd {g})")


def _integer_kernel(rows: Sequence[Sequence[int]], n: int) -> List[IntVector]:
    """Basis of {x in Z^n : r . x = 0 for every row r}.

    Unimodular column reduction: each row collapses the current basis
    columns onto a single pivot carrying the gcd of the dot products; the
    pivot is dropped, the rest stay orthogonal to everything seen so far.
    Integer kernels of integer matrices are saturated by construction.
    """
    basis: List[IntVector] = [
        tuple(1 if j == i else 0 for j in range(n)) for i in range(n)
    ]
    for r in rows:
        pivot: Optional[Tuple[IntVector, int]] = None
        kept: List[IntVector] = []
        for col in basis:
            a = dot(r, col)
            if a == 0:
                kept.append(col)
            elif pivot is None:
                pivot = (col, a)
            else:
                pcol, pa = pivot
                g, x, y = _ext_gcd(pa, a)
                comb = tuple(x * p + y * c for p, c in zip(pcol, col))
                zero = tuple((a // g) * p - (pa // g) * c for p, c in zip(pcol, col))
                pivot = (comb, g)
                kept.append(zero)
        basis = kept
    return basis


def _row_hnf(
    rows: Sequence[Sequence[int]], want_transform: bool = False
):
    """Row Hermite form with positive pivots and reduced entries above.

    With ``want_transform`` also returns T (one row per nonzero output
    row) such that T @ input = output.
    """
    work = [list(r) for r in rows]
    m = len(work)
    if m == 0:
        return ([], []) if want_transform else []
    n = len(work[0])
    T = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for col in range(n):
        if r >= m:
            break
        nz = next((i for i in range(r, m) if work[i][col] != 0), None)
        if nz is None:
            continue
        if nz != r:
            work[r], work[nz] = work[nz], work[r]
            T[r], T[nz] = T[nz], T[r]
        for i in range(r + 1, m):
            if work[i][col] == 0:
                continue
            a, b = work[r][col], work[i][col]
            g, x, y = _ext_gcd(a, b)
            new_r = [x * p + y * q for p, q in zip(work[r], work[i])]
            new_i = [(a // g) * q - (b // g) * p for p, q in zip(work[r], work[i])]
            tr = [x * p + y * q for p, q in zip(T[r], T[i])]
            ti = [(a // g) * q - (b // g) * p for p, q in zip(T[r], T[i])]
            work[r], work[i] = new_r, new_i
            T[r], T[i] = tr, ti
        if work[r][col] < 0:
            work[r] = [-c for c in work[r]]
            T[r] = [-c for c in T[r]]
        p = work[r][col]
        for i in range(r):
            q = work[i][col] // p
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                T[i] = [a - q * b for a, b in zip(T[i], T[r])]
        r += 1
    out = [tuple(row) for row in work[:r]]
    if want_transform:
        return out, [tuple(row) for row in T[:r]]
    return out


def _independent2(u: Sequence[int], v: Sequence[int]) -> bool:
    return any(
        u[i] * v[j] != u[j] * v[i]
        for i, j in itertools.combinations(range(len(u)), 2)
    )


@dataclass(frozen=True)
class SaturatedPlane:
    """Canonical basis of Z^n intersected with a rational plane."""

    basis_u: IntVector
    basis_v: IntVector

    @property
    def ambient_dimension(self) -> int:
        return len(self.basis_u)

    def gram(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        a = norm_sq(self.basis_u)
        b = dot(self.basis_u, self.basis_v)
        c = norm_sq(self.basis_v)
        return ((a, b), (b, c))

    @property
    def covolume_sq(self) -> int:
        (a, b), (_, c) = self.gram()
        return a * c - b * b

    def coords_of(self, vector: Sequence[int]) -> Tuple[Fraction, Fraction]:
        """Rational coordinates of a vector in this basis, or NotContained."""
        vec = tuple(int(c) for c in vector)
        (a, b), (_, c) = self.gram()
        det = a * c - b * b
        r1 = dot(vec, self.basis_u)
        r2 = dot(vec, self.basis_v)
        alpha = Fraction(c * r1 - b * r2, det)
        beta = Fraction(a * r2 - b * r1, det)
        recon = tuple(
            alpha * x + beta * y for x, y in zip(self.basis_u, self.basis_v)
        )
        if recon != tuple(Fraction(c_) for c_ in vec):
            raise NotContained(f"{vec} is not in the span of the plane")
        return alpha, beta

    def to_json_dict(self) -> dict:
        return {
            "basis": [list(self.basis_u), list(self.basis_v)],
            "gram": [list(r) for r in self.gram()],
            "covolume_sq": self.covolume_sq,
        }


def saturate(u: Sequence[int], v: Sequence[int]) -> SaturatedPlane:
    """Basis of Z^n intersected with the rational span of u and v.

    Double orthogonal complement: the integer kernel of [u; v] spans the
    orthogonal complement of the plane, and the integer kernel of that
    is exactly the saturation.  The output basis is put in Hermite form
    so equal planes yield identical objects.
    """
    uu = tuple(int(c) for c in u)
    vv = tuple(int(c) for c in v)
    n = len(uu)
    if len(vv) != n or n < 2:
        raise DegenerateBasis("need two vectors of equal length at least 2")
    if not _independent2(uu, vv):
        raise DegenerateBasis(f"{uu} and {vv} are linearly dependent")
    rel = _integer_kernel([uu, vv], n)
    plane = _integer_kernel(rel, n)
    hnf = _row_hnf(plane)
    assert len(hnf) == 2
    return SaturatedPlane(hnf[0], hnf[1])


def volume_sq_1(v: Sequence[int]) -> int:
    """Squared covolume (= squared length) of the line lattice Z*v."""
    vec = tuple(int(c) for c in v)
    _require_primitive(vec)
    return norm_sq(vec)


def covolume_sq_2(plane: SaturatedPlane) -> int:
    """Gram determinant of the plane lattice basis."""
    return plane.covolume_sq


def _nearest_int(x: Fraction) -> int:
    return math.floor(x + HALF)


def _inverse_diag(G: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    r = len(G)
    if r == 1:
        return [1 / G[0][0]]
    if r == 2:
        det = G[0][0] * G[1][1] - G[0][1] * G[1][0]
        return [G[1][1] / det, G[0][0] / det]
    a, b, c = G[0]
    d, e, f = G[1]
    g, h, i = G[2]
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return [
        (e * i - f * h) / det,
        (a * i - c * g) / det,
        (a * e - b * d) / det,
    ]


def _floor_sqrt(x: Fraction) -> int:
    if x < 0:
        return 0
    p, q = x.numerator, x.denominator
    return math.isqrt(p * q) // q


def _shortest_on_gram(
    G_in: Sequence[Sequence[Fraction]],
) -> Tuple[Fraction, Tuple[int, ...]]:
    """Exact shortest nonzero vector for a positive definite rational Gram.

    Greedy pairwise size reduction (strict decreases only, so it always
    terminates), then a box enumeration whose bounds come from the
    Cauchy-Schwarz inequality against the dual basis; the result is the
    true minimum regardless of how good the reduction was.
    Returns (norm_sq, coefficients over the input generators).
    """
    r = len(G_in)
    G = [[Fraction(x) for x in row] for row in G_in]
    C = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    for _ in range(512):
        changed = False
        order = sorted(range(r), key=lambda i: G[i][i])
        if order != list(range(r)):
            G = [[G[a][b] for b in order] for a in order]
            C = [C[a] for a in order]
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                mu = _nearest_int(G[i][j] / G[j][j])
                if mu == 0:
                    continue
                gii = G[i][i] - 2 * mu * G[i][j] + mu * mu * G[j][j]
                if gii >= G[i][i]:
                    continue
                C[i] = [a - mu * b for a, b in zip(C[i], C[j])]
                newrow = [G[i][k] - mu * G[j][k] for k in range(r)]
                newrow[i] = gii
                G[i] = newrow
                for k in range(r):
                    G[k][i] = newrow[k]
                changed = True
        if not changed:
            break
    bound = min(G[i][i] for i in range(r))
    inv_diag = _inverse_diag(G)
    box = [_floor_sqrt(bound * inv_diag[i]) for i in range(r)]
    best: Optional[Fraction] = None
    best_c: Tuple[int, ...] = ()
    for coeffs in itertools.product(*(range(-b, b + 1) for b in box)):
        first = next((c for c in coeffs if c != 0), None)
        if first is None or first < 0:
            continue
        q = Fraction(0)
        for i in range(r):
            q += coeffs[i] * coeffs[i] * G[i][i]
            for j in range(i + 1, r):
                q += 2 * coeffs[i] * coeffs[j] * G[i][j]
        if best is None or q < best:
            best = q
            best_c = coeffs
    assert best is not None
    out = tuple(
        sum(best_c[i] * C[i][m] for i in range(r)) for m in range(r)
    )
    return best, out


def _split_along(v: Sequence[int]) -> Tuple[IntVector, List[IntVector]]:
    """(c, kernel) with v . c = 1 and kernel a basis of Z^n orthogonal to v."""
    n = len(v)
    pivot: Optional[Tuple[IntVector, int]] = None
    kept: List[IntVector] = []
    for i in range(n):
        col = tuple(1 if j == i else 0 for j in range(n))
        a = v[i]
        if a == 0:
            kept.append(col)
        elif pivot is None:
            pivot = (col, a)
        else:
            pcol, pa = pivot
            g, x, y = _ext_gcd(pa, a)
            comb = tuple(x * p + y * c for p, c in zip(pcol, col))
            zero = tuple((a // g) * p - (pa // g) * c for p, c in zip(pcol, col))
            pivot = (comb, g)
            kept.append(zero)
    assert pivot is not None
    pcol, pa = pivot
    assert abs(pa) == 1
    if pa < 0:
        pcol = tuple(-c for c in pcol)
    return pcol, kept


def shortest_projected_vector(v: Sequence[int]) -> Tuple[IntVector, Fraction]:
    """Integer x outside Z*v whose component orthogonal to v is shortest.

    The projections of Z^n onto the hyperplane orthogonal to v form a
    rank n-1 lattice; a basis with known integer preimages is built from
    a splitting Z^n = Z*c + kernel, and the shortest vector is found
    exactly on its rational Gram matrix.  Returns (x, p_sq) with p_sq the
    squared length of the projection; x is a deterministic representative
    (reduced along v, lexicographically smallest of the sign pair).
    """
    vec = tuple(int(c) for c in v)
    n = len(vec)
    if n not in (2, 3, 4):
        raise UnsupportedDimension(f"ambient dimension {n} is not supported")
    _require_primitive(vec)
    N = norm_sq(vec)
    c_vec, kernel = _split_along(vec)
    r0 = len(kernel)  # n - 1
    kappa = tuple(vi - N * ci for vi, ci in zip(vec, c_vec))
    # kappa lies in the kernel lattice; its integer coordinates there
    K = [[dot(a, b) for b in kernel] for a in kernel]
    rhs = [dot(kappa, b) for b in kernel]
    lam = _solve_symmetric(K, rhs)
    lam_int = []
    for x in lam:
        assert x.denominator == 1
        lam_int.append(int(x))
    # Lattice of projections, written in kernel coordinates scaled by N:
    # kernel vectors project to themselves (rows N*e_i, preimage k_i) and
    # c projects to -kappa/N (row -lam, preimage c).
    stack = [
        [N if j == i else 0 for j in range(r0)] for i in range(r0)
    ] + [[-x for x in lam_int]]
    hnf, T = _row_hnf(stack, want_transform=True)
    assert len(hnf) == r0
    preimages = []
    for trow in T:
        x = [0] * n
        for m in range(r0):
            for idx in range(n):
                x[idx] += trow[m] * kernel[m][idx]
        for idx in range(n):
            x[idx] += trow[r0] * c_vec[idx]
        preimages.append(tuple(x))
    G = [
        [
            Fraction(
                sum(
                    hnf[a][i] * hnf[b][j] * K[i][j]
                    for i in range(r0)
                    for j in range(r0)
                ),
                N * N,
            )
            for b in range(r0)
        ]
        for a in range(r0)
    ]
    p_sq, coeffs = _shortest_on_gram(G)
    x = tuple(
        sum(coeffs[j] * preimages[j][idx] for j in range(r0)) for idx in range(n)
    )
    m = _nearest_int(Fraction(dot(x, vec), N))
    x = tuple(xi - m * vi for xi, vi in zip(x, vec))
    neg = tuple(-c for c in x)
    if neg < x:
        x = neg
    assert Fraction(N * norm_sq(x) - dot(x, vec) ** 2, N) == p_sq
    return x, p_sq


def _solve_symmetric(
    A: Sequence[Sequence[int]], b: Sequence[int]
) -> List[Fraction]:
    """Solve A x = b exactly for a small nonsingular symmetric matrix."""
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if M[i][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[col])]
    return [M[i][n] for i in range(n)]


@dataclass(frozen=True)
class DensityCertificate:
    """Exact half-spacing certificate for a line orbit inside a plane.

    The parallel translates of the line through the plane lattice are
    covolume/|v| apart, so every point of the plane torus is within
    sqrt(delta_sq) of the orbit in the L2 sense, and that bound is tight.
    """

    inner_direction: IntVector
    outer_plane: SaturatedPlane
    shortest_offset: IntVector
    delta_sq: Fraction
    epsilon: Fraction
    guaranteed: bool

    def to_json_dict(self) -> dict:
        return {
            "version": 1,
            "kind": "density-certificate",
            "inner_direction": list(self.inner_direction),
            "outer_plane": self.outer_plane.to_json_dict(),
            "shortest_offset": list(self.shortest_offset),
            "delta_sq": str(self.delta_sq),
            "epsilon": str(self.epsilon),
            "guaranteed": self.guaranteed,
        }


def density_radius_sq(v: Sequence[int], plane: SaturatedPlane) -> Fraction:
    """Squared density radius of the orbit of v inside the plane torus."""
    vec = tuple(int(c) for c in v)
    _require_primitive(vec)
    plane.coords_of(vec)  # raises NotContained if v is outside the span
    return Fraction(plane.covolume_sq, 4 * norm_sq(vec))


def kronecker_lift(v: Sequence[int], epsilon: RationalLike) -> DensityCertificate:
    """Lift a line to the best plane through it and certify orbit density.

    The plane is spanned by v and the integer vector with the shortest
    orthogonal component; ``guaranteed`` records whether the certified
    squared radius is at most epsilon squared.
    """
    vec = tuple(int(c) for c in v)
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    x, _ = shortest_projected_vector(vec)
    plane = saturate(vec, x)
    dsq = density_radius_sq(vec, plane)
    return DensityCertificate(
        inner_direction=vec,
        outer_plane=plane,
        shortest_offset=x,
        delta_sq=dsq,
        epsilon=eps,
        guaranteed=dsq <= eps * eps,
    )


def _fraction_gcd(a: Fraction, b: Fraction) -> Fraction:
    den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
    g = gcd(a.numerator * (den // a.denominator), b.numerator * (den // b.denominator))
    return Fraction(g, den)


@dataclass(frozen=True)
class CertificateProfile:
    spacing_identity_ok: bool
    max_sample_sq: Fraction
    tight_sample_sq: Fraction
    samples: int


def certificate_profile(cert: DensityCertificate, grid: int = 8) -> CertificateProfile:
    """Sample the plane torus and measure exact L2 distances to the orbit.

    Distances are taken inside the plane: the projection of the plane
    lattice onto the in-plane normal of v is a 1-dimensional lattice, so
    the distance from a sample to the family of orbit lines is a circle
    distance of its normal coordinate.  The farthest point (normal
    coordinate at half the spacing) is included explicitly, which makes
    the tightness check exact rather than approximate.
    """
    plane = cert.outer_plane
    vec = cert.inner_direction
    b1, b2 = plane.basis_u, plane.basis_v
    vv = norm_sq(vec)
    z = b1 if _independent2(b1, vec) else b2
    w = tuple(
        Fraction(zi) - Fraction(dot(z, vec), vv) * vi for zi, vi in zip(z, vec)
    )
    wp_sq = sum(c * c for c in w)
    c1 = sum(Fraction(a) * b for a, b in zip(b1, w))
    c2 = sum(Fraction(a) * b for a, b in zip(b2, w))
    g = _fraction_gcd(c1, c2)
    spacing_ok = (g * g) / (4 * wp_sq) == cert.delta_sq
    max_sq = Fraction(0)
    count = 0
    for i in range(grid):
        for j in range(grid):
            c = (i * c1 + j * c2) / grid
            r = c % g
            dist = min(r, g - r)
            sq = dist * dist / wp_sq
            if sq > max_sq:
                max_sq = sq
            count += 1
    tight_sq = (g / 2) * (g / 2) / wp_sq
    return CertificateProfile(
        spacing_identity_ok=spacing_ok,
        max_sample_sq=max_sq,
        tight_sample_sq=tight_sq,
        samples=count,
    )


def slice_plane_to_line(u: Sequence[int], v: Sequence[int]) -> IntVector:
    """A proper line direction inside the plane spanned by u and v.

    Normalize u (adding the smallest workable multiple of v) until every
    coordinate is nonzero, flip signs to make it positive, sort the
    coordinates by v_i/u_i, and combine the first strictly increasing
    adjacent pair: (v_a + v_b) * u - (u_a + u_b) * v.  The result is an
    integer combination of u and v, has no zero coordinate, and its
    center distance can only exceed that of the plane.
    """
    uu = tuple(int(c) for c in u)
    vv = tuple(int(c) for c in v)
    n = len(uu)
    if len(vv) != n:
        raise DegenerateBasis("mismatched lengths")
    if not _independent2(uu, vv):
        raise DegenerateBasis(f"{uu} and {vv} are linearly dependent")
    if any(a == 0 and b == 0 for a, b in zip(uu, vv)):
        raise DegenerateBasis("plane is stuck inside a coordinate hyperplane")
    shifted = None
    for size in itertools.count():
        for m in (size, -size) if size else (0,):
            cand = tuple(a + m * b for a, b in zip(uu, vv))
            if all(c != 0 for c in cand):
                shifted = cand
                break
        if shifted is not None:
            break
    signs = tuple(1 if c > 0 else -1 for c in shifted)
    us = tuple(s * c for s, c in zip(signs, shifted))
    vs = tuple(s * c for s, c in zip(signs, vv))
    order = sorted(range(n), key=lambda i: Fraction(vs[i], us[i]))
    pair = None
    for a, b in zip(order, order[1:]):
        if vs[a] * us[b] < vs[b] * us[a]:
            pair = (a, b)
            break
    assert pair is not None  # equal ratios everywhere would mean dependence
    a, b = pair
    w = tuple(
        (vs[a] + vs[b]) * ui - (us[a] + us[b]) * vi for ui, vi in zip(us, vs)
    )
    w = tuple(s * c for s, c in zip(signs, w))
    return primitive_part(w)


def dense_sequence(u1: Sequence[int], u2: Sequence[int], j: int) -> IntVector:
    """The j-th member u1 + j*u2 of the line family filling the plane."""
    uu = tuple(int(c) for c in u1)
    vv = tuple(int(c) for c in u2)
    if len(uu) != len(vv):
        raise DegenerateBasis("mismatched lengths")
    if not _independent2(uu, vv):
        raise DegenerateBasis(f"{uu} and {vv} are linearly dependent")
    if j < 0:
        raise ValueError("index must be nonnegative")
    return primitive_part(tuple(a + j * b for a, b in zip(uu, vv)))


def _det3(r1, r2, r3) -> Fraction:
    return (
        r1[0] * (r2[1] * r3[2] - r2[2] * r3[1])
        - r1[1] * (r2[0] * r3[2] - r2[2] * r3[0])
        + r1[2] * (r2[0] * r3[1] - r2[1] * r3[0])
    )


def _min_max_lp(
    u: Sequence[int], v: Sequence[int], offsets: Sequence[int]
) -> Fraction:
    """min d s.t. |alpha*u_i + beta*v_i - m_i - 1/2| <= d on the unit square.

    Three variables and a handful of constraints: enumerate every basic
    point (triple of active constraints), keep the best feasible one.
    """
    cons = []
    for ui, vi, mi in zip(u, v, offsets):
        rhs = Fraction(2 * mi + 1, 2)
        cons.append((ui, vi, -1, rhs))
        cons.append((-ui, -vi, -1, -rhs))
    cons.append((1, 0, 0, Fraction(1)))
    cons.append((-1, 0, 0, Fraction(0)))
    cons.append((0, 1, 0, Fraction(1)))
    cons.append((0, -1, 0, Fraction(0)))
    best: Optional[Fraction] = None
    for c1, c2, c3 in itertools.combinations(cons, 3):
        det = _det3(c1, c2, c3)
        if det == 0:
            continue
        da = _det3(
            (c1[3], c1[1], c1[2]), (c2[3], c2[1], c2[2]), (c3[3], c3[1], c3[2])
        )
        db = _det3(
            (c1[0], c1[3], c1[2]), (c2[0], c2[3], c2[2]), (c3[0], c3[3], c3[2])
        )
        dd = _det3(
            (c1[0], c1[1], c1[3]), (c2[0], c2[1], c2[3]), (c3[0], c3[1], c3[3])
        )
        alpha = da / det
        beta = db / det
        dval = dd / det
        if best is not None and dval >= best:
            continue
        if all(
            a * alpha + b * beta + c * dval <= rhs
            for a, b, c, rhs in cons
        ):
            best = dval
    assert best is not None
    return best


def d_subtorus2(
    u: Sequence[int], v: Sequence[int], entry_budget: int = 12
) -> Fraction:
    """Exact center distance of the closure of {alpha*u + beta*v mod 1}.

    Minimizes the L-infinity distance over the unit parameter square and
    all integer offset vectors within the coordinate range (expanded by
    one).  Offsets are pruned by per-coordinate lower bounds against the
    best value found so far, starting from an exact coarse-grid incumbent.
    """
    uu = tuple(int(c) for c in u)
    vv = tuple(int(c) for c in v)
    n = len(uu)
    if len(vv) != n:
        raise DegenerateBasis("mismatched lengths")
    if not _independent2(uu, vv):
        raise DegenerateBasis(f"{uu} and {vv} are linearly dependent")
    for i in range(n):
        if abs(uu[i]) + abs(vv[i]) > entry_budget:
            raise BudgetExceeded(
                f"coordinate {i} has |u_i|+|v_i| = {abs(uu[i]) + abs(vv[i])}"
                f" > budget {entry_budget}"
            )
    best = HALF
    grid = (Fraction(0), Fraction(1, 4), HALF, Fraction(3, 4), Fraction(1))
    for al in grid:
        for be in grid:
            val = max(
                circle_distance(al * ui + be * vi - HALF)
                for ui, vi in zip(uu, vv)
            )
            if val < best:
                best = val
    options = []
    for i in range(n):
        corners = (0, uu[i], vv[i], uu[i] + vv[i])
        cmin, cmax = min(corners), max(corners)
        opts = []
        for m in range(cmin - 1, cmax + 1):
            center = Fraction(2 * m + 1, 2)
            if center < cmin:
                lb = cmin - center
            elif center > cmax:
                lb = center - cmax
            else:
                lb = Fraction(0)
            opts.append((m, lb))
        opts.sort(key=lambda t: t[1])
        options.append(opts)

    def descend(idx: int, cur_lb: Fraction, chosen: Tuple[int, ...]) -> None:
        nonlocal best
        if cur_lb >= best:
            return
        if idx == n:
            d = _min_max_lp(uu, vv, chosen)
            if d < best:
                best = d
            return
        for m, lb in options[idx]:
            nl = lb if lb > cur_lb else cur_lb
            if nl >= best:
                break  # options are sorted by lower bound
            descend(idx + 1, nl, chosen + (m,))

    descend(0, Fraction(0), ())
    return best


# ---------------------------------------------------------------------------
# Named constants, carried as rational multiples of integer powers of pi.


@dataclass(frozen=True)
class PiPower:
    """Exact value coefficient * pi**pi_power with a positive coefficient."""

    coefficient: Fraction
    pi_power: int

    def decimal(self) -> float:
        return float(self.coefficient) * math.pi**self.pi_power

    def bounds(
        self, pi_bounds: Tuple[Fraction, Fraction] = DEFAULT_PI_BOUNDS
    ) -> Tuple[Fraction, Fraction]:
        """Rigorous rational enclosure from a rational enclosure of pi."""
        lo, hi = pi_bounds
        assert self.coefficient > 0
        p = self.pi_power
        if p >= 0:
            return self.coefficient * lo**p, self.coefficient * hi**p
        return self.coefficient / hi ** (-p), self.coefficient / lo ** (-p)


def ball_volume(k: int) -> PiPower:
    """Volume of the unit k-ball: pi^(k/2) / Gamma(k/2 + 1), exactly.

    Even k = 2m gives pi^m / m!; odd k = 2m+1 gives
    4^(m+1) (m+1)! / (2m+2)! * pi^m after cancelling the half-integer
    Gamma value, so the power of pi is always an integer.
    """
    if k < 0:
        raise ValueError("dimension must be nonnegative")
    m, odd = divmod(k, 2)
    if not odd:
        return PiPower(Fraction(1, math.factorial(m)), m)
    coef = Fraction(
        4 ** (m + 1) * math.factorial(m + 1), math.factorial(2 * m + 2)
    )
    return PiPower(coef, m)


def basis_length_bound(k: int, volume: RationalLike) -> PiPower:
    """Reduced-basis length bound 2^k (3/2)^(k(k-1)/2) * V / omega_k."""
    V = Fraction(volume)
    if k < 1 or V <= 0:
        raise ValueError("need k >= 1 and a positive volume")
    om = ball_volume(k)
    e = k * (k - 1) // 2
    coef = Fraction(2**k) * Fraction(3**e, 2**e) * V / om.coefficient
    return PiPower(coef, -om.pi_power)


def lift_volume_threshold(n: int, k: int, epsilon: RationalLike) -> PiPower:
    """Volume above which a k-torus must be epsilon/2-dense in a larger one.

    1 / (omega_(n-k) * (epsilon/2)^(n-k)): once the covolume clears this,
    disjoint tubes of radius epsilon/2 around the orbit would exceed the
    total volume, forcing a short offset vector.
    """
    eps = Fraction(epsilon)
    if not (1 <= k < n):
        raise ValueError("need 1 <= k < n")
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    codim = n - k
    om = ball_volume(codim)
    coef = 1 / (om.coefficient * (eps / 2) ** codim)
    return PiPower(coef, -om.pi_power)


def lrc_threshold(n: int) -> PiPower:
    """Checking threshold for n runners, at tube radius 1/(n(n+1)).

    Equals Gamma((n+1)/2) * (n(n+1))^(n-1) / pi^((n-1)/2); the half
    powers of pi cancel into the integer-power representation.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    return lift_volume_threshold(n, 1, Fraction(2, n * (n + 1)))


def _log_fraction(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def threshold_below_power_bound(
    n: int, pi_bounds: Tuple[Fraction, Fraction] = DEFAULT_PI_BOUNDS
) -> bool:
    """Whether lrc_threshold(n) < n^(5n/2), by rigorous upper bound and logs."""
    _, ub = lrc_threshold(n).bounds(pi_bounds)
    return _log_fraction(ub) < 2.5 * n * math.log(n)


@dataclass(frozen=True)
class NamedConstants:
    n: int
    k: int
    volume: Fraction
    epsilon: Fraction
    omega_k: PiPower
    ell_kV: PiPower
    c_star: PiPower
    lrc_threshold: PiPower
    tao_bound: float
    threshold_below_tao: bool


def named_constants(
    n: int,
    k: int = 1,
    volume: RationalLike = 1,
    epsilon: Optional[RationalLike] = None,
    pi_bounds: Tuple[Fraction, Fraction] = DEFAULT_PI_BOUNDS,
) -> NamedConstants:
    """Bundle of the package's named constants for given parameters.

    ``epsilon`` feeds the lift threshold and defaults to 2/(n(n+1)), the
    choice under which the lift threshold and the checking threshold
    coincide.
    """
    if not (1 <= k < n):
        raise ValueError("need 1 <= k < n")
    eps = Fraction(epsilon) if epsilon is not None else Fraction(2, n * (n + 1))
    vol = Fraction(volume)
    return NamedConstants(
        n=n,
        k=k,
        volume=vol,
        epsilon=eps,
        omega_k=ball_volume(k),
        ell_kV=basis_length_bound(k, vol),
        c_star=lift_volume_threshold(n, k, eps),
        lrc_threshold=lrc_threshold(n),
        tao_bound=float(n) ** (2.5 * n),
        threshold_below_tao=threshold_below_power_bound(n, pi_bounds),
    )

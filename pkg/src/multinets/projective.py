"""Homogeneous-coordinate kernel.

Points of RP^n are represented by plain 1-d numpy arrays of length n+1
(never the zero vector); two arrays represent the same point iff one is a
nonzero multiple of the other.  All incidence predicates reduce to numerical
rank decisions on row matrices of such vectors, with a relative singular
value threshold, so verdicts are invariant under rescaling any input.

The module also provides diagonal quadric forms, polar reflections, and the
lift of R^3 u {oo} onto the quadric of signature (4,1), with spheres and
planes represented by exterior points of that quadric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    IdenticalLines,
    IsotropicMirror,
    NotOnQuadric,
    SkewLines,
    ZeroVector,
)

# Singular value sigma_k counts as zero iff sigma_k < RANK_RTOL * sigma_1.
RANK_RTOL = 1e-9
# |<x,x>| < QUADRIC_RTOL * |x|^2 counts as "on the quadric".
QUADRIC_RTOL = 1e-9

_ABS_EPS = 1e-13


class Infinity:
    """Marker for the point at infinity of R^3 u {oo}."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"


INF = Infinity()


def hpoint(coords) -> np.ndarray:
    """Validate and return homogeneous coordinates as a float array."""
    v = np.asarray(coords, dtype=float)
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a coordinate vector, got shape {v.shape}")
    if np.linalg.norm(v) <= _ABS_EPS:
        raise ZeroVector("homogeneous coordinates must not vanish")
    return v


def normalize(p) -> np.ndarray:
    """Canonical representative: unit norm, first nonzero coordinate positive."""
    v = hpoint(p)
    v = v / np.linalg.norm(v)
    for c in v:
        if abs(c) > _ABS_EPS:
            if c < 0:
                v = -v
            break
    return v


def proj_distance(u, v) -> float:
    """Sine of the angle between the lines spanned by u and v."""
    u = hpoint(u)
    v = hpoint(v)
    if u.shape != v.shape:
        raise DimensionMismatch(f"{u.shape} vs {v.shape}")
    uu = u / np.linalg.norm(u)
    vv = v / np.linalg.norm(v)
    c = float(np.dot(uu, vv))
    resid = vv - c * uu
    return float(np.linalg.norm(resid))


def proj_equal(u, v, tol: float = 1e-9) -> bool:
    """Projective equality up to tolerance on the angle."""
    return proj_distance(u, v) <= tol


def normalized_rows(points) -> np.ndarray:
    """Stack points as rows, each scaled to unit Euclidean norm."""
    m = np.atleast_2d(np.asarray(points, dtype=float))
    norms = np.linalg.norm(m, axis=-1)
    if np.any(norms <= _ABS_EPS):
        raise ZeroVector("zero vector among span points")
    return m / norms[..., None]


def span_rank(points, rtol: float = RANK_RTOL) -> int:
    """Numerical rank of the span of the given homogeneous points.

    Rows are normalized first, so the verdict is scaling invariant;
    coplanarity of four points in RP^3 is span_rank <= 3.
    """
    m = normalized_rows(points)
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > rtol * s[0]))


def span_ranks(stacks, rtol: float = RANK_RTOL) -> np.ndarray:
    """Batched span_rank over an array of shape (N, k, d)."""
    m = np.asarray(stacks, dtype=float)
    norms = np.linalg.norm(m, axis=-1)
    if np.any(norms <= _ABS_EPS):
        raise ZeroVector("zero vector among span points")
    m = m / norms[..., None]
    s = np.linalg.svd(m, compute_uv=False)
    return np.sum(s > rtol * s[..., :1], axis=-1)


def orthonormal_span(points, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis (rows) of the span of the given points."""
    m = normalized_rows(points)
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    r = int(np.sum(s > rtol * s[0]))
    return vh[:r]


def intersect_spans(a, b, rtol: float = RANK_RTOL) -> np.ndarray:
    """Basis (rows) of the intersection of two spans given by row matrices."""
    qa = orthonormal_span(a, rtol)
    qb = orthonormal_span(b, rtol)
    m = np.concatenate([qa, -qb], axis=0).T  # columns are basis vectors
    u, s, vh = np.linalg.svd(m)
    null_mask = np.concatenate([s, np.zeros(m.shape[1] - len(s))]) <= rtol * (s[0] if len(s) else 1.0)
    coeffs = vh[null_mask.nonzero()[0]]
    if coeffs.size == 0:
        return np.empty((0, qa.shape[1]))
    basis = coeffs[:, : qa.shape[0]] @ qa
    return normalized_rows(basis)


def common_point_of_spans(spans, rtol: float = RANK_RTOL):
    """Vector closest to lying in every given span, with residuals.

    Returns (vector, lam_min, lam_second): lam_min ~ 0 certifies a common
    point, lam_second ~ 0 flags a non-unique (degenerate) intersection.
    Eigenvalues refer to the sum of complement projectors of the spans.
    """
    spans = [orthonormal_span(s, rtol) for s in spans]
    d = spans[0].shape[1]
    acc = np.zeros((d, d))
    for q in spans:
        acc += np.eye(d) - q.T @ q
    w, v = np.linalg.eigh(acc)
    return v[:, 0], float(w[0]), float(w[1])


# -- quadric forms -----------------------------------------------------------


@dataclass(frozen=True)
class QuadricForm:
    """Diagonal symmetric bilinear form given by its signature diagonal."""

    signature: tuple

    def __post_init__(self):
        if not all(s in (-1, 0, 1) for s in self.signature):
            raise ValueError("signature entries must be in {-1, 0, +1}")

    @property
    def dim(self) -> int:
        return len(self.signature)

    @property
    def diagonal(self) -> np.ndarray:
        return np.asarray(self.signature, dtype=float)

    def eval(self, x, y) -> float:
        x = hpoint(x)
        y = hpoint(y)
        if x.shape[0] != self.dim or y.shape[0] != self.dim:
            raise DimensionMismatch(
                f"form of dimension {self.dim} applied to {x.shape[0]}/{y.shape[0]}"
            )
        return float(np.sum(self.diagonal * x * y))

    def on_quadric(self, x, rtol: float = QUADRIC_RTOL) -> bool:
        x = hpoint(x)
        return abs(self.eval(x, x)) <= rtol * float(np.dot(x, x))

    def gram(self, rows) -> np.ndarray:
        m = np.asarray(rows, dtype=float)
        return m @ np.diag(self.diagonal) @ m.T


MOEBIUS = QuadricForm((1, 1, 1, 1, -1))      # R^{4,1}, models R^3 u {oo}
MOEBIUS_S2 = QuadricForm((1, 1, 1, -1))      # R^{3,1}, models S^2
LIE = QuadricForm((1, 1, 1, 1, -1, -1))      # R^{4,2}, oriented spheres
PLUECKER = QuadricForm((1, 1, 1, -1, -1, -1))  # R^{3,3}, lines of RP^3


def euclidean_form(n: int) -> QuadricForm:
    return QuadricForm((1,) * n)


def bilinear_eval(q: QuadricForm, x, y) -> float:
    """Evaluate the diagonal form: sum_k signature_k * x_k * y_k."""
    return q.eval(x, y)


def polar_reflect(q: QuadricForm, n, x) -> np.ndarray:
    """Reflection in the point n and its polar hyperplane:
    x - 2 <x,n>/<n,n> n.  Involutive; preserves <x,x>."""
    n = hpoint(n)
    x = hpoint(x)
    nn = q.eval(n, n)
    if abs(nn) <= QUADRIC_RTOL * float(np.dot(n, n)):
        raise IsotropicMirror("mirror lies on the quadric")
    return x - 2.0 * (q.eval(x, n) / nn) * n


# -- projective lines --------------------------------------------------------


@dataclass
class ProjLine:
    """Projective line spanned by two distinct points."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.a = hpoint(self.a)
        self.b = hpoint(self.b)
        if self.a.shape != self.b.shape:
            raise DimensionMismatch("spanning points of different dimension")
        if span_rank([self.a, self.b]) != 2:
            raise IdenticalLines("spanning points are projectively equal")

    @property
    def span(self) -> np.ndarray:
        return np.stack([self.a, self.b])

    def contains(self, p, tol: float = 1e-9) -> bool:
        return span_rank([self.a, self.b, hpoint(p)]) <= 2


def meet_lines(l1: ProjLine, l2: ProjLine) -> np.ndarray:
    """Intersection point of two coplanar, distinct projective lines."""
    pts = np.stack([l1.a, l1.b, l2.a, l2.b])
    r = span_rank(pts)
    if r >= 4:
        raise SkewLines("lines span rank 4")
    if r <= 2:
        raise IdenticalLines("lines coincide")
    m = normalized_rows(pts).T  # columns a1 b1 a2 b2
    m[:, 2:] *= -1.0
    u, s, vh = np.linalg.svd(m)
    coeff = vh[-1]
    rows = normalized_rows(pts)
    return normalize(coeff[0] * rows[0] + coeff[1] * rows[1])


# -- Moebius lift of R^3 u {oo} ----------------------------------------------


def moebius_lift(p) -> np.ndarray:
    """Lift a point of R^3 u {oo} onto the quadric of R^{4,1}.

    Finite p maps to (2p, |p|^2 - 1, |p|^2 + 1); oo maps to (0,0,0,1,1),
    the lift of the north pole of the unit 3-sphere chart.
    """
    if p is INF:
        return np.array([0.0, 0.0, 0.0, 1.0, 1.0])
    p = np.asarray(p, dtype=float)
    if p.shape != (3,):
        raise DimensionMismatch(f"expected a point of R^3, got shape {p.shape}")
    n2 = float(np.dot(p, p))
    return np.array([2 * p[0], 2 * p[1], 2 * p[2], n2 - 1.0, n2 + 1.0])


def moebius_drop(x):
    """Inverse of moebius_lift; returns a point of R^3 or INF."""
    x = hpoint(x)
    if x.shape != (5,):
        raise DimensionMismatch("expected coordinates in R^{4,1}")
    if not MOEBIUS.on_quadric(x):
        raise NotOnQuadric("point is not on the Moebius quadric")
    w = x[4] - x[3]
    if abs(w) <= _ABS_EPS * np.linalg.norm(x):
        return INF
    return x[:3] / w


def sphere_rep(center, radius: float) -> np.ndarray:
    """Exterior point of the Moebius quadric representing a 2-sphere.

    The polar hyperplane of the result cuts the quadric in the lifts of the
    sphere's points; reflecting in it is Euclidean inversion in the sphere.
    """
    c = np.asarray(center, dtype=float)
    if c.shape != (3,):
        raise DimensionMismatch("sphere center must lie in R^3")
    if radius <= 0:
        raise ValueError("radius must be positive")
    a = float(np.dot(c, c)) - radius * radius
    return np.array([c[0], c[1], c[2], (a - 1.0) / 2.0, (a + 1.0) / 2.0])


def plane_rep(normal, offset: float) -> np.ndarray:
    """Moebius representative of the plane {p : <p, normal> = offset}.

    Planes are the spheres through oo; the representative satisfies
    <rep, moebius_lift(oo)> = 0.
    """
    n = np.asarray(normal, dtype=float)
    if n.shape != (3,):
        raise DimensionMismatch("plane normal must lie in R^3")
    if np.linalg.norm(n) <= _ABS_EPS:
        raise ZeroVector("plane normal must not vanish")
    return np.array([n[0], n[1], n[2], offset, offset])


def sphere_rep_to_euclidean(s):
    """Decode a Moebius sphere representative.

    Returns ("sphere", center, radius) or ("plane", unit_normal, offset).
    """
    s = hpoint(s)
    if s.shape != (5,):
        raise DimensionMismatch("expected coordinates in R^{4,1}")
    ss = MOEBIUS.eval(s, s)
    if ss <= 0:
        raise NotOnQuadric("representative is not exterior to the quadric")
    w = s[4] - s[3]
    if abs(w) <= 1e-12 * np.linalg.norm(s):
        n = s[:3]
        scale = np.linalg.norm(n)
        return "plane", n / scale, float(s[3] / scale)
    c = s[:3] / w
    r = np.sqrt(ss) / abs(w)
    return "sphere", c, float(r)

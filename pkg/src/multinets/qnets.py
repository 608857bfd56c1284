"""Q-nets and Q*-nets: Laplace data, multi-net predicates, Cauchy constructors.

A Q-net is a grid of points of RP^n with planar elementary quadrilaterals;
a multi-Q-net additionally has planar coordinate rectangles for all index
pairs and is exactly a discrete projective translation surface: there exist
homogeneous representatives with x_{ij} = p_i + q_j.  The dual objects are
nets of planes with concurrent quadruples (Q*-nets).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateQuad,
    DimensionMismatch,
    InconsistentCorner,
    NonPlanarQuad,
    NotMultiQ,
    PerspectivityViolation,
    PointOffLine,
    SkewLines,
    ZeroSum,
    ZeroVector,
)
from .projective import (
    ProjLine,
    common_point_of_spans,
    hpoint,
    normalize,
    normalized_rows,
    proj_distance,
    proj_equal,
    span_rank,
    span_ranks,
)

_GAUGE_TOL = 1e-8


@dataclass
class PointNet:
    """Finite rectangular grid of points of RP^n, stored as (nu, nv, n+1)."""

    points: np.ndarray
    ambient: str = "RP3"

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 3:
            raise DimensionMismatch("PointNet expects an array of shape (nu, nv, n+1)")
        if np.any(np.linalg.norm(self.points, axis=-1) <= 1e-13):
            raise ZeroVector("net contains a zero coordinate vector")

    @property
    def dims(self):
        return self.points.shape[0], self.points.shape[1]

    @property
    def ambient_dim(self) -> int:
        return self.points.shape[2]

    def quad(self, i: int, j: int):
        """Corners (x00, x10, x01, x11) of the elementary quad at (i, j)."""
        p = self.points
        return p[i, j], p[i + 1, j], p[i, j + 1], p[i + 1, j + 1]


@dataclass
class PlaneNet:
    """Grid of oriented planes {x : n . x = d}, stored as covectors (n1,n2,n3,d)."""

    covectors: np.ndarray

    def __post_init__(self):
        self.covectors = np.asarray(self.covectors, dtype=float)
        if self.covectors.ndim != 3 or self.covectors.shape[2] != 4:
            raise DimensionMismatch("PlaneNet expects an array of shape (nu, nv, 4)")
        if np.any(np.linalg.norm(self.covectors, axis=-1) <= 1e-13):
            raise ZeroVector("plane net contains a zero covector")

    @property
    def dims(self):
        return self.covectors.shape[0], self.covectors.shape[1]

    def homogeneous(self) -> np.ndarray:
        """Covectors (n, -d) acting on homogeneous points (x, w)."""
        h = self.covectors.copy()
        h[..., 3] *= -1.0
        return h


@dataclass
class LaplaceData:
    """Coefficients of x11 = a x10 + b x01 - c x00 and the two Laplace points."""

    a: float
    b: float
    c: float
    y1: np.ndarray
    y2: np.ndarray


def laplace_gauge(x00, x10, x01, x11):
    """Renormalized representatives (t00, t10, t01, t11) with
    t11 = t10 + t01 - t00, plus the Laplace vectors (y1, y2)."""
    x00, x10, x01, x11 = (hpoint(p) for p in (x00, x10, x01, x11))
    quad = np.stack([x00, x10, x01, x11])
    if span_rank(quad) > 3:
        raise NonPlanarQuad("quad spans rank 4")
    for drop in range(4):
        triple = np.delete(quad, drop, axis=0)
        if span_rank(triple) < 3:
            raise DegenerateQuad("three corners are collinear or coincident")
    m = np.stack([x10, x01, -x00], axis=1)
    coeffs, *_ = np.linalg.lstsq(m, x11, rcond=None)
    resid = np.linalg.norm(m @ coeffs - x11) / np.linalg.norm(x11)
    if resid > 1e-9:
        raise NonPlanarQuad(f"Laplace equation inconsistent (residual {resid:.2e})")
    a, b, c = (float(v) for v in coeffs)
    scale = max(abs(a), abs(b), abs(c))
    if min(abs(a), abs(b), abs(c)) <= 1e-12 * scale:
        raise DegenerateQuad("vanishing Laplace coefficient")
    t00, t10, t01, t11 = c * x00, a * x10, b * x01, x11
    y1 = t10 - t00
    y2 = t01 - t00
    if min(np.linalg.norm(y1), np.linalg.norm(y2)) <= 1e-12:
        raise DegenerateQuad("coincident opposite corners")
    return (t00, t10, t01, t11), (y1, y2), (a, b, c)


def laplace_data(x00, x10, x01, x11) -> LaplaceData:
    """Laplace equation coefficients and Laplace points of a planar quad.

    y1 is the meet of the two edge lines of the first direction
    (x00 x10 and x01 x11); y2 the meet for the second direction.
    """
    _, (y1, y2), (a, b, c) = laplace_gauge(x00, x10, x01, x11)
    return LaplaceData(a, b, c, normalize(y1), normalize(y2))


# -- planarity predicates ------------------------------------------------------


def _rect_stacks(net: PointNet, elementary: bool):
    nu, nv = net.dims
    if elementary:
        ii = [(i, i + 1) for i in range(nu - 1)]
        jj = [(j, j + 1) for j in range(nv - 1)]
    else:
        ii = [(i0, i1) for i0 in range(nu) for i1 in range(i0 + 1, nu)]
        jj = [(j0, j1) for j0 in range(nv) for j1 in range(j0 + 1, nv)]
    idx = [(a, b) for a in ii for b in jj]
    p = net.points
    stacks = np.stack(
        [
            np.stack([p[i0, j0], p[i1, j0], p[i0, j1], p[i1, j1]])
            for (i0, i1), (j0, j1) in idx
        ]
    )
    return idx, stacks


def _planarity_violations(net: PointNet, elementary: bool):
    idx, stacks = _rect_stacks(net, elementary)
    ranks = span_ranks(stacks)
    bad = []
    for k, r in enumerate(ranks):
        if r > 3:
            (i0, i1), (j0, j1) = idx[k]
            m = normalized_rows(stacks[k])
            s = np.linalg.svd(m, compute_uv=False)
            bad.append(((i0, i1, j0, j1), float(s[-1] / s[0])))
    return bad


def q_violations(net: PointNet):
    """Non-planar elementary quads as ((i0,i1,j0,j1), residual) entries."""
    return _planarity_violations(net, elementary=True)


def is_q_net(net: PointNet) -> bool:
    """True iff every elementary quad is planar (span rank <= 3)."""
    return not q_violations(net)


def multi_q_violations(net: PointNet):
    """Non-planar coordinate rectangles, exhaustively over all index pairs."""
    return _planarity_violations(net, elementary=False)


def is_multi_q_net(net: PointNet) -> bool:
    """True iff every coordinate rectangle is planar."""
    return not multi_q_violations(net)


# -- translation structure ----------------------------------------------------


def _propagate_strip_gauge(rows, tol: float = _GAUGE_TOL):
    """Gauge a 2-row strip: representatives (t0j, t1j) with constant
    difference vector t1j - t0j.  rows has shape (2, n, d).

    Step j solves the Laplace equation of quad j with the first two
    representatives fixed; its residual measures failure of the quad to
    pass the propagated Laplace point (a perspectivity defect).
    """
    raw0, raw1 = rows[0], rows[1]
    n = raw0.shape[0]
    (t00, t10, t01, t11), _, _ = laplace_gauge(raw0[0], raw1[0], raw0[1], raw1[1])
    reps0 = [t00, t01]
    reps1 = [t10, t11]
    for j in range(1, n - 1):
        m = np.stack([raw1[j + 1], -raw0[j + 1]], axis=1)
        rhs = reps1[j] - reps0[j]
        coeffs, *_ = np.linalg.lstsq(m, rhs, rcond=None)
        resid = np.linalg.norm(m @ coeffs - rhs) / np.linalg.norm(rhs)
        if resid > tol:
            raise PerspectivityViolation(
                f"strip quad {j} breaks perspectivity (residual {resid:.2e})"
            )
        reps0.append(float(coeffs[1]) * raw0[j + 1])
        reps1.append(float(coeffs[0]) * raw1[j + 1])
    return np.stack(reps0), np.stack(reps1)


def translation_gauge(net: PointNet, tol: float = _GAUGE_TOL):
    """Homogeneous representatives realizing x_{ij} = x00 + sum y1 + sum y2.

    Returns (x00, y1, y2) with y1 of shape (nu-1, d) and y2 of (nv-1, d);
    raises NotMultiQ when no consistent translation gauge exists.
    """
    nu, nv = net.dims
    if nu < 2 or nv < 2:
        raise NotMultiQ("net must be at least 2x2")
    p = net.points
    try:
        row0, row1 = _propagate_strip_gauge(p[0:2], tol)
        col0, col1 = _propagate_strip_gauge(np.stack([p[:, 0], p[:, 1]]), tol)
    except (PerspectivityViolation, NonPlanarQuad, DegenerateQuad) as exc:
        raise NotMultiQ(str(exc)) from exc
    # align the two chains at the shared corner quad
    col_scale = np.dot(col0[0], row0[0]) / np.dot(col0[0], col0[0])
    col0 = col0 * col_scale
    x00 = row0[0]
    y2 = row0[1:] - row0[:-1]
    y1 = col0[1:] - col0[:-1]
    # verify the reconstruction against the whole net
    acc1 = np.concatenate([[np.zeros_like(x00)], np.cumsum(y1, axis=0)])
    acc2 = np.concatenate([[np.zeros_like(x00)], np.cumsum(y2, axis=0)])
    rec = x00[None, None, :] + acc1[:, None, :] + acc2[None, :, :]
    norms = np.linalg.norm(rec, axis=-1)
    if np.any(norms <= 1e-12):
        raise NotMultiQ("translation reconstruction hit a zero vector")
    for i in range(nu):
        for j in range(nv):
            if proj_distance(rec[i, j], p[i, j]) > tol:
                raise NotMultiQ(f"vertex ({i},{j}) off the translation reconstruction")
    return x00, y1, y2


def is_translation_net(net: PointNet, tol: float = _GAUGE_TOL) -> bool:
    """True iff a consistent translation gauge exists (Cauchy form holds)."""
    try:
        translation_gauge(net, tol)
        return True
    except NotMultiQ:
        return False


def from_translation(p_seq, q_seq, ambient: str = "RP3") -> PointNet:
    """Net [p_i + q_j] generated by two polygons of homogeneous coordinates."""
    p = np.atleast_2d(np.asarray(p_seq, dtype=float))
    q = np.atleast_2d(np.asarray(q_seq, dtype=float))
    if p.shape[1] != q.shape[1]:
        raise DimensionMismatch("generator polygons of different dimension")
    pts = p[:, None, :] + q[None, :, :]
    if np.any(np.linalg.norm(pts, axis=-1) <= 1e-12):
        raise ZeroSum("p_i + q_j vanished")
    return PointNet(pts, ambient=ambient)


def from_cauchy_homogeneous(y1, y2, x00, ambient: str = "RP3") -> PointNet:
    """Unique multi-Q-net with prescribed Laplace transform vectors:
    x_{ij} = x00 + sum_{k<i} y1_k + sum_{l<j} y2_l."""
    y1 = np.atleast_2d(np.asarray(y1, dtype=float))
    y2 = np.atleast_2d(np.asarray(y2, dtype=float))
    x00 = hpoint(x00)
    acc1 = np.concatenate([[np.zeros_like(x00)], np.cumsum(y1, axis=0)])
    acc2 = np.concatenate([[np.zeros_like(x00)], np.cumsum(y2, axis=0)])
    pts = x00[None, None, :] + acc1[:, None, :] + acc2[None, :, :]
    if np.any(np.linalg.norm(pts, axis=-1) <= 1e-12):
        raise ZeroSum("a homogeneous partial sum vanished")
    return PointNet(pts, ambient=ambient)


def from_two_strips(strip1: PointNet, strip2: PointNet) -> PointNet:
    """Multi-Q-net extending two coordinate strips.

    strip1 holds rows i in {0,1} (shape 2 x nv), strip2 holds columns
    j in {0,1} (shape nu x 2); they must agree on the shared corner quad
    and satisfy the strip perspectivity property.
    """
    if strip1.dims[0] != 2 or strip2.dims[1] != 2:
        raise DimensionMismatch("strip1 must be 2 x nv and strip2 nu x 2")
    nv = strip1.dims[1]
    nu = strip2.dims[0]
    for (i, j) in ((0, 0), (1, 0), (0, 1), (1, 1)):
        if not proj_equal(strip1.points[i, j], strip2.points[i, j], 1e-8):
            raise InconsistentCorner(f"strips disagree at corner ({i},{j})")
    row0, row1 = _propagate_strip_gauge(strip1.points)
    col0, col1 = _propagate_strip_gauge(
        np.stack([strip2.points[:, 0], strip2.points[:, 1]])
    )
    col_scale = np.dot(col0[0], row0[0]) / np.dot(col0[0], col0[0])
    col0 = col0 * col_scale
    y2 = row0[1:] - row0[:-1]
    y1 = col0[1:] - col0[:-1]
    net = from_cauchy_homogeneous(y1, y2, row0[0], ambient=strip1.ambient)
    for j in range(nv):
        if not proj_equal(net.points[1, j], strip1.points[1, j], 1e-7):
            raise PerspectivityViolation(f"row strip not reproduced at column {j}")
    for i in range(nu):
        if not proj_equal(net.points[i, 1], strip2.points[i, 1], 1e-7):
            raise PerspectivityViolation(f"column strip not reproduced at row {i}")
    return net


def laplace_transforms(net: PointNet):
    """Grids of Laplace points y1_{ij}, y2_{ij} of all elementary quads."""
    nu, nv = net.dims
    y1 = np.empty((nu - 1, nv - 1, net.ambient_dim))
    y2 = np.empty_like(y1)
    for i in range(nu - 1):
        for j in range(nv - 1):
            ld = laplace_data(*net.quad(i, j))
            y1[i, j] = ld.y1
            y2[i, j] = ld.y2
    return PointNet(y1, ambient=net.ambient), PointNet(y2, ambient=net.ambient)


def laplace_transforms_degenerate(net: PointNet, tol: float = 1e-8) -> bool:
    """True iff y1 is constant along j and y2 constant along i."""
    t1, t2 = laplace_transforms(net)
    nu1, nv1 = t1.dims
    for i in range(nu1):
        for j in range(1, nv1):
            if proj_distance(t1.points[i, j], t1.points[i, 0]) > tol:
                return False
    for j in range(nv1):
        for i in range(1, nu1):
            if proj_distance(t2.points[i, j], t2.points[0, j]) > tol:
                return False
    return True


# -- perspectivity predicates ---------------------------------------------------


def _polygons_perspective(rows_a, rows_b, tol: float) -> bool:
    """True iff the lines joining corresponding points are concurrent."""
    spans = []
    for a, b in zip(rows_a, rows_b):
        if span_rank([a, b]) < 2:
            continue
        spans.append(np.stack([a, b]))
    if len(spans) < 2:
        return True
    _, lam, _ = common_point_of_spans(spans)
    return lam <= tol


def neighbor_perspectivity(net: PointNet, tol: float = 1e-12) -> bool:
    """Every two neighboring parameter polygons in perspective w.r.t. a point."""
    nu, nv = net.dims
    p = net.points
    for i in range(nu - 1):
        if not _polygons_perspective(p[i], p[i + 1], tol):
            return False
    for j in range(nv - 1):
        if not _polygons_perspective(p[:, j], p[:, j + 1], tol):
            return False
    return True


def all_pairs_perspectivity(net: PointNet, tol: float = 1e-12) -> bool:
    """Every two parameter polygons of the same direction in perspective."""
    nu, nv = net.dims
    p = net.points
    for i0 in range(nu):
        for i1 in range(i0 + 1, nu):
            if not _polygons_perspective(p[i0], p[i1], tol):
                return False
    for j0 in range(nv):
        for j1 in range(j0 + 1, nv):
            if not _polygons_perspective(p[:, j0], p[:, j1], tol):
                return False
    return True


def has_planar_parameter_polygons(net: PointNet) -> bool:
    """Every row and column point set spans rank <= 3 (planar polygons)."""
    nu, nv = net.dims
    p = net.points
    for i in range(nu):
        if span_rank(p[i]) > 3:
            return False
    for j in range(nv):
        if span_rank(p[:, j]) > 3:
            return False
    return True


# -- Q*-nets -------------------------------------------------------------------


def _qstar_violations(pn: PlaneNet, elementary: bool):
    h = pn.homogeneous()
    net = PointNet(h, ambient="RP3*")
    return _planarity_violations(net, elementary=elementary)


def qstar_violations(pn: PlaneNet):
    """Elementary plane quadruples that do not meet in a point."""
    return _qstar_violations(pn, elementary=True)


def is_qstar_net(pn: PlaneNet) -> bool:
    """True iff every elementary plane quadruple is concurrent."""
    return not qstar_violations(pn)


def multi_qstar_violations(pn: PlaneNet):
    """Plane rectangles failing concurrency, exhaustively."""
    return _qstar_violations(pn, elementary=False)


def is_multi_qstar(pn: PlaneNet) -> bool:
    """True iff every coordinate rectangle of planes is concurrent."""
    return not multi_qstar_violations(pn)


def qstar_vertices(pn: PlaneNet):
    """Common points of the elementary plane quadruples, as a grid of
    homogeneous points (None where the quad has a whole common line)."""
    h = pn.homogeneous()
    nu, nv = pn.dims
    verts = [[None] * (nv - 1) for _ in range(nu - 1)]
    for i in range(nu - 1):
        for j in range(nv - 1):
            quad = normalized_rows(
                np.stack([h[i, j], h[i + 1, j], h[i + 1, j + 1], h[i, j + 1]])
            )
            u, s, vh = np.linalg.svd(quad)
            r = int(np.sum(s > 1e-9 * s[0]))
            if r > 3:
                raise NonPlanarQuad(f"planes of quad ({i},{j}) are not concurrent")
            if r == 3:
                verts[i][j] = vh[-1]
    return verts


def check_planar_parameter_lines(pn: PlaneNet) -> bool:
    """Planarity of the parameter lines of a Q*-net: the polygons formed by
    the elementary intersection points along each direction are coplanar.

    Equivalent to the multi-Q* property on generic data; quads whose planes
    share a whole line contribute no vertex and never spoil planarity.
    """
    try:
        verts = qstar_vertices(pn)
    except NonPlanarQuad:
        return False
    nu1 = len(verts)
    nv1 = len(verts[0]) if nu1 else 0
    for i in range(nu1):
        row = [v for v in verts[i] if v is not None]
        if len(row) >= 4 and span_rank(row) > 3:
            return False
    for j in range(nv1):
        col = [verts[i][j] for i in range(nu1) if verts[i][j] is not None]
        if len(col) >= 4 and span_rank(col) > 3:
            return False
    return True


def dualize_point_net(net: PointNet) -> PlaneNet:
    """Apply the identity polarity: point (a,b,c,e) -> plane a x + b y + c z = -e."""
    if net.ambient_dim != 4:
        raise DimensionMismatch("polarity defined for RP^3 nets")
    cov = net.points.copy()
    cov[..., 3] *= -1.0
    return PlaneNet(cov)


# -- (Q + Q*)-nets -------------------------------------------------------------


def build_qqstar_net(
    line1: ProjLine, line2: ProjLine, y1_points, y2_points, x00
) -> PointNet:
    """Multi-Q-net whose Laplace transforms lie on two skew lines.

    The resulting net is simultaneously multi-Q and multi-Q*: all parameter
    polygons are planar, with the row planes through line2 and the column
    planes through line1.
    """
    if span_rank(np.concatenate([line1.span, line2.span])) < 4:
        raise SkewLines("carrier lines must be skew")
    y1_points = [hpoint(y) for y in np.atleast_2d(np.asarray(y1_points, dtype=float))]
    y2_points = [hpoint(y) for y in np.atleast_2d(np.asarray(y2_points, dtype=float))]
    for y in y1_points:
        if not line1.contains(y):
            raise PointOffLine("y1 sample off line1")
    for y in y2_points:
        if not line2.contains(y):
            raise PointOffLine("y2 sample off line2")
    x00 = hpoint(x00)
    if line1.contains(x00) or line2.contains(x00):
        raise PointOffLine("x00 must avoid both carrier lines")
    y1 = np.stack([normalize(y) for y in y1_points])
    y2 = np.stack([normalize(y) for y in y2_points])
    return from_cauchy_homogeneous(y1, y2, normalize(x00))

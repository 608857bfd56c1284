"""Projective translation nets constrained to a quadric.

A multi-Q-net all of whose vertices lie on a quadric has Laplace transforms
in polar subspaces: <p_{i+1} - p_i, q_{j+1} - q_j> = 0.  Conversely, two
polygons of mutually orthogonal mirror points generate such a net from a
seed on the quadric by commuting polar reflections.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DegenerateOrbit,
    IsotropicMirror,
    MirrorsNotOrthogonal,
    NotOnQuadric,
    SeedNotOnQuadric,
)
from .projective import QUADRIC_RTOL, QuadricForm, hpoint, polar_reflect, proj_distance
from .qnets import PointNet, translation_gauge

_AMBIENT_BY_FORM = {
    (1, 1, 1, 1, -1): "R41",
    (1, 1, 1, -1): "R31",
    (1, 1, 1, 1, -1, -1): "R42",
    (1, 1, 1, -1, -1, -1): "R33",
}


def _net_on_quadric(net: PointNet, q: QuadricForm, rtol: float = QUADRIC_RTOL) -> bool:
    p = net.points
    vals = np.einsum("ijk,k,ijk->ij", p, q.diagonal, p)
    return bool(np.all(np.abs(vals) <= rtol * np.sum(p * p, axis=-1)))


def verify_polar_laplace(net: PointNet, q: QuadricForm, tol: float = 1e-8) -> bool:
    """Check that the Laplace transform difference vectors are q-orthogonal.

    Requires a multi-Q-net with all vertices on the quadric; the y1_i and
    y2_j vectors come from the net's translation gauge.
    """
    if not _net_on_quadric(net, q):
        raise NotOnQuadric("net vertices must lie on the quadric")
    _, y1, y2 = translation_gauge(net)
    n1 = y1 / np.linalg.norm(y1, axis=-1, keepdims=True)
    n2 = y2 / np.linalg.norm(y2, axis=-1, keepdims=True)
    vals = n1 @ np.diag(q.diagonal) @ n2.T
    return bool(np.all(np.abs(vals) <= tol))


def generate_by_reflections(q: QuadricForm, n1_seq, n2_seq, x00) -> PointNet:
    """Net generated from a seed on the quadric by two commuting mirror
    families: x_{ij} = (prod sigma1_k o prod sigma2_l)(x00).

    All mirrors must be non-isotropic and the families mutually orthogonal;
    the result is a multi-Q-net on the quadric whose Laplace transforms are
    the mirror points themselves.
    """
    n1 = np.atleast_2d(np.asarray(n1_seq, dtype=float))
    n2 = np.atleast_2d(np.asarray(n2_seq, dtype=float))
    x00 = hpoint(x00)
    for fam in (n1, n2):
        nn = np.einsum("ik,k,ik->i", fam, q.diagonal, fam)
        if np.any(np.abs(nn) <= QUADRIC_RTOL * np.sum(fam * fam, axis=-1)):
            raise IsotropicMirror("a mirror lies on the quadric")
    cross = n1 @ np.diag(q.diagonal) @ n2.T
    scale = np.linalg.norm(n1, axis=-1)[:, None] * np.linalg.norm(n2, axis=-1)[None, :]
    if np.any(np.abs(cross) > 1e-9 * scale):
        raise MirrorsNotOrthogonal("mirror families are not mutually orthogonal")
    if abs(q.eval(x00, x00)) > QUADRIC_RTOL * float(np.dot(x00, x00)):
        raise SeedNotOnQuadric("seed point must lie on the quadric")

    nu, nv = n1.shape[0] + 1, n2.shape[0] + 1
    pts = np.empty((nu, nv, q.dim))
    pts[0, 0] = x00
    for j in range(nv - 1):
        pts[0, j + 1] = polar_reflect(q, n2[j], pts[0, j])
    for i in range(nu - 1):
        for j in range(nv):
            pts[i + 1, j] = polar_reflect(q, n1[i], pts[i, j])

    for i in range(nu - 1):
        for j in range(nv):
            if proj_distance(pts[i + 1, j], pts[i, j]) <= 1e-12:
                raise DegenerateOrbit(f"mirror 1[{i}] fixes the orbit at ({i},{j})")
    for i in range(nu):
        for j in range(nv - 1):
            if proj_distance(pts[i, j + 1], pts[i, j]) <= 1e-12:
                raise DegenerateOrbit(f"mirror 2[{j}] fixes the orbit at ({i},{j})")

    # commutation audit on the seed orbit
    for i in range(n1.shape[0]):
        for j in range(n2.shape[0]):
            a = polar_reflect(q, n1[i], polar_reflect(q, n2[j], x00))
            b = polar_reflect(q, n2[j], polar_reflect(q, n1[i], x00))
            if np.linalg.norm(a - b) > 1e-10 * np.linalg.norm(a):
                raise MirrorsNotOrthogonal(
                    f"reflections 1[{i}] and 2[{j}] do not commute"
                )

    ambient = _AMBIENT_BY_FORM.get(tuple(q.signature), f"Q{q.signature}")
    return PointNet(pts, ambient=ambient)

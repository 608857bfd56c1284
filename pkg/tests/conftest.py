import numpy as np
import pytest

from multinets.qnets import PointNet
from multinets.projective import proj_equal


def random_q_net(rng, nu, nv, dim=4):
    """Generic Q-net: planar quads glued with random Laplace coefficients
    (not multi-Q in general)."""
    pts = np.empty((nu, nv, dim))
    pts[0, 0] = rng.uniform(-1, 1, dim)
    for i in range(1, nu):
        pts[i, 0] = rng.uniform(-1, 1, dim)
    for j in range(1, nv):
        pts[0, j] = rng.uniform(-1, 1, dim)
    for i in range(1, nu):
        for j in range(1, nv):
            a, b, c = rng.uniform(0.3, 1.5, 3)
            pts[i, j] = a * pts[i, j - 1] + b * pts[i - 1, j] - c * pts[i - 1, j - 1]
    return PointNet(pts)


def nets_proj_equal(n1, n2, tol=1e-8):
    nu, nv = n1.dims
    if (nu, nv) != n2.dims:
        return False
    return all(
        proj_equal(n1.points[i, j], n2.points[i, j], tol)
        for i in range(nu)
        for j in range(nv)
    )


def torus_point(big, small, u, v):
    w = big + small * np.cos(v)
    return np.array([w * np.cos(u), w * np.sin(u), small * np.sin(v)])


def torus_u_tangent(u, v):
    return np.array([-np.sin(u), np.cos(u), 0.0])


def torus_v_tangent(u, v):
    return np.array(
        [-np.sin(v) * np.cos(u), -np.sin(v) * np.sin(u), np.cos(v)]
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

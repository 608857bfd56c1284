import numpy as np
import pytest

from multinets.circular import is_multi_circular
from multinets.conical import (
    GaussClass,
    classify_gauss,
    conical_violations,
    gauss_map,
    is_conical_quad,
    is_multi_conical,
    orient_covectors,
    parallel_conical_net,
    polarize_spherical,
    sample_s2_rotational,
    sample_s2_stereographic,
    sample_s2_symmetric_strip,
)
from multinets.errors import (
    NotConcurrent,
    NotOnSphere,
    SingularPropagation,
    ZeroNormal,
)
from multinets.qnets import PlaneNet, is_multi_qstar


def s2_rot(n_lon=5, n_lat=4):
    return sample_s2_rotational(
        np.linspace(0.5, 2.2, n_lat), np.linspace(0.3, 4.0, n_lon)
    )


# -- gauss map ---------------------------------------------------------------


def test_gauss_map_of_sphere_tangent_planes_is_identity():
    net = s2_rot()
    pn = polarize_spherical(net)
    assert np.allclose(gauss_map(pn).points, net.points)


def test_gauss_map_constant_for_parallel_planes():
    cov = np.zeros((3, 3, 4))
    cov[..., 2] = 2.0
    cov[..., 3] = np.arange(9).reshape(3, 3) + 1.0
    g = gauss_map(PlaneNet(cov))
    assert np.allclose(g.points, [0, 0, 1])


def test_gauss_map_zero_normal():
    cov = np.zeros((2, 2, 4))
    cov[..., 3] = 1.0
    with pytest.raises(ZeroNormal):
        gauss_map(PlaneNet(cov))


# -- conical quads ------------------------------------------------------------


def test_tangent_planes_of_cone_of_revolution():
    # tangent planes of the unit sphere along a circle of latitude are
    # tangent to a common cone of revolution
    t = (0.1, 0.9, 2.2, 4.0)
    pts = np.array(
        [[np.sin(0.7) * np.cos(a), np.sin(0.7) * np.sin(a), np.cos(0.7)] for a in t]
    )
    quad = np.concatenate([pts, np.ones((4, 1))], axis=1)
    assert is_conical_quad(quad)


def test_random_concurrent_planes_not_conical(rng):
    n = rng.normal(size=(4, 3))
    x0 = np.array([0.3, -0.2, 0.5])
    quad = np.concatenate([n, (n @ x0)[:, None]], axis=1)
    assert not is_conical_quad(quad)


def test_sphere_tangent_planes_at_concyclic_points():
    # concyclic points on the sphere (small circle, not a latitude)
    axis = np.array([1.0, 1.0, 0.5])
    axis /= np.linalg.norm(axis)
    e1 = np.array([0.0, -0.4472136, 0.89442719])
    e1 -= (e1 @ axis) * axis
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    h = 0.6
    r = np.sqrt(1 - h * h)
    pts = np.array(
        [h * axis + r * (np.cos(a) * e1 + np.sin(a) * e2) for a in (0.2, 1.4, 3.0, 5.1)]
    )
    quad = np.concatenate([pts, np.ones((4, 1))], axis=1)
    assert is_conical_quad(quad)


def test_non_concurrent_quad_rejected(rng):
    cov = rng.uniform(-1, 1, (4, 4))
    with pytest.raises(NotConcurrent):
        is_conical_quad(cov)


# -- multi-conical ------------------------------------------------------------


def test_polarized_net_multi_conical():
    pn = polarize_spherical(s2_rot())
    assert is_multi_conical(pn)
    assert not conical_violations(pn)


def test_parallel_net_multi_conical(rng):
    pn = polarize_spherical(s2_rot())
    nu, nv = pn.dims
    d_row = 1 + 0.2 * rng.uniform(-1, 1, nu)
    d_col = 1 + 0.2 * rng.uniform(-1, 1, nv)
    d_col[0] = d_row[0]
    par = parallel_conical_net(pn, d_row, d_col)
    assert is_multi_conical(par)
    assert np.max(np.abs(gauss_map(par).points - gauss_map(pn).points)) < 1e-10


def test_random_qstar_not_multi_conical(rng):
    cov = rng.uniform(-1, 1, (4, 4, 4))
    x0 = np.array([0.3, 0.5, -0.2])
    cov[..., 3] = cov[..., 0] * x0[0] + cov[..., 1] * x0[1] + cov[..., 2] * x0[2]
    pn = PlaneNet(cov)
    assert is_multi_qstar(pn)
    assert not is_multi_conical(pn)


def test_lemma_both_directions(rng):
    # multi-conical <=> multi-Q* and multi-circular Gauss map
    pn = polarize_spherical(s2_rot())
    assert is_multi_qstar(pn) and is_multi_circular(gauss_map(pn))
    cov = rng.uniform(-1, 1, (4, 4, 4))
    x0 = np.array([0.1, 0.2, 0.3])
    cov[..., 3] = cov[..., :3] @ x0
    pn2 = PlaneNet(cov)
    assert is_multi_conical(pn2) == (
        is_multi_qstar(pn2) and is_multi_circular(gauss_map(pn2))
    )


# -- polarization -------------------------------------------------------------


def test_polarize_equator_gives_vertical_planes():
    t = np.linspace(0.2, 5.0, 4)
    pts = np.stack([np.cos(t), np.sin(t), np.zeros_like(t)], axis=1)
    net_pts = np.stack([pts, pts], axis=0)
    # two identical rows are degenerate; tilt the second row slightly
    t2 = t + 0.4
    net_pts[1] = np.stack([np.cos(t2), np.sin(t2), np.zeros_like(t2)], axis=1)
    from multinets.circular import EuclidNet

    net = EuclidNet(net_pts)
    pn = polarize_spherical(net)
    assert np.allclose(pn.covectors[..., 2], 0.0)  # vertical tangent planes


def test_polarize_requires_sphere(rng):
    from multinets.circular import EuclidNet

    with pytest.raises(NotOnSphere):
        polarize_spherical(EuclidNet(rng.uniform(-1, 1, (3, 3, 3))))


def test_polarize_stereographic_grid():
    net = sample_s2_stereographic([-1.0, -0.2, 0.5, 1.3], [0.1, 0.8, 1.5])
    pn = polarize_spherical(net)
    assert is_multi_conical(pn)


def test_parallel_identity_and_constant_shift():
    pn = polarize_spherical(s2_rot())
    nu, nv = pn.dims
    same = parallel_conical_net(pn, np.ones(nu), np.ones(nv))
    assert np.allclose(same.covectors, pn.covectors)
    shifted = parallel_conical_net(pn, np.full(nu, 1.4), np.full(nv, 1.4))
    assert np.allclose(shifted.covectors[..., 3], 1.4)
    assert is_multi_conical(shifted)


def test_parallel_edges_parallel_to_base(rng):
    pn = polarize_spherical(s2_rot())
    nu, nv = pn.dims
    d_row = 1 + 0.3 * rng.uniform(-1, 1, nu)
    d_col = 1 + 0.3 * rng.uniform(-1, 1, nv)
    d_col[0] = d_row[0]
    par = parallel_conical_net(pn, d_row, d_col)

    def edge_dirs(p):
        n = p.covectors[..., :3]
        e = np.cross(n[:-1], n[1:])
        return e / np.linalg.norm(e, axis=-1, keepdims=True)

    cos = np.abs(np.sum(edge_dirs(pn) * edge_dirs(par), axis=-1))
    assert np.min(cos) > 1 - 1e-9


# -- Gauss-map classification ----------------------------------------------------


def test_classify_gauss_revolution():
    assert classify_gauss(s2_rot()).kind == GaussClass.REVOLUTION


def test_classify_gauss_stereographic():
    net = sample_s2_stereographic([-1.0, -0.2, 0.5, 1.3], [0.1, 0.8, 1.5])
    assert classify_gauss(net).kind == GaussClass.STEREOGRAPHIC_GRID


def test_classify_gauss_symmetric_strip(rng):
    up = rng.normal(size=(5, 3))
    up[:, 2] = np.abs(up[:, 2]) + 0.3
    up /= np.linalg.norm(up, axis=1, keepdims=True)
    net = sample_s2_symmetric_strip(up)
    assert is_multi_circular(net)
    assert classify_gauss(net).kind == GaussClass.SYMMETRIC_STRIP


# -- orientation --------------------------------------------------------------


def test_orient_covectors_fixes_flips(rng):
    pn = polarize_spherical(s2_rot())
    cov = pn.covectors.copy()
    cov[1, 2] *= -1.0
    cov[3, 1] *= -1.0
    fixed = orient_covectors(PlaneNet(cov))
    g = gauss_map(fixed).points
    base = gauss_map(pn).points
    assert np.allclose(g, base)


def test_classify_gauss_rotation_invariant(rng):
    # rotations of S^2 are Moebius transformations of the sphere
    m = rng.normal(size=(3, 3))
    q = np.linalg.qr(m)[0]
    if np.linalg.det(q) < 0:
        q[:, 0] *= -1
    for net, expected in (
        (s2_rot(), GaussClass.REVOLUTION),
        (
            sample_s2_stereographic([-1.0, -0.2, 0.5, 1.3], [0.1, 0.8, 1.5]),
            GaussClass.STEREOGRAPHIC_GRID,
        ),
    ):
        from multinets.circular import EuclidNet

        rotated = EuclidNet(net.points @ q.T)
        assert classify_gauss(rotated).kind == expected


def test_classify_gauss_inversion_invariant(rng):
    # a polar reflection of R^{3,1} with exterior mirror restricts to a
    # Moebius transformation of S^2
    from multinets.circular import EuclidNet
    from multinets.projective import MOEBIUS_S2, bilinear_eval, polar_reflect

    mirror = np.array([0.4, -0.3, 0.8, 0.5])
    assert bilinear_eval(MOEBIUS_S2, mirror, mirror) > 0.1
    for net, expected in (
        (s2_rot(), GaussClass.REVOLUTION),
        (
            sample_s2_stereographic([-1.0, -0.2, 0.5, 1.3], [0.1, 0.8, 1.5]),
            GaussClass.STEREOGRAPHIC_GRID,
        ),
    ):
        nu, nv = net.dims
        pts = np.empty((nu, nv, 3))
        for i in range(nu):
            for j in range(nv):
                lift = np.concatenate([net.points[i, j], [1.0]])
                img = polar_reflect(MOEBIUS_S2, mirror, lift)
                pts[i, j] = img[:3] / img[3]
        moved = EuclidNet(pts)
        assert np.max(np.abs(np.linalg.norm(pts, axis=-1) - 1.0)) < 1e-9
        assert classify_gauss(moved).kind == expected

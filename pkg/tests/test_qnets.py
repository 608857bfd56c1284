import numpy as np
import pytest

from conftest import nets_proj_equal, random_q_net
from multinets.errors import (
    DegenerateQuad,
    InconsistentCorner,
    NonPlanarQuad,
    PerspectivityViolation,
    PointOffLine,
    SkewLines,
    ZeroSum,
)
from multinets.projective import ProjLine, proj_distance, proj_equal, span_rank
from multinets.qnets import (
    PlaneNet,
    PointNet,
    all_pairs_perspectivity,
    build_qqstar_net,
    check_planar_parameter_lines,
    dualize_point_net,
    from_cauchy_homogeneous,
    from_translation,
    from_two_strips,
    has_planar_parameter_polygons,
    is_multi_q_net,
    is_multi_qstar,
    is_q_net,
    is_qstar_net,
    is_translation_net,
    laplace_data,
    laplace_transforms,
    laplace_transforms_degenerate,
    neighbor_perspectivity,
    translation_gauge,
)


# -- laplace data -----------------------------------------------------------


def test_laplace_parallelogram():
    ld = laplace_data([0, 0, 0, 1], [1, 0, 0, 1], [0, 1, 0, 1], [1, 1, 0, 1])
    assert np.allclose([ld.a, ld.b, ld.c], [1, 1, 1])
    # Laplace points at infinity in the edge directions
    assert proj_equal(ld.y1, [1, 0, 0, 0])
    assert proj_equal(ld.y2, [0, 1, 0, 0])


def test_laplace_coefficients_derived():
    # 4x3 system solved by hand
    ld = laplace_data([0, 0, 0, 1], [2, 0, 0, 1], [0, 1, 0, 1], [3, 2, 0, 1])
    assert np.allclose([ld.a, ld.b, ld.c], [1.5, 2.0, 2.5])


def test_laplace_points_match_edge_meets():
    ld = laplace_data([0, 0, 0, 1], [2, 0, 0, 1], [0, 1, 0, 1], [3, 1, 0, 1])
    assert proj_equal(ld.y1, [1, 0, 0, 0])
    assert proj_equal(ld.y2, [0, -2, 0, 1])


def test_laplace_rejects_nonplanar():
    with pytest.raises(NonPlanarQuad):
        laplace_data([0, 0, 0, 1], [1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1])


def test_laplace_rejects_collinear():
    with pytest.raises(DegenerateQuad):
        laplace_data([0, 0, 0, 1], [1, 0, 0, 1], [2, 0, 0, 1], [1, 1, 0, 1])


# -- planarity predicates -----------------------------------------------------


def test_rp2_net_always_q(rng):
    pts = rng.uniform(-1, 1, (4, 4, 3))
    net = PointNet(pts, ambient="RP2")
    assert is_q_net(net) and is_multi_q_net(net)


def test_translation_net_is_multi_q(rng):
    net = from_translation(rng.uniform(-1, 1, (5, 4)), rng.uniform(-1, 1, (6, 4)))
    assert is_q_net(net)
    assert is_multi_q_net(net)


def test_perturbed_net_not_q(rng):
    net = from_translation(rng.uniform(-1, 1, (3, 4)), rng.uniform(-1, 1, (2, 4)))
    pts = net.points.copy()
    pts[1, 1, 0] += 1.0
    assert not is_q_net(PointNet(pts))


def test_generic_q_net_not_multi(rng):
    net = random_q_net(rng, 6, 6)
    assert is_q_net(net)
    assert not is_multi_q_net(net)


def test_single_planar_quad_multi():
    pts = np.array(
        [[[0, 0, 0, 1], [0, 1, 0, 1]], [[1, 0, 0, 1], [1, 2, 0, 1]]], dtype=float
    )
    assert is_multi_q_net(PointNet(pts))


# -- translation structure -----------------------------------------------------


def test_from_translation_parabola():
    p = np.array([[i, i * i, 0, 0.5] for i in range(1, 5)], dtype=float)
    q = np.array([[0, 0, j, 0.5] for j in range(1, 4)], dtype=float)
    net = from_translation(p, q)
    assert is_multi_q_net(net)


def test_from_translation_constant_q_still_multi(rng):
    p = rng.uniform(-1, 1, (4, 4))
    q = np.tile(rng.uniform(-1, 1, 4), (3, 1))
    assert is_multi_q_net(from_translation(p, q))


def test_from_translation_zero_sum():
    p = np.array([[1.0, 0, 0, 0]])
    q = np.array([[-1.0, 0, 0, 0]])
    with pytest.raises(ZeroSum):
        from_translation(p, q)


def test_from_translation_laplace_transforms_are_differences(rng):
    p = rng.uniform(-1, 1, (5, 4))
    q = rng.uniform(-1, 1, (4, 4))
    net = from_translation(p, q)
    t1, t2 = laplace_transforms(net)
    assert t1.dims == (4, 3) and t2.dims == (4, 3)
    for i in range(4):
        for j in range(3):
            assert proj_equal(t1.points[i, j], p[i + 1] - p[i], 1e-8)
            assert proj_equal(t2.points[i, j], q[j + 1] - q[j], 1e-8)


def test_from_cauchy_integer_grid():
    e1 = np.array([[1.0, 0, 0, 0]] * 3)
    e2 = np.array([[0.0, 1, 0, 0]] * 3)
    net = from_cauchy_homogeneous(e1, e2, [0, 0, 0, 1])
    for i in range(4):
        for j in range(4):
            assert proj_equal(net.points[i, j], [i, j, 0, 1])


def test_from_cauchy_random_multi_q():
    rng = np.random.default_rng(42)
    y1 = rng.uniform(-1, 1, (5, 4))
    y2 = rng.uniform(-1, 1, (5, 4))
    net = from_cauchy_homogeneous(y1, y2, rng.uniform(-1, 1, 4))
    assert is_multi_q_net(net)


def test_cauchy_roundtrip_via_gauge(rng):
    net = from_translation(rng.uniform(-1, 1, (5, 4)), rng.uniform(-1, 1, (5, 4)))
    x00, y1, y2 = translation_gauge(net)
    rebuilt = from_cauchy_homogeneous(y1, y2, x00)
    assert nets_proj_equal(net, rebuilt)


# -- two-strip Cauchy problem ----------------------------------------------------


def test_two_strips_reconstruct_translation_net(rng):
    net = from_translation(rng.uniform(-1, 1, (6, 4)), rng.uniform(-1, 1, (5, 4)))
    strip1 = PointNet(net.points[0:2])
    strip2 = PointNet(net.points[:, 0:2])
    assert nets_proj_equal(from_two_strips(strip1, strip2), net, 1e-7)


def test_two_strips_integer_grid():
    pts = np.array(
        [[[i, j, 0, 1] for j in range(5)] for i in range(6)], dtype=float
    )
    net = PointNet(pts)
    rebuilt = from_two_strips(PointNet(pts[0:2]), PointNet(pts[:, 0:2]))
    assert nets_proj_equal(rebuilt, net)


def test_two_strips_perspectivity_violation(rng):
    net = from_translation(rng.uniform(-1, 1, (5, 4)), rng.uniform(-1, 1, (5, 4)))
    bad = net.points[0:2].copy()
    bad[1, 2] += 0.2
    with pytest.raises(PerspectivityViolation):
        from_two_strips(PointNet(bad), PointNet(net.points[:, 0:2]))


def test_two_strips_inconsistent_corner(rng):
    net = from_translation(rng.uniform(-1, 1, (5, 4)), rng.uniform(-1, 1, (5, 4)))
    other = net.points[:, 0:2].copy()
    other[0, 0] = rng.uniform(-1, 1, 4)
    with pytest.raises(InconsistentCorner):
        from_two_strips(PointNet(net.points[0:2]), PointNet(other))


# -- laplace transforms ------------------------------------------------------------


def test_integer_grid_transforms_at_infinity():
    pts = np.array(
        [[[i, j, 0, 1] for j in range(4)] for i in range(4)], dtype=float
    )
    t1, t2 = laplace_transforms(PointNet(pts))
    for i in range(3):
        for j in range(3):
            assert proj_equal(t1.points[i, j], [1, 0, 0, 0])
            assert proj_equal(t2.points[i, j], [0, 1, 0, 0])


def test_generic_net_transforms_vary(rng):
    net = random_q_net(rng, 5, 5)
    assert not laplace_transforms_degenerate(net)


# -- Thm-equivalence cross-checks ----------------------------------------------------


def test_equivalence_on_translation_nets():
    rng = np.random.default_rng(101)
    for _ in range(10):
        net = from_translation(
            rng.uniform(-1, 1, (6, 4)), rng.uniform(-1, 1, (6, 4))
        )
        assert is_multi_q_net(net)
        assert neighbor_perspectivity(net)
        assert all_pairs_perspectivity(net)
        assert laplace_transforms_degenerate(net)
        assert is_translation_net(net)


def test_equivalence_on_generic_q_nets():
    rng = np.random.default_rng(102)
    for _ in range(10):
        net = random_q_net(rng, 6, 6)
        assert not is_multi_q_net(net)
        assert not neighbor_perspectivity(net)
        assert not all_pairs_perspectivity(net)
        assert not laplace_transforms_degenerate(net)
        assert not is_translation_net(net)


def test_projective_invariance(rng):
    net = from_translation(rng.uniform(-1, 1, (5, 4)), rng.uniform(-1, 1, (5, 4)))
    gen = random_q_net(rng, 5, 5)
    for _ in range(5):
        m = rng.normal(size=(4, 4))
        while abs(np.linalg.det(m)) < 0.1:
            m = rng.normal(size=(4, 4))
        assert is_multi_q_net(PointNet(net.points @ m.T))
        timg = PointNet(gen.points @ m.T)
        assert is_q_net(timg) and not is_multi_q_net(timg)


# -- Q*-nets ----------------------------------------------------------------------


def test_duality_translation_net(rng):
    net = from_translation(rng.uniform(-1, 1, (5, 4)), rng.uniform(-1, 1, (5, 4)))
    dual = dualize_point_net(net)
    assert is_qstar_net(dual)
    assert is_multi_qstar(dual)
    assert check_planar_parameter_lines(dual)


def test_duality_generic_q_net(rng):
    dual = dualize_point_net(random_q_net(rng, 5, 5))
    assert is_qstar_net(dual)
    assert not is_multi_qstar(dual)


def test_random_planes_not_multi_qstar(rng):
    pn = PlaneNet(rng.uniform(-1, 1, (5, 5, 4)))
    assert not is_multi_qstar(pn)
    assert not check_planar_parameter_lines(pn)


def test_planes_through_common_point_multi_qstar(rng):
    cov = rng.uniform(-1, 1, (4, 4, 4))
    x0 = np.array([0.3, 0.5, -0.2])
    cov[..., 3] = cov[..., 0] * x0[0] + cov[..., 1] * x0[1] + cov[..., 2] * x0[2]
    assert is_multi_qstar(PlaneNet(cov))


def test_pencil_planes_planar_parameter_lines():
    a = np.array([1.0, 0, 0, 0.3])
    b = np.array([0, 1.0, 0, -0.2])
    cov = np.empty((4, 4, 4))
    for i in range(4):
        for j in range(4):
            t = 0.3 * i + 0.7 * j + 0.1
            cov[i, j] = np.cos(t) * a + np.sin(t) * b
    pn = PlaneNet(cov)
    assert is_multi_qstar(pn)
    assert check_planar_parameter_lines(pn)


def test_multi_qstar_iff_planar_parameter_lines(rng):
    for _ in range(10):
        net = from_translation(rng.uniform(-1, 1, (6, 4)), rng.uniform(-1, 1, (6, 4)))
        dual = dualize_point_net(net)
        assert is_multi_qstar(dual) == check_planar_parameter_lines(dual)
    for _ in range(10):
        dual = dualize_point_net(random_q_net(rng, 6, 6))
        assert is_multi_qstar(dual) == check_planar_parameter_lines(dual)


# -- (Q + Q*)-nets ------------------------------------------------------------------


def test_qqstar_axes_at_infinity():
    line1 = ProjLine([1, 0, 0, 0], [0, 1, 0, 0])
    line2 = ProjLine([0, 0, 1, 0], [0, 0, 0, 1])
    y1 = [[np.cos(t), np.sin(t), 0, 0] for t in (0.1, 0.5, 1.1, 1.7)]
    y2 = [[0, 0, np.cos(t), np.sin(t)] for t in (0.2, 0.8, 1.3)]
    net = build_qqstar_net(line1, line2, y1, y2, [1, 1, 1, 1])
    assert net.dims == (5, 4)
    assert is_multi_q_net(net)
    assert has_planar_parameter_polygons(net)


def test_qqstar_random_skew_lines():
    rng = np.random.default_rng(7)
    pts = rng.uniform(-1, 1, (4, 4))
    line1 = ProjLine(pts[0], pts[1])
    line2 = ProjLine(pts[2], pts[3])
    assert span_rank(pts) == 4
    y1 = rng.uniform(-1, 1, (6, 2)) @ np.stack([line1.a, line1.b])
    y2 = rng.uniform(-1, 1, (6, 2)) @ np.stack([line2.a, line2.b])
    net = build_qqstar_net(line1, line2, y1, y2, rng.uniform(-1, 1, 4))
    assert is_multi_q_net(net)
    assert has_planar_parameter_polygons(net)
    # all Laplace points land on the carrier lines
    t1, t2 = laplace_transforms(net)
    for i in range(t1.dims[0]):
        for j in range(t1.dims[1]):
            assert line1.contains(t1.points[i, j], 1e-7)
            assert line2.contains(t2.points[i, j], 1e-7)
    # parameter-line planes form pencils: every row plane contains line2,
    # every column plane contains line1
    nu, nv = net.dims
    for i in range(nu):
        assert span_rank(np.concatenate([net.points[i], line2.span])) == 3
    for j in range(nv):
        assert span_rank(np.concatenate([net.points[:, j], line1.span])) == 3


def test_qqstar_point_off_line():
    line1 = ProjLine([1, 0, 0, 0], [0, 1, 0, 0])
    line2 = ProjLine([0, 0, 1, 0], [0, 0, 0, 1])
    with pytest.raises(PointOffLine):
        build_qqstar_net(line1, line2, [[0, 0, 1, 1]], [[0, 0, 1, 0]], [1, 1, 1, 1])


def test_qqstar_requires_skew_lines():
    line1 = ProjLine([1, 0, 0, 0], [0, 1, 0, 0])
    line2 = ProjLine([1, 0, 0, 0], [0, 0, 1, 0])
    with pytest.raises(SkewLines):
        build_qqstar_net(line1, line2, [[1, 0, 0, 0]], [[0, 0, 1, 0]], [0, 0, 0, 1])


def test_from_cauchy_zero_sum():
    y1 = np.array([[1.0, 0, 0, 0]])
    y2 = np.array([[0.0, 1, 0, 0]])
    with pytest.raises(ZeroSum):
        from_cauchy_homogeneous(y1, y2, [-1.0, -1.0, 0, 0])

import numpy as np
import pytest

from conftest import torus_point
from multinets.circular import (
    sample_canonical,
    EuclidNet,
    NetClass,
    SphereFamilyPair,
    check_embedded,
    classify_multi_circular,
    generate_multi_circular,
    invert_net,
    invert_point,
    is_circular_net,
    is_concyclic,
    is_discrete_isothermic,
    is_multi_circular,
    lift_net,
    sample_cone,
    sample_cylinder,
    sample_rotational,
    strip_sphere,
)
from multinets.errors import (
    DegenerateProfile,
    DegenerateStrip,
    DuplicatePoints,
    MirrorsNotOrthogonal,
)
from multinets.projective import (
    INF,
    MOEBIUS,
    bilinear_eval,
    plane_rep,
    sphere_rep,
    sphere_rep_to_euclidean,
)
from multinets.qnets import is_multi_q_net, is_q_net


def rot_net(rng, n_ang=5, n_prof=5):
    prof = np.stack(
        [rng.uniform(0.5, 1.5, n_prof), np.cumsum(rng.uniform(0.2, 0.5, n_prof))],
        axis=1,
    )
    ang = np.sort(rng.uniform(0, 2 * np.pi, n_ang))
    while np.min(np.diff(ang)) < 0.05:
        ang = np.sort(rng.uniform(0, 2 * np.pi, n_ang))
    return sample_rotational(prof, ang)


# -- concyclicity -------------------------------------------------------------


def test_unit_square_concyclic():
    assert is_concyclic([0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0])


def test_nonplanar_not_concyclic():
    assert not is_concyclic([0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1])


def test_collinear_points_with_infinity_concyclic():
    assert is_concyclic([0, 0, 0], [1, 0, 0], [2, 0, 0], INF)


def test_duplicate_points_rejected():
    with pytest.raises(DuplicatePoints):
        is_concyclic([0, 0, 0], [0, 0, 0], [1, 0, 0], [0, 1, 0])


# -- multi-circular predicates ---------------------------------------------------


def test_rotational_net_multi_circular(rng):
    assert is_multi_circular(rot_net(rng))


def test_moebius_invariance(rng):
    net = rot_net(rng)
    s = sphere_rep([4.0, 4.0, -2.0], 1.5)
    assert is_multi_circular(invert_net(s, net))


def test_glued_circular_net_not_multi(rng):
    # random circular quads glued edge to edge: circular but not multi
    nu, nv = 5, 5
    pts = np.empty((nu, nv, 3))
    pts[0, 0] = [0, 0, 0]
    for i in range(1, nu):
        pts[i, 0] = pts[i - 1, 0] + rng.uniform(0.3, 1.0, 3)
    for j in range(1, nv):
        pts[0, j] = pts[0, j - 1] + rng.uniform(0.3, 1.0, 3)
    for i in range(1, nu):
        for j in range(1, nv):
            a, b, c = pts[i - 1, j - 1], pts[i, j - 1], pts[i - 1, j]
            # fourth point on the circumcircle of (a, b, c)
            u, v = b - a, c - a
            g = np.array([[u @ u, u @ v], [u @ v, v @ v]])
            al, be = np.linalg.solve(g, 0.5 * np.array([u @ u, v @ v]))
            center = a + al * u + be * v
            r = np.linalg.norm(a - center)
            e1 = (a - center) / r
            e2 = np.cross(np.cross(u, v), e1)
            e2 /= np.linalg.norm(e2)
            t = rng.uniform(2.5, 4.0)
            pts[i, j] = center + r * (np.cos(t) * e1 + np.sin(t) * e2)
    net = EuclidNet(pts)
    assert is_circular_net(net)
    assert not is_multi_circular(net)


def test_lift_correspondence(rng):
    net = rot_net(rng)
    lifted = lift_net(net)
    assert is_q_net(lifted)
    assert is_multi_q_net(lifted)


def test_multi_circular_is_isothermic(rng):
    assert is_discrete_isothermic(rot_net(rng))


# -- strip spheres ----------------------------------------------------------------


def test_meridian_strip_sphere_on_axis(rng):
    net = rot_net(rng)
    s = strip_sphere(net, 2, 1)
    kind, c, r = sphere_rep_to_euclidean(s)
    assert kind == "sphere"
    assert np.linalg.norm(c[:2]) < 1e-8  # centered on the rotation axis


def test_strip_sphere_involution(rng):
    net = rot_net(rng)
    for direction, index in ((1, 0), (1, 2), (2, 1)):
        s = strip_sphere(net, direction, index)
        nu, nv = net.dims
        if direction == 1:
            pairs = [(net.points[index, j], net.points[index + 1, j]) for j in range(nv)]
        else:
            pairs = [(net.points[i, index], net.points[i, index + 1]) for i in range(nu)]
        for a, b in pairs:
            img = invert_point(s, a)
            assert np.linalg.norm(img - b) < 1e-8 * max(1.0, np.linalg.norm(b))


def test_strip_spheres_orthogonal(rng):
    net = rot_net(rng)
    s1 = strip_sphere(net, 1, 1)
    s2 = strip_sphere(net, 2, 2)
    assert abs(bilinear_eval(MOEBIUS, s1, s2)) < 1e-8


def test_planar_trapezoid_strip_gives_symmetry_plane():
    # strip mirrored in the plane y = 0: the strip sphere is that plane
    top = np.array([[-2.0, 1, 0], [-1.0, 2, 0], [1.0, 2.5, 0], [2.5, 1.3, 0]])
    bot = top.copy()
    bot[:, 1] *= -1
    strip = EuclidNet(np.stack([top, bot]).transpose(1, 0, 2))  # 4 x 2 net
    assert is_multi_circular(strip)
    s = strip_sphere(strip, 2, 0)
    kind, n, d = sphere_rep_to_euclidean(s)
    assert kind == "plane"
    assert abs(abs(n[1]) - 1.0) < 1e-9 and abs(d) < 1e-9


def test_degenerate_strip_rejected():
    # strip contained in one circle
    t = np.linspace(0, 2, 5)
    row0 = np.stack([np.cos(t), np.sin(t), np.zeros_like(t)], axis=1)
    row1 = np.stack([np.cos(t + 0.3), np.sin(t + 0.3), np.zeros_like(t)], axis=1)
    with pytest.raises(DegenerateStrip):
        strip_sphere(EuclidNet(np.stack([row0, row1])), 1, 0)


# -- Cauchy generation -------------------------------------------------------------


def test_generate_cone_type_net():
    # planes through the z-axis x concentric spheres: cone-type net
    s1 = np.stack([plane_rep([np.cos(t), np.sin(t), 0], 0.0) for t in (0.2, 0.9, 1.7)])
    s2 = np.stack([sphere_rep([0, 0, 0], r) for r in (1.0, 1.6, 2.4)])
    fams = SphereFamilyPair(s1, s2)
    net = generate_multi_circular(np.array([0.5, 0.5, 0.3]), fams)
    assert is_multi_circular(net)
    assert classify_multi_circular(net).kind == NetClass.CONE


def test_generate_cylinder_type_net():
    s1 = np.stack([plane_rep([0, 0, 1], c) for c in (0.5, 1.3, 2.1)])
    s2 = np.stack([plane_rep([np.cos(t), np.sin(t), 0], 0.0) for t in (0.3, 1.0, 2.0)])
    net = generate_multi_circular(np.array([1.0, 0.2, 0.0]), SphereFamilyPair(s1, s2))
    assert is_multi_circular(net)
    assert classify_multi_circular(net).kind == NetClass.CYLINDER


def test_generate_rejects_non_orthogonal_families():
    s1 = np.stack([plane_rep([np.cos(t), np.sin(t), 0], 0.0) for t in (0.2, 0.9)])
    s2 = np.stack([plane_rep([0, np.cos(t), np.sin(t)], 0.3) for t in (0.4, 1.2)])
    with pytest.raises(MirrorsNotOrthogonal):
        SphereFamilyPair(s1, s2)


# -- classification -----------------------------------------------------------------


def test_classify_three_kinds(rng):
    rot = rot_net(rng)
    assert classify_multi_circular(rot).kind == NetClass.ROTATIONAL
    dirs = rng.normal(size=(5, 3))
    cone = sample_cone(dirs, np.cumsum(rng.uniform(0.3, 1.0, 4)))
    assert classify_multi_circular(cone).kind == NetClass.CONE
    cyl = sample_cylinder(rng.uniform(-1, 1, (5, 2)), np.cumsum(rng.uniform(0.3, 1, 4)))
    assert classify_multi_circular(cyl).kind == NetClass.CYLINDER


def test_classification_moebius_invariant(rng):
    nets = [
        rot_net(rng),
        sample_cone(rng.normal(size=(4, 3)), np.cumsum(rng.uniform(0.3, 1.0, 4))),
        sample_cylinder(rng.uniform(-1, 1, (4, 2)), np.cumsum(rng.uniform(0.3, 1, 4))),
    ]
    s = sphere_rep([5.0, -4.0, 3.0], 2.0)
    for net in nets:
        before = classify_multi_circular(net).kind
        after = classify_multi_circular(invert_net(s, net)).kind
        assert before == after


def test_classify_degenerate_single_strip(rng):
    net = rot_net(rng, n_ang=2, n_prof=5)
    assert classify_multi_circular(net).kind == NetClass.DEGENERATE


def test_samplers_validate_profiles():
    with pytest.raises(DegenerateProfile):
        sample_rotational([[0.0, 0.0], [1.0, 1.0]], [0.0, 1.0])
    with pytest.raises(DegenerateProfile):
        sample_cone([[1, 0, 0]], [1.0, 2.0])
    with pytest.raises(DegenerateProfile):
        sample_cylinder([[0, 0], [0, 0]], [0.0, 1.0])


# -- embeddedness -------------------------------------------------------------------


def test_rotational_monotone_profile_embedded(rng):
    assert check_embedded(rot_net(rng))


def test_crossing_quad_not_embedded():
    # swap two vertices of a circular quad: crossing order on the circle
    t = [0.0, 1.0, 2.5, 4.5]
    circ = [np.array([np.cos(a), np.sin(a), 0.0]) for a in t]
    quad = np.stack([[circ[0], circ[2]], [circ[1], circ[3]]])
    net = EuclidNet(quad)
    assert is_multi_circular(net)
    assert not check_embedded(net)


def test_torus_net_multi_circular_and_embedded():
    us = np.linspace(0.2, 2.2, 4)
    vs = np.linspace(-0.9, 0.9, 4)
    pts = np.array([[torus_point(2.0, 0.5, u, v) for v in vs] for u in us])
    net = EuclidNet(pts)
    assert is_multi_circular(net)
    assert check_embedded(net)
    assert classify_multi_circular(net).kind == NetClass.ROTATIONAL


def test_sample_canonical_dispatch(rng):
    net = sample_canonical(
        NetClass.ROTATIONAL,
        [[1.0, 0.0], [1.3, 0.6], [1.1, 1.2], [1.4, 1.9]],
        np.linspace(0.2, 5.0, 5),
    )
    assert classify_multi_circular(net).kind == NetClass.ROTATIONAL
    with pytest.raises(ValueError):
        sample_canonical(NetClass.DEGENERATE, [], [])


def test_embedded_elementary_implies_rectangles(rng):
    # monotone samplers: every elementary quad embedded, and indeed every
    # rectangle is embedded as well
    net = rot_net(rng)
    nu, nv = net.dims
    for i in range(nu - 1):
        for j in range(nv - 1):
            quad = [
                net.point(i, j),
                net.point(i + 1, j),
                net.point(i + 1, j + 1),
                net.point(i, j + 1),
            ]
            from multinets.circular import _circle_order_embedded

            assert _circle_order_embedded(quad)
    assert check_embedded(net)


def test_strip_spheres_all_pairs_orthogonal(rng):
    # the two families of strip spheres are mutually orthogonal
    net = rot_net(rng, n_ang=5, n_prof=5)
    fam1 = [strip_sphere(net, 1, i) for i in range(4)]
    fam2 = [strip_sphere(net, 2, j) for j in range(4)]
    for s1 in fam1:
        for s2 in fam2:
            assert abs(bilinear_eval(MOEBIUS, s1, s2)) < 1e-8

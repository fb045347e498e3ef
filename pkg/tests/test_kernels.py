import math

import numpy as np
import pytest

from bernstein_bounds import geometry as geo
from bernstein_bounds import kernels as kn
from bernstein_bounds import simplex as sx

M = np.array([1 / 3, 1 / 3])
S6 = math.sqrt(6.0)
HEX_VERTS = np.array([[S6, S6], [0.0, S6], [-S6, 0.0], [-S6, -S6], [0.0, -S6], [S6, 0.0]])


def kr_table(x, n):
    return kn.DirectionalBoundTable.from_function(lambda t: sx.kr_bound_dir(x, t), n)


def baran_table(x, n):
    def fn(t):
        y = np.stack([np.cos(t), np.sin(t)], axis=-1)
        return sx.baran_derivative(x, y)

    return kn.DirectionalBoundTable.from_function(fn, n)


def test_table_validation():
    with pytest.raises(ValueError):
        kn.DirectionalBoundTable.from_function(lambda t: np.ones_like(t), 8)
    with pytest.raises(ValueError):
        kn.DirectionalBoundTable.from_function(lambda t: np.zeros_like(t), 32)
    with pytest.raises(ValueError):
        kn.DirectionalBoundTable(thetas=np.linspace(0, 3, 20), r=np.ones(19))


def test_table_from_function_grid():
    tab = kr_table(M, 64)
    assert tab.thetas.shape == (64,)
    assert tab.thetas[0] == 0.0
    assert tab.thetas[-1] == pytest.approx(math.pi * 63 / 64)
    assert np.all(tab.r > 0)


def test_hexagon_exact_when_critical_angles_sampled():
    """When N is a multiple of 4 the three edge-normal angles land on the grid."""
    reg = kn.kernel_intersect(kr_table(M, 256))
    assert reg.n_halfplanes == 512
    assert reg.area == pytest.approx(18.0, abs=1e-10)
    v = reg.polygon.vertices
    assert len(v) == 6
    for h in HEX_VERTS:
        assert float(np.min(np.linalg.norm(v - h, axis=1))) < 1e-9


def test_hexagon_excess_decays_like_one_over_n():
    """For generic N the excess is positive and scales ~ 1/N: facet normals fall
    between sample angles, producing a linear overshoot along each edge."""
    excess = {n: kn.kernel_intersect(kr_table(M, n)).area - 18.0 for n in (101, 303, 909)}
    assert excess[101] > excess[303] > excess[909] > 0.0
    r1 = excess[101] / excess[303]
    r2 = excess[303] / excess[909]
    assert 2.5 < r1 < 3.5
    assert 2.5 < r2 < 3.5


def test_fast_vertex_path_matches_clipping():
    for tab in (kr_table(M, 97), baran_table(M, 97), baran_table(np.array([0.2, 0.5]), 61)):
        dirs = np.stack([np.cos(tab.thetas), np.sin(tab.thetas)], axis=1)
        normals = np.vstack([dirs, -dirs])
        offsets = np.concatenate([tab.r, tab.r])
        fast = kn._consecutive_line_vertices(normals, offsets)
        assert fast is not None
        a_fast = geo.ConvexPolygon(kn._dedupe_loop(fast, tol=1e-9)).area
        a_slow = geo.ConvexPolygon(kn._dedupe_loop(kn._clip_kernel(dirs, tab.r))).area
        assert a_fast == pytest.approx(a_slow, abs=1e-10)


def test_fast_path_refuses_redundant_constraints():
    # one almost-useless huge bound makes its candidate vertices infeasible
    thetas = np.arange(32) * (math.pi / 32)
    r = np.ones(32)
    r[7] = 50.0
    normals = np.vstack(
        [np.stack([np.cos(thetas), np.sin(thetas)], axis=1), -np.stack([np.cos(thetas), np.sin(thetas)], axis=1)]
    )
    assert kn._consecutive_line_vertices(normals, np.concatenate([r, r])) is None
    # the full intersect still works through the clipping fallback
    reg = kn.kernel_intersect(kn.DirectionalBoundTable(thetas=thetas, r=r))
    assert reg.area > 0.0


def test_kernel_region_rejects_asymmetric_polygon():
    with pytest.raises(ValueError):
        kn.KernelRegion(polygon=geo.unit_triangle(), n_halfplanes=6)


def test_kernel_is_inside_the_cloud_bounds():
    """Every kernel point projects under r(theta) along every table direction."""
    tab = kr_table(np.array([0.25, 0.4]), 128)
    reg = kn.kernel_intersect(tab)
    dirs = np.stack([np.cos(tab.thetas), np.sin(tab.thetas)], axis=1)
    proj = np.abs(reg.polygon.vertices @ dirs.T)
    assert np.max(proj - tab.r[None, :]) <= 1e-9


def test_cloud_area_constant_bound():
    assert kn.cloud_area(None, bound=lambda t: 1.0) == pytest.approx(math.pi, rel=1e-12)
    assert kn.cloud_area(None, bound=lambda t: 2.0) == pytest.approx(4 * math.pi, rel=1e-12)


def test_cloud_area_centroid_closed_form():
    # three arcs of circles through the origin; the polar integral evaluates
    # to 9 + 9 pi / 2
    assert kn.cloud_area(M) == pytest.approx(9.0 + 4.5 * math.pi, rel=1e-12)


def test_cloud_area_requires_interior_when_default_family():
    with pytest.raises(ValueError):
        kn.cloud_area(np.array([0.7, 0.7]))


def test_kernel_ellipse_centroid_parameters():
    e = kn.kernel_ellipse_closed_form(M)
    assert e.A == pytest.approx(2 / 9, rel=1e-15)
    assert e.B == pytest.approx(2 / 9, rel=1e-15)
    assert e.C == pytest.approx(2 / 9, rel=1e-15)
    assert e.mu == pytest.approx(math.sqrt(3.0), rel=1e-14)
    assert e.nu == pytest.approx(3.0, rel=1e-14)
    assert e.angle == pytest.approx(math.pi / 4.0, rel=1e-12)
    assert e.area == pytest.approx(3.0 * math.sqrt(3.0) * math.pi, rel=1e-14)


def test_kernel_ellipse_rejects_degenerate_form():
    with pytest.raises(ValueError):
        kn.KernelEllipse(A=1.0, B=1.0, C=2.5, angle=0.0, mu=1.0, nu=1.0)


def test_boundary_lies_on_the_quadratic_form():
    for x in (M, np.array([0.1, 0.25]), np.array([0.55, 0.3])):
        e = kn.kernel_ellipse_closed_form(x)
        q = e.quadratic_form(e.boundary(257))
        assert np.max(np.abs(q - 1.0)) < 1e-12


def test_boundary_starts_on_the_major_axis():
    e = kn.kernel_ellipse_closed_form(np.array([0.1, 0.25]))
    p0 = e.boundary(8)[0]
    assert np.linalg.norm(p0) == pytest.approx(e.nu, rel=1e-12)
    ang = math.atan2(p0[1], p0[0]) % math.pi
    assert ang == pytest.approx(e.angle, abs=1e-12)


def test_closed_area_identities():
    for x in (M, np.array([0.2, 0.3]), np.array([0.05, 0.6])):
        closed = float(kn.kernel_area_closed(x))
        e = kn.kernel_ellipse_closed_form(x)
        assert closed == pytest.approx(e.area, rel=1e-12)
        assert closed == pytest.approx(0.5 * float(sx.equilibrium_density(x)), rel=1e-15)


def test_max_norm_is_reciprocal_of_ellipse_constant():
    for x in (M, np.array([0.12, 0.41]), np.array([0.3, 0.35])):
        prod = kn.kernel_max_norm(x) * float(sx.ellipse_constant(x))
        assert prod == pytest.approx(1.0, abs=1e-13)


def test_polygonal_kernel_approaches_the_ellipse():
    reg = kn.kernel_intersect(baran_table(M, 512))
    closed = float(kn.kernel_area_closed(M))
    assert reg.area == pytest.approx(closed, rel=1e-4)
    assert reg.area >= closed - 1e-9  # circumscribed polygon, never smaller


def test_region_to_csv_format():
    reg = kn.kernel_intersect(kr_table(M, 64))
    text = kn.region_to_csv(reg.polygon.vertices)
    lines = text.strip().split("\n")
    assert lines[0] == "x,y"
    assert len(lines) == len(reg.polygon.vertices) + 1
    first = [float(tok) for tok in lines[1].split(",")]
    assert len(first) == 2


def test_regions_to_svg_structure():
    reg = kn.kernel_intersect(kr_table(M, 64))
    e = kn.kernel_ellipse_closed_form(M)
    svg = kn.regions_to_svg([reg.polygon.vertices, e.boundary(128)])
    assert svg.startswith("<svg")
    assert "viewBox" in svg
    assert svg.count("<path") == 2
    assert svg.rstrip().endswith("</svg>")

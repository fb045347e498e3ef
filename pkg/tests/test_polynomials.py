import math

import numpy as np
import numpy.polynomial.polynomial as npp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernstein_bounds import polynomials as pl
from bernstein_bounds import simplex as sx

M = np.array([1 / 3, 1 / 3])
E1 = np.array([1.0, 0.0])

# flat coefficient order is (0,0), (0,1), ..., (0,n), (1,0), ... row-major in
# the x1 power, so degree 1 reads [c, c_x2, c_x1]
LIN = pl.TotalDegreePolynomial(1, np.array([0.5, -1.0, 2.0]))  # 0.5 - x2 + 2 x1


def test_n_coefficients():
    assert [pl.n_coefficients(n) for n in range(5)] == [1, 3, 6, 10, 15]


def test_coefficient_length_validated():
    with pytest.raises(ValueError):
        pl.TotalDegreePolynomial(2, np.ones(5))


def test_evaluate_scalar_and_batch():
    assert pl.evaluate(LIN, np.array([0.0, 0.0])) == pytest.approx(0.5)
    assert pl.evaluate(LIN, np.array([1.0, 0.0])) == pytest.approx(2.5)
    pts = np.array([[0.0, 0.0], [0.25, 0.5]])
    vals = pl.evaluate(LIN, pts)
    assert np.allclose(vals, [0.5, 0.5])
    assert isinstance(pl.evaluate(LIN, np.array([0.1, 0.1])), float)


def test_gradient_linear_is_constant():
    g = pl.gradient(LIN, np.array([0.3, 0.2]))
    assert np.allclose(g, [2.0, -1.0])


def test_square_embedding_roundtrip():
    p = pl.TotalDegreePolynomial(2, np.arange(6, dtype=float) + 1.0)
    q = pl.TotalDegreePolynomial.from_square(2, p.square)
    assert np.allclose(p.coeffs, q.coeffs)


def test_random_polynomial_is_seeded_and_bounded():
    a = pl.random_polynomial(3, np.random.default_rng(5))
    b = pl.random_polynomial(3, np.random.default_rng(5))
    assert np.array_equal(a.coeffs, b.coeffs)
    assert a.coeffs.shape == (10,)
    assert np.max(np.abs(a.coeffs)) <= 1.0


@pytest.mark.parametrize(
    "p,expected",
    [
        (LIN, 2.5),
        (pl.TotalDegreePolynomial(0, np.array([-3.25])), 3.25),
        (pl.chebyshev_transplant(4, -1.0, [2.0, 0.0]), 1.0),
    ],
)
def test_sup_norm_cases(p, expected):
    cert = pl.sup_norm_simplex(p)
    assert cert.value == pytest.approx(expected, rel=1e-12)
    assert cert.refined


def test_sup_norm_interior_maximum_is_polished():
    # x1 x2 (1 - x1 - x2) peaks strictly inside, at the centroid, with value 1/27
    coeffs = np.zeros(10)
    coeffs[5] = 1.0  # (1,1)
    coeffs[6] = -1.0  # (1,2)
    coeffs[8] = -1.0  # (2,1)
    p = pl.TotalDegreePolynomial(3, coeffs)
    cert = pl.sup_norm_simplex(p)
    assert cert.value == pytest.approx(1.0 / 27.0, rel=1e-10)


def test_sup_norm_is_a_lower_bound_that_refinement_cannot_exceed():
    rng = np.random.default_rng(20)
    for _ in range(10):
        p = pl.random_polynomial(4, rng)
        cert = pl.sup_norm_simplex(p)
        dense = pl.sup_norm_simplex(p, grid_resolution=700)
        assert dense.value <= cert.value * (1.0 + 1e-9) + 1e-12


def test_bernstein_ratio_linear_at_centroid():
    p = pl.TotalDegreePolynomial(1, np.array([0.0, -1.0, 1.0]))  # x1 - x2
    r = pl.bernstein_ratio(p, M, np.array([1.0, -1.0]), 1.0)
    assert r == pytest.approx(math.sqrt(2.0), rel=1e-12)
    # and it never beats the inscribed-ellipse bound
    assert r <= 1.0 / float(sx.ellipse_constant_dir(M, np.array([1.0, -1.0]))) + 1e-12


def test_bernstein_ratio_transplant_midpoint():
    t3 = pl.chebyshev_transplant(3, -1.0, [2.0, 0.0])
    assert pl.bernstein_ratio(t3, np.array([0.5, 0.1]), E1, 1.0) == pytest.approx(2.0, rel=1e-12)


def test_bernstein_ratio_scale_invariant():
    t3 = pl.chebyshev_transplant(3, -1.0, [2.0, 0.0])
    r1 = pl.bernstein_ratio(t3, np.array([0.5, 0.1]), E1, 1.0)
    scaled = pl.TotalDegreePolynomial(3, 7.5 * t3.coeffs)
    r2 = pl.bernstein_ratio(scaled, np.array([0.5, 0.1]), E1, 7.5)
    assert r1 == r2


def test_bernstein_ratio_accepts_certificate_object():
    cert = pl.sup_norm_simplex(LIN)
    r1 = pl.bernstein_ratio(LIN, M, E1, cert)
    r2 = pl.bernstein_ratio(LIN, M, E1, cert.value)
    assert r1 == r2


def test_bernstein_ratio_guards():
    with pytest.raises(ValueError):
        pl.bernstein_ratio(pl.TotalDegreePolynomial(0, np.array([1.0])), M, E1)
    with pytest.raises(ValueError):
        # a knowingly wrong certificate below |p(x)| must be refused
        pl.bernstein_ratio(LIN, np.array([0.9, 0.05]), E1, 0.5)


def test_transplant_quadratic_expansion():
    t2 = pl.chebyshev_transplant(2, -1.0, [2.0, 0.0])
    # T2(2 x1 - 1) = 8 x1^2 - 8 x1 + 1
    want = np.zeros((3, 3))
    want[0, 0], want[1, 0], want[2, 0] = 1.0, -8.0, 8.0
    assert np.allclose(t2.square, want, atol=1e-13)


def test_transplant_gradient_odd_degree():
    t3 = pl.chebyshev_transplant(3, -1.0, [2.0, 0.0])
    assert np.allclose(pl.gradient(t3, np.array([0.5, 0.1])), [-6.0, 0.0], atol=1e-12)


def test_transplant_validates_functional_and_degree():
    with pytest.raises(ValueError):
        pl.chebyshev_transplant(2, 0.5, [1.0, 0.0])  # reaches 1.5 at a vertex
    with pytest.raises(ValueError):
        pl.chebyshev_transplant(0, 0.0, [1.0, 0.0])


def test_transplants_have_unit_norm():
    for (c0, c) in [(-1.0, [2.0, 0.0]), (-1.0, [2.0, 2.0]), (1.0, [-2.0, -4.0 / 3.0]), (-1.0 / 3.0, [4.0 / 3.0, 2.0 / 3.0])]:
        for n in (1, 2, 3, 5):
            p = pl.chebyshev_transplant(n, c0, np.array(c))
            assert pl.sup_norm_simplex(p).value == pytest.approx(1.0, abs=1e-11)


def test_sample_interior_margin_and_determinism():
    rng = np.random.default_rng(99)
    pts = np.array([pl.sample_interior(rng) for _ in range(300)])
    slack = np.minimum(np.minimum(pts[:, 0], pts[:, 1]), 1.0 - pts.sum(axis=1))
    assert np.all(slack > 1e-3)
    again = np.array([pl.sample_interior(np.random.default_rng(99)) for _ in range(1)])
    assert np.allclose(pts[0], again[0])


def test_verify_upper_bound_report_shape_and_determinism():
    rep1 = pl.verify_upper_bound(3, 150, seed=21)
    rep2 = pl.verify_upper_bound(3, 150, seed=21)
    assert rep1["degree"] == 3 and rep1["trials"] == 150 and rep1["seed"] == 21
    assert rep1["violations"] == [] and rep2["violations"] == []
    assert rep1["max_quotient"] == rep2["max_quotient"] < 1.0
    assert rep1["quotients"] == rep2["quotients"]
    assert len(rep1["quotients"]) == 150
    assert 0 <= rep1["argmax_trial"] < 150


def test_verify_upper_bound_degree_guard():
    with pytest.raises(ValueError):
        pl.verify_upper_bound(0, 10, seed=1)
    with pytest.raises(ValueError):
        pl.verify_upper_bound(9, 10, seed=1)


def test_gradient_sample_must_be_finite():
    with pytest.raises(ValueError):
        pl.GradientSample(x=M, vector=np.array([np.nan, 0.0]))


def test_gradient_cloud_contained_with_boundary_witness():
    samples = pl.empirical_gradient_cloud(M, degree=4, trials=150, seed=7)
    assert len(samples) >= 150
    pts = np.array([s.vector for s in samples])
    thetas = np.linspace(0.0, math.pi, 256, endpoint=False)
    dirs = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
    r = sx.baran_derivative(M, dirs)
    proj = np.abs(pts @ dirs.T)
    assert float(np.max(proj - r[None, :])) <= 1e-9
    # the transplant catalog pushes all the way to the bound somewhere
    assert float(np.max(proj / r[None, :])) >= 1.0 - 1e-9


def test_gradient_cloud_validates_inputs():
    with pytest.raises(ValueError):
        pl.empirical_gradient_cloud(np.array([0.6, 0.6]), degree=2, trials=5, seed=0)
    with pytest.raises(ValueError):
        pl.empirical_gradient_cloud(M, degree=0, trials=5, seed=0)


@pytest.mark.parametrize(
    "n,x,a,b",
    [(3, 0.35, 0.0, 1.0), (1, -0.2, -1.0, 1.0), (4, 0.3, -1.0, 1.0), (6, 0.9, 0.0, 1.0)],
)
def test_interval_sharpness_direct_branch_is_exact(n, x, a, b):
    ratio, bound = pl.bernstein_szego_1d(n, x, a, b)
    assert bound == pytest.approx(n / math.sqrt((b - x) * (x - a)), rel=1e-15)
    assert abs(bound - ratio) < 1e-12 * bound


@pytest.mark.parametrize(
    "n,x,a,b",
    [
        (2, 0.0, -1.0, 1.0),
        (4, 0.0, -1.0, 1.0),
        (6, 0.0, -1.0, 1.0),
        (4, math.cos(math.pi / 4.0), -1.0, 1.0),
        (2, 0.5, -1.0, 2.0),
    ],
)
def test_interval_sharpness_degenerate_points_approach_bound(n, x, a, b):
    """At argument-extreme points the search gets within 1e-3 but never above."""
    ratio, bound = pl.bernstein_szego_1d(n, x, a, b)
    assert ratio <= bound + 1e-9
    assert bound - ratio < 1e-3


def test_interval_sharpness_guards():
    with pytest.raises(ValueError):
        pl.bernstein_szego_1d(3, 1.5, 0.0, 1.0)
    with pytest.raises(ValueError):
        pl.bernstein_szego_1d(0, 0.5, 0.0, 1.0)


def test_transplant_ratio_reduces_to_interval_ratio():
    """A transplant along 2 x1 - 1 probed in the e1 direction reproduces the
    one-dimensional ratio on [0, 1] (whose convention keeps the factor n)."""
    for n, t in [(2, 0.2), (4, 0.3), (5, 0.62)]:
        p = pl.chebyshev_transplant(n, -1.0, [2.0, 0.0])
        r2d = pl.bernstein_ratio(p, np.array([t, 0.15]), E1, 1.0)
        r1d, _ = pl.bernstein_szego_1d(n, t, 0.0, 1.0)
        assert n * r2d == pytest.approx(r1d, rel=1e-11)


@settings(max_examples=30, deadline=None)
@given(
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=0, max_value=10_000),
    st.floats(min_value=0.1, max_value=0.8),
    st.floats(min_value=0.1, max_value=0.8),
    st.floats(min_value=0.0, max_value=math.pi),
)
def test_ratio_never_beats_ellipse_bound_property(deg, seed, u, v, phi):
    rng = np.random.default_rng(seed)
    p = pl.random_polynomial(deg, rng)
    x1 = 0.05 + 0.85 * u
    x2 = (1.0 - x1 - 0.04) * v + 0.02
    x = np.array([x1, x2])
    y = np.array([math.cos(phi), math.sin(phi)])
    cert = pl.sup_norm_simplex(p)
    px = pl.evaluate(p, x)
    if cert.value**2 - px * px <= 1e-12 * cert.value**2:
        return  # essentially constant polynomial, ratio undefined
    r = pl.bernstein_ratio(p, x, y, cert)
    assert r <= (1.0 + 1e-3) / float(sx.ellipse_constant_dir(x, y))

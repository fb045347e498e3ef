"""Polynomial-side verification of the derivative bounds.

Random bivariate polynomials and transplanted Chebyshev families are pushed
through the Bernstein ratio |<grad p, y>| / (n sqrt(||p||^2 - p^2)) and
compared against the pluripotential bound; the sup-norm on the simplex is
certified as a refined grid lower bound (exact on edges via univariate root
finding, Newton-polished in the interior).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
import numpy.polynomial.chebyshev as cheb
import numpy.polynomial.polynomial as npp
from scipy.optimize import linprog

from .simplex import baran_derivative, check_interior

_SLACK = 1e-3
_MARGIN = 1e-3


def n_coefficients(degree: int) -> int:
    return (degree + 1) * (degree + 2) // 2


@dataclass(frozen=True)
class TotalDegreePolynomial:
    """Bivariate polynomial sum c[i,j] x1^i x2^j over i + j <= degree.

    Coefficients are stored flat, row-major in i with j running 0..degree-i.
    """

    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float).ravel()
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if len(c) != n_coefficients(self.degree):
            raise ValueError(
                f"degree {self.degree} needs {n_coefficients(self.degree)} coefficients"
            )
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_square(cls, degree: int, square: np.ndarray) -> "TotalDegreePolynomial":
        flat = []
        for i in range(degree + 1):
            flat.extend(square[i, : degree + 1 - i])
        return cls(degree=degree, coeffs=np.array(flat))

    @cached_property
    def square(self) -> np.ndarray:
        c = np.zeros((self.degree + 1, self.degree + 1))
        pos = 0
        for i in range(self.degree + 1):
            row = self.degree + 1 - i
            c[i, :row] = self.coeffs[pos : pos + row]
            pos += row
        return c

    @cached_property
    def _dx(self):
        return npp.polyder(self.square, axis=0)

    @cached_property
    def _dy(self):
        return npp.polyder(self.square, axis=1)

    @cached_property
    def _hess(self):
        return (
            npp.polyder(self._dx, axis=0),
            npp.polyder(self._dx, axis=1),
            npp.polyder(self._dy, axis=1),
        )


def evaluate(p: TotalDegreePolynomial, point):
    """Value of p at one point or an array of points with shape (..., 2)."""
    pt = np.asarray(point, dtype=float)
    out = npp.polyval2d(pt[..., 0], pt[..., 1], p.square)
    return float(out) if out.ndim == 0 else out


def gradient(p: TotalDegreePolynomial, point):
    """Analytic gradient, same shape conventions as evaluate."""
    pt = np.asarray(point, dtype=float)
    if p.degree == 0:
        return np.zeros_like(pt)
    g1 = npp.polyval2d(pt[..., 0], pt[..., 1], p._dx)
    g2 = npp.polyval2d(pt[..., 0], pt[..., 1], p._dy)
    return np.stack([g1, g2], axis=-1)


def random_polynomial(degree: int, rng) -> TotalDegreePolynomial:
    """Coefficients uniform in [-1, 1]."""
    return TotalDegreePolynomial(
        degree=degree, coeffs=rng.uniform(-1.0, 1.0, size=n_coefficients(degree))
    )


@dataclass(frozen=True)
class SupNormCertificate:
    """Certified lower bound on the sup-norm over the simplex."""

    value: float
    grid_resolution: int
    refined: bool
    lower_bound: bool = True


@lru_cache(maxsize=32)
def _bary_grid(m: int):
    i, j = np.meshgrid(np.arange(m + 1), np.arange(m + 1), indexing="ij")
    keep = i + j <= m
    x1 = i[keep] / m
    x2 = j[keep] / m
    interior = (i[keep] > 0) & (j[keep] > 0) & (i[keep] + j[keep] < m)
    return x1, x2, interior


def _univariate_abs_max(q) -> float:
    """Exact max of |q| on [0, 1] via roots of the derivative."""
    q = np.atleast_1d(np.asarray(q, dtype=float))
    cand = [0.0, 1.0]
    dq = np.trim_zeros(npp.polyder(q), "b")
    if len(dq) > 1:
        roots = npp.polyroots(dq)
        for r in roots:
            if abs(r.imag) < 1e-8 and 0.0 < r.real < 1.0:
                cand.append(float(r.real))
    elif len(dq) == 1 and dq[0] != 0.0:
        pass  # linear, endpoints suffice
    return float(np.max(np.abs(npp.polyval(np.array(cand), q))))


def _edge_maxima(p: TotalDegreePolynomial) -> float:
    sq = p.square
    m1 = _univariate_abs_max(sq[:, 0])  # edge x2 = 0
    m2 = _univariate_abs_max(sq[0, :])  # edge x1 = 0
    # hypotenuse x1 = t, x2 = 1 - t: Horner over powers of (1 - t)
    h = np.zeros(1)
    for j in range(p.degree, -1, -1):
        h = npp.polyadd(npp.polymul(h, [1.0, -1.0]), sq[:, j])
    m3 = _univariate_abs_max(h)
    return max(m1, m2, m3)


def _interior_polish(p: TotalDegreePolynomial, starts: np.ndarray) -> float:
    """Newton iteration toward critical points of p from the given starts."""
    if p.degree < 2 or len(starts) == 0:
        return 0.0
    hxx, hxy, hyy = p._hess
    pts = starts.copy()
    alive = np.ones(len(pts), dtype=bool)
    for _ in range(40):
        x1, x2 = pts[alive, 0], pts[alive, 1]
        g1 = npp.polyval2d(x1, x2, p._dx)
        g2 = npp.polyval2d(x1, x2, p._dy)
        a = npp.polyval2d(x1, x2, hxx)
        b = npp.polyval2d(x1, x2, hxy)
        c = npp.polyval2d(x1, x2, hyy)
        det = a * c - b * b
        ok = np.abs(det) > 1e-300
        step1 = np.where(ok, -(c * g1 - b * g2) / np.where(ok, det, 1.0), 0.0)
        step2 = np.where(ok, -(-b * g1 + a * g2) / np.where(ok, det, 1.0), 0.0)
        pts[alive, 0] += step1
        pts[alive, 1] += step2
        sub = alive[alive].copy()
        moved = np.hypot(step1, step2)
        inside = (
            (pts[alive, 0] > 1e-12)
            & (pts[alive, 1] > 1e-12)
            & (pts[alive, 0] + pts[alive, 1] < 1.0 - 1e-12)
        )
        sub &= ok & inside & np.isfinite(moved)
        done = moved < 1e-14
        alive[alive] = sub & ~done
        if not alive.any():
            break
    good = (
        (pts[:, 0] > 1e-12)
        & (pts[:, 1] > 1e-12)
        & (pts[:, 0] + pts[:, 1] < 1.0 - 1e-12)
        & np.isfinite(pts).all(axis=1)
    )
    if not good.any():
        return 0.0
    return float(np.max(np.abs(npp.polyval2d(pts[good, 0], pts[good, 1], p.square))))


def sup_norm_simplex(p: TotalDegreePolynomial, grid_resolution=None) -> SupNormCertificate:
    """Grid maximum of |p| on the simplex, refined on faces and in the interior.

    Resolution defaults to max(64, 8 n^2) per side.  Edge maxima are exact
    (univariate derivative roots); interior maxima are polished by Newton from
    the ten best strictly interior grid nodes.  The value is a lower bound on
    the true sup-norm and refinement never decreases it.
    """
    m = grid_resolution or max(64, 8 * p.degree * p.degree)
    x1, x2, interior = _bary_grid(m)
    vals = np.abs(npp.polyval2d(x1, x2, p.square))
    best = float(np.max(vals))
    best = max(best, _edge_maxima(p))
    idx = np.nonzero(interior)[0]
    if len(idx) > 0:
        top = idx[np.argsort(vals[idx])[-10:]]
        starts = np.stack([x1[top], x2[top]], axis=1)
        best = max(best, _interior_polish(p, starts))
    return SupNormCertificate(value=best, grid_resolution=m, refined=True)


def bernstein_ratio(p: TotalDegreePolynomial, x, y, certificate=None) -> float:
    """|<grad p(x), y>| / (n sqrt(||p||^2 - p(x)^2)) with the certified norm."""
    if p.degree < 1:
        raise ValueError("ratio needs degree >= 1")
    if certificate is None:
        certificate = sup_norm_simplex(p)
    norm = getattr(certificate, "value", certificate)
    px = evaluate(p, x)
    den2 = norm * norm - px * px
    if den2 <= 0.0:
        raise ValueError("|p(x)| >= certified sup-norm; ratio undefined")
    y = np.asarray(y, dtype=float)
    y = y / np.linalg.norm(y)
    return abs(float(gradient(p, x) @ y)) / (p.degree * math.sqrt(den2))


def chebyshev_transplant(n: int, c0: float, c) -> TotalDegreePolynomial:
    """T_n composed with the affine functional l(x) = c0 + <c, x>.

    l must satisfy |l| <= 1 on the simplex, which is checked at the vertices.
    """
    if n < 1:
        raise ValueError("transplant degree must be >= 1")
    c = np.asarray(c, dtype=float)
    verts = np.array([c0, c0 + c[0], c0 + c[1]])
    if np.any(np.abs(verts) > 1.0 + 1e-12):
        raise ValueError("affine functional exceeds 1 in modulus at a vertex")
    size = n + 1
    prev = np.zeros((size, size))
    prev[0, 0] = 1.0
    cur = np.zeros((size, size))
    cur[0, 0] = c0
    cur[1, 0] = c[0]
    cur[0, 1] = c[1]
    for _ in range(n - 1):
        nxt = 2.0 * _affine_multiply(cur, c0, c) - prev
        prev, cur = cur, nxt
    return TotalDegreePolynomial.from_square(n, cur)


def _affine_multiply(sq: np.ndarray, c0: float, c):
    out = c0 * sq
    out[1:, :] += c[0] * sq[:-1, :]
    out[:, 1:] += c[1] * sq[:, :-1]
    return out


def sample_interior(rng, margin: float = _MARGIN) -> np.ndarray:
    """Uniform point of the simplex with all barycentric coordinates > margin."""
    while True:
        u, v = rng.uniform(0.0, 1.0, size=2)
        if u + v > 1.0:
            u, v = 1.0 - u, 1.0 - v
        if min(u, v, 1.0 - u - v) > margin:
            return np.array([u, v])


def verify_upper_bound(degree: int, trials: int, seed: int) -> dict:
    """Randomized check that the Bernstein ratio never beats the bound.

    Each trial draws coefficients uniform in [-1, 1], an interior point with
    boundary margin 1e-3, and a direction; violations beyond the slack 1e-3
    (which absorbs sup-norm underestimation) are reported, not raised.
    Per-trial seeds descend deterministically from (seed, trial index).
    """
    if not 1 <= degree <= 8:
        raise ValueError("degree must be in [1, 8]")
    if trials < 1:
        raise ValueError("need at least one trial")
    children = np.random.SeedSequence(seed).spawn(trials)
    quotients = np.empty(trials)
    violations = []
    for i, child in enumerate(children):
        rng = np.random.default_rng(child)
        p = random_polynomial(degree, rng)
        x = sample_interior(rng)
        phi = rng.uniform(0.0, math.pi)
        y = np.array([math.cos(phi), math.sin(phi)])
        cert = sup_norm_simplex(p)
        px = evaluate(p, x)
        den2 = cert.value * cert.value - px * px
        if den2 <= 0.0:
            quotients[i] = math.inf
        else:
            ratio = abs(float(gradient(p, x) @ y)) / (degree * math.sqrt(den2))
            quotients[i] = ratio / float(baran_derivative(x, y))
        if quotients[i] > 1.0 + _SLACK:
            violations.append(
                {"trial": i, "x": x.tolist(), "phi": phi, "quotient": quotients[i]}
            )
    return {
        "degree": degree,
        "trials": trials,
        "seed": seed,
        "slack": _SLACK,
        "margin": _MARGIN,
        "max_quotient": float(np.max(quotients)),
        "argmax_trial": int(np.argmax(quotients)),
        "violations": violations,
        "quotients": quotients.tolist(),
    }


@dataclass(frozen=True)
class GradientSample:
    """One point of the empirical gradient set grad p(x)/(n sqrt(||p||^2-p^2))."""

    x: np.ndarray
    vector: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=float)
        if not np.all(np.isfinite(v)):
            raise ValueError("gradient sample must be finite")
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "vector", v)


def _affine_catalog():
    """All 64 affine functionals with vertex values in {-1, -1/3, 1/3, 1}."""
    levels = np.array([-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0])
    out = []
    for v0 in levels:
        for va in levels:
            for vb in levels:
                out.append((v0, np.array([va - v0, vb - v0])))
    return out


def _cloud_sample(p, x, n):
    cert = sup_norm_simplex(p)
    px = evaluate(p, x)
    den2 = cert.value * cert.value - px * px
    if den2 <= 1e-15 * cert.value * cert.value:
        return None
    return GradientSample(x=x, vector=gradient(p, x) / (n * math.sqrt(den2)))


def empirical_gradient_cloud(x, degree: int, trials: int, seed: int):
    """Gradient samples at x from random polynomials plus transplant catalog."""
    x = check_interior(np.asarray(x, dtype=float))
    if not 1 <= degree <= 8:
        raise ValueError("degree must be in [1, 8]")
    samples = []
    children = np.random.SeedSequence(seed).spawn(trials)
    for child in children:
        rng = np.random.default_rng(child)
        n = int(rng.integers(1, degree + 1))
        s = _cloud_sample(random_polynomial(n, rng), x, n)
        if s is not None:
            samples.append(s)
    for c0, c in _affine_catalog():
        if np.allclose(c, 0.0):
            continue
        for n in range(1, degree + 1):
            s = _cloud_sample(chebyshev_transplant(n, c0, c), x, n)
            if s is not None:
                samples.append(s)
    return samples


def bernstein_szego_1d(n: int, x: float, a: float, b: float):
    """(ratio, bound) for the interval inequality |p'| <= n sqrt(||p||^2-p^2) / sqrt((b-x)(x-a)).

    The ratio is that of the Chebyshev transplant on [a, b] when x is not an
    extreme point of it; at extreme points (where that ratio degenerates to
    0/0) an LP search over unit-norm polynomials takes over and approaches
    the bound from below.
    """
    if not a < x < b:
        raise ValueError("need a < x < b")
    if n < 1:
        raise ValueError("degree must be >= 1")
    bound = n / math.sqrt((b - x) * (x - a))
    u = (2.0 * x - a - b) / (b - a)
    en = np.zeros(n + 1)
    en[n] = 1.0
    tn = cheb.chebval(u, en)
    one_minus = 1.0 - tn * tn
    if one_minus > 1e-9:
        dtn = cheb.chebval(u, cheb.chebder(en))
        ratio = abs(dtn) * (2.0 / (b - a)) / math.sqrt(one_minus)
    else:
        ratio = _degenerate_sharpness(n, x, a, b)
    return ratio, bound


def _degenerate_sharpness(n, x, a, b) -> float:
    best = 0.0
    for eta in (1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 3e-11):
        for sign in (1.0, -1.0):
            r = _lp_ratio(n, x, a, b, eta, sign)
            if r is not None:
                best = max(best, r)
    return best


def _lp_ratio(n, x, a, b, eta, sign):
    """Maximize sign * p'(x) over ||p|| <= N (sampled), p(x) = (1 - eta) N.

    Chebyshev basis of [a, b].  Cutting-plane rounds append the true extrema
    of each solution to the constraint grid, and the pin value tracks the
    root-certified norm N of the previous round, so p(x)/||p|| converges to
    1 - eta and the denominator N^2 - p(x)^2 = N^2 (2 eta - eta^2) is free of
    cancellation against the norm overshoot.  Every round's ratio uses the
    certified norm, so unconverged rounds only lower the reported value.
    """
    ux = (2.0 * x - a - b) / (b - a)
    deriv_row = np.array(
        [cheb.chebval(ux, cheb.chebder(_unit_cheb(k))) for k in range(n + 1)]
    ) * (2.0 / (b - a))
    value_row = np.array([cheb.chebval(ux, _unit_cheb(k)) for k in range(n + 1)])
    grid = np.cos(np.linspace(0.0, math.pi, 2001))
    best = None
    norm_prev = 1.0
    for _ in range(12):
        px = (1.0 - eta) * norm_prev
        V = cheb.chebvander(grid, n)
        res = linprog(
            -sign * deriv_row,
            A_ub=np.vstack([V, -V]),
            b_ub=np.full(2 * len(grid), norm_prev),
            A_eq=value_row[None, :],
            b_eq=[px],
            bounds=(None, None),
            method="highs",
        )
        if not res.success:
            return best
        coeffs = res.x
        ext = _cheb_extrema(coeffs)
        norm = float(np.max(np.abs(cheb.chebval(ext, coeffs))))
        # evaluate p(x) from the coefficients rather than trusting the pin:
        # the solver's equality residual would otherwise shrink the
        # denominator and report a ratio no polynomial attains
        actual = float(value_row @ coeffs)
        den2 = norm * norm - actual * actual
        if den2 > 0.0:
            r = abs(float(deriv_row @ coeffs)) / math.sqrt(den2)
            best = r if best is None else max(best, r)
        if abs(norm - norm_prev) <= 1e-14 * norm_prev:
            break
        grid = np.unique(np.concatenate([grid, ext]))
        norm_prev = norm
    return best


def _unit_cheb(k):
    e = np.zeros(k + 1)
    e[k] = 1.0
    return e


def _cheb_extrema(coeffs) -> np.ndarray:
    """Critical points of the Chebyshev-basis polynomial inside [-1,1], plus ends."""
    pts = [-1.0, 1.0]
    d = cheb.chebtrim(cheb.chebder(coeffs), tol=1e-13 * max(1.0, np.max(np.abs(coeffs))))
    if len(d) > 1:
        for r in np.atleast_1d(cheb.chebroots(d)):
            if abs(r.imag) < 1e-9 and -1.0 <= r.real <= 1.0:
                pts.append(float(r.real))
    return np.array(pts)

"""Numeric maximal inscribed ellipses of the family r(t) = cos t * a + b sin t * y.

The ellipse passes through x at t = 0 (center x - a), has conjugate half-axes
a and b*y, and must stay inside a convex polygon.  For a fixed half-axis b the
per-edge containment certificate

    <n_e, x - a> + sqrt(<n_e, a>^2 + b^2 <n_e, y>^2) <= c_e

is, after isolating the square root and squaring, equivalent to the affine
condition <n_e, a> >= (b^2 <n_e, y>^2 - s_e^2) / (2 s_e) with s_e the slack of
x against edge e.  Feasibility in a is therefore a half-plane intersection
test, and the outer problem is a clean bisection on b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import ConvexPolygon, clip_halfplane, require_interior


@dataclass(frozen=True)
class InscribedEllipse:
    """Ellipse t -> cos t * a + b sin t * y + (x - a), passing through x."""

    x: np.ndarray
    y: np.ndarray
    a: np.ndarray
    b: float

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        a = np.asarray(self.a, dtype=float)
        if not math.isclose(float(np.linalg.norm(y)), 1.0, abs_tol=1e-9):
            raise ValueError("axis direction y must be a unit vector")
        if self.b < 0.0:
            raise ValueError("half-axis b must be nonnegative")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "a", a)

    @property
    def center(self) -> np.ndarray:
        return self.x - self.a

    def point(self, t):
        t = np.asarray(t, dtype=float)
        return (
            np.cos(t)[..., None] * self.a
            + (self.b * np.sin(t))[..., None] * self.y
            + self.center
        )


@dataclass(frozen=True)
class EllipseSolveReport:
    best_b: float
    witness: InscribedEllipse
    iterations: int
    feasibility_residual: float


def containment_violation(e: InscribedEllipse, K: ConvexPolygon) -> float:
    """Max over edges of how far the ellipse pokes out of K (<= 0 means inside)."""
    n, c = K.edge_normals()
    na = n @ e.a
    ny = n @ e.y
    reach = n @ e.center + np.sqrt(na * na + e.b * e.b * ny * ny)
    return float(np.max(reach - c))


def ellipse_in_polygon(e: InscribedEllipse, K: ConvexPolygon, tol: float = 1e-9) -> bool:
    return containment_violation(e, K) <= tol


def _feasible_a(K: ConvexPolygon, x, y, b: float):
    """Vertices of {a : all affine edge conditions hold}, or None when empty.

    The feasible set is contained in (x - K)/2, so a box of half-width
    diam(K) around the origin always covers it.
    """
    n, c = K.edge_normals()
    s = c - n @ x
    h = (b * b * (n @ y) ** 2 - s * s) / (2.0 * s)
    R = K.diameter + 1.0
    region = np.array([[-R, -R], [R, -R], [R, R], [-R, R]])
    for ni, hi in zip(n, h):
        region = clip_halfplane(region, -ni, -hi)
        if len(region) == 0:
            return None
    return region

def best_ellipse(K: ConvexPolygon, x, y, rel_tol: float = 1e-8) -> EllipseSolveReport:
    """Largest b for which some inscribed ellipse through x with axis y fits in K.

    Bisection on b; b = 0 is always feasible (a degenerate segment) and
    b = diam(K) never is, since 2b cannot exceed the maximal chord.
    """
    x = require_interior(K, x)
    y = np.asarray(y, dtype=float)
    ny = np.linalg.norm(y)
    if ny == 0.0:
        raise ValueError("direction must be nonzero")
    y = y / ny
    diam = K.diameter
    lo, hi = 0.0, diam
    region_lo = _feasible_a(K, x, y, 0.0)
    iterations = 0
    while hi - lo > rel_tol * diam:
        mid = 0.5 * (lo + hi)
        region = _feasible_a(K, x, y, mid)
        if region is None:
            hi = mid
        else:
            lo, region_lo = mid, region
        iterations += 1
    a = region_lo.mean(axis=0)
    witness = InscribedEllipse(x=x, y=y, a=a, b=lo)
    residual = max(containment_violation(witness, K), 0.0)
    return EllipseSolveReport(
        best_b=lo, witness=witness, iterations=iterations, feasibility_residual=residual
    )


def best_ellipse_all_dirs(K: ConvexPolygon, x, n_dirs: int = 256) -> float:
    """Directional minimum of best_ellipse over axis angles in [0, pi).

    Uniform angular sweep plus golden-section refinement around the best cell;
    ties go to the smaller angle.
    """
    from .geometry import _golden_min

    x = require_interior(K, x)
    thetas = np.arange(n_dirs) * (math.pi / n_dirs)
    f = lambda t: best_ellipse(K, x, (math.cos(t), math.sin(t))).best_b
    vals = np.array([f(t) for t in thetas])
    k = int(np.argmin(vals))
    best = float(vals[k])
    h = math.pi / n_dirs
    refined, _ = _golden_min(f, thetas[k] - h, thetas[k] + h, tol=1e-10)
    return min(best, refined)

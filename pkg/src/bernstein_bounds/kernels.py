"""Kernel sets of directional bound families.

A family of bounds r(theta) > 0 over directions y(theta) has two associated
sets: the fleecy cloud {t * y : |t| <= r(y)} (generally nonconvex) and the
kernel, the intersection of the slabs |<v, y(theta)>| <= r(theta).  For the
bound family coming from the pluripotential derivative the kernel is an exact
ellipse with closed-form axes; for the chord-and-alpha family it is a polygon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .geometry import ConvexPolygon, _shoelace, clip_halfplane
from .simplex import check_interior, kr_bound_dir


@dataclass(frozen=True)
class DirectionalBoundTable:
    """Sampled directional bounds r(theta_k) > 0 on a uniform grid of [0, pi)."""

    thetas: np.ndarray
    r: np.ndarray

    def __post_init__(self):
        thetas = np.asarray(self.thetas, dtype=float)
        r = np.asarray(self.r, dtype=float)
        if thetas.ndim != 1 or thetas.shape != r.shape:
            raise ValueError("thetas and r must be matching 1-d arrays")
        if len(thetas) < 16:
            raise ValueError("need at least 16 directions")
        if np.any(r <= 0.0):
            raise ValueError("all bounds must be positive")
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "r", r)

    @classmethod
    def from_function(cls, fn, n: int) -> "DirectionalBoundTable":
        thetas = np.arange(n) * (math.pi / n)
        return cls(thetas=thetas, r=np.asarray(fn(thetas), dtype=float))


@dataclass(frozen=True)
class KernelRegion:
    """Convex, origin-symmetric polygon cut out by the slab constraints."""

    polygon: ConvexPolygon
    n_halfplanes: int

    def __post_init__(self):
        v = self.polygon.vertices
        m = len(v)
        scale = max(1.0, float(np.max(np.abs(v))))
        if m % 2 != 0 or not np.allclose(v, -np.roll(v, m // 2, axis=0), atol=1e-9 * scale):
            raise ValueError("kernel region is not centrally symmetric")

    @property
    def area(self) -> float:
        return self.polygon.area


def kernel_intersect(table: DirectionalBoundTable) -> KernelRegion:
    """Intersect the slabs |<v, y(theta_k)>| <= r_k.

    When every constraint line touches the intersection (the generic case for
    our bound families) the vertices are the intersections of consecutive
    lines sorted by normal angle; that O(N) construction is attempted first
    and accepted only after verifying all candidates against all constraints.
    Otherwise sequential half-plane clipping from a safe bounding box is used.
    """
    dirs = np.stack([np.cos(table.thetas), np.sin(table.thetas)], axis=1)
    normals = np.vstack([dirs, -dirs])
    offsets = np.concatenate([table.r, table.r])
    verts = _consecutive_line_vertices(normals, offsets)
    if verts is not None:
        # concurrent constraint lines leave clusters of candidates at the
        # shared corner; merge at the same tolerance used to accept them
        verts = _dedupe_loop(verts, tol=1e-9)
    else:
        verts = _dedupe_loop(_clip_kernel(dirs, table.r))
    return KernelRegion(polygon=ConvexPolygon(verts), n_halfplanes=2 * len(table.r))


def _consecutive_line_vertices(normals, offsets):
    """Vertices of the half-plane intersection if every line is binding, else None."""
    n2 = np.roll(normals, -1, axis=0)
    c2 = np.roll(offsets, -1)
    det = normals[:, 0] * n2[:, 1] - normals[:, 1] * n2[:, 0]
    if np.any(np.abs(det) < 1e-12):
        return None
    vx = (offsets * n2[:, 1] - c2 * normals[:, 1]) / det
    vy = (normals[:, 0] * c2 - n2[:, 0] * offsets) / det
    verts = np.stack([vx, vy], axis=1)
    scale = float(np.max(np.abs(verts)))
    if not np.isfinite(scale):
        return None
    # every candidate must satisfy every constraint
    for k in range(0, len(normals), 256):
        reach = verts @ normals[k : k + 256].T - offsets[k : k + 256]
        if np.max(reach) > 1e-9 * max(1.0, scale):
            return None
    e = np.roll(verts, -1, axis=0) - verts
    cross = e[:, 0] * np.roll(e[:, 1], -1) - e[:, 1] * np.roll(e[:, 0], -1)
    if np.any(cross < -1e-9 * scale * scale):
        return None
    return verts


def _clip_kernel(dirs, r):
    R = 2.0 * float(np.max(r))
    region = np.array([[-R, -R], [R, -R], [R, R], [-R, R]])
    for d, rk in zip(dirs, r):
        region = clip_halfplane(region, d, rk)
        region = clip_halfplane(region, -d, rk)
        if len(region) == 0:
            raise ValueError("kernel region collapsed; bounds are inconsistent")
    return region


def _dedupe_loop(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Drop consecutive near-duplicate vertices from a closed loop."""
    scale = max(1.0, float(np.max(np.abs(v))))
    keep = np.linalg.norm(v - np.roll(v, 1, axis=0), axis=1) > tol * scale
    return v[keep]


def cloud_area(x, bound=None) -> float:
    """Area of the fleecy cloud swept by the chord-and-alpha bound family at x.

    Polar integral of r(theta)^2 over [0, pi); the default bound family is
    kr_bound_dir(x, .), and an arbitrary theta -> r function can be injected.
    """
    if bound is None:
        x = check_interior(x)
        bound = lambda t: kr_bound_dir(x, t)
    val, _ = quad(
        lambda t: float(bound(t)) ** 2,
        0.0,
        math.pi,
        points=[math.pi / 2.0, 3.0 * math.pi / 4.0],
        limit=200,
        epsabs=1e-10,
        epsrel=1e-10,
    )
    return val


@dataclass(frozen=True)
class KernelEllipse:
    """Kernel of the pluripotential bound family: u' Q u <= 1 in closed form.

    Q has entries [[A, -C/2], [-C/2, B]] with A = x1(1-x1), B = x2(1-x2),
    C = 2 x1 x2; mu and nu are the minor and major half-axes, and angle is
    the direction of the major (nu) axis, in [0, pi).
    """

    A: float
    B: float
    C: float
    angle: float
    mu: float
    nu: float

    def __post_init__(self):
        if self.A <= 0.0 or self.B <= 0.0 or self.A * self.B - 0.25 * self.C**2 <= 0.0:
            raise ValueError("quadratic form is not positive definite")

    @property
    def area(self) -> float:
        return math.pi * self.mu * self.nu

    def quadratic_form(self, v):
        v = np.asarray(v, dtype=float)
        u1, u2 = v[..., 0], v[..., 1]
        return self.A * u1 * u1 + self.B * u2 * u2 - self.C * u1 * u2

    def boundary(self, n: int = 256) -> np.ndarray:
        t = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        ca, sa = math.cos(self.angle), math.sin(self.angle)
        u = self.nu * np.cos(t)
        w = self.mu * np.sin(t)
        return np.stack([ca * u - sa * w, sa * u + ca * w], axis=1)


def kernel_ellipse_closed_form(x) -> KernelEllipse:
    """Closed-form kernel ellipse of the pluripotential family at x."""
    x = check_interior(x)
    if x.shape[-1] != 2 or x.ndim != 1:
        raise ValueError("closed form is for a single planar simplex point")
    x1, x2 = float(x[0]), float(x[1])
    A = x1 * (1.0 - x1)
    B = x2 * (1.0 - x2)
    C = 2.0 * x1 * x2
    D = math.sqrt((A - B) ** 2 + C * C)
    mu = math.sqrt(2.0 / (A + B + D))
    nu = math.sqrt(2.0 / (A + B - D))
    angle = (0.5 * math.atan2(-C, A - B) + math.pi / 2.0) % math.pi
    return KernelEllipse(A=A, B=B, C=C, angle=angle, mu=mu, nu=nu)


def kernel_area_closed(x):
    """pi / sqrt(x1 x2 x3), the exact area of the closed-form kernel ellipse."""
    x = check_interior(x)
    x1, x2 = x[..., 0], x[..., 1]
    return math.pi / np.sqrt(x1 * x2 * (1.0 - x1 - x2))


def kernel_max_norm(x) -> float:
    """Largest |v| over the kernel ellipse, i.e. the major half-axis nu."""
    return kernel_ellipse_closed_form(x).nu


def region_to_csv(vertices: np.ndarray) -> str:
    lines = ["x,y"]
    for vx, vy in vertices:
        lines.append(f"{vx:.12g},{vy:.12g}")
    return "\n".join(lines) + "\n"


def regions_to_svg(regions, pad: float = 0.05) -> str:
    """Minimal SVG document with one path per closed vertex loop."""
    allv = np.vstack([np.asarray(r, dtype=float) for r in regions])
    lo = allv.min(axis=0)
    hi = allv.max(axis=0)
    span = float(np.max(hi - lo))
    margin = pad * span
    x0, y0 = lo - margin
    w, h = hi - lo + 2.0 * margin
    paths = []
    for r in regions:
        pts = " L ".join(f"{px:.6g},{py:.6g}" for px, py in np.asarray(r, dtype=float))
        paths.append(
            f'<path d="M {pts} Z" fill="none" stroke="black" '
            f'stroke-width="{span / 400.0:.6g}"/>'
        )
    body = "\n".join(paths)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{x0:.6g} {y0:.6g} {w:.6g} {h:.6g}">\n'
        f'<g transform="translate(0,{(2.0 * y0 + h):.6g}) scale(1,-1)">\n'
        f"{body}\n</g>\n</svg>\n"
    )

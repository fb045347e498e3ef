"""
Kernel sets of the gradient at the centroid
===========================================

For a fixed interior point x, each direction y gives an upper bound on the
directional derivative of a unit-norm polynomial; intersecting the slabs
|<g, y>| <= r(y) over all directions produces the "kernel set" of feasible
gradients.  At the centroid the chord-based bound yields a hexagon of area
18, the pluripotential bound an ellipse of area 16.32..., and the empirical
cloud of renormalized gradients a six-petal region of area 9 + 9 pi / 2.
"""

import math

import numpy as np

from bernstein_bounds import kernels as kn
from bernstein_bounds import polynomials as pl
from bernstein_bounds import simplex as sx

M = np.array([1 / 3, 1 / 3])
N = 1024


def table(fn):
    return kn.DirectionalBoundTable.from_function(fn, N)


hexagon = kn.kernel_intersect(table(lambda t: sx.kr_bound_dir(M, t)))


def baran(t):
    y = np.stack([np.cos(t), np.sin(t)], axis=-1)
    return sx.baran_derivative(M, y)


ellipse_poly = kn.kernel_intersect(table(baran))
ellipse = kn.kernel_ellipse_closed_form(M)

print(f"hexagon area      : {hexagon.area:.6f}   (exact 18, {len(hexagon.polygon.vertices)} vertices)")
print(f"ellipse area      : {ellipse_poly.area:.6f}   (closed form {ellipse.area:.6f})")
print(f"cloud area        : {kn.cloud_area(M):.6f}   (exact 9 + 9 pi/2 = {9 + 4.5 * math.pi:.6f})")
print(f"ellipse axes      : mu = {ellipse.mu:.6f}, nu = {ellipse.nu:.6f}, angle = {ellipse.angle:.6f}")

# sample actual gradients of random degree-4 polynomials and confirm they
# stay inside the cloud bound in every sampled direction
samples = pl.empirical_gradient_cloud(M, 4, 400, seed=11)
pts = np.array([s.vector for s in samples])
th = np.linspace(0, 2 * math.pi, 720, endpoint=False)
rims = sx.kr_bound_dir(M, th)
proj = pts @ np.stack([np.cos(th), np.sin(th)])
print(f"gradient samples  : {len(pts)}, max overshoot of the cloud rim "
      f"{float(np.max(proj - rims)):.2e}")

svg = kn.regions_to_svg([hexagon.polygon.vertices, ellipse_poly.polygon.vertices])
with open("kernel_sets_centroid.svg", "w") as fh:
    fh.write(svg)
print("wrote kernel_sets_centroid.svg (hexagon and ellipse overlay)")

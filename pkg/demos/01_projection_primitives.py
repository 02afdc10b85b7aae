"""Metric projections onto hyperplanes, affine subspaces, and convex bodies.

Every generator used in this package is a nonexpansive map. This script walks
through the basic projection surfaces and spot-checks the two properties that
everything downstream relies on: idempotence and nonexpansiveness.
"""

import numpy as np

from ifslab import (
    AffineSubspace,
    Ball,
    Box,
    Halfspace,
    Hyperplane,
    distance,
    project_affine_subspace,
    project_convex,
    project_hyperplane,
)

# A hyperplane is {x : a.x = b}. Projecting (3, 4) onto x + y = 1 lands on
# (0, 1), the nearest point of the line.
h = Hyperplane([1.0, 1.0], 1.0)
x = np.array([3.0, 4.0])
px = project_hyperplane(x, h)
print(f"project {x} onto x+y=1      -> {px}")
print(f"  residual a.p - b          = {h.normal @ px - h.offset:.2e}")
print(f"  idempotent                : {distance(project_hyperplane(px, h), px):.2e}")

# Affine subspaces are stored as anchor + orthonormal basis. A line in R^3:
line = AffineSubspace.spanned_by([0.0, 0.0, 1.0], [[2.0, 0.0, 0.0]])
print(f"\nproject (4,-2,7) onto the line through (0,0,1) along e1:")
print(f"  -> {project_affine_subspace([4.0, -2.0, 7.0], line)}")

# Convex bodies: balls rescale radially, boxes clamp, halfspaces fix interior
# points and project exterior ones onto the bounding hyperplane.
print(f"\nball  B(0,1):  (3,0)   -> {project_convex([3.0, 0.0], Ball([0, 0], 1.0))}")
print(f"box   [0,1]^2: (2,-1)  -> {project_convex([2.0, -1.0], Box([0, 0], [1, 1]))}")
print(f"halfspace x<=0: (-1,5) -> {project_convex([-1.0, 5.0], Halfspace([1, 0], 0.0))}")

# Nonexpansiveness: projections never increase distances. Sample a few pairs.
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(1000):
    p, q = rng.standard_normal(2) * 5, rng.standard_normal(2) * 5
    worst = max(worst, distance(project_hyperplane(p, h), project_hyperplane(q, h))
                - distance(p, q))
print(f"\nworst distance growth over 1000 random pairs: {worst:.2e} (<= 0 up to rounding)")

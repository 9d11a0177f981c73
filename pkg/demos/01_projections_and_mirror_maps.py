#!/usr/bin/env python3
"""Tour of the feasible-set and mirror-map toolbox.

Projects points onto a ball, a box, a pentagon, and the probability
simplex, then walks a point across the simplex with exponentiated
(entropic mirror) updates.
"""

import numpy as np

from laglearn import Ball, Box, EuclideanMap, NegativeEntropyMap, Simplex, regular_polygon

ball = Ball([0.0, 0.0], 1.0)
box = Box([-1.0, -1.0], [1.0, 1.0])
pentagon = regular_polygon(5, center=(1.0, 1.0), circumradius=1.0)
simplex = Simplex(3)

print("== Euclidean projections ==")
for body, x in [(ball, [3.0, 4.0]), (box, [2.0, 0.3]), (pentagon, [3.0, 3.0])]:
    p = body.project(x)
    print(f"{body.describe()[:34]:36s} {x} -> {np.round(p, 4)}")
print(f"{simplex.describe():36s} [0.5, 0.5, 1.0] ->", simplex.project([0.5, 0.5, 1.0]))

print("\n== Bregman divergences ==")
emap, nmap = EuclideanMap(), NegativeEntropyMap()
x, y = np.array([0.5, 0.5]), np.array([0.9, 0.1])
print("euclidean  D(x||y) =", emap.bregman(x, y), " (half squared distance)")
print("negentropy D(x||y) =", round(nmap.bregman(x, y), 6), " (KL divergence)")

print("\n== Exponentiated-gradient walk on the simplex ==")
p = np.array([1 / 3, 1 / 3, 1 / 3])
target_direction = np.array([1.0, 0.0, -1.0])
for step in range(6):
    print(f"step {step}: {np.round(p, 4)}")
    p = nmap.update(p, 0.8 * target_direction)
print("mass flows toward the first coordinate, never leaving the simplex")

"""Feasible sets, Euclidean projections, and mirror maps.

Estimates produced by the learners are kept inside a convex body via
Euclidean projection.  Non-Euclidean geometries are handled by a mirror
map: a strongly convex potential M whose gradient and dual gradient
(the gradient of the Fenchel conjugate M*) transport points between the
primal and dual spaces.  The Bregman divergence of a map is

    D_M(x || y) = M(x) - M(y) - <x - y, grad M(y)>

which for the Euclidean map M(x) = 0.5 ||x||^2 reduces to the squared
half-distance 0.5 ||x - y||^2.

Every operation here is a pure function of its inputs; nothing keeps
shared mutable state.
"""

from __future__ import annotations

import math

import numpy as np

Array = np.ndarray

MEMBERSHIP_TOL = 1e-9

# Coordinates below this are lifted before taking logs in the entropic map.
ENTROPY_FLOOR = 1e-12


def as_vector(x, dim: int | None = None) -> Array:
    """Coerce to a finite 1-d float array, optionally checking the dimension."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has NaN or infinite entries")
    if dim is not None and v.size != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {v.size}")
    return v


# ---------------------------------------------------------------------------
# Convex bodies
# ---------------------------------------------------------------------------

class ConvexBody:
    """A closed convex set with a Euclidean nearest-point (projection) oracle.

    Subclasses provide `project`, `contains`, and `sample`, plus a
    `radius_bound` R with ||x|| <= R for every member x.
    """

    dim: int
    radius_bound: float

    def project(self, x) -> Array:
        raise NotImplementedError

    def contains(self, x, tol: float = MEMBERSHIP_TOL) -> bool:
        raise NotImplementedError

    def sample(self, rng: np.random.Generator) -> Array:
        return self.sample_many(1, rng)[0]

    def sample_many(self, n: int, rng: np.random.Generator) -> Array:
        raise NotImplementedError

    def project_many(self, points: Array) -> Array:
        """Project each row of `points`; subclasses override when vectorizable."""
        return np.stack([self.project(row) for row in np.asarray(points, dtype=float)])

    def describe(self) -> str:
        raise NotImplementedError


class Ball(ConvexBody):
    """Euclidean ball {x : ||x - center|| <= radius}."""

    def __init__(self, center, radius: float):
        self.center = as_vector(center)
        self.radius = float(radius)
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        self.dim = self.center.size
        self.radius_bound = float(np.linalg.norm(self.center)) + self.radius

    def project(self, x) -> Array:
        v = as_vector(x, self.dim)
        offset = v - self.center
        dist = float(np.linalg.norm(offset))
        if dist <= self.radius:
            return v.copy()
        return self.center + offset * (self.radius / dist)

    def contains(self, x, tol: float = MEMBERSHIP_TOL) -> bool:
        v = as_vector(x, self.dim)
        return float(np.linalg.norm(v - self.center)) <= self.radius + tol

    def sample_many(self, n: int, rng: np.random.Generator) -> Array:
        # Uniform in the ball: random direction times radius * U^(1/d).
        raw = rng.standard_normal((n, self.dim))
        norms = np.linalg.norm(raw, axis=1, keepdims=True)
        norms[norms == 0.0] = 1.0
        radii = self.radius * rng.uniform(size=(n, 1)) ** (1.0 / self.dim)
        return self.center + raw / norms * radii

    def project_many(self, points: Array) -> Array:
        pts = np.asarray(points, dtype=float)
        offset = pts - self.center
        dist = np.linalg.norm(offset, axis=1)
        scale = np.ones_like(dist)
        outside = dist > self.radius
        scale[outside] = self.radius / dist[outside]
        return self.center + offset * scale[:, None]

    def describe(self) -> str:
        return f"ball(center={self.center.tolist()}, radius={self.radius})"


class Box(ConvexBody):
    """Axis-aligned box {x : lo <= x <= hi} (coordinate-wise)."""

    def __init__(self, lo, hi):
        self.lo = as_vector(lo)
        self.hi = as_vector(hi, self.lo.size)
        if np.any(self.lo > self.hi):
            raise ValueError("box needs lo <= hi in every coordinate")
        self.dim = self.lo.size
        self.radius_bound = float(np.linalg.norm(np.maximum(np.abs(self.lo), np.abs(self.hi))))

    def project(self, x) -> Array:
        v = as_vector(x, self.dim)
        return np.clip(v, self.lo, self.hi)

    def contains(self, x, tol: float = MEMBERSHIP_TOL) -> bool:
        v = as_vector(x, self.dim)
        return bool(np.all(v >= self.lo - tol) and np.all(v <= self.hi + tol))

    def sample_many(self, n: int, rng: np.random.Generator) -> Array:
        return rng.uniform(self.lo, self.hi, size=(n, self.dim))

    def project_many(self, points: Array) -> Array:
        return np.clip(np.asarray(points, dtype=float), self.lo, self.hi)

    def describe(self) -> str:
        return f"box(lo={self.lo.tolist()}, hi={self.hi.tolist()})"


class Polygon(ConvexBody):
    """Convex polygon in the plane, vertices in counterclockwise order.

    Projection checks interior membership with the edge cross-product sign
    test, and otherwise takes the nearest point among the projections onto
    each edge segment: exact and O(#vertices), no iterative solver.
    """

    def __init__(self, vertices):
        verts = np.asarray(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2 or verts.shape[0] < 3:
            raise ValueError("polygon needs at least 3 vertices in the plane")
        if not np.all(np.isfinite(verts)):
            raise ValueError("polygon vertices must be finite")
        crosses = _turn_crosses(verts)
        if np.all(crosses < 0):
            raise ValueError("vertices are clockwise; supply them counterclockwise")
        if np.any(crosses <= 0):
            raise ValueError("vertex list does not describe a convex polygon")
        self.vertices = verts
        self.dim = 2
        self.radius_bound = float(np.max(np.linalg.norm(verts, axis=1)))
        self._edges = np.roll(verts, -1, axis=0) - verts

    def contains(self, x, tol: float = MEMBERSHIP_TOL) -> bool:
        v = as_vector(x, 2)
        rel = v - self.vertices
        cross = self._edges[:, 0] * rel[:, 1] - self._edges[:, 1] * rel[:, 0]
        # cross / |edge| is the signed distance to each edge line.
        lengths = np.linalg.norm(self._edges, axis=1)
        return bool(np.all(cross >= -tol * lengths))

    def project(self, x) -> Array:
        v = as_vector(x, 2)
        if self.contains(v):
            return v.copy()
        best = None
        best_dist = math.inf
        for a, e in zip(self.vertices, self._edges):
            t = float(np.dot(v - a, e) / np.dot(e, e))
            candidate = a + min(max(t, 0.0), 1.0) * e
            dist = float(np.linalg.norm(v - candidate))
            if dist < best_dist:
                best, best_dist = candidate, dist
        return best

    def sample_many(self, n: int, rng: np.random.Generator) -> Array:
        # Fan triangulation from vertex 0, area-weighted triangle choice,
        # then uniform barycentric sampling inside the chosen triangle.
        v0 = self.vertices[0]
        b = self.vertices[1:-1] - v0
        c = self.vertices[2:] - v0
        areas = 0.5 * np.abs(b[:, 0] * c[:, 1] - b[:, 1] * c[:, 0])
        idx = rng.choice(areas.size, size=n, p=areas / areas.sum())
        u = rng.uniform(size=(n, 1))
        w = rng.uniform(size=(n, 1))
        flip = (u + w) > 1.0
        u = np.where(flip, 1.0 - u, u)
        w = np.where(flip, 1.0 - w, w)
        return v0 + u * b[idx] + w * c[idx]

    def describe(self) -> str:
        return f"polygon({self.vertices.tolist()})"


class Simplex(ConvexBody):
    """Probability simplex {x >= 0, sum x = 1} in R^dim."""

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError("simplex dimension must be >= 1")
        self.dim = int(dim)
        self.radius_bound = 1.0  # max norm attained at a vertex

    def project(self, x) -> Array:
        # Sorting-based Euclidean projection.
        v = as_vector(x, self.dim)
        u = np.sort(v)[::-1]
        css = np.cumsum(u)
        idx = np.nonzero(u * np.arange(1, self.dim + 1) > css - 1.0)[0][-1]
        theta = (css[idx] - 1.0) / (idx + 1)
        return np.maximum(v - theta, 0.0)

    def contains(self, x, tol: float = MEMBERSHIP_TOL) -> bool:
        v = as_vector(x, self.dim)
        return bool(np.all(v >= -tol) and abs(float(v.sum()) - 1.0) <= tol)

    def sample_many(self, n: int, rng: np.random.Generator) -> Array:
        return rng.dirichlet(np.ones(self.dim), size=n)

    def describe(self) -> str:
        return f"simplex(dim={self.dim})"


def _turn_crosses(verts: Array) -> Array:
    """Cross products of consecutive edges (positive everywhere iff convex CCW)."""
    e = np.roll(verts, -1, axis=0) - verts
    e_next = np.roll(e, -1, axis=0)
    return e[:, 0] * e_next[:, 1] - e[:, 1] * e_next[:, 0]


def regular_polygon(sides: int, center=(0.0, 0.0), circumradius: float = 1.0) -> Polygon:
    """Regular polygon with a vertex straight up from the center."""
    if sides < 3:
        raise ValueError("need at least 3 sides")
    angles = np.pi / 2 + 2.0 * np.pi * np.arange(sides) / sides
    verts = np.stack([np.cos(angles), np.sin(angles)], axis=1) * float(circumradius)
    return Polygon(verts + as_vector(center, 2))


# ---------------------------------------------------------------------------
# Mirror maps
# ---------------------------------------------------------------------------

class MirrorMap:
    """Potential M with gradient / dual-gradient pair and Bregman divergence.

    `update(x, step)` computes grad M*(grad M(x) + step), the dual-space move
    used by mirror-descent updates.  `smoothness` is a constant L with
    ||update(x, -y) - x|| <= L ||y|| on the map's domain.
    """

    smoothness: float
    needs_projection: bool

    def value(self, x) -> float:
        raise NotImplementedError

    def grad(self, x) -> Array:
        raise NotImplementedError

    def grad_dual(self, y) -> Array:
        raise NotImplementedError

    def update(self, x, step, flags: list[str] | None = None) -> Array:
        raise NotImplementedError

    def bregman(self, x, y) -> float:
        raise NotImplementedError

    def initial_point(self, dim: int) -> Array:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


class EuclideanMap(MirrorMap):
    """M(x) = 0.5 ||x||^2: grad and dual grad are both the identity."""

    smoothness = 1.0
    needs_projection = True

    def value(self, x) -> float:
        v = as_vector(x)
        return 0.5 * float(np.dot(v, v))

    def grad(self, x) -> Array:
        return as_vector(x).copy()

    def grad_dual(self, y) -> Array:
        return as_vector(y).copy()

    def update(self, x, step, flags: list[str] | None = None) -> Array:
        v = as_vector(x)
        s = as_vector(step, v.size)
        out = v + s
        if not np.all(np.isfinite(out)):
            out = np.nan_to_num(out, posinf=1e30, neginf=-1e30)
            if flags is not None:
                flags.append("mirror_update_clamped")
        return out

    def bregman(self, x, y) -> float:
        v = as_vector(x)
        w = as_vector(y, v.size)
        d = v - w
        return 0.5 * float(np.dot(d, d))

    def initial_point(self, dim: int) -> Array:
        return np.zeros(dim)

    def describe(self) -> str:
        return "euclidean"


class NegativeEntropyMap(MirrorMap):
    """M(x) = sum x_i log x_i on the probability simplex.

    grad M(x) = 1 + log x and grad M*(y) renormalizes exp(y - 1) onto the
    simplex, so `update` is the exponentiated-gradient move
    x_i * exp(step_i) followed by renormalization.  The Bregman divergence
    between simplex points is the KL divergence sum x_i log(x_i / y_i).
    Coordinates are floored at a tiny positive value before logs; exact
    zeros are therefore tolerated by `update` but rejected by `bregman`,
    where a zero denominator has no finite value.
    """

    smoothness = 1.0  # w.r.t. the Euclidean norm on the simplex
    needs_projection = False

    def value(self, x) -> float:
        v = self._checked(x)
        return float(np.sum(v * np.log(v)))

    def grad(self, x) -> Array:
        v = as_vector(x)
        return 1.0 + np.log(np.maximum(v, ENTROPY_FLOOR))

    def grad_dual(self, y) -> Array:
        z = as_vector(y) - 1.0
        z -= z.max()
        w = np.exp(z)
        return w / w.sum()

    def update(self, x, step, flags: list[str] | None = None) -> Array:
        v = as_vector(x)
        s = as_vector(step, v.size)
        z = np.log(np.maximum(v, ENTROPY_FLOOR)) + s
        z -= z.max()  # shift-invariant after renormalization
        w = np.exp(z)
        total = float(w.sum())
        if not np.isfinite(total) or total <= 0.0:
            w = np.nan_to_num(w, posinf=1e30, neginf=0.0)
            w = np.maximum(w, ENTROPY_FLOOR)
            total = float(w.sum())
            if flags is not None:
                flags.append("mirror_update_clamped")
        return w / total

    def bregman(self, x, y) -> float:
        v = self._checked(x)
        w = self._checked(y, v.size)
        # KL(v || w); mathematically >= 0, floor to absorb rounding.
        return max(float(np.sum(v * np.log(v / w))), 0.0)

    def initial_point(self, dim: int) -> Array:
        return np.full(dim, 1.0 / dim)

    def describe(self) -> str:
        return "negative-entropy"

    @staticmethod
    def _checked(x, dim: int | None = None) -> Array:
        v = as_vector(x, dim)
        if np.any(v <= 0.0) or abs(float(v.sum()) - 1.0) > 1e-9:
            raise ValueError(
                "point outside the negative-entropy domain "
                "(needs strictly positive coordinates summing to 1)"
            )
        return v

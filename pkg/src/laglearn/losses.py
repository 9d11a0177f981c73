"""Distance-anchored convex losses with gradient oracles.

Every loss here scores an estimate x against a hidden anchor u through a
radial profile: value(x) = radial(||x - u||), with radial nondecreasing
and convex.  Shipped profiles:

    norm        radial(r) = r
    quadratic   radial(r) = a r^2 + b          (strongly convex, 2a)
    power       radial(r) = r^m, integer m >= 1
    exp         radial(r) = a exp(r^m / s^2)

`grad` returns the gradient radial'(r) * (x - u) / r.  Profiles with a
kink at the anchor (norm, and power/exp with m = 1) return the zero
vector there, which is a valid subgradient; callers may pass a `flags`
list to be notified when that happens.
"""

from __future__ import annotations

import numpy as np

from .geometry import Array, as_vector

ZERO_SUBGRADIENT_FLAG = "zero_subgradient_at_anchor"


class Loss:
    """Base class: value depends on x only through r = ||x - anchor||."""

    family = "base"
    gamma = 0.0  # strong-convexity modulus; positive only for quadratic

    def __init__(self, anchor):
        self.anchor = as_vector(anchor)

    @property
    def dim(self) -> int:
        return self.anchor.size

    @property
    def offset(self) -> float:
        """Additive constant radial(0); the profile minus it vanishes at 0."""
        return self.radial(0.0)

    def value(self, x) -> float:
        return self.radial(self._dist(x))

    def radial(self, r: float) -> float:
        raise NotImplementedError

    def grad(self, x, flags: list[str] | None = None) -> Array:
        raise NotImplementedError

    def lipschitz_bound(self, radius: float) -> float:
        """Bound on ||grad|| over ||x - anchor|| <= radius."""
        raise NotImplementedError

    def _dist(self, x) -> float:
        v = as_vector(x, self.dim)
        return float(np.linalg.norm(v - self.anchor))

    def _offset_from(self, x) -> tuple[Array, float]:
        v = as_vector(x, self.dim)
        d = v - self.anchor
        return d, float(np.linalg.norm(d))

    def _zero_subgradient(self, flags: list[str] | None) -> Array:
        if flags is not None:
            flags.append(ZERO_SUBGRADIENT_FLAG)
        return np.zeros(self.dim)

    def describe(self) -> str:
        raise NotImplementedError


class NormLoss(Loss):
    """radial(r) = r; unit-length radial gradient away from the anchor."""

    family = "norm"

    def radial(self, r: float) -> float:
        return float(r)

    def grad(self, x, flags: list[str] | None = None) -> Array:
        d, r = self._offset_from(x)
        if r == 0.0:
            return self._zero_subgradient(flags)
        return d / r

    def lipschitz_bound(self, radius: float) -> float:
        return 1.0

    def describe(self) -> str:
        return "norm"


class QuadraticLoss(Loss):
    """radial(r) = a r^2 + b with a > 0, b >= 0; gradient 2a (x - anchor)."""

    family = "quadratic"

    def __init__(self, anchor, a: float, b: float = 0.0):
        super().__init__(anchor)
        if a <= 0:
            raise ValueError("quadratic coefficient a must be positive")
        if b < 0:
            raise ValueError("offset b must be nonnegative")
        self.a = float(a)
        self.b = float(b)
        self.gamma = 2.0 * self.a

    def radial(self, r: float) -> float:
        return self.a * float(r) ** 2 + self.b

    def grad(self, x, flags: list[str] | None = None) -> Array:
        d, _ = self._offset_from(x)
        return 2.0 * self.a * d

    def lipschitz_bound(self, radius: float) -> float:
        return 2.0 * self.a * float(radius)

    def describe(self) -> str:
        return f"quadratic(a={self.a}, b={self.b})"


class PowerLoss(Loss):
    """radial(r) = r^m for integer m >= 1 (m = 1 coincides with the norm loss)."""

    family = "power"

    def __init__(self, anchor, m: int):
        super().__init__(anchor)
        if int(m) != m or m < 1:
            raise ValueError("exponent m must be an integer >= 1")
        self.m = int(m)

    def radial(self, r: float) -> float:
        return float(r) ** self.m

    def grad(self, x, flags: list[str] | None = None) -> Array:
        d, r = self._offset_from(x)
        if r == 0.0:
            if self.m == 1:
                return self._zero_subgradient(flags)
            return np.zeros(self.dim)
        return self.m * r ** (self.m - 2) * d

    def lipschitz_bound(self, radius: float) -> float:
        return self.m * float(radius) ** (self.m - 1)

    def describe(self) -> str:
        return f"power(m={self.m})"


class ExpLoss(Loss):
    """radial(r) = a exp(r^m / s^2); value a (not 0) at the anchor."""

    family = "exp"

    def __init__(self, anchor, a: float, s: float, m: int = 1):
        super().__init__(anchor)
        if a <= 0 or s <= 0:
            raise ValueError("coefficients a and s must be positive")
        if int(m) != m or m < 1:
            raise ValueError("exponent m must be an integer >= 1")
        self.a = float(a)
        self.s = float(s)
        self.m = int(m)

    def radial(self, r: float) -> float:
        return self.a * float(np.exp(float(r) ** self.m / self.s**2))

    def _slope(self, r):
        # d radial / d r, nondecreasing in r for m >= 1.
        r = np.asarray(r, dtype=float)
        return self.a * self.m * r ** (self.m - 1) * np.exp(r**self.m / self.s**2) / self.s**2

    def grad(self, x, flags: list[str] | None = None) -> Array:
        d, r = self._offset_from(x)
        if r == 0.0:
            if self.m == 1:
                return self._zero_subgradient(flags)
            return np.zeros(self.dim)
        factor = self.a * self.m * r ** (self.m - 2) * np.exp(r**self.m / self.s**2) / self.s**2
        return factor * d

    def lipschitz_bound(self, radius: float) -> float:
        # One numeric path for every m: maximize the radial slope on a grid.
        grid = np.linspace(float(radius) / 4096, float(radius), 4096)
        return float(np.max(self._slope(grid)))

    def describe(self) -> str:
        return f"exp(a={self.a}, s={self.s}, m={self.m})"

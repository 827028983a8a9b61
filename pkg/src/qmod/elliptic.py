"""Closed-form reference values built on the complete elliptic integral K.

Everything here is a pure function of its arguments: K via the
arithmetic-geometric mean, the decreasing bijection mu(r) = (pi/2) K(r')/K(r)
and its inverse, and the trapezoid modulus

    M(h) = K(r)/K(r'),  r = ((t1-t2)/(t1+t2))^2,
    t1 = mu_inv(pi/(2c)),  t2 = mu_inv(pi c / 2),  c = 2h - 1,

valid for h > 1, which is the modulus of the quadrilateral
(1 + h i, (h-1) i, 0, 1). These serve as the independent cross-check for the
finite element path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_LOG2_OVER_PI = math.log(2.0) / math.pi

# mu maps (0,1) onto (0,inf); the bisection bracket below covers
# mu values up to about 29, i.e. trapezoid heights up to h ~ 9.
_R_FLOOR = 1e-12


@dataclass(frozen=True)
class EllipticParams:
    """Modulus / complementary-modulus pair with r^2 + r'^2 = 1."""

    r: float
    r_prime: float

    def __post_init__(self):
        if not (0.0 < self.r < 1.0 and 0.0 < self.r_prime < 1.0):
            raise ValueError(f"moduli must lie in (0,1), got r={self.r}, r'={self.r_prime}")
        if abs(self.r * self.r + self.r_prime * self.r_prime - 1.0) > 1e-15:
            raise ValueError("r^2 + r'^2 must equal 1")

    @classmethod
    def from_modulus(cls, r: float) -> "EllipticParams":
        return cls(r, complementary(r))


def complementary(r: float) -> float:
    """sqrt(1 - r^2), written to stay accurate as r -> 1."""
    return math.sqrt((1.0 - r) * (1.0 + r))


def _agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean; quadratic convergence, <= 60 iterations."""
    for _ in range(60):
        if abs(a - b) <= 1e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def ellip_k(r: float) -> float:
    """Complete elliptic integral of the first kind, K(r) = pi / (2 agm(1, r'))."""
    if not 0.0 <= r < 1.0:
        raise ValueError(f"ellip_k requires 0 <= r < 1, got {r}")
    return math.pi / (2.0 * _agm(1.0, complementary(r)))


def mu(r: float) -> float:
    """(pi/2) K(r')/K(r); strictly decreasing bijection of (0,1) onto (0,inf).

    Evaluated as (pi/2) agm(1, r')/agm(1, r), which avoids the rounding of
    r' to exactly 1 when r is at the bottom of the bisection bracket.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"mu requires 0 < r < 1, got {r}")
    return 0.5 * math.pi * _agm(1.0, complementary(r)) / _agm(1.0, r)


def _mu_derivative(r: float) -> float:
    """d mu / d r = -pi^2 / (4 r (1-r^2) K(r)^2)."""
    k = ellip_k(r)
    return -math.pi * math.pi / (4.0 * r * (1.0 - r * r) * k * k)


def mu_inv(y: float) -> float:
    """The unique r in (0,1) with mu(r) = y.

    Monotone bisection on [1e-12, 1 - 1e-12] down to a tight bracket, then a
    few Newton steps with the closed-form derivative of mu.
    """
    if not y > 0.0:
        raise ValueError(f"mu_inv requires y > 0, got {y}")
    lo, hi = _R_FLOOR, 1.0 - _R_FLOOR
    if mu(lo) <= y:
        return lo
    if mu(hi) >= y:
        return hi
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if mu(mid) > y:  # mu decreasing: root is to the right
            lo = mid
        else:
            hi = mid
    r = 0.5 * (lo + hi)
    for _ in range(4):
        step = (mu(r) - y) / _mu_derivative(r)
        r_new = r - step
        if not lo <= r_new <= hi:
            break
        r = r_new
        if abs(step) <= 1e-15:
            break
    return r


def bowman_modulus(h: float) -> float:
    """Modulus of the trapezoid (1 + h i, (h-1) i, 0, 1) for h > 1."""
    if not h > 1.0:
        raise ValueError(f"bowman_modulus requires h > 1, got {h}")
    c = 2.0 * h - 1.0
    t1 = mu_inv(math.pi / (2.0 * c))
    t2 = mu_inv(math.pi * c / 2.0)
    r = ((t1 - t2) / (t1 + t2)) ** 2
    return ellip_k(r) / ellip_k(complementary(r))


def asymptotic_modulus(h: float) -> float:
    """Large-h approximation h - 1/2 - log(2)/pi of the trapezoid modulus.

    The remainder decays like e^(-pi h); useful from h around 1.5 upward.
    """
    return h - 0.5 - _LOG2_OVER_PI

"""Exponential integral, logarithmic integral of complex powers, and gamma.

Branch conventions: ``ei`` is the principal branch
Ei(z) = gamma + log z + sum z^k/(k k!), with the cut on the negative real
axis where the value is taken as the real average of the two sides (so Ei is
real on the whole real line).  Li(x^w) is always Ei(w log x) with the real
logarithm of x > 0; no other branch choice enters.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import scipy.special

from .errors import DomainError, PoleError

EULER_GAMMA = 0.57721566490153286061
SERIES_RADIUS = 40.0
_SMALL = 2.0


@dataclass(frozen=True)
class ComplexPoint:
    sigma: float
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and math.isfinite(self.t)):
            raise ValueError("ComplexPoint components must be finite")

    @classmethod
    def of(cls, s) -> "ComplexPoint":
        s = complex(s)
        return cls(s.real, s.imag)

    def __complex__(self) -> complex:
        return complex(self.sigma, self.t)


def _log_branch(z: complex) -> complex:
    """Principal log, real on the negative axis (average of both sides)."""
    if z.imag == 0.0 and z.real < 0:
        return complex(math.log(-z.real), 0.0)
    return cmath.log(z)


def _ei_series(z: complex) -> complex:
    total = 0j
    term = 1 + 0j
    k = 1
    while True:
        term *= z / k
        add = term / k
        total += add
        if abs(add) <= 1e-17 * abs(total) or k > 400:
            break
        k += 1
    return EULER_GAMMA + _log_branch(z) + total


def _e1_continued_fraction(w: complex) -> complex:
    """E1(w) for Re w > 0 or |Im w| large (modified Lentz)."""
    tiny = 1e-300
    b = w + 1
    c = 1 / tiny
    d = 1 / b
    h = d
    for i in range(1, 2000):
        an = -i * i
        b += 2
        d = 1 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1) < 1e-16:
            break
    return h * cmath.exp(-w)


def _cut_jump(z: complex) -> complex:
    """log z - log(-z) on our branch: +-i pi off the axis, 0 on it."""
    if z.imag > 0:
        return 1j * math.pi
    if z.imag < 0:
        return -1j * math.pi
    return 0j


def _ei_asymptotic(z: complex) -> complex:
    """e^z/z * sum k!/z^k, truncated at the smallest term, plus the branch constant."""
    term = 1 + 0j
    total = 1 + 0j
    prev = abs(term)
    for k in range(1, 200):
        term *= k / z
        mag = abs(term)
        if mag > prev:
            break
        total += term
        if mag < 1e-17:
            break
        prev = mag
    base = cmath.exp(z) / z * total
    if z.imag == 0.0:
        return complex(base.real, 0.0)
    # Ei = -E1(-z) + (log z - log(-z)); the asymptotic sum above is -E1(-z)
    return base + _cut_jump(z)


def _ei_inner(z: complex) -> complex:
    """Ei for |z| <= SERIES_RADIUS: series where well conditioned, else E1 fraction."""
    r = abs(z)
    # cancellation in the series costs roughly e^(|z| - Re z) * |z|
    if r <= _SMALL or (r - z.real) + math.log(r) < 9.0:
        return _ei_series(z)
    e1 = _e1_continued_fraction(-z)
    return -e1 + _cut_jump(z)


def ei(z) -> complex:
    """Principal-branch exponential integral Ei(z)."""
    z = complex(z)
    if z == 0:
        raise DomainError("Ei has a logarithmic singularity at 0")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("Ei of a non-finite argument")
    if abs(z) <= SERIES_RADIUS:
        return _ei_inner(z)
    return _ei_asymptotic(z)


def li_power(x: float, w) -> complex:
    """Li(x^w) := Ei(w log x) for real x > 0."""
    if x <= 0:
        raise DomainError("Li(x^w) needs x > 0")
    w = complex(w)
    if x == 1 or w == 0:
        raise DomainError("Li(1) diverges")
    return ei(w * math.log(x))


def li_gamma_residual(h: float) -> float:
    """(Li(1 + h) - log|h|) - gamma, computed from the entire part of Ei."""
    if h == 0:
        raise DomainError("h must be non-zero")
    if not abs(h) < 0.5:
        raise DomainError("|h| must be < 0.5")
    u = math.log1p(h)
    # Ei(u) - gamma - log|h| = log|u/h| + sum u^k/(k k!)
    series = 0.0
    term = 1.0
    for k in range(1, 60):
        term *= u / k
        series += term / k
        if abs(term) < 1e-18:
            break
    return math.log(abs(u) / abs(h)) + series


def gamma(z) -> complex:
    """Complex gamma function; poles at non-positive integers raise."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise PoleError(f"gamma has a pole at {z.real:g}")
    return complex(scipy.special.gamma(z))


def loggamma(z) -> complex:
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise PoleError(f"gamma has a pole at {z.real:g}")
    return complex(scipy.special.loggamma(z))

"""Dirichlet L-functions via Euler-Maclaurin Hurwitz zeta sums."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .characters import DirichletCharacter, gauss_and_epsilon
from .errors import DomainError, PoleError, UndeterminedOrderError
from .special import ComplexPoint, loggamma

ZERO_THRESHOLD = 1e-6
MAX_ORDER = 6


@lru_cache(maxsize=1)
def _bernoulli_ratios(kmax: int = 40) -> tuple[float, ...]:
    """B_{2k}/(2k)! for k = 1..kmax, from exact rationals."""
    # Akiyama-Tanigawa on exact fractions; small enough to run once
    n = 2 * kmax
    a = [Fraction(0)] * (n + 1)
    bern = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        bern.append(a[0])
    # Akiyama-Tanigawa yields B_1 = +1/2; only even indices are used
    out = []
    fact = 1
    for k in range(1, kmax + 1):
        fact *= (2 * k - 1) * (2 * k)
        out.append(float(bern[2 * k] / fact))
    return tuple(out)


def _expm1(u: complex) -> complex:
    x, y = u.real, u.imag
    re = math.expm1(x) * math.cos(y) - 2.0 * math.sin(y / 2) ** 2
    im = math.exp(x) * math.sin(y)
    return complex(re, im)


def _power_minus_one(y: np.ndarray, s: complex) -> np.ndarray:
    """(y^(1-s) - 1)/(s - 1), continuous through s = 1."""
    out = np.empty(y.shape, dtype=np.complex128)
    for i, yi in enumerate(y):
        ly = math.log(yi)
        u = (1 - s) * ly
        if u == 0:
            out[i] = -ly
        else:
            out[i] = -ly * _expm1(u) / u
    return out


def _em_tail(s: complex, shifts: np.ndarray, regularize: bool) -> tuple[np.ndarray, float]:
    """sum_{n>=0} (n + y)^-s for y = shifts (all >= N), by Euler-Maclaurin.

    With ``regularize`` the 1/(s-1) pole part is removed from every entry.
    Returns values and the magnitude of the last correction term used.
    """
    ls = np.log(shifts)
    ys = np.exp(-s * ls)
    if regularize:
        main = _power_minus_one(shifts, s)
    else:
        if s == 1:
            raise PoleError("Hurwitz zeta has a pole at s = 1")
        main = shifts * ys / (s - 1)
    total = main + ys / 2
    rising = s
    power = ys / shifts
    last = 0.0
    for k, ratio in enumerate(_bernoulli_ratios(), start=1):
        term = ratio * rising * power
        total = total + term
        last = float(np.max(np.abs(term)))
        if last < 1e-18 * float(np.max(np.abs(total))):
            break
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power = power / (shifts * shifts)
    return total, last


def _cutoff(s: complex) -> int:
    return 20 + int(math.ceil(abs(s)))


def hurwitz_zeta(s, a: float) -> complex:
    """zeta(s, a) = sum_{n>=0} (n + a)^-s for 0 < a <= 1, s != 1."""
    s = complex(s)
    if not 0 < a <= 1:
        raise DomainError("Hurwitz zeta needs 0 < a <= 1")
    if s == 1:
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    n = _cutoff(s)
    direct = np.exp(-s * np.log(np.arange(n) + a))
    tail, _ = _em_tail(s, np.array([n + a]), regularize=False)
    return complex(math.fsum(direct.real) + tail[0].real, math.fsum(direct.imag) + tail[0].imag)


@dataclass(frozen=True)
class LValue:
    s: ComplexPoint
    chi: str
    value: complex
    method: str
    est_error: float


def l_value(s, chi: DirichletCharacter) -> LValue:
    """L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q).

    The first N*q terms are summed directly as chi(n) n^-s and the Hurwitz
    tails are added with Euler-Maclaurin; for non-principal chi the pole parts
    of the tails cancel and are dropped, which keeps s = 1 regular.
    """
    s = complex(s)
    q = chi.modulus
    if chi.is_principal and s == 1:
        raise PoleError("L(s, chi0) has a pole at s = 1")
    n_cut = _cutoff(s)
    ns = np.arange(1, n_cut * q + 1)
    vals = chi.values_array()[ns % q]
    keep = vals != 0
    terms = vals[keep] * np.exp(-s * np.log(ns[keep].astype(np.float64)))
    residues = np.array([a for a in range(1, q + 1) if chi.value(a) != 0], dtype=np.float64)
    coeffs = np.array([chi.value(int(a)) for a in residues])
    tails, last = _em_tail(s, n_cut + residues / q, regularize=not chi.is_principal)
    tail = cmath.exp(-s * math.log(q)) * complex(np.sum(coeffs * tails))
    direct = complex(math.fsum(terms.real), math.fsum(terms.imag))
    value = direct + tail
    scale = float(np.sum(np.abs(terms))) + abs(tail)
    err = 4e-16 * scale + abs(cmath.exp(-s * math.log(q))) * last * len(residues)
    return LValue(ComplexPoint.of(s), chi.label, value, "hurwitz", err)


def log_l_value(s, chi: DirichletCharacter) -> complex:
    """A continuous logarithm of L(s, chi).

    For non-principal chi the branch is fixed by continuation along the
    horizontal segment from Re s = max(3, Re s), where the principal log is
    unambiguous.  For principal chi only log|L| is meaningful along the real
    axis (the pole at s = 1 blocks continuation), so that is returned.
    """
    s = complex(s)
    if chi.is_principal:
        return complex(math.log(abs(l_value(s, chi).value)), 0.0)
    start = max(3.0, s.real)
    current = l_value(complex(start, s.imag), chi).value
    logv = cmath.log(current)
    sigma = start
    step = 0.05
    while sigma > s.real:
        nxt = max(s.real, sigma - step)
        val = l_value(complex(nxt, s.imag), chi).value
        if val == 0:
            raise PoleError("L(s, chi) vanishes on the continuation path")
        dphase = cmath.phase(val / current)
        if abs(dphase) > 0.5 and step > 1e-4:
            step /= 2
            continue
        logv = complex(math.log(abs(val)), logv.imag + dphase)
        current, sigma = val, nxt
        if abs(dphase) < 0.1:
            step = min(step * 2, 0.2)
    return logv


@dataclass(frozen=True)
class TaylorData:
    center: complex
    order: int
    coefficients: tuple[complex, ...]
    est_error: float

    @property
    def leading(self) -> complex:
        return self.coefficients[self.order]


def taylor_coefficients(f: Callable[[complex], complex], center, m: int,
                        radius: float = 0.05, nodes: int = 64) -> tuple[list[complex], float]:
    """c_0..c_m of f around ``center`` from the trapezoid rule on a circle.

    The estimate is the largest change when the node count is doubled.
    """
    center = complex(center)

    def coeffs(n: int) -> np.ndarray:
        theta = 2 * np.pi * np.arange(n) / n
        pts = radius * np.exp(1j * theta)
        vals = np.array([f(center + p) for p in pts], dtype=np.complex128)
        return np.array([np.mean(vals * pts ** (-j)) for j in range(m + 1)])

    coarse = coeffs(nodes)
    fine = coeffs(2 * nodes)
    return list(fine), float(np.max(np.abs(fine - coarse)))


def l_derivative(s0, chi: DirichletCharacter, m: int,
                 radius: float = 0.05, nodes: int = 64,
                 threshold: float = ZERO_THRESHOLD) -> TaylorData:
    """Taylor coefficients c_j = L^(j)(s0, chi)/j! for j <= m.

    c_0 is the direct value; higher coefficients come from the contour.
    ``order`` is the index of the first coefficient above ``threshold``
    (``m`` if none is).
    """
    if m > MAX_ORDER:
        raise ValueError(f"m must be <= {MAX_ORDER}")
    s0 = complex(s0)
    direct = l_value(s0, chi)
    if m == 0:
        coeffs, err = [direct.value], direct.est_error
    else:
        coeffs, err = taylor_coefficients(lambda z: l_value(z, chi).value, s0, m, radius, nodes)
        coeffs[0] = direct.value
    order = next((j for j, c in enumerate(coeffs) if abs(c) > threshold), m)
    return TaylorData(s0, order, tuple(coeffs), err)


def vanishing_order(chi: DirichletCharacter, t: float,
                    threshold: float = ZERO_THRESHOLD) -> int:
    """Order of vanishing of L(s, chi) at s = 1/2 + it, judged against ``threshold``."""
    s0 = complex(0.5, t)
    c0 = l_value(s0, chi).value
    if abs(c0) > threshold:
        return 0
    data = l_derivative(s0, chi, MAX_ORDER, threshold=threshold)
    for j, c in enumerate(data.coefficients):
        if abs(c) > threshold:
            return j
    raise UndeterminedOrderError(
        f"all Taylor coefficients of L(s, {chi.label}) at 1/2+{t}i up to order "
        f"{MAX_ORDER} are below {threshold}")


def _require_primitive(chi: DirichletCharacter) -> None:
    if not chi.is_primitive:
        raise DomainError(f"{chi.label} is not primitive (conductor {chi.conductor})")


def completed(s, chi: DirichletCharacter) -> complex:
    """Lambda(s, chi) = (q/pi)^(s/2) Gamma((s + nu)/2) L(s, chi)."""
    _require_primitive(chi)
    s = complex(s)
    q, nu = chi.modulus, chi.parity
    logfac = (s / 2) * math.log(q / math.pi) + loggamma((s + nu) / 2)
    return cmath.exp(logfac) * l_value(s, chi).value


def functional_residual(s, chi: DirichletCharacter) -> float:
    """|Lambda(s, chi) - eps(chi) Lambda(1 - s, conj chi)| relative to |Lambda(s, chi)|."""
    _require_primitive(chi)
    s = complex(s)
    eps = gauss_and_epsilon(chi).epsilon
    left = completed(s, chi)
    right = eps * completed(1 - s, chi.conjugate())
    return abs(left - right) / max(abs(left), 1e-300)

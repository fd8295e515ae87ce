import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from scipy.integrate import quad

from eulerlab.errors import DomainError, PoleError
from eulerlab.special import (EULER_GAMMA, SERIES_RADIUS, ComplexPoint, ei, gamma, li_gamma_residual,
                              li_power, loggamma)

finite = st.floats(-60, 60, allow_nan=False, allow_infinity=False)


def li2_quadrature():
    # principal value of int_0^2 dt/log t, written as a Cauchy-weight integral around t = 1
    f = lambda t: 1.0 if t == 1 else (t - 1) / math.log(t) if t > 0 else 0.0
    val, _ = quad(f, 0, 2, weight="cauchy", wvar=1.0, epsabs=1e-13, epsrel=1e-13)
    return val


LI2 = li2_quadrature()


def test_li2_examples():
    assert LI2 == pytest.approx(1.04516378, abs=1e-8)
    assert ei(math.log(2)) == pytest.approx(LI2, rel=1e-10)
    assert li_power(2, 1) == pytest.approx(LI2, rel=1e-10)
    assert li_power(math.e, 0.5) == ei(0.5)


def test_ei_zero_raises():
    with pytest.raises(DomainError):
        ei(0)


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-6, 700))
def test_ei_real_for_positive_reals(x):
    assert ei(x).imag == 0


@settings(max_examples=300, deadline=None)
@given(finite, finite)
def test_schwarz_reflection(a, b):
    assume(b != 0 and abs(complex(a, b)) > 1e-9)
    z = complex(a, b)
    assert cmath.isclose(ei(z.conjugate()), ei(z).conjugate(), rel_tol=1e-14, abs_tol=1e-300)


def mp_ei(z):
    with mpmath.workdps(30):
        return complex(mpmath.ei(mpmath.mpc(z.real, z.imag)))


@pytest.mark.parametrize("z", [
    0.1, -0.1, 1.0, -1.0, 5.0, -5.0, 20.0, -20.0, 45.0, -45.0, 300.0,
    1j, -1j, 3 + 4j, -3 + 4j, -30 + 1j, -30 - 1j, -8 + 1e-7j, 12 - 35j, -25 + 30j, 39.9 + 1j,
    -39.9 + 1j, 40.1j, -40.1 + 0.5j, 100 + 100j, -100 + 2j, 0.25 + 60j, 1e-8 + 1e-8j,
])
def test_ei_against_mpmath(z):
    assert cmath.isclose(ei(z), mp_ei(complex(z)), rel_tol=1e-10)


def test_ei_random_domain_against_mpmath():
    rng = np.random.default_rng(7)
    zs = rng.uniform(-80, 80, 150) + 1j * rng.uniform(-80, 80, 150)
    worst = max(abs(ei(z) - mp_ei(z)) / abs(mp_ei(z)) for z in zs)
    assert worst < 1e-10


@pytest.mark.parametrize("angle", np.linspace(-math.pi + 0.01, math.pi - 0.01, 25))
def test_crossover_ring_continuity(angle):
    u = cmath.exp(1j * angle)
    inner = ei(SERIES_RADIUS * (1 - 1e-12) * u)
    outer = ei(SERIES_RADIUS * (1 + 1e-12) * u)
    assert abs(inner - outer) <= 1e-8 * abs(outer)


def test_li_power_domain():
    with pytest.raises(DomainError):
        li_power(1, 0.5)
    with pytest.raises(DomainError):
        li_power(-2, 0.5)
    # 0 < x < 1 goes through the same formula
    assert li_power(0.5, 1 + 2j) == ei((1 + 2j) * math.log(0.5))


def test_li_power_leading_asymptotic():
    x, w = math.exp(100), 0.5
    lead = x ** w / (w * math.log(x))
    assert abs(li_power(x, w) / lead - 1) < 0.03
    assert li_power(x, w).real == pytest.approx(lead, rel=0.03)


@pytest.mark.parametrize("x,w", [(1e4, 0.25 + 3j), (1e6, -0.3 - 10j), (50.0, 0.7 + 0.1j)])
def test_li_derivative_identity(x, w):
    d = 1e-5
    fd = (li_power(x, w + d) - li_power(x, w - d)) / (2 * d)
    assert abs(fd - x ** w / w) < 1e-6 * max(1, abs(x ** w / w))


def test_li_gamma_residual():
    assert abs(li_gamma_residual(1e-8)) < 1e-6
    assert abs(li_gamma_residual(-1e-8)) < 1e-6
    r = li_gamma_residual(0.1)
    assert 0 < abs(r) < 0.06
    with mpmath.workdps(30):
        ref = float(mpmath.li(1.1) - mpmath.log(0.1) - mpmath.euler)
    assert r == pytest.approx(ref, abs=1e-13)
    with pytest.raises(DomainError):
        li_gamma_residual(0.0)


def test_euler_gamma_constant():
    assert EULER_GAMMA == float(mpmath.euler)


def test_gamma_examples():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert gamma(5) == pytest.approx(24, rel=1e-15)
    for pole in (0, -1, -7):
        with pytest.raises(PoleError):
            gamma(pole)
        with pytest.raises(PoleError):
            loggamma(pole)


def test_gamma_recurrence():
    rng = np.random.default_rng(3)
    for _ in range(100):
        z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
        assert cmath.isclose(gamma(z + 1), z * gamma(z), rel_tol=1e-11)


def test_loggamma_matches_gamma():
    for z in (0.3 + 2j, 7 - 5j, 0.25 + 10j):
        assert cmath.isclose(cmath.exp(loggamma(z)), gamma(z), rel_tol=1e-13)


def test_complex_point():
    p = ComplexPoint.of(0.5 + 14j)
    assert (p.sigma, p.t) == (0.5, 14.0)
    assert complex(p) == 0.5 + 14j
    with pytest.raises(ValueError):
        ComplexPoint(float("nan"), 0)

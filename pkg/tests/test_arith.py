import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eulerlab.arith import (arith_tables, bv_sum, chebyshev_ap, chebyshev_ap_grid, coprime_residues,
                            divisor_sigma, euler_phi, factorint, liouville_sum, mertens,
                            mertens_twisted, psi_twisted, summatory, theta)
from eulerlab.characters import characters_mod, principal
from eulerlab.sieve import sieve

TABLE = arith_tables(20_000)


def test_moebius_first_ten():
    assert TABLE.moebius[1:11].tolist() == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_mangoldt_and_liouville_examples():
    assert TABLE.mangoldt[8] == math.log(2)
    assert TABLE.mangoldt[12] == 0
    assert TABLE.liouville[12] == -1


def test_tables_read_only():
    with pytest.raises(ValueError):
        TABLE.moebius[3] = 5


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 20_000))
def test_table_definitions(n):
    f = factorint(n)
    big = sum(f.values())
    assert TABLE.omega_small[n] == len(f)
    assert TABLE.omega_big[n] == big
    assert TABLE.liouville[n] == (-1) ** big
    squarefree = all(e == 1 for e in f.values())
    assert (TABLE.moebius[n] == 0) == (not squarefree)
    if squarefree:
        assert TABLE.moebius[n] == (-1) ** len(f)
    if len(f) == 1:
        assert TABLE.mangoldt[n] == math.log(next(iter(f)))
    else:
        assert TABLE.mangoldt[n] == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 140), st.integers(1, 140))
def test_liouville_completely_multiplicative(m, n):
    assert TABLE.liouville[m * n] == TABLE.liouville[m] * TABLE.liouville[n]


def test_chebyshev_examples():
    s = chebyshev_ap(10, 4)
    assert s.theta[1] == pytest.approx(math.log(5), abs=1e-15)
    assert s.theta[3] == pytest.approx(math.log(21), abs=1e-14)
    assert s.remainder[1] == pytest.approx(5 - math.log(5), abs=1e-14)
    assert s.remainder[1] == pytest.approx(3.3906, abs=1e-4)
    assert chebyshev_ap(2, 3).theta[2] == math.log(2)


def test_remainder_is_definition():
    s = chebyshev_ap(10_007, 12)
    for a in s.residues:
        assert s.remainder[a] == 10_007 / 4 - s.theta[a]


def test_large_modulus_empty_classes():
    s = chebyshev_ap(5, 11)
    assert s.theta[1] == 0.0 and s.pi[1] == 0
    assert s.theta[5] == math.log(5)


def naive_prime_power_part(x, q, a):
    total = 0.0
    for p in sieve(math.isqrt(x)).primes.tolist():
        pk = p * p
        while pk <= x:
            if pk % q == a:
                total += math.log(p)
            pk *= p
    return total


@pytest.mark.parametrize("q", [1, 3, 4, 7, 12])
def test_summary_invariants(q):
    x = 5000
    s = chebyshev_ap(x, q)
    pi_all = sieve(x).primes.size
    assert sum(s.pi.values()) + s.excluded_primes == pi_all
    for a in s.residues:
        assert s.theta[a] <= s.psi[a]
        assert s.psi[a] - s.theta[a] == pytest.approx(naive_prime_power_part(x, q, a), abs=1e-10)


def test_grid_matches_single_calls():
    xs = [100, 1000, 10_000]
    for got, x in zip(chebyshev_ap_grid(xs, 5), xs):
        ref = chebyshev_ap(x, 5)
        assert got.theta == ref.theta and got.psi == ref.psi and got.pi == ref.pi


def test_psi_twisted_examples(chi4):
    assert psi_twisted(10, chi4) == pytest.approx(math.log(5 / 7), abs=1e-14)
    assert psi_twisted(1, chi4) == 0
    one = principal(1)
    assert psi_twisted(1000, one).real == pytest.approx(chebyshev_ap(1000, 1).psi[0], abs=1e-10)


@pytest.mark.parametrize("q", range(1, 21))
def test_psi_recombination(q):
    x = 10_000
    s = chebyshev_ap(x, q)
    chars = characters_mod(q)
    twisted = [psi_twisted(x, chi) for chi in chars]
    for a in s.residues:
        back = sum(chi.value(a).conjugate() * tw for chi, tw in zip(chars, twisted)) / euler_phi(q)
        assert abs(s.psi[a] - back) < 1e-9


def test_summatory_examples():
    assert mertens(10) == -1
    assert liouville_sum(10) == 0
    assert mertens(1) == 1
    assert summatory(10, "mertens") == -1
    assert summatory(10, "liouville") == 0
    assert isinstance(mertens(10**5), int)


def test_mertens_twisted_principal_is_mertens():
    assert mertens_twisted(1000, principal(1)) == mertens(1000)


def test_mertens_twisted_direct(chi4):
    direct = sum(chi4.value(n) * int(TABLE.moebius[n]) for n in range(1, 501))
    assert mertens_twisted(500, chi4) == pytest.approx(direct, abs=1e-12)


def brute_bv(x, Q, step=1e-3):
    # |E(y; q, a)| on a fine real grid plus the left limits at each prime
    primes = sieve(x).primes.tolist()
    total = 0.0
    for q in range(1, Q + 1):
        phi = euler_phi(q)
        best = 0.0
        for a in coprime_residues(q):
            ps = [p for p in primes if p % q == a % q]
            ys = np.arange(2.0, x + step / 2, step)
            th = np.array([sum(math.log(p) for p in ps if p <= y) for y in ys])
            best = max(best, np.abs(ys / phi - th).max())
            for p in ps:
                before = sum(math.log(r) for r in ps if r < p)
                best = max(best, abs(p / phi - before))
        total += best
    return total


def test_bv_sum_small_brute_force():
    assert bv_sum(10, 1) == pytest.approx(10 - theta(10), abs=1e-12)
    assert bv_sum(10, 1) == pytest.approx(brute_bv(10, 1), abs=1e-9)
    assert bv_sum(30, 4) == pytest.approx(brute_bv(30, 4, step=0.01), abs=1e-9)


def test_bv_sum_monotone_in_Q():
    vals = [bv_sum(10_000, Q) for Q in range(1, 12)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_divisor_sigma():
    assert divisor_sigma(6, 1) == pytest.approx(2)
    assert divisor_sigma(1, 0.37 + 2j) == 1
    assert divisor_sigma(12, 0) == 6
    s = 0.3 - 1.1j
    assert divisor_sigma(360, s) == pytest.approx(sum(d ** -s for d in range(1, 361) if 360 % d == 0))


def test_euler_phi_and_residues():
    assert [euler_phi(q) for q in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert coprime_residues(1) == [0]
    assert coprime_residues(8) == [1, 3, 5, 7]

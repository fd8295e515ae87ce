"""Arithmetic functions, Chebyshev functions in progressions and summatory functions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .sieve import DEFAULT_SEGMENT, ExactLogSum, cached_primes, iter_prime_segments, small_primes


def factorint(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (n is small everywhere we use it)."""
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(q: int) -> int:
    result = q
    for p in factorint(q):
        result -= result // p
    return result


def coprime_residues(q: int) -> list[int]:
    if q == 1:
        return [0]
    return [a for a in range(1, q) if math.gcd(a, q) == 1]


@dataclass(frozen=True)
class ArithTables:
    """Tables of Lambda, mu, lambda, omega and Omega indexed by n = 0..limit (entry 0 unused)."""

    limit: int
    mangoldt: np.ndarray
    moebius: np.ndarray
    liouville: np.ndarray
    omega_small: np.ndarray
    omega_big: np.ndarray


@lru_cache(maxsize=4)
def arith_tables(x: int) -> ArithTables:
    x = int(x)
    if x < 1:
        raise ValueError("x must be >= 1")
    mu = np.ones(x + 1, dtype=np.int8)
    omega = np.zeros(x + 1, dtype=np.int8)
    big_omega = np.zeros(x + 1, dtype=np.int8)
    mangoldt = np.zeros(x + 1, dtype=np.float64)
    for p in small_primes(x).tolist():
        omega[p::p] += 1
        mu[p::p] *= -1
        if p * p <= x:
            mu[p * p :: p * p] = 0
        logp = math.log(p)
        pk = p
        while pk <= x:
            big_omega[pk::pk] += 1
            mangoldt[pk] = logp
            pk *= p
    mu[0] = 0
    liouville = (1 - 2 * (big_omega & 1)).astype(np.int8)
    liouville[0] = 0
    for arr in (mu, omega, big_omega, mangoldt, liouville):
        arr.setflags(write=False)
    return ArithTables(x, mangoldt, mu, liouville, omega, big_omega)


@dataclass(frozen=True)
class PrimeSummary:
    """theta, psi, pi and E = x/phi(q) - theta on each residue class a coprime to q."""

    x: float
    q: int
    theta: dict[int, float]
    psi: dict[int, float]
    pi: dict[int, int]
    remainder: dict[int, float]
    # primes dividing q that are <= x; they sit in no coprime class
    excluded_primes: int = 0

    @property
    def residues(self) -> list[int]:
        return list(self.theta)

    @property
    def phi(self) -> int:
        return len(self.theta)

    def max_abs_remainder(self) -> float:
        return max(abs(e) for e in self.remainder.values())


def _prime_power_logs(x: float) -> tuple[np.ndarray, np.ndarray]:
    """(n, log p) for prime powers n = p^k <= x with k >= 2."""
    ns, logs = [], []
    for p in small_primes(math.isqrt(int(x))).tolist():
        lp = math.log(p)
        pk = p * p
        while pk <= x:
            ns.append(pk)
            logs.append(lp)
            pk *= p
    return np.array(ns, dtype=np.int64), np.array(logs, dtype=np.float64)


def chebyshev_ap_grid(xs: Sequence[float], q: int,
                      segment_size: int = DEFAULT_SEGMENT) -> list[PrimeSummary]:
    """Prime summaries at every x in an ascending grid, from a single sieve pass."""
    xs = [float(x) for x in xs]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("grid must be strictly ascending")
    if q < 1:
        raise ValueError("q must be >= 1")
    if not xs:
        return []
    residues = coprime_residues(q)
    phi = len(residues)
    acc = {a: ExactLogSum() for a in residues}
    counts = {a: 0 for a in residues}
    excluded = 0
    out: list[PrimeSummary] = []
    pp_n, pp_log = _prime_power_logs(xs[-1])
    pp_res = pp_n % q

    def snapshot(x: float) -> PrimeSummary:
        theta = {a: acc[a].value() for a in residues}
        psi = {}
        upto = pp_n <= x
        for a in residues:
            extra = pp_log[upto & (pp_res == a)]
            if extra.size:
                s = ExactLogSum()
                s.units = acc[a].units
                s.add(extra)
                psi[a] = s.value()
            else:
                psi[a] = theta[a]
        rem = {a: x / phi - theta[a] for a in residues}
        return PrimeSummary(x, q, theta, psi, dict(counts), rem, excluded)

    k = 0
    for seg in iter_prime_segments(int(math.floor(xs[-1])), segment_size):
        while k < len(xs):
            cut = int(np.searchsorted(seg, xs[k], side="right"))
            piece, rest = seg[:cut], seg[cut:]
            excluded += _accumulate(piece, q, acc, counts)
            if rest.size == 0 and seg[-1] <= xs[k]:
                seg = rest
                break
            out.append(snapshot(xs[k]))
            k += 1
            seg = rest
        else:
            break
    while k < len(xs):
        out.append(snapshot(xs[k]))
        k += 1
    return out


def _accumulate(primes: np.ndarray, q: int, acc, counts) -> int:
    if primes.size == 0:
        return 0
    res = primes % q if q > 1 else np.zeros_like(primes)
    logs = np.log(primes.astype(np.float64))
    seen = 0
    for a in acc:
        mask = res == a
        n = int(mask.sum())
        if n:
            acc[a].add(logs[mask])
            counts[a] += n
            seen += n
    return primes.size - seen


def chebyshev_ap(x: float, q: int) -> PrimeSummary:
    if x < 2:
        raise ValueError("x must be >= 2")
    return chebyshev_ap_grid([x], q)[0]


def theta(x: float) -> float:
    return chebyshev_ap(x, 1).theta[0]


def psi_twisted(x: float, chi) -> complex:
    """Sum over n <= x of chi(n) Lambda(n)."""
    if x < 2:
        return 0j
    summary = chebyshev_ap(x, chi.modulus)
    return complex(sum(chi.value(a) * summary.psi[a] for a in summary.residues))


def mertens(x: float) -> int:
    return int(arith_tables(int(x)).moebius[1:].sum(dtype=np.int64))


def liouville_sum(x: float) -> int:
    return int(arith_tables(int(x)).liouville[1:].sum(dtype=np.int64))


def mertens_twisted(x: float, chi) -> complex:
    n = int(x)
    mu = arith_tables(n).moebius[1:].astype(np.float64)
    values = chi.values_array()[np.arange(1, n + 1) % chi.modulus]
    return complex(np.sum(mu * values))


def summatory(x: float, kind: str, chi=None):
    """M(x), L(x) or M(x, chi) selected by ``kind``."""
    if x < 1:
        raise ValueError("x must be >= 1")
    if kind == "mertens":
        return mertens(x)
    if kind == "liouville":
        return liouville_sum(x)
    if kind == "mertens_twisted":
        if chi is None:
            raise ValueError("mertens_twisted needs a character")
        return mertens_twisted(x, chi)
    raise ValueError(f"unknown summatory kind {kind!r}")


def bv_sum(x: float, Q: int) -> float:
    """Sum over q <= Q of max over y <= x and (a, q) = 1 of |E(y; q, a)|.

    Between consecutive primes of a class, E(y; q, a) grows linearly in y and
    it drops by log p at each prime p of the class, so |E| on [2, x] attains
    its supremum at a one-sided limit at a prime of the class or at y = x.
    Only those points are evaluated.
    """
    if Q < 1 or x < 2:
        raise ValueError("need Q >= 1 and x >= 2")
    primes = cached_primes(x)
    logs = np.log(primes.astype(np.float64))
    total = 0.0
    for q in range(1, Q + 1):
        phi = euler_phi(q)
        res = primes % q if q > 1 else np.zeros_like(primes)
        best = 0.0
        for a in coprime_residues(q):
            mask = res == a
            p = primes[mask].astype(np.float64)
            if p.size == 0:
                best = max(best, x / phi)
                continue
            after = np.cumsum(logs[mask])
            before = after - logs[mask]
            e_before = np.abs(p / phi - before).max()
            e_after = np.abs(p / phi - after).max()
            e_end = abs(x / phi - after[-1])
            best = max(best, e_before, e_after, e_end)
        total += best
    return total


def divisor_sigma(n: int, s) -> complex | float:
    """sigma_{-s}(n) = sum over d | n of d^{-s}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    result = 1.0
    for p, e in factorint(n).items():
        result *= sum(p ** (-j * s) for j in range(e + 1))
    return result

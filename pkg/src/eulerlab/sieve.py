"""Segmented sieve of Eratosthenes and exact log-sum accumulation."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ResourceError

DEFAULT_SEGMENT = 1 << 20
# Budget for materialised prime arrays; segmented consumers never hit it.
DEFAULT_MEMORY_BUDGET = 1 << 30


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)

    def upto(self, x: float) -> np.ndarray:
        return self.primes[: np.searchsorted(self.primes, x, side="right")]


def small_primes(n: int) -> np.ndarray:
    """Plain (unsegmented) sieve, used for base primes up to sqrt(x)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


def iter_prime_segments(x: int, segment_size: int = DEFAULT_SEGMENT) -> Iterator[np.ndarray]:
    """Yield ascending arrays of the primes <= x, one sieve segment at a time.

    Memory use is O(segment_size + sqrt(x)).
    """
    x = int(x)
    if x < 2:
        return
    if segment_size < 2:
        raise ValueError("segment_size must be at least 2")
    base = small_primes(math.isqrt(x))
    odd_base = base[1:]
    yield np.array([2], dtype=np.int64)
    low = 3
    span = 2 * segment_size
    while low <= x:
        high = min(low + span, x + 1)
        # flags[i] <-> low + 2i
        flags = np.ones((high - low + 1) // 2, dtype=bool)
        for p in odd_base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, (low + p - 1) // p * p)
            if start % 2 == 0:
                start += p
            flags[(start - low) // 2 :: p] = False
        seg = low + 2 * np.flatnonzero(flags).astype(np.int64)
        if seg.size:
            yield seg
        low = high if high % 2 == 1 else high + 1


def estimated_bytes(x: int) -> int:
    if x < 17:
        return 64
    return int(1.26 * x / math.log(x)) * 8


def sieve(x: int, segment_size: int = DEFAULT_SEGMENT,
          memory_budget: int = DEFAULT_MEMORY_BUDGET) -> PrimeTable:
    """All primes <= x as a materialised table."""
    if x < 0:
        raise ValueError("x must be non-negative")
    if estimated_bytes(x) > memory_budget:
        raise ResourceError(
            f"materialising primes <= {x} needs ~{estimated_bytes(x)} bytes "
            f"(budget {memory_budget}); use iter_prime_segments instead")
    parts = list(iter_prime_segments(x, segment_size))
    primes = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    return PrimeTable(int(x), primes)


_PRIME_CACHE: dict[str, PrimeTable] = {}


def cached_primes(x: float) -> np.ndarray:
    """Primes <= x from a process-wide growing cache (read-only view)."""
    x = int(math.floor(x))
    table = _PRIME_CACHE.get("t")
    if table is None or table.limit < x:
        table = sieve(max(x, 2 * (table.limit if table else 0), 1 << 16))
        table.primes.setflags(write=False)
        _PRIME_CACHE["t"] = table
    return table.upto(x)


class ExactLogSum:
    """Order-independent exact sum of doubles in [0.5, 32).

    Each value is an integer multiple of 2**-53, so sums are kept as Python
    ints in that unit; the result is the correctly rounded double of the
    exact total, independent of summation order or segmentation.
    """

    SCALE = 53

    def __init__(self) -> None:
        self.units = 0

    def add(self, values: np.ndarray) -> None:
        if values.size == 0:
            return
        v = np.asarray(values, dtype=np.float64)
        if v.min() < 0.5 or v.max() >= 32.0:
            raise ValueError("ExactLogSum accepts values in [0.5, 32)")
        ints = np.ldexp(v, self.SCALE).astype(np.int64)
        hi = ints >> 26
        lo = ints & ((1 << 26) - 1)
        # chunked so the int64 partial sums cannot overflow
        for k in range(0, ints.size, 1 << 20):
            self.units += (int(hi[k:k + (1 << 20)].sum()) << 26) + int(lo[k:k + (1 << 20)].sum())

    def value(self) -> float:
        return self.units / (1 << self.SCALE)

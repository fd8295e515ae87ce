"""Dirichlet characters with exact root-of-unity values.

A character mod q is stored as an exponent vector over a fixed set of
generators of (Z/q)^x, one cyclic factor per CRT component (two for 2^e with
e >= 3: the classes of -1 and 5).  Values are rotations ``r`` modulo the group
exponent ``e``, meaning chi(n) = exp(2 pi i r / e); complex numbers appear only
at evaluation time.

Labels are ``"q.index"`` where index is the position of the exponent vector in
``itertools.product`` order over the components sorted by prime, so the
principal character is always ``q.0``.  For q = 4, ``4.1`` is the non-principal
character; for q = 5, ``5.k`` has chi(2) = i**k.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .arith import factorint

TWO_PI = 2.0 * math.pi


def rotation_to_complex(num: int, den: int) -> complex:
    """exp(2 pi i num/den), exact at multiples of a quarter turn."""
    num %= den
    if (4 * num) % den == 0:
        return (1, 1j, -1, -1j)[4 * num // den]
    # reduce to (-1/2, 1/2] before the trig call
    if 2 * num > den:
        num -= den
    angle = TWO_PI * num / den
    return complex(math.cos(angle), math.sin(angle))


@dataclass(frozen=True)
class _Component:
    modulus: int     # prime power, or 2**e split into two cyclic factors
    generator: int   # generator mod ``modulus`` lifted to Z/q via CRT
    order: int       # cyclic order of the generator


@dataclass(frozen=True)
class _Group:
    q: int
    components: tuple[_Component, ...]
    exponent: int
    # logs[n] = tuple of discrete logs of n mod q, or None if gcd(n, q) > 1
    logs: tuple


def _primitive_root(p: int) -> int:
    phi = p - 1
    fs = list(factorint(phi)) if phi > 1 else []
    for g in range(2, p + 1):
        if all(pow(g, phi // f, p) != 1 for f in fs):
            return g
    return 1


def _crt_lift(residue: int, modulus: int, q: int) -> int:
    """Integer congruent to residue mod ``modulus`` and to 1 mod q/modulus."""
    other = q // modulus
    if other == 1:
        return residue % q
    # x = residue + modulus * t with x = 1 mod other
    t = ((1 - residue) * pow(modulus, -1, other)) % other
    return (residue + modulus * t) % q


@lru_cache(maxsize=256)
def _unit_group(q: int) -> _Group:
    comps: list[_Component] = []
    local_logs: list[dict[int, int]] = []
    local_mods: list[int] = []
    for p, e in sorted(factorint(q).items()) if q > 1 else []:
        pe = p ** e
        if p == 2:
            if e == 1:
                continue
            # -1 generates a factor of order 2
            gens = [(pe - 1, 2)]
            if e >= 3:
                gens.append((5, pe // 4))
            # discrete logs on (Z/2^e)^x: n = (-1)^a 5^b
            table: dict[int, tuple[int, ...]] = {}
            for a in range(2):
                for b in range(gens[1][1] if e >= 3 else 1):
                    n = (pow(-1, a, pe) * pow(5, b, pe)) % pe
                    table[n] = (a, b) if e >= 3 else (a,)
            for i, (g, order) in enumerate(gens):
                comps.append(_Component(pe, _crt_lift(g, pe, q), order))
                local_logs.append({n: v[i] for n, v in table.items()})
                local_mods.append(pe)
        else:
            g = _primitive_root(p)
            # lift to a primitive root mod p^e if needed
            if e > 1 and pow(g, p - 1, p * p) == 1:
                g += p
            order = pe - pe // p
            table = {}
            n = 1
            for k in range(order):
                table[n] = k
                n = n * g % pe
            comps.append(_Component(pe, _crt_lift(g, pe, q), order))
            local_logs.append(table)
            local_mods.append(pe)
    exponent = math.lcm(*(c.order for c in comps)) if comps else 1
    logs = []
    for n in range(q):
        if math.gcd(n, q) != 1:
            logs.append(None)
            continue
        logs.append(tuple(tab[n % m] for tab, m in zip(local_logs, local_mods)))
    if q == 1:
        logs = [()]
    return _Group(q, tuple(comps), exponent, tuple(logs))


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    exponents: tuple[int, ...]

    # ------------------------------------------------------------ structure
    @cached_property
    def _group(self) -> _Group:
        return _unit_group(self.modulus)

    @cached_property
    def rotations(self) -> tuple[int, ...]:
        """r(n) for n = 0..q-1 with chi(n) = e(r/exponent); -1 marks gcd(n, q) > 1."""
        g = self._group
        e = g.exponent
        weights = [k * (e // c.order) for k, c in zip(self.exponents, g.components)]
        out = []
        for logs in g.logs:
            if logs is None:
                out.append(-1)
            else:
                out.append(sum(w * l for w, l in zip(weights, logs)) % e)
        return tuple(out)

    @property
    def exponent(self) -> int:
        """Common denominator of the rotations (exponent of (Z/q)^x)."""
        return self._group.exponent

    @cached_property
    def index(self) -> int:
        idx = 0
        for k, c in zip(self.exponents, self._group.components):
            idx = idx * c.order + k
        return idx

    @property
    def label(self) -> str:
        return f"{self.modulus}.{self.index}"

    def __repr__(self) -> str:
        return f"DirichletCharacter({self.label!r})"

    # ------------------------------------------------------------ values
    def rotation(self, n: int) -> Fraction | None:
        """chi(n) as an exact fraction of a full turn, None when chi(n) = 0."""
        r = self.rotations[n % self.modulus]
        return None if r < 0 else Fraction(r, self.exponent)

    def value(self, n: int) -> complex:
        r = self.rotations[n % self.modulus]
        if r < 0:
            return 0j
        return complex(rotation_to_complex(r, self.exponent))

    def values_array(self) -> np.ndarray:
        """chi(n) for n = 0..q-1 as a complex array (read-only, cached)."""
        return self._values

    @cached_property
    def _values(self) -> np.ndarray:
        arr = np.array([self.value(n) for n in range(self.modulus)], dtype=np.complex128)
        arr.setflags(write=False)
        return arr

    def __call__(self, n: int) -> complex:
        return self.value(n)

    # ------------------------------------------------------------ group ops
    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus != self.modulus:
            raise ValueError("characters have different moduli")
        orders = [c.order for c in self._group.components]
        return DirichletCharacter(self.modulus, tuple(
            (a + b) % o for a, b, o in zip(self.exponents, other.exponents, orders)))

    def __pow__(self, m: int) -> "DirichletCharacter":
        orders = [c.order for c in self._group.components]
        return DirichletCharacter(self.modulus, tuple((a * m) % o for a, o in zip(self.exponents, orders)))

    def conjugate(self) -> "DirichletCharacter":
        return self ** -1

    @property
    def is_principal(self) -> bool:
        return all(k == 0 for k in self.exponents)

    @property
    def is_real(self) -> bool:
        return (self ** 2).is_principal

    @cached_property
    def order(self) -> int:
        orders = [c.order for c in self._group.components]
        return math.lcm(*(o // math.gcd(o, k) for k, o in zip(self.exponents, orders))) if orders else 1

    @property
    def parity(self) -> int:
        """nu = (1 - chi(-1))/2, 0 for even and 1 for odd characters."""
        if self.modulus <= 2:
            return 0
        return 0 if self.rotations[self.modulus - 1] == 0 else 1

    @cached_property
    def conductor(self) -> int:
        q = self.modulus
        rots = self.rotations
        for f in sorted(d for d in range(1, q + 1) if q % d == 0):
            if all(rots[n] == 0 for n in range(1, q, f) if rots[n] >= 0):
                return f
        return q

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def primitive_inducer(self) -> "DirichletCharacter":
        """The primitive character mod the conductor that induces this one."""
        f = self.conductor
        rots = self.rotations
        for cand in characters_mod(f):
            if all(cand.value(n) == self.value(n)
                   for n in range(1, self.modulus) if rots[n] >= 0):
                return cand
        raise AssertionError("no inducing character found")  # pragma: no cover


@lru_cache(maxsize=256)
def _characters_mod(q: int) -> tuple[DirichletCharacter, ...]:
    g = _unit_group(q)
    ranges = [range(c.order) for c in g.components]
    return tuple(DirichletCharacter(q, tuple(ks)) for ks in itertools.product(*ranges))


def characters_mod(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q in label order."""
    if q < 1:
        raise ValueError("q must be >= 1")
    return list(_characters_mod(q))


def principal(q: int) -> DirichletCharacter:
    return _characters_mod(q)[0]


def character_from_label(label: str) -> DirichletCharacter:
    try:
        q_s, i_s = label.split(".")
        q, i = int(q_s), int(i_s)
    except ValueError:
        raise ValueError(f"bad character label {label!r}; expected 'q.index'") from None
    chars = characters_mod(q)
    if not 0 <= i < len(chars):
        raise ValueError(f"character index {i} out of range for modulus {q}")
    return chars[i]


def rotation_sum(counts: dict[int, int], den: int) -> complex:
    """Sum of counts[r] * e(r/den), grouping equal rotations first."""
    re = math.fsum(c * rotation_to_complex(r, den).real for r, c in counts.items())
    im = math.fsum(c * rotation_to_complex(r, den).imag for r, c in counts.items())
    return complex(re, im)


# ---------------------------------------------------------------- Gauss sums

@dataclass(frozen=True)
class RootNumber:
    gauss: complex
    epsilon: complex


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_a chi(a) e(a/q), summed as exact rotations a/q + r/e."""
    q, e = chi.modulus, chi.exponent
    den = math.lcm(q, e)
    counts: dict[int, int] = {}
    for a, r in enumerate(chi.rotations):
        if r < 0:
            continue
        key = (a * (den // q) + r * (den // e)) % den
        counts[key] = counts.get(key, 0) + 1
    return rotation_sum(counts, den)


def gauss_and_epsilon(chi: DirichletCharacter) -> RootNumber:
    tau = gauss_sum(chi)
    eps = (1j) ** (-chi.parity) * tau / math.sqrt(chi.modulus)
    return RootNumber(tau, eps)


# ---------------------------------------------------------------- delta_m, eta

@lru_cache(maxsize=512)
def _power_counts(q: int, m: int) -> np.ndarray:
    x = np.arange(q, dtype=np.int64)
    acc = np.ones(q, dtype=np.int64) % q
    base, k = x.copy(), m
    while k:
        if k & 1:
            acc = acc * base % q
        base = base * base % q
        k >>= 1
    counts = np.bincount(acc, minlength=q)
    counts.setflags(write=False)
    return counts


def delta_m(q: int, a: int, m: int) -> int:
    """#{x mod q : x^m = a mod q}, by direct scan."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 0 <= a < q and not (q == 1 and a == 0):
        raise ValueError("need 0 <= a < q")
    return int(_power_counts(q, m)[a % q])


def delta2_formula(q: int) -> int:
    """delta_2(q, a) for (a, q) = 1 with a a square mod q, in closed form."""
    fs = factorint(q) if q > 1 else {}
    n2 = fs.get(2, 0)
    c = {0: 2, 1: 1, 2: 2}.get(n2, 4)
    return 2 ** len(fs) * c // 2


def delta2_local(q: int, a: int) -> int:
    """Product over p^k || q of the number of square roots of a mod p^k."""
    out = 1
    for p, k in (factorint(q).items() if q > 1 else []):
        pk = p ** k
        out *= delta_m(pk, a % pk, 2)
    return out


def eta(chi: DirichletCharacter, m: int) -> int:
    """1 if chi^m is principal, else 0."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return int((chi ** m).is_principal)


def orthogonality_sum(chi: DirichletCharacter, m: int) -> complex:
    """sum over a coprime to q of chi(a) delta_m(q, a), by direct summation."""
    counts: dict[int, int] = {}
    deltas = _power_counts(chi.modulus, m)
    for a, r in enumerate(chi.rotations):
        if r >= 0 and deltas[a]:
            counts[r] = counts.get(r, 0) + int(deltas[a])
    return rotation_sum(counts, chi.exponent)

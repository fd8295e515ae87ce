"""Nontrivial-zero ordinates from fixture files, and sums over zeros.

All zeros are taken in GRH form rho = 1/2 + i gamma.  A file for character
psi lists its positive ordinates; the zeros of L(s, psi) below the real axis
are the conjugates of the zeros of L(s, conj psi) above it, so for a real
character every zero enters together with its conjugate, and for a complex
character the lists of psi and conj psi are combined.

File format (UTF-8)::

    # label=4.1
    # source=...
    # complete_to=200
    6.020948904697597
    10.24377030416655
    ...
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .arith import coprime_residues, euler_phi
from .characters import DirichletCharacter, characters_mod, delta_m
from .errors import DomainError, MissingZerosError, PoleError, ZeroFileError

POLE_GUARD = 1e-12
COINCIDENCE_RADIUS = 1e-6
ZETA_LABEL = "zeta"


@dataclass(frozen=True)
class ZeroList:
    label: str
    ordinates: np.ndarray
    source: str = ""
    complete_to: float = 0.0

    def __post_init__(self):
        g = np.asarray(self.ordinates, dtype=np.float64)
        if g.ndim != 1:
            raise ValueError("ordinates must be one-dimensional")
        if g.size and (g[0] <= 0 or np.any(np.diff(g) <= 0)):
            raise ValueError("ordinates must be positive and strictly ascending")
        g.setflags(write=False)
        object.__setattr__(self, "ordinates", g)

    @property
    def count(self) -> int:
        return int(self.ordinates.size)

    def __len__(self) -> int:
        return self.count

    def truncated(self, height: float) -> "ZeroList":
        g = self.ordinates[self.ordinates <= height]
        return ZeroList(self.label, g, self.source, min(height, self.complete_to))

    def first(self, n: int) -> "ZeroList":
        g = self.ordinates[:n]
        height = float(g[-1]) if 0 < n < self.count else self.complete_to
        return ZeroList(self.label, g, self.source, height)


def load_zeros(path) -> ZeroList:
    path = Path(path)
    meta: dict[str, str] = {}
    ordinates: list[float] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, val = body.partition("=")
                    meta[key.strip()] = val.strip()
                continue
            try:
                g = float(line)
            except ValueError:
                raise ZeroFileError(path, lineno, f"not a decimal ordinate: {line!r}") from None
            if not math.isfinite(g) or g <= 0:
                raise ZeroFileError(path, lineno, f"ordinate must be positive, got {line}")
            if ordinates and g <= ordinates[-1]:
                raise ZeroFileError(path, lineno, f"ordinates not ascending ({line} after {ordinates[-1]!r})")
            ordinates.append(g)
    label = meta.get("label", path.stem)
    try:
        complete_to = float(meta.get("complete_to", ordinates[-1] if ordinates else 0.0))
    except ValueError:
        raise ZeroFileError(path, 1, f"bad complete_to {meta['complete_to']!r}") from None
    return ZeroList(label, np.array(ordinates), meta.get("source", ""), complete_to)


def zeros_label(chi: DirichletCharacter) -> str:
    """File label holding the zeros of L(s, chi): those of its primitive inducer."""
    prim = chi.primitive_inducer()
    return ZETA_LABEL if prim.modulus == 1 else prim.label


class ZeroBank(Mapping):
    """Zero lists keyed by label, read lazily from ``<dir>/<label>.txt``."""

    def __init__(self, directory=None, lists: Iterable[ZeroList] = ()):
        self.directory = Path(directory) if directory is not None else None
        self._cache: dict[str, ZeroList] = {z.label: z for z in lists}

    def __getitem__(self, label: str) -> ZeroList:
        if label not in self._cache:
            if self.directory is None:
                raise KeyError(label)
            path = self.directory / f"{label}.txt"
            if not path.exists():
                raise KeyError(label)
            self._cache[label] = load_zeros(path)
        return self._cache[label]

    def __iter__(self):
        labels = set(self._cache)
        if self.directory is not None and self.directory.is_dir():
            labels |= {p.stem for p in self.directory.glob("*.txt")}
        return iter(sorted(labels))

    def __len__(self) -> int:
        return sum(1 for _ in self)

    def for_character(self, chi: DirichletCharacter) -> ZeroList:
        label = zeros_label(chi)
        try:
            return self[label]
        except KeyError:
            raise MissingZerosError(
                f"no zero list for {label} (needed by character {chi.label})") from None

    def truncated(self, height: float) -> "ZeroBank":
        return ZeroBank(None, [self[k].truncated(height) for k in self])

    def first(self, n: int) -> "ZeroBank":
        return ZeroBank(None, [self[k].first(n) for k in self])


def bundled_zero_dir() -> Path:
    return Path(__file__).resolve().parent / "data" / "zeros"


def default_zero_bank(directory=None) -> ZeroBank:
    """Bank from EULERLAB_ZEROS, else ``directory``, else the bundled fixtures."""
    env = os.environ.get("EULERLAB_ZEROS")
    if env:
        return ZeroBank(env)
    return ZeroBank(directory if directory is not None else bundled_zero_dir())


def _as_bank(zeros) -> ZeroBank:
    if isinstance(zeros, ZeroBank):
        return zeros
    if isinstance(zeros, Mapping):
        return ZeroBank(None, [ZeroList(k, v.ordinates, v.source, v.complete_to) for k, v in zeros.items()])
    raise TypeError("zeros must be a ZeroBank or a mapping of label -> ZeroList")


def _signed_zeros(psi: DirichletCharacter, bank: ZeroBank) -> tuple[np.ndarray, float]:
    """All rho of L(s, psi) known to the bank, and the smaller completeness height."""
    up = bank.for_character(psi)
    down = up if psi.is_real else bank.for_character(psi.conjugate())
    rho = np.concatenate([0.5 + 1j * up.ordinates, 0.5 - 1j * down.ordinates])
    return rho, min(up.complete_to, down.complete_to)


def _tail_mass(q: int, height: float) -> float:
    """Upper estimate of sum over gamma > T of 1/gamma^2 for one L-function."""
    if height <= 0:
        return math.inf
    return (math.log(max(q * height / (2 * math.pi), math.e)) + 1) / (2 * math.pi * height)


@dataclass(frozen=True)
class ZeroSum:
    value: complex
    tail_bound: float


def zero_sum_S(s, x: float, chi: DirichletCharacter, zeros, *, skip_at_s: bool = False) -> ZeroSum:
    """S_s(x, chi) = -(s/phi) sum_a chi(a) sum_psi conj psi(a) sum_rho x^(rho-s)/(rho(rho-s)).

    With ``skip_at_s`` zeros within COINCIDENCE_RADIUS of s are left out; at a
    zero of order m their effect lives in the -m(gamma + log log x) anchor.
    """
    s = complex(s)
    bank = _as_bank(zeros)
    q = chi.modulus
    phi = euler_phi(q)
    residues = coprime_residues(q)
    logx = math.log(x)
    total = 0j
    tail = 0.0
    for psi in characters_mod(q):
        rho, height = _signed_zeros(psi, bank)
        coeff = sum(chi.value(a) * psi.value(a).conjugate() for a in residues)
        if rho.size:
            gap = rho - s
            if skip_at_s:
                keep = np.abs(gap) >= COINCIDENCE_RADIUS
                rho, gap = rho[keep], gap[keep]
        if rho.size:
            if np.min(np.abs(gap)) < POLE_GUARD:
                raise PoleError("s coincides with a zero of L(s, psi)")
            inner = np.sum(np.exp(gap * logx) / (rho * gap))
        else:
            inner = 0j
        total += coeff * complex(inner)
        tail += abs(coeff) * 2 * _tail_mass(psi.conductor, height)
    value = -s / phi * total
    bound = abs(s) * x ** (0.5 - s.real) * tail / phi
    return ZeroSum(value, bound)


def explicit_psi_rhs(x: float, q: int, a: int, zeros, truncate_T: float) -> float:
    """Truncated right side for phi(q) E(x; q, a) = x - phi(q) theta(x; q, a).

    delta_2 sqrt(x) + delta_3 x^(1/3) + sum_psi conj psi(a) sum_rho x^rho/rho
    - sum_psi conj psi(a) sum_rho x^(rho/2)/rho, over zeros with |gamma| <= T.
    The O(x^(1/5)) remainder is not included.
    """
    if x < 2:
        raise DomainError("x must be >= 2")
    if math.gcd(a, q) != 1:
        raise DomainError("a must be coprime to q")
    bank = _as_bank(zeros)
    logx = math.log(x)
    a_mod = a % q
    value = delta_m(q, a_mod, 2) * math.sqrt(x) + delta_m(q, a_mod, 3) * x ** (1 / 3)
    zsum = 0j
    scale = 0.0
    for psi in characters_mod(q):
        rho, height = _signed_zeros(psi, bank)
        if height < truncate_T:
            raise MissingZerosError(
                f"zeros for {psi.label} only complete to {height}, need {truncate_T}")
        rho = rho[np.abs(rho.imag) <= truncate_T]
        if not rho.size:
            continue
        full = np.exp(rho * logx) / rho
        half = np.exp(rho * (logx / 2)) / rho
        zsum += psi.value(a).conjugate() * complex(np.sum(full) - np.sum(half))
        scale += float(np.sum(np.abs(full)) + np.sum(np.abs(half)))
    if abs(zsum.imag) > 1e-8 * max(scale, 1.0):
        raise ArithmeticError(f"explicit formula has imaginary part {zsum.imag}")
    return value + zsum.real


def explicit_remainder_bound(x: float) -> float:
    """Size of the omitted O(x^(1/5)) term, with unit constant."""
    return x ** 0.2


def zero_reciprocal_sum(zeros: ZeroList, T: float) -> float:
    """sum over 0 < gamma <= T of 1/|1/2 + i gamma|."""
    if T > zeros.complete_to:
        raise DomainError(f"T = {T} exceeds completeness height {zeros.complete_to}")
    g = zeros.ordinates[zeros.ordinates <= T]
    return math.fsum(1.0 / np.sqrt(0.25 + g * g))

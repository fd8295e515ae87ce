"""Partial Euler products and their asymptotic right-hand sides.

Branch contract: the log of a partial product is the sum of the principal
logs of the individual factors, which is continuous in x.  Right-hand sides
are assembled as explicit parts whose sum is ``total_rhs_log``.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .arith import PrimeSummary, arith_tables, chebyshev_ap, chebyshev_ap_grid
from .characters import DirichletCharacter, eta, principal
from .errors import DomainError, PoleError
from .lfunctions import l_derivative, l_value, log_l_value, vanishing_order
from .sieve import cached_primes
from .special import EULER_GAMMA, ei, li_power
from .zeros import zero_sum_S

LOG_SQRT2 = 0.5 * math.log(2.0)


class OffStripWarning(UserWarning):
    """Asymptotic formula evaluated outside 0 < Re s < 1 (diagnostic use)."""


# ---------------------------------------------------------------- left side

@dataclass(frozen=True)
class PartialProduct:
    value: complex
    log: complex


def _factor_logs(s: complex, chi: DirichletCharacter, primes: np.ndarray) -> np.ndarray:
    """-log(1 - chi(p) p^-s) per prime, principal branch."""
    vals = chi.values_array()[primes % chi.modulus]
    z = vals * np.exp(-s * np.log(primes.astype(np.float64)))
    if np.any(z == 1):
        raise PoleError("a factor 1 - chi(p) p^-s vanishes")
    with np.errstate(divide="ignore"):
        re = -0.5 * np.log1p(z.real * z.real + z.imag * z.imag - 2 * z.real)
    if not np.all(np.isfinite(re)):
        raise PoleError("a factor 1 - chi(p) p^-s vanishes to working precision")
    # 0.0 - imag turns -0.0 into +0.0, so negative real factors get arg +pi
    im = -np.arctan2(0.0 - z.imag, 1 - z.real)
    return re + 1j * im


def partial_product_logs(s, chi: DirichletCharacter, xs: Sequence[float]) -> list[complex]:
    s = complex(s)
    if s == 0:
        raise DomainError("s must be non-zero")
    xs = list(xs)
    if not xs:
        return []
    primes = cached_primes(max(xs))
    logs = _factor_logs(s, chi, primes)
    out = []
    for x in xs:
        k = int(np.searchsorted(primes, x, side="right"))
        out.append(complex(math.fsum(logs.real[:k]), math.fsum(logs.imag[:k])))
    return out


def partial_product(s, chi: DirichletCharacter, x: float) -> PartialProduct:
    """prod_{p <= x} (1 - chi(p) p^-s)^-1."""
    if x < 2:
        return PartialProduct(1 + 0j, 0j)
    lg = partial_product_logs(s, chi, [x])[0]
    try:
        value = cmath.exp(lg)
    except OverflowError:
        value = complex(math.inf, 0) if lg.imag == 0 else math.inf * cmath.exp(1j * lg.imag)
    return PartialProduct(value, lg)


# ---------------------------------------------------------------- right side

@dataclass
class TermBreakdown:
    case_tag: str
    s: complex
    x: float
    chi: str
    li_theta_term: complex
    li_chain: list[tuple[int, complex]]
    power_terms: dict[str, complex]
    sqrt2_applied: bool
    multiplier_log: complex
    zero_term: complex | None
    zero_tail_bound: float | None
    log_l: complex | None
    vanishing_order: int
    total_rhs_log: complex = 0j
    degenerate_classes: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def parts(self) -> list[complex]:
        out = [self.log_l or 0j, self.li_theta_term]
        out += [v for _, v in self.li_chain]
        out += list(self.power_terms.values())
        out.append(self.multiplier_log)
        if self.zero_term is not None:
            out.append(self.zero_term)
        return out

    def finish(self) -> "TermBreakdown":
        total = 0j
        for part in self.parts():
            total += part
        self.total_rhs_log = total
        if self.zero_term is None:
            self.notes.append("zero term S_s(x)/log x omitted (no zeros supplied)")
        return self

    @property
    def rhs_value(self) -> complex:
        return cmath.exp(self.total_rhs_log)

    def to_dict(self) -> dict:
        def c(z):
            return None if z is None else [z.real, z.imag]
        return {
            "case_tag": self.case_tag,
            "s": c(self.s),
            "x": self.x,
            "chi": self.chi,
            "li_theta_term": c(self.li_theta_term),
            "li_chain": [[k, c(v)] for k, v in self.li_chain],
            "power_terms": {k: c(v) for k, v in self.power_terms.items()},
            "sqrt2_applied": self.sqrt2_applied,
            "multiplier_log": c(self.multiplier_log),
            "zero_term": c(self.zero_term),
            "zero_tail_bound": self.zero_tail_bound,
            "log_l": c(self.log_l),
            "vanishing_order": self.vanishing_order,
            "total_rhs_log": c(self.total_rhs_log),
            "degenerate_classes": list(self.degenerate_classes),
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TermBreakdown":
        def c(v):
            return None if v is None else complex(v[0], v[1])
        return cls(
            case_tag=d["case_tag"], s=c(d["s"]), x=d["x"], chi=d["chi"],
            li_theta_term=c(d["li_theta_term"]),
            li_chain=[(int(k), c(v)) for k, v in d["li_chain"]],
            power_terms={k: c(v) for k, v in d["power_terms"].items()},
            sqrt2_applied=d["sqrt2_applied"], multiplier_log=c(d["multiplier_log"]),
            zero_term=c(d["zero_term"]), zero_tail_bound=d["zero_tail_bound"],
            log_l=c(d["log_l"]), vanishing_order=d["vanishing_order"],
            total_rhs_log=c(d["total_rhs_log"]),
            degenerate_classes=list(d["degenerate_classes"]), notes=list(d["notes"]))


def li_theta_sum(s, chi: DirichletCharacter, summary: PrimeSummary) -> tuple[complex, list[int]]:
    """sum_a chi(a) Li((phi(q) theta(x; q, a))^(1-s)), and the classes with theta = 0.

    Empty classes contribute 0 instead of the divergent Li(0).
    """
    s = complex(s)
    phi = summary.phi
    total = 0j
    degenerate = []
    for a in summary.residues:
        th = summary.theta[a]
        if th == 0.0:
            degenerate.append(a)
            continue
        total += chi.value(a) * ei((1 - s) * math.log(phi * th))
    return total, degenerate


def chain_top(phi: int, sigma: float, rule: str = "standard") -> int:
    """Largest multiple of phi(q) not exceeding [1 + 1/(2 sigma)] (or [2 + 1/(2 sigma)])."""
    if rule == "standard":
        bound = math.floor(1 + 1 / (2 * sigma))
    elif rule == "extended":
        bound = math.floor(2 + 1 / (2 * sigma))
    else:
        raise ValueError(f"unknown chain rule {rule!r}")
    return (bound // phi) * phi


CASE1_SIGNS = ("stated", "consistent")


def _check_signs(signs: str) -> None:
    if signs not in CASE1_SIGNS:
        raise ValueError(f"case1_signs must be one of {CASE1_SIGNS}")


def _dispatch_case(s: complex, on_critical_line: bool) -> str:
    if s.real <= 0:
        raise DomainError("the asymptotics need Re s > 0")
    if on_critical_line:
        if s.real != 0.5:
            raise ValueError("on_critical_line is set but Re s != 1/2")
        return "II"
    if s.real == 0.5:
        raise ValueError("Re s == 1/2: pass on_critical_line=True to select Case II")
    if s.real >= 1:
        warnings.warn(f"Re s = {s.real} is outside the critical strip; diagnostic use only",
                      OffStripWarning, stacklevel=3)
    return "I" if s.real < 0.5 else "III"


def _anchor_log(s: complex, chi: DirichletCharacter, x: float) -> tuple[complex, int]:
    """log of the L-value anchor; at a zero of order m on the line use L^(m)/(m! e^(m gamma) (log x)^m)."""
    if s.real == 0.5 and not chi.is_principal:
        m = vanishing_order(chi, s.imag)
        if m > 0:
            lead = l_derivative(s, chi, m).leading
            return cmath.log(lead) - m * EULER_GAMMA - m * math.log(math.log(x)), m
    return log_l_value(s, chi), 0


def rhs_aim(s, chi: DirichletCharacter, x: float, zeros=None, *,
            on_critical_line: bool = False, chain_rule: str = "standard",
            case1_signs: str = "stated",
            summary: PrimeSummary | None = None, _anchor=None) -> TermBreakdown:
    """Term-by-term right-hand side of the partial-product asymptotics for L(s, chi).

    For 0 < Re s < 1/2 the default ``case1_signs="stated"`` uses the signs
    -(1/k) Li(x^(1-ks)) and -S/log x with a (1-2s) denominator.  The
    ``"consistent"`` variant uses the Re s > 1/2 expression without the L-value
    anchor, i.e. +(1/k) Li(x^(1-ks)) and +S/log x.
    """
    s = complex(s)
    _check_signs(case1_signs)
    if x < 2:
        raise DomainError("x must be >= 2")
    case = _dispatch_case(s, on_critical_line)
    q = chi.modulus
    if summary is None:
        summary = chebyshev_ap(x, q)
    phi = summary.phi
    eta2 = eta(chi, 2)
    logx = math.log(x)
    li_sum, degenerate = li_theta_sum(s, chi, summary)
    li_theta = li_sum / phi

    zsum = (zero_sum_S(s, x, chi, zeros, skip_at_s=case == "II")
            if zeros is not None else None)
    chain: list[tuple[int, complex]] = []
    power: dict[str, complex] = {}
    multiplier = 0j
    sqrt2 = False
    log_l = None
    order = 0

    if case == "I":
        sign = -1 if case1_signs == "stated" else 1
        top = chain_top(phi, s.real, chain_rule)
        # k = 1 is the theta block itself when phi(q) = 1
        for k in range(2 if phi == 1 else phi, top + 1, phi):
            w = 1 - k * s
            if w == 0:
                raise PoleError(f"Li(x^(1 - {k}s)) diverges at k s = 1")
            chain.append((k, sign * li_power(x, w) / k))
        power["x^(1/2-s)"] = -sign * (2 * s - 1 + eta2) * x ** (0.5 - s) / ((1 - 2 * s) * logx)
        zero_term = None if zsum is None else sign * zsum.value / logx
    else:
        log_l, order = _anchor if _anchor is not None else _anchor_log(s, chi, x)
        zero_term = None if zsum is None else zsum.value / logx
        if case == "III":
            power["x^(1/2-s)"] = (2 * s - 1 + eta2) * x ** (0.5 - s) / ((2 * s - 1) * logx)
        else:
            power["x^(1/2-s)"] = x ** (0.5 - s) / logx
            if s.imag == 0 and eta2 == 1:
                sqrt2 = True
                multiplier = complex(LOG_SQRT2)
            elif eta2 == 1:
                multiplier = (eta2 * x ** (1 - 2 * s) * (2 * x ** (s - 0.5) - 1)
                              / (2 * (2 * s - 1) * logx))
    out = TermBreakdown(
        case_tag=case, s=s, x=float(x), chi=chi.label, li_theta_term=li_theta,
        li_chain=chain, power_terms=power, sqrt2_applied=sqrt2, multiplier_log=multiplier,
        zero_term=zero_term, zero_tail_bound=None if zsum is None else zsum.tail_bound / logx,
        log_l=log_l, vanishing_order=order, degenerate_classes=degenerate)
    if degenerate:
        out.notes.append(f"theta(x; q, a) = 0 for a in {degenerate}; those Li terms set to 0")
    return out.finish()


def zeta_half() -> float:
    return l_value(0.5, principal(1)).value.real


def rhs_ramanujan(s: float, x: float, zeta_zeros=None, *,
                  case1_signs: str = "stated") -> TermBreakdown:
    """The three-case zeta-function formulas with theta(x) from the sieve.

    ``case1_signs`` works as in :func:`rhs_aim`; the ``"consistent"`` variant
    also flips the sign of the theta block.
    """
    _check_signs(case1_signs)
    if isinstance(s, complex):
        if s.imag != 0:
            raise DomainError("rhs_ramanujan takes real s")
        s = s.real
    s = float(s)
    if s <= 0:
        raise DomainError("s must be positive")
    if x < 2:
        raise DomainError("x must be >= 2")
    if s >= 1:
        warnings.warn(f"s = {s} is outside the critical strip; diagnostic use only",
                      OffStripWarning, stacklevel=2)
    one = principal(1)
    th = chebyshev_ap(x, 1).theta[0]
    logx = math.log(x)
    zsum = zero_sum_S(s, x, one, zeta_zeros) if zeta_zeros is not None else None
    chain: list[tuple[int, complex]] = []
    power: dict[str, complex] = {}
    multiplier = 0j
    log_l = None
    sqrt2 = False
    if s < 0.5:
        case = "I"
        sign = -1 if case1_signs == "stated" else 1
        li_theta = sign * ei((1 - s) * math.log(th))
        n = math.floor(1 + 1 / (2 * s))
        for k in range(2, n + 1):
            if k * s == 1:
                raise PoleError(f"Li(x^(1 - {k}s)) diverges at k s = 1")
            chain.append((k, sign * li_power(x, 1 - k * s) / k))
        power["x^(1/2-s)"] = complex(-2 * s * x ** (0.5 - s) / ((1 - 2 * s) * logx))
        zero_term = None if zsum is None else sign * zsum.value / logx
    elif s == 0.5:
        case = "II"
        zh = zeta_half()
        log_l = complex(math.log(-zh))
        multiplier = complex(LOG_SQRT2)
        sqrt2 = True
        li_theta = ei(0.5 * math.log(th))
        power["x^(1/2-s)"] = complex(1 / logx)
        zero_term = None if zsum is None else zsum.value / logx
    else:
        case = "III"
        log_l = complex(math.log(abs(l_value(s, one).value)))
        li_theta = ei((1 - s) * math.log(th))
        power["x^(1/2-s)"] = complex(2 * s * x ** (0.5 - s) / ((2 * s - 1) * logx))
        zero_term = None if zsum is None else zsum.value / logx
    out = TermBreakdown(
        case_tag=case, s=complex(s), x=float(x), chi=one.label, li_theta_term=complex(li_theta),
        li_chain=chain, power_terms=power, sqrt2_applied=sqrt2, multiplier_log=multiplier,
        zero_term=zero_term, zero_tail_bound=None if zsum is None else zsum.tail_bound / logx,
        log_l=log_l, vanishing_order=0)
    return out.finish()


# ---------------------------------------------------------------- critical line limits

def _drh_limit(chi: DirichletCharacter, t: float, apply_sqrt2: bool) -> tuple[complex, int, bool]:
    """(leading coefficient * e^(-m gamma) * factor, m, sqrt2 applied)."""
    s = complex(0.5, t)
    m = vanishing_order(chi, t)
    lead = l_derivative(s, chi, m).leading
    sqrt2 = apply_sqrt2 and t == 0 and chi.is_real
    factor = math.sqrt(2) if sqrt2 else 1.0
    return lead * math.exp(-m * EULER_GAMMA) * factor, m, sqrt2


def drh_ratio(chi: DirichletCharacter, t: float, x: float, zeros=None, *,
              apply_sqrt2: bool = True) -> complex:
    """(log x)^m prod_{p <= x}(1 - chi(p) p^-s)^-1 divided by its conjectured limit at s = 1/2 + it.

    The limit is L^(m)(s)/(m! e^(m gamma)), times sqrt 2 when t = 0 and chi is
    real.  With ``zeros`` the finite-x correction exp(Li-sum/phi +
    (x^(1/2-s) + S_s(x, chi))/log x) is divided out as well.
    """
    if chi.is_principal:
        raise DomainError("drh_ratio needs a non-principal character")
    s = complex(0.5, t)
    limit, m, _ = _drh_limit(chi, t, apply_sqrt2)
    lg = partial_product(s, chi, x).log
    ratio = cmath.exp(lg + m * math.log(math.log(x))) / limit
    if zeros is not None:
        summary = chebyshev_ap(x, chi.modulus)
        li_sum, _ = li_theta_sum(s, chi, summary)
        zs = zero_sum_S(s, x, chi, zeros, skip_at_s=True).value
        ratio /= cmath.exp(li_sum / summary.phi + (x ** (0.5 - s) + zs) / math.log(x))
    return ratio


def conrad_limit_check(chi: DirichletCharacter, t: float, x: float) -> float:
    """|(log x)^m prod / (B_t e^(-m gamma))| with B_t the leading Taylor coefficient (sqrt 2 as in drh_ratio)."""
    if chi.is_principal:
        raise DomainError("conrad_limit_check needs a non-principal character")
    s = complex(0.5, t)
    m = vanishing_order(chi, t)
    b_t = l_derivative(s, chi, m).leading
    factor = math.sqrt(2) if (t == 0 and chi.is_real) else 1.0
    lg = partial_product(s, chi, x).log
    return abs(cmath.exp(lg + m * math.log(math.log(x))) / (b_t * math.exp(-m * EULER_GAMMA) * factor))


# ---------------------------------------------------------------- appendix quantities

def p_x(s, x: float) -> complex:
    """exp(sum_{2 <= n <= x} Lambda(n) / (n^s log n))."""
    s = complex(s)
    if x < 2:
        return 1 + 0j
    tab = arith_tables(int(x))
    n = np.flatnonzero(tab.mangoldt)
    lam = tab.mangoldt[n]
    terms = (lam / np.log(n)) * np.exp(-s * np.log(n.astype(np.float64)))
    return cmath.exp(complex(math.fsum(terms.real), math.fsum(terms.imag)))


def sqrt2_log_residual(x: float) -> float:
    """(sum_{p<=x} sum_k 1/(k p^(k/2)) - sum_{2<=n<=x} Lambda(n)/(sqrt(n) log n)) - log sqrt 2.

    The inner k-sum stops once p^(k/2) exceeds 1e16.
    """
    primes = cached_primes(x).astype(np.float64)
    logp = np.log(primes)
    cap = 16 * math.log(10)
    parts = []
    k = 1
    while True:
        keep = 0.5 * k * logp <= cap
        if not keep.any():
            break
        parts.append(np.exp(-0.5 * k * logp[keep]) / k)
        k += 1
    euler_side = math.fsum(np.concatenate(parts)) if parts else 0.0
    tab = arith_tables(int(x))
    n = np.flatnonzero(tab.mangoldt)
    dirichlet_side = math.fsum(tab.mangoldt[n] / (np.sqrt(n) * np.log(n)))
    return euler_side - dirichlet_side - LOG_SQRT2


# ---------------------------------------------------------------- sweeps

@dataclass(frozen=True)
class SweepRow:
    x: float
    lhs_log: complex
    rhs_log: complex
    residual: complex
    e_ratio: float
    li_sum_diag: float


@dataclass
class SweepReport:
    s: complex
    chi: str
    rows: list[SweepRow]
    breakdowns: list[TermBreakdown] = field(default_factory=list)
    zeros_included: bool = False

    @property
    def xs(self) -> list[float]:
        return [r.x for r in self.rows]


def sweep(s, chi: DirichletCharacter, x_grid: Sequence[float], zeros=None, *,
          on_critical_line: bool = False, chain_rule: str = "standard",
          case1_signs: str = "stated") -> SweepReport:
    """LHS, RHS, residual and remainder diagnostics at each cutoff of an ascending grid."""
    s = complex(s)
    xs = [float(x) for x in x_grid]
    if not xs:
        raise ValueError("empty grid")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("grid must be strictly ascending")
    if xs[0] < 2:
        raise DomainError("grid must start at x >= 2")
    summaries = chebyshev_ap_grid(xs, chi.modulus)
    lhs = partial_product_logs(s, chi, xs)
    anchor = None
    case = _dispatch_case(s, on_critical_line) if s.real != 0.5 or on_critical_line else None
    if case in ("III",) or (case == "II" and chi.is_principal):
        anchor = (log_l_value(s, chi), 0)
    rows, parts = [], []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OffStripWarning)
        for x, summ, lg in zip(xs, summaries, lhs):
            if case == "II" and not chi.is_principal:
                anchor = _anchor_log(s, chi, x)
            bd = rhs_aim(s, chi, x, zeros, on_critical_line=on_critical_line,
                         chain_rule=chain_rule, case1_signs=case1_signs,
                         summary=summ, _anchor=anchor)
            li_sum, _ = li_theta_sum(s, chi, summ)
            e_ratio = summ.max_abs_remainder() / (math.sqrt(x) * math.log(x))
            rows.append(SweepRow(x, lg, bd.total_rhs_log, lg - bd.total_rhs_log, e_ratio, abs(li_sum)))
            parts.append(bd)
    return SweepReport(s, chi.label, rows, parts, zeros is not None)

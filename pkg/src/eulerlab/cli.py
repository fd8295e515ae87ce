"""Command-line front end.

Exit codes: 0 ok, 2 bad configuration, 3 missing or unreadable zero
fixtures, 4 acceptance failure.  Grids are written ``A:B:k`` meaning k
geometric points per decade from A to B (a bare number is a one-point grid).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass
from typing import Sequence

from . import acceptance
from .arith import bv_sum, chebyshev_ap_grid, liouville_sum, mertens
from .asymptotics import (OffStripWarning, drh_ratio, partial_product,
                          partial_product_logs, rhs_ramanujan, sqrt2_log_residual, sweep)
from .characters import character_from_label, characters_mod, gauss_and_epsilon, principal
from .errors import DomainError, MissingZerosError, ZeroFileError
from .lfunctions import vanishing_order
from .zeros import default_zero_bank, zero_reciprocal_sum

EXIT_OK, EXIT_CONFIG, EXIT_FIXTURE, EXIT_ACCEPTANCE = 0, 2, 3, 4

SWEEP_COLUMNS = ["x", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "resid_abs", "e_ratio", "li_diag"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: int | None = None
    chi: str | None = None
    s: complex | None = None
    on_critical_line: bool = False
    grid: tuple[float, ...] = ()
    zeros: str | None = None
    out: str | None = None
    fmt: str = "csv"

    def __post_init__(self):
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ConfigError("grid must be ascending")
        if self.on_critical_line and self.s is not None and self.s.real != 0.5:
            raise ConfigError("--on-line needs Re s = 0.5")


def parse_grid(spec: str) -> tuple[float, ...]:
    parts = spec.split(":")
    try:
        if len(parts) == 1:
            return (float(parts[0]),)
        if len(parts) != 3:
            raise ValueError
        lo, hi, per = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"bad grid {spec!r}; expected A:B:k") from None
    if lo <= 0 or hi < lo or per < 1:
        raise ConfigError(f"bad grid {spec!r}; need 0 < A <= B and k >= 1")
    steps = math.floor(per * math.log10(hi / lo) + 1e-9)
    pts = [float(f"{lo * 10 ** (j / per):.12g}") for j in range(steps + 1)]
    return tuple(pts)


def parse_s(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise ConfigError(f"bad s {text!r}") from None


def _num(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def render(columns: Sequence[str], rows: Sequence[Sequence], fmt: str, extra: dict | None = None) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_num(v) for v in r])
        return buf.getvalue()
    payload = {"columns": list(columns), "rows": [_jsonable(list(r)) for r in rows]}
    if extra:
        payload.update(_jsonable(extra))
    return json.dumps(payload, sort_keys=True, indent=1) + "\n"


# ---------------------------------------------------------------- commands

def _bank(cfg: RunConfig):
    return default_zero_bank(cfg.zeros)


def _chi(cfg: RunConfig):
    if not cfg.chi:
        raise ConfigError("--chi is required")
    try:
        return character_from_label(cfg.chi)
    except (ValueError, KeyError) as exc:
        raise ConfigError(str(exc)) from None


def cmd_characters(cfg: RunConfig, args) -> str:
    if not cfg.q or cfg.q < 1:
        raise ConfigError("--q must be a positive integer")
    rows = []
    for chi in characters_mod(cfg.q):
        root = ["", "", "", ""]
        if chi.is_primitive:
            rn = gauss_and_epsilon(chi)
            root = [rn.gauss.real, rn.gauss.imag, rn.epsilon.real, rn.epsilon.imag]
        rows.append([chi.label, chi.order, chi.parity, chi.conductor, chi.is_primitive, *root])
    cols = ["label", "order", "parity", "conductor", "primitive", "tau_re", "tau_im", "eps_re", "eps_im"]
    return render(cols, rows, cfg.fmt)


def cmd_sieve(cfg: RunConfig, args) -> str:
    q = cfg.q or 1
    rows = []
    for summ in chebyshev_ap_grid(cfg.grid, q):
        for a in summ.residues:
            rows.append([summ.x, a, summ.theta[a], summ.psi[a], summ.pi[a], summ.remainder[a]])
    return render(["x", "a", "theta", "psi", "pi", "remainder"], rows, cfg.fmt)


def cmd_product(cfg: RunConfig, args) -> str:
    chi = _chi(cfg)
    rows = []
    for x, lg in zip(cfg.grid, partial_product_logs(cfg.s, chi, cfg.grid)):
        val = partial_product(cfg.s, chi, x).value
        rows.append([x, lg.real, lg.imag, val.real, val.imag])
    return render(["x", "log_re", "log_im", "value_re", "value_im"], rows, cfg.fmt)


def _sweep_rows(rep) -> list[list]:
    return [[r.x, r.lhs_log.real, r.lhs_log.imag, r.rhs_log.real, r.rhs_log.imag,
             abs(r.residual), r.e_ratio, r.li_sum_diag] for r in rep.rows]


def cmd_aim(cfg: RunConfig, args) -> str:
    chi = _chi(cfg)
    zeros = None if args.no_zeros else _bank(cfg)
    rep = sweep(cfg.s, chi, cfg.grid, zeros, on_critical_line=cfg.on_critical_line,
                chain_rule=args.chain_rule, case1_signs=args.case1_signs)
    if zeros is None:
        print("note: zero term S_s(x, chi)/log x omitted", file=sys.stderr)
    extra = {"breakdowns": [b.to_dict() for b in rep.breakdowns]}
    return render(SWEEP_COLUMNS, _sweep_rows(rep), cfg.fmt, extra)


def cmd_drh(cfg: RunConfig, args) -> str:
    chi = _chi(cfg)
    zeros = _bank(cfg) if args.with_zeros else None
    m = vanishing_order(chi, args.t)
    sqrt2 = (not args.no_sqrt2) and args.t == 0 and chi.is_real
    rows = []
    for x in cfg.grid:
        r = drh_ratio(chi, args.t, x, zeros, apply_sqrt2=not args.no_sqrt2)
        rows.append([x, r.real, r.imag, abs(r), abs(r - 1), m, sqrt2])
    return render(["x", "ratio_re", "ratio_im", "ratio_abs", "dev_abs", "order", "sqrt2"], rows, cfg.fmt)


def cmd_ramanujan(cfg: RunConfig, args) -> str:
    if cfg.s is None or cfg.s.imag != 0:
        raise ConfigError("ramanujan takes a real --s")
    s = cfg.s.real
    zeros = None if args.no_zeros else _bank(cfg)
    one = principal(1)
    rows, parts = [], []
    for x, lg in zip(cfg.grid, partial_product_logs(s, one, cfg.grid)):
        bd = rhs_ramanujan(s, x, zeros, case1_signs=args.case1_signs)
        rows.append([x, lg.real, lg.imag, bd.total_rhs_log.real, bd.total_rhs_log.imag,
                     abs(lg - bd.total_rhs_log)])
        parts.append(bd.to_dict())
    cols = ["x", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "resid_abs"]
    return render(cols, rows, cfg.fmt, {"breakdowns": parts})


def cmd_bv(cfg: RunConfig, args) -> str:
    rows = [[x, args.Q, bv_sum(x, args.Q)] for x in cfg.grid]
    return render(["x", "Q", "bv_sum"], rows, cfg.fmt)


def cmd_appendix(cfg: RunConfig, args) -> str:
    zeta = _bank(cfg)["zeta"]
    height = args.T if args.T is not None else zeta.complete_to
    rows = [[x, mertens(x), liouville_sum(x), sqrt2_log_residual(x), zero_reciprocal_sum(zeta, height)]
            for x in cfg.grid]
    return render(["x", "mertens", "liouville", "sqrt2_log_residual", "zero_reciprocal_sum"], rows, cfg.fmt)


def cmd_verify(cfg: RunConfig, args) -> tuple[str, int]:
    results = acceptance.run_all(_bank(cfg))
    lines = [r.line() for r in results]
    failed = [r for r in results if r.gating and not r.passed]
    lines.append(f"{sum(1 for r in results if r.gating) - len(failed)} passed, {len(failed)} failed")
    return "\n".join(lines) + "\n", EXIT_ACCEPTANCE if failed else EXIT_OK


COMMANDS = {
    "characters": cmd_characters, "sieve": cmd_sieve, "product": cmd_product, "aim": cmd_aim,
    "drh": cmd_drh, "ramanujan": cmd_ramanujan, "bv": cmd_bv, "appendix": cmd_appendix,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--zeros", help="zero fixture directory (EULERLAB_ZEROS overrides)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", dest="fmt", default="csv", choices=["csv", "json"])

    p = argparse.ArgumentParser(prog="eulerlab", description="Partial Euler products of Dirichlet L-functions.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, grid=None, s=False, chi=False, q=False):
        sp = sub.add_parser(name, help=help_, parents=[common])
        if grid is not None:
            sp.add_argument("--x", dest="grid", default=grid, help="A:B:k, k points per decade")
        if s:
            sp.add_argument("--s", default="0.75", help="complex s, e.g. 0.75 or 0.5+14.13j")
            sp.add_argument("--on-line", action="store_true", help="treat Re s as exactly 1/2")
        if chi:
            sp.add_argument("--chi", default="4.1", help="character label q.index")
        if q:
            sp.add_argument("--q", type=int, default=None)
        return sp

    add("characters", "characters mod q", q=True)
    add("sieve", "theta, psi, pi, E per class", grid="1e3:1e6:1", q=True)
    add("product", "partial Euler product", grid="1e3:1e6:1", s=True, chi=True)
    sp = add("aim", "term breakdown and sweep", grid="1e3:1e6:1", s=True, chi=True)
    sp.add_argument("--no-zeros", action="store_true")
    sp.add_argument("--chain-rule", default="standard", choices=["standard", "extended"])
    sp.add_argument("--case1-signs", default="stated", choices=["stated", "consistent"])
    sp = add("drh", "ratio to the critical-line limit", grid="1e3:1e6:1", chi=True)
    sp.add_argument("--t", type=float, default=0.0)
    sp.add_argument("--with-zeros", action="store_true", help="divide out the finite-x correction")
    sp.add_argument("--no-sqrt2", action="store_true")
    sp = add("ramanujan", "zeta-function case", grid="1e3:1e6:1", s=True)
    sp.add_argument("--no-zeros", action="store_true")
    sp.add_argument("--case1-signs", default="stated", choices=["stated", "consistent"])
    sp = add("bv", "Bombieri-Vinogradov sum", grid="1e5")
    sp.add_argument("--Q", type=int, default=30)
    sp = add("appendix", "Mertens, Liouville, sqrt2 residual, zero reciprocal sum", grid="1e3:1e6:1")
    sp.add_argument("--T", type=float, default=None, help="height for the zero reciprocal sum")
    add("verify", "run the acceptance suite")
    return p


def config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        q=getattr(args, "q", None),
        chi=getattr(args, "chi", None),
        s=parse_s(args.s) if getattr(args, "s", None) is not None else None,
        on_critical_line=getattr(args, "on_line", False),
        grid=parse_grid(args.grid) if getattr(args, "grid", None) else (),
        zeros=args.zeros,
        out=args.out,
        fmt=args.fmt,
    )


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", OffStripWarning)
            result = COMMANDS[cfg.command](cfg, args)
    except (MissingZerosError, ZeroFileError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIXTURE
    except (ConfigError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())

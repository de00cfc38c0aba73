"""Command-line front end: table and figure datasets plus the verification run.

Exit codes: 0 success, 1 verification failure or model anomaly, 2 invalid
arguments, 3 precision or resource exhaustion.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .analysis import conjecture1_study, critical_betas, energy_sweep, truncation_beta
from .config import PRECISION_ENV, RunConfig, default_precision_bits
from .errors import ModelAnomalyError, PrecisionError, ResourceError
from .exact import Q
from .model import DimensionlessProblem
from .polysol import polysol_roots
from .rrm import ritz_values

log = logging.getLogger(__name__)

EXIT_OK, EXIT_VERIFY, EXIT_ARGS, EXIT_RESOURCE = 0, 1, 2, 3

_NUMBER = re.compile(r"-?(0|[1-9]\d*)(\.\d+)?([eE][+-]?\d+)?")


@dataclass(frozen=True)
class Table:
    header: list
    rows: list

    def to_csv(self) -> str:
        lines = [",".join(self.header)] + [",".join(row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        """One array per column; numeric cells keep their printed digits."""
        parts = []
        for j, name in enumerate(self.header):
            cells = []
            for row in self.rows:
                cell = row[j]
                if cell == "":
                    cells.append("null")
                elif _NUMBER.fullmatch(cell):
                    cells.append(cell)
                else:
                    cells.append(json.dumps(cell))
            parts.append(f"  {json.dumps(name)}: [{', '.join(cells)}]")
        return "{\n" + ",\n".join(parts) + "\n}\n"

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()


def _columns(n_max: int) -> list:
    return [f"n{n}" for n in range(n_max + 1)]


def cmd_table1(l: int, nu_list: Sequence[int], n_max: int, cfg: RunConfig) -> Table:
    """Truncation roots ``beta_l^(nu, n)``: one row per ``nu``."""
    rows = []
    for nu in sorted(nu_list):
        roots = polysol_roots(l, nu, cfg.digits, cfg.precision_bits)
        cells = [roots[n].beta_root.format(cfg.digits) if n < len(roots) else "" for n in range(n_max + 1)]
        rows.append([str(nu)] + cells)
    return Table(["nu"] + _columns(n_max), rows)


def table2_cells(l_max: int, shell_max: int, n_max: int) -> list:
    """``(n, l)`` pairs ordered by shell ``n + l``, then by ``n``."""
    return [
        (n, shell - n)
        for shell in range(shell_max + 1)
        for n in range(shell + 1)
        if shell - n <= l_max and n <= n_max
    ]


def cmd_table2(l_max: int, shell_max: int, cfg: RunConfig, n_max: int = 5) -> Table:
    """Particle-in-a-sphere levels at ``beta = 0`` from the Ritz solver."""
    cells = table2_cells(l_max, shell_max, n_max)
    need: dict = {}
    for n, l in cells:
        need[l] = max(need.get(l, 0), n + 1)
    spectra = {
        l: ritz_values(DimensionlessProblem(l, 0), cfg.basis_size, k, cfg.digits, cfg.precision_bits)
        for l, k in sorted(need.items())
    }
    rows = [[str(n), str(l), spectra[l].values[n].format(cfg.digits)] for n, l in cells]
    return Table(["n", "l", "E"], rows)


def cmd_table3(l_set: Sequence[int], n_max: int, cfg: RunConfig) -> Table:
    """Levels ``l`` and ``l + 2`` at ``beta_l = (l+1)(l+2)``."""
    rows = []
    for l in sorted(set(l_set)):
        beta = truncation_beta(l)
        for ll in (l, l + 2):
            spec = ritz_values(DimensionlessProblem(ll, beta), cfg.basis_size, n_max + 1, cfg.digits, cfg.precision_bits)
            rows.append([str(beta), str(ll)] + [v.format(cfg.digits) for v in spec.values])
    return Table(["beta", "l"] + _columns(n_max), rows)


def cmd_table4(l_set: Sequence[int], n_max: int, cfg: RunConfig) -> Table:
    """Critical couplings ``beta_nl^c``: one row per ``l``."""
    rows = []
    for l in sorted(set(l_set)):
        crit = critical_betas(l, n_max, cfg.digits, cfg.basis_size, cfg.precision_bits)
        rows.append([str(l)] + [c.beta_c.format(cfg.digits) for c in crit])
    return Table(["l"] + _columns(n_max), rows)


def cmd_fig1(l_set: Sequence[int], beta_max, step, n_max: int, cfg: RunConfig, nu_max: int = 4) -> Table:
    sweep = energy_sweep(l_set, beta_max, step, n_max + 1, cfg.basis_size, cfg.digits, cfg.precision_bits, nu_max)
    return Table(sweep.header(), sweep.rows(cfg.digits))


def cmd_fig2(l_set: Sequence[int], n_max: int, nu_list: Sequence[int], cfg: RunConfig) -> Table:
    rows = []
    for l in sorted(set(l_set)):
        for n in range(n_max + 1):
            nus = [nu for nu in sorted(nu_list) if nu >= n]
            for r in conjecture1_study(l, n, nus, cfg.digits, cfg.basis_size, cfg.precision_bits):
                rows.append(
                    [str(l), str(n), str(r.nu)]
                    + [x.format(cfg.digits) for x in (r.beta_nu, r.beta_c, r.gap, r.log_gap)]
                )
    return Table(["l", "n", "nu", "beta_nu", "beta_c", "gap", "log_gap"], rows)


def cmd_verify(cfg: RunConfig, names: Sequence[str] | None = None, out=None) -> int:
    """Run the verification checks, print one line per check, return the exit status."""
    from .verify import Settings, run_checks

    out = out or sys.stdout
    results = run_checks(Settings(cfg.digits, cfg.basis_size, cfg.precision_bits), names)
    for r in results:
        print(r.line(), file=out)
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=out)
    return EXIT_VERIFY if failed else EXIT_OK


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def _rational(text: str):
    try:
        value = Q(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    return value


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=10, help="significant digits (default 10)")
    common.add_argument("--basis-size", type=int, default=40, help="Rayleigh-Ritz basis size N (default 40)")
    common.add_argument(
        "--precision-bits",
        type=int,
        default=None,
        help=f"working precision in bits (default 256, or ${PRECISION_ENV})",
    )
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(
        prog="confined-hydrogen",
        description="Spectra of the hydrogen atom confined in an impenetrable sphere.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", parents=[common], help="truncation roots beta_l^(nu,n)")
    p.add_argument("--l", type=int, nargs=1, default=[0])
    p.add_argument("--nu", type=int, nargs="+", default=[5, 10, 15, 20, 25, 30])
    p.add_argument("--n-max", type=int, default=3)

    p = sub.add_parser("table2", parents=[common], help="levels at beta = 0 by shell n + l")
    p.add_argument("--l-max", type=int, default=6)
    p.add_argument("--shell-max", type=int, default=6)
    p.add_argument("--n-max", type=int, default=5)

    p = sub.add_parser("table3", parents=[common], help="spectra at beta_l = (l+1)(l+2)")
    p.add_argument("--l", type=int, nargs="+", default=[0, 1, 2])
    p.add_argument("--n-max", type=int, default=3)

    p = sub.add_parser("table4", parents=[common], help="critical couplings beta_nl^c")
    p.add_argument("--l", type=int, nargs="+", default=[0, 1, 2, 3])
    p.add_argument("--n-max", type=int, default=3)

    p = sub.add_parser("fig1", parents=[common], help="lowest levels against beta")
    p.add_argument("--l", type=int, nargs="+", default=[0, 1, 2])
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--beta-max", type=_rational, default=mpq(8))
    p.add_argument("--step", type=_rational, default=mpq(1, 4))
    p.add_argument("--nu", type=int, default=4, help="largest nu for the exact ground-state markers")

    p = sub.add_parser("fig2", parents=[common], help="log gap between truncation roots and critical couplings")
    p.add_argument("--l", type=int, nargs="+", default=[0])
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--nu", type=int, nargs="+", default=list(range(5, 31)))

    p = sub.add_parser("verify", parents=[common], help="run invariant suites and golden-table comparisons")
    p.add_argument("--only", action="append", default=None, metavar="CHECK", help="run only this check (repeatable)")
    return parser


def _validate(args) -> None:
    def nonneg(name, values):
        if any(v < 0 for v in values):
            raise ValueError(f"{name} must be non-negative")

    if hasattr(args, "l"):
        nonneg("--l", args.l if isinstance(args.l, list) else [args.l])
    for name in ("n_max", "l_max", "shell_max"):
        if hasattr(args, name):
            nonneg("--" + name.replace("_", "-"), [getattr(args, name)])
    if args.command in ("table1", "fig2"):
        nonneg("--nu", args.nu)
        if not args.nu:
            raise ValueError("--nu needs at least one value")
    if args.command == "table1":
        if max(args.nu) < args.n_max:
            raise ValueError("--n-max exceeds the largest --nu")
        if len(set(args.nu)) != len(args.nu):
            raise ValueError("--nu values must be distinct")
    if args.command == "fig2" and len(set(args.nu)) != len(args.nu):
        raise ValueError("--nu values must be distinct")
    if args.command == "fig1":
        if args.step <= 0:
            raise ValueError("--step must be > 0")
        if args.beta_max < 0:
            raise ValueError("--beta-max must be >= 0")
        nonneg("--nu", [args.nu])
    if args.command in ("table2", "table3", "fig1") and args.n_max + 1 > args.basis_size:
        raise ValueError("--n-max + 1 exceeds the basis size")


def build(args, cfg: RunConfig) -> Table:
    if args.command == "table1":
        return cmd_table1(args.l[0], args.nu, args.n_max, cfg)
    if args.command == "table2":
        return cmd_table2(args.l_max, args.shell_max, cfg, args.n_max)
    if args.command == "table3":
        return cmd_table3(args.l, args.n_max, cfg)
    if args.command == "table4":
        return cmd_table4(args.l, args.n_max, cfg)
    if args.command == "fig1":
        return cmd_fig1(args.l, args.beta_max, args.step, args.n_max, cfg, args.nu)
    if args.command == "fig2":
        return cmd_fig2(args.l, args.n_max, args.nu, cfg)
    raise ValueError(f"unknown command {args.command}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ARGS
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        bits = args.precision_bits if args.precision_bits is not None else default_precision_bits()
        cfg = RunConfig(args.digits, args.basis_size, bits, args.out, args.format)
        _validate(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS

    try:
        if args.command == "verify":
            if cfg.output_path:
                with open(cfg.output_path, "w", encoding="utf-8") as fh:
                    return cmd_verify(cfg, args.only, fh)
            return cmd_verify(cfg, args.only)
        text = build(args, cfg).render(cfg.format)
    except (PrecisionError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ModelAnomalyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS

    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

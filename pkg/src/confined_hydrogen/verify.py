"""Verification suites: kernel invariants, solver properties and golden tables.

Every check returns a :class:`CheckResult` carrying the largest measured
residual, so a report shows how far from its threshold each check landed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import mpmath
from gmpy2 import mpq

from . import golden
from .analysis import critical_betas, find_crossing, truncation_beta
from .errors import ConfinedHydrogenError, ModelAnomalyError, PrecisionError, ResourceError
from .exact import (
    DEFAULT_DIGITS,
    DEFAULT_PRECISION_BITS,
    ExactPolynomial,
    Q,
    SymmetricExactMatrix,
    inertia,
    sturm_count,
)
from .model import DimensionlessProblem
from .oracles import critical_beta_bessel, particle_in_box_energy
from .polysol import RecurrenceSpec, polysol_roots, recurrence_coefficients
from .rrm import DEFAULT_BASIS_SIZE, BasisSpec, assemble, count_below, expectation_inverse_r, ritz_values


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} residual={self.residual:.3e}"
        return f"{text} {self.detail}" if self.detail else text


@dataclass(frozen=True)
class Settings:
    """Solver settings for a verification run (no lower bound on the basis size)."""

    digits: int = DEFAULT_DIGITS
    basis_size: int = DEFAULT_BASIS_SIZE
    precision_bits: int = DEFAULT_PRECISION_BITS


def _golden_delta(value, printed: str) -> float:
    """Deviation from a printed value in units of its ninth significant digit."""
    return abs(float(Q(value) - Q(printed))) / golden.ninth_digit_unit(printed)


def _golden_result(name: str, deltas: dict, missing: list) -> CheckResult:
    worst_key = max(deltas, key=deltas.get) if deltas else None
    worst = deltas[worst_key] if deltas else 0.0
    bad = [k for k, d in deltas.items() if d > 1]
    parts = []
    if bad:
        parts.append("off by more than 1 unit in digit 9: " + ", ".join(f"{k}:{deltas[k]:.3g}" for k in bad))
    if missing:
        parts.append(f"not computed: {', '.join(map(str, missing))}")
    if not parts and worst_key is not None:
        parts.append(f"worst {worst_key}")
    return CheckResult(name, not bad and not missing, worst, "; ".join(parts))


# ---------------------------------------------------------------------------
# kernel and model invariants
# ---------------------------------------------------------------------------


def check_kernel(s: Settings) -> CheckResult:
    """Sturm counts and inertia on small cases with known answers."""
    x2m2 = ExactPolynomial([-2, 0, 1])
    counts = (
        sturm_count(x2m2, 0, 2),
        sturm_count(ExactPolynomial([1, 0, 1]), -10, 10),
        sturm_count(ExactPolynomial([6, -5, 1]), 0, 4),
    )
    m = SymmetricExactMatrix.from_rows([[0, 1], [1, 0]])
    ok = counts == (1, 0, 2) and inertia(m) == (1, 0, 1)
    return CheckResult("kernel_sturm_inertia", ok, 0.0 if ok else 1.0, f"counts={counts}")


def check_overlap_positive_definite(s: Settings, overlaps: Iterable | None = None) -> CheckResult:
    """The overlap matrix must have inertia ``(0, 0, N)``.

    ``overlaps`` replaces the assembled matrices (used to inject faults).
    """
    if overlaps is None:
        overlaps = [assemble(BasisSpec(l, 1, s.basis_size)).S for l in range(4)]
    failures = []
    for i, S in enumerate(overlaps):
        neg, zero, pos = inertia(S)
        if (neg, zero) != (0, 0):
            failures.append(f"#{i} inertia=({neg},{zero},{pos})")
    return CheckResult("overlap_positive_definite", not failures, float(len(failures)), "; ".join(failures))


def check_recurrence_terminates(s: Settings, l_max: int = 5, nu_max: int = 10) -> CheckResult:
    """``B_nu`` vanishes identically, so the series truncates once ``c_{nu+1} = 0``."""
    bad = [
        (l, nu)
        for l in range(l_max + 1)
        for nu in range(nu_max + 1)
        if not recurrence_coefficients(RecurrenceSpec(l, nu), nu)[1].is_zero()
    ]
    return CheckResult("recurrence_B_nu_zero", not bad, float(len(bad)), f"nonzero at {bad}" if bad else "")


def check_node_law(s: Settings, l_max: int = 3, nu_max: int = 10) -> CheckResult:
    """The ``i``-th truncation root carries exactly ``i`` nodes in ``(0, 1)``."""
    bad = []
    for l in range(l_max + 1):
        for nu in range(nu_max + 1):
            try:
                roots = polysol_roots(l, nu, s.digits, s.precision_bits)
            except ModelAnomalyError as exc:
                bad.append(f"l={l},nu={nu}: {exc}")
                continue
            bad += [f"l={l},nu={nu},i={i}" for i, r in enumerate(roots) if r.node_count != i]
    return CheckResult("node_count_index_law", not bad, float(len(bad)), "; ".join(bad))


def check_scaling(s: Settings, betas=(mpq(1, 2), 2, 6), tol: float = 1e-8) -> CheckResult:
    """``E(1, beta) = beta^2 E(beta, 1)`` for the ground level."""
    worst = 0.0
    for b in betas:
        b = Q(b)
        left = ritz_values(DimensionlessProblem(0, b, 1), s.basis_size, 1, s.digits + 2, s.precision_bits)
        right = ritz_values(DimensionlessProblem(0, 1, b), s.basis_size, 1, s.digits + 2, s.precision_bits)
        worst = max(worst, abs(float(left.values[0].value - b * b * right.values[0].value)))
    return CheckResult("scaling_identity", worst < tol, worst)


def hellmann_feynman_residual(l: int, n: int, beta, s: Settings, h=mpq(1, 10**5)) -> float:
    """``|dW/dbeta + <1/r>|`` with a central difference of Ritz values."""
    beta = Q(beta)
    digits = s.digits + 6
    up = ritz_values(DimensionlessProblem(l, beta + h), s.basis_size, n + 1, digits, s.precision_bits).values[n]
    down = ritz_values(DimensionlessProblem(l, beta - h), s.basis_size, n + 1, digits, s.precision_bits).values[n]
    inv_r = expectation_inverse_r(DimensionlessProblem(l, beta), s.basis_size, n, digits, s.precision_bits)
    with mpmath.workprec(s.precision_bits):
        slope = (up.value - down.value) / (2 * mpmath.mpf(h.numerator) / h.denominator)
        return float(abs(slope + inv_r.value))


def check_hellmann_feynman(s: Settings, betas=(mpq(1, 2), 1, 2, 4), tol: float = 1e-6) -> CheckResult:
    worst = max(hellmann_feynman_residual(l, n, b, s) for l in (0, 1) for n in (0, 1) for b in betas)
    return CheckResult("hellmann_feynman", worst < tol, worst)


def variational_excess(l: int, beta, k: int, N: int, s: Settings, slack=mpq(1, 10**12)) -> tuple:
    """Certify ``W_n(N+1) <= W_n(N) + slack`` for ``n < k`` by an exact count.

    Returns ``(ok, excess)``: ``ok`` holds when the basis of size ``N+1`` has at
    least ``n+1`` Ritz values below the upper bracket end of ``W_n(N)`` plus
    ``slack``; ``excess`` is the largest measured ``W_n(N+1) - W_n(N)``.
    """
    beta = Q(beta)
    small = ritz_values(DimensionlessProblem(l, beta), N, k, s.digits + 2, s.precision_bits)
    large = ritz_values(DimensionlessProblem(l, beta), N + 1, k, s.digits + 2, s.precision_bits)
    mat = assemble(BasisSpec(l, 1, N + 1))
    ok = all(count_below(mat, beta, b + slack) >= n + 1 for n, (_, b) in enumerate(small.brackets))
    excess = max(float(w1.value - w0.value) for w0, w1 in zip(small.values, large.values))
    return ok, excess


def check_variational(s: Settings, sizes=range(5, 41), ls=(0, 1), beta=1, k: int = 4) -> CheckResult:
    worst = -math.inf
    bad = []
    for l in ls:
        for N in sizes:
            ok, excess = variational_excess(l, beta, k, N, s)
            worst = max(worst, excess)
            if not ok:
                bad.append(f"l={l},N={N}")
    return CheckResult("variational_monotonicity", not bad, max(worst, 0.0), "; ".join(bad))


def converged_ground_energy(beta, s: Settings, step: int = 10, max_N: int = 120) -> tuple:
    """Ground level at ``r0 = 1`` with the basis grown until two sizes agree."""
    N = s.basis_size
    prev = ritz_values(DimensionlessProblem(0, beta), N, 1, s.digits, s.precision_bits).values[0]
    while N + step <= max_N:
        N += step
        cur = ritz_values(DimensionlessProblem(0, beta), N, 1, s.digits, s.precision_bits).values[0]
        if abs(cur.value - prev.value) <= mpmath.mpf(10) ** (-s.digits) * max(1, abs(cur.value)):
            return cur, N
        prev = cur
    return prev, N


def check_free_atom(s: Settings) -> CheckResult:
    """``E_00(1, beta) / beta^2`` decreases toward ``-1/2`` and is within 1e-3 at beta = 10."""
    ratios = []
    for b in (4, 6, 8, 10):
        e, _ = converged_ground_energy(b, s)
        ratios.append(float(e.value) / b**2)
    dev = abs(ratios[-1] + 0.5)
    decreasing = all(b < a for a, b in zip(ratios, ratios[1:]))
    ok = dev < 1e-3 and decreasing and ratios[-1] > -0.5
    return CheckResult("free_atom_limit", ok, dev, "ratios=" + ",".join(f"{r:.8f}" for r in ratios))


# ---------------------------------------------------------------------------
# golden tables
# ---------------------------------------------------------------------------


def check_table1(s: Settings) -> CheckResult:
    deltas = {}
    for nu, row in golden.TABLE1.items():
        roots = polysol_roots(0, nu, s.digits, s.precision_bits)
        for n, printed in enumerate(row):
            deltas[(nu, n)] = _golden_delta(roots[n].beta_root.value, printed)
    return _golden_result("golden_table1", deltas, [])


def check_table2(s: Settings) -> CheckResult:
    deltas, missing = {}, []
    by_l: dict = {}
    for n, l in golden.TABLE2:
        by_l.setdefault(l, []).append(n)
    for l, ns in sorted(by_l.items()):
        k = min(max(ns) + 1, s.basis_size)
        spec = ritz_values(DimensionlessProblem(l, 0), s.basis_size, k, s.digits, s.precision_bits)
        for n in ns:
            if n >= k:
                missing.append((n, l))
                continue
            w = spec.values[n].value
            deltas[(n, l)] = max(
                _golden_delta(w, golden.TABLE2[(n, l)]),
                _golden_delta(particle_in_box_energy(n, l).value, golden.TABLE2[(n, l)]),
            )
    return _golden_result("golden_table2", deltas, missing)


def check_table3(s: Settings, anchor_tol: float = 1e-9, pair_tol: float = 1e-8) -> CheckResult:
    deltas, missing, notes = {}, [], []
    worst_pair = 0.0
    ok = True
    for beta, block in golden.TABLE3.items():
        levels = {}
        for l, row in block.items():
            k = min(len(row), s.basis_size)
            spec = ritz_values(DimensionlessProblem(l, beta), s.basis_size, k, s.digits, s.precision_bits)
            levels[l] = spec.values
            for n, printed in enumerate(row):
                if n >= k:
                    missing.append((beta, n, l))
                    continue
                deltas[(beta, n, l)] = _golden_delta(spec.values[n].value, printed)
        lo = min(block)
        anchor = -mpq(beta * beta, 2 * (lo + 2) ** 2)
        err = abs(float(levels[lo][0].value - anchor))
        if err >= anchor_tol:
            ok = False
            notes.append(f"anchor beta={beta}: {err:.3e}")
        for n in range(len(block[lo]) - 1):
            if n + 1 < len(levels[lo]) and n < len(levels[lo + 2]):
                gap = abs(float(levels[lo][n + 1].value - levels[lo + 2][n].value))
                worst_pair = max(worst_pair, gap)
                if gap >= pair_tol:
                    ok = False
                    notes.append(f"pair beta={beta} n={n}: {gap:.3e}")
    base = _golden_result("golden_table3", deltas, missing)
    detail = "; ".join(filter(None, [base.detail] + notes + [f"worst pair gap {worst_pair:.3e}"]))
    return CheckResult("golden_table3", base.passed and ok, base.residual, detail)


def check_table4(s: Settings, oracle_tol: float = 1e-9) -> CheckResult:
    deltas, missing, notes = {}, [], []
    worst_oracle = 0.0
    for l, row in golden.TABLE4.items():
        try:
            crit = critical_betas(l, len(row) - 1, s.digits, s.basis_size, s.precision_bits)
        except ValueError as exc:
            missing += [(n, l) for n in range(len(row))]
            notes.append(f"l={l}: {exc}")
            continue
        for n, printed in enumerate(row):
            value = crit[n].beta_c.value
            deltas[(n, l)] = _golden_delta(value, printed)
            err = abs(float(value - critical_beta_bessel(n, l).value))
            worst_oracle = max(worst_oracle, err)
    base = _golden_result("golden_table4", deltas, missing)
    ok = base.passed and worst_oracle < oracle_tol
    detail = "; ".join(filter(None, [base.detail] + notes + [f"oracle gap {worst_oracle:.3e}"]))
    return CheckResult("golden_table4", ok, base.residual, detail)


def check_crossings(s: Settings, tol: float = 1e-8) -> CheckResult:
    worst = 0.0
    bad = []
    for l in (0, 1, 2):
        target = truncation_beta(l)
        for n in (0, 1):
            rec = find_crossing(n, l, (target - 1, target + 1), s.digits, s.basis_size, s.precision_bits)
            err = abs(float(rec.beta_star.value) - target)
            worst = max(worst, err)
            if err >= tol:
                bad.append(f"(n={n},l={l}) beta*={rec.beta_star.format(s.digits)}")
    return CheckResult("crossings_at_truncation_beta", not bad, worst, "; ".join(bad))


def check_conjecture1(s: Settings, nus=range(5, 31)) -> CheckResult:
    """Gaps to the critical couplings are positive and strictly decreasing in ``nu``."""
    from .analysis import conjecture1_study

    notes = []
    ok = True
    for n in range(4):
        try:
            rows = conjecture1_study(0, n, list(nus), s.digits, s.basis_size, s.precision_bits)
        except ModelAnomalyError as exc:
            ok = False
            notes.append(f"n={n}: {exc}")
            continue
        if n == 0 and rows[-1].nu == 30:
            err = abs(float(rows[-1].gap.value) - 5.485e-4)
            notes.append(f"gap(30,0)={float(rows[-1].gap.value):.6e}")
            if err > 1e-7:
                ok = False
    return CheckResult("conjecture1_gaps", ok, 0.0 if ok else 1.0, "; ".join(notes))


CHECKS: dict[str, Callable[[Settings], CheckResult]] = {
    "kernel": check_kernel,
    "overlap": check_overlap_positive_definite,
    "recurrence": check_recurrence_terminates,
    "nodes": check_node_law,
    "scaling": check_scaling,
    "hellmann_feynman": check_hellmann_feynman,
    "variational": check_variational,
    "free_atom": check_free_atom,
    "table1": check_table1,
    "table2": check_table2,
    "table3": check_table3,
    "table4": check_table4,
    "crossings": check_crossings,
    "conjecture1": check_conjecture1,
}


def run_checks(settings: Settings, names: Iterable[str] | None = None) -> list[CheckResult]:
    """Run the named checks (all by default).

    Model or argument errors inside a check count as a failure of that check;
    precision and resource exhaustion propagate.
    """
    selected = list(CHECKS) if names is None else list(names)
    unknown = [n for n in selected if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}")
    out = []
    for name in selected:
        try:
            out.append(CHECKS[name](settings))
        except (PrecisionError, ResourceError):
            raise
        except (ConfinedHydrogenError, ValueError, ArithmeticError) as exc:
            out.append(CheckResult(name, False, math.inf, f"{type(exc).__name__}: {exc}"))
    return out

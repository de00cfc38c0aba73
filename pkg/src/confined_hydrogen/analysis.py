"""Critical couplings, level crossings, truncation-root convergence and sweeps."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath
from gmpy2 import mpq
from scipy.optimize import brentq

from .errors import ModelAnomalyError, NoSignChangeError, ResourceError
from .exact import DEFAULT_DIGITS, DEFAULT_PRECISION_BITS, BigFloat, Q, dyadic, format_sig, to_mpf
from .model import DimensionlessProblem
from .oracles import critical_beta_bessel
from .polysol import polysol_roots
from .rrm import (
    DEFAULT_BASIS_SIZE,
    BasisSpec,
    assemble,
    bisect_levels,
    count_critical_below,
    critical_guesses,
    ritz_values,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CriticalValue:
    n: int
    l: int
    beta_c: BigFloat
    digits: int
    method: str
    N: int | None = None
    bracket: tuple = ()


@dataclass(frozen=True)
class CrossingRecord:
    pair: tuple
    beta_star: BigFloat
    shared_energy: BigFloat
    residual: BigFloat
    iterations: int


@dataclass
class SweepTable:
    """Ritz values on a coupling grid, one column per ``(n, l)`` level.

    ``markers`` maps ``l`` to the exact ground-state points
    ``(beta_l^(nu,0), E_l^(nu,0))``; in the CSV these become extra rows carrying a
    ``marker_l<l>`` column.
    """

    l_set: tuple
    betas: tuple
    columns: dict
    markers: dict = field(default_factory=dict)
    marker_rows: frozenset = frozenset()

    def header(self) -> list:
        return ["beta"] + list(self.columns) + [f"marker_l{l}" for l in self.l_set]

    def rows(self, digits: int) -> list:
        out = []
        marker_lookup = {(l, beta): e for l, pts in self.markers.items() for beta, e in pts}
        for i, beta in enumerate(self.betas):
            row = [format_sig(beta, digits)]
            row += [col[i].format(digits) for col in self.columns.values()]
            for l in self.l_set:
                e = marker_lookup.get((l, beta))
                row.append(e.format(digits) if e is not None else "")
            out.append(row)
        return out


# ---------------------------------------------------------------------------
# critical couplings
# ---------------------------------------------------------------------------


def _critical_levels(l: int, k: int, N: int, digits: int, precision_bits: int) -> list:
    mat = assemble(BasisSpec(l, 1, N))
    guesses = critical_guesses(mat, precision_bits, digits)[:k]
    return bisect_levels(lambda b: count_critical_below(mat, b), k, mpq(0), digits, guesses)


@lru_cache(maxsize=None)
def critical_betas(
    l: int,
    n_max: int,
    digits: int = DEFAULT_DIGITS,
    N: int = DEFAULT_BASIS_SIZE,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    escalate: bool = True,
    max_N: int = 100,
    step: int = 10,
) -> tuple:
    """``beta_nl^c`` for ``n = 0..n_max`` by bisection on the inertia of ``T - beta C``.

    With ``escalate`` the basis grows by ``step`` until two successive sizes
    agree to ``digits`` significant digits; the larger-basis values are kept.
    """
    k = n_max + 1
    if k > N:
        raise ValueError(f"basis size {N} cannot resolve {k} critical levels")
    levels = _critical_levels(l, k, N, digits + 2, precision_bits)
    used = N
    if escalate:
        while True:
            if used + step > max_N:
                raise ResourceError(f"critical beta for l={l} did not stabilize up to N={max_N}")
            nxt = _critical_levels(l, k, used + step, digits + 2, precision_bits)
            stable = all(
                abs(Q(a[2]) - Q(b[2])) <= max(abs(Q(b[2])), 1) / mpq(10) ** (digits + 1)
                for a, b in zip(levels, nxt)
            )
            levels, used = nxt, used + step
            if stable:
                break
    prec = max(precision_bits, int(digits * 3.33) + 64)
    return tuple(
        CriticalValue(n, l, BigFloat(to_mpf(v, prec), prec), digits, "inertia-bisection", used, (a, b))
        for n, (a, b, v) in enumerate(levels)
    )


def critical_beta(
    n: int,
    l: int,
    digits: int = DEFAULT_DIGITS,
    N: int = DEFAULT_BASIS_SIZE,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    escalate: bool = True,
) -> CriticalValue:
    """Coupling at which level ``(n, l)`` passes through ``E = 0``."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    # computing at least four levels lets single lookups share the cached table
    return critical_betas(l, max(n, 3), digits, N, precision_bits, escalate)[n]


def critical_beta_oracle(n: int, l: int, digits: int = DEFAULT_DIGITS) -> CriticalValue:
    return CriticalValue(n, l, critical_beta_bessel(n, l), digits, "bessel-oracle")


# ---------------------------------------------------------------------------
# crossings
# ---------------------------------------------------------------------------


def _level(l: int, n: int, beta, N: int, digits: int, precision_bits: int) -> BigFloat:
    return ritz_values(DimensionlessProblem(l, beta), N, n + 1, digits, precision_bits).values[n]


def crossing_difference(n: int, l: int, beta, N: int = DEFAULT_BASIS_SIZE, digits: int = DEFAULT_DIGITS, precision_bits: int = DEFAULT_PRECISION_BITS) -> tuple:
    """``(E_{n+1,l} - E_{n,l+2}, E_{n+1,l}, E_{n,l+2})`` at ``beta``."""
    upper = _level(l, n + 1, beta, N, digits, precision_bits)
    lower = _level(l + 2, n, beta, N, digits, precision_bits)
    with mpmath.workprec(upper.precision_bits):
        return upper.value - lower.value, upper, lower


def find_crossing(
    n: int,
    l: int,
    bracket: Sequence = (1, 3),
    digits: int = DEFAULT_DIGITS,
    N: int = DEFAULT_BASIS_SIZE,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_iter: int = 100,
) -> CrossingRecord:
    """Locate ``beta*`` where ``E_{n+1,l}`` and ``E_{n,l+2}`` coincide.

    ``D(beta) = E_{n+1,l} - E_{n,l+2}`` must change sign on ``bracket``.  The
    root is found with Brent's bracketing method in double precision; beyond
    13 digits the bracket is then shrunk further by Illinois regula falsi on
    exact rational couplings.
    """
    work = digits + 4
    a, b = Q(bracket[0]), Q(bracket[1])
    fa = crossing_difference(n, l, a, N, work, precision_bits)[0]
    fb = crossing_difference(n, l, b, N, work, precision_bits)[0]
    if fa * fb > 0:
        raise NoSignChangeError(
            f"D has no sign change on [{float(a)}, {float(b)}]: D(a)={mpmath.nstr(fa, 8)}, D(b)={mpmath.nstr(fb, 8)}",
            fa,
            fb,
        )
    evaluated = {a: fa, b: fb}

    def d(x) -> mpmath.mpf:
        x = Q(x)
        if x not in evaluated:
            evaluated[x] = crossing_difference(n, l, x, N, work, precision_bits)[0]
        return evaluated[x]

    if fa == 0 or fb == 0:
        x = a if fa == 0 else b
    else:
        scale = max(abs(float(a)), abs(float(b)), 1.0)
        x_tol = max(scale * 10.0 ** (-(digits + 2)), 4e-16 * scale)
        x = brentq(lambda t: float(d(t)), float(a), float(b), xtol=x_tol, maxiter=max_iter)
        x = Q(x)
        if digits > 13:
            x = _illinois(d, x, scale, digits, max_iter)
    it = len(evaluated) - 2
    diff, upper, lower = crossing_difference(n, l, x, N, work, precision_bits)
    prec = upper.precision_bits
    with mpmath.workprec(prec):
        shared = (upper.value + lower.value) / 2
        e_tol = mpmath.mpf(10) ** (-digits) * max(1, abs(shared))
        if abs(diff) > e_tol:
            log.warning("crossing residual %s exceeds tolerance %s", mpmath.nstr(diff, 5), mpmath.nstr(e_tol, 5))
        return CrossingRecord(
            ((n + 1, l), (n, l + 2)),
            BigFloat(to_mpf(x, prec), prec),
            BigFloat(shared, prec),
            BigFloat(abs(diff), prec),
            it,
        )


def _illinois(d, x0, scale: float, digits: int, max_iter: int):
    """Refine a double-precision root of ``d`` with regula falsi on exact rationals."""
    width = Q(scale) * mpq(4, 10**15)
    a, b = x0 - width, x0 + width
    fa, fb = d(a), d(b)
    while fa * fb > 0:
        width *= 4
        a, b = x0 - width, x0 + width
        fa, fb = d(a), d(b)
    x_tol = Q(scale) / mpq(10) ** (digits + 1)
    bits = 40 + int(3.33 * digits) + 8
    kept = None
    for _ in range(max_iter):
        if b - a <= x_tol:
            return (a + b) / 2
        x = b - Q(fb) * (b - a) / (Q(fb) - Q(fa))
        # stay half a tolerance inside the bracket so every step shrinks it
        x = min(max(x, a + x_tol / 2), b - x_tol / 2)
        x = dyadic(x, bits)
        fx = d(x)
        if fx == 0:
            return x
        if (fx < 0) == (fa < 0):
            a, fa = x, fx
            if kept == "b":
                fb /= 2
            kept = "b"
        else:
            b, fb = x, fx
            if kept == "a":
                fa /= 2
            kept = "a"
    return a if abs(fa) < abs(fb) else b


def truncation_beta(l: int) -> int:
    """Closed-form ground-state truncation root ``(l+1)(l+2)``."""
    return (l + 1) * (l + 2)


# ---------------------------------------------------------------------------
# convergence of truncation roots and sweeps
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _roots(l: int, nu: int, digits: int, precision_bits: int) -> tuple:
    return tuple(polysol_roots(l, nu, digits, precision_bits))


@dataclass(frozen=True)
class GapRow:
    nu: int
    beta_nu: BigFloat
    beta_c: BigFloat
    gap: BigFloat
    log_gap: BigFloat


def conjecture1_study(
    l: int,
    n: int,
    nu_list: Sequence[int],
    digits: int = DEFAULT_DIGITS,
    N: int = DEFAULT_BASIS_SIZE,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> list[GapRow]:
    """Gaps ``beta_l^(nu,n) - beta_nl^c`` and their natural logs for each ``nu``.

    Raises :class:`ModelAnomalyError` if a gap is not positive or the gaps do
    not strictly decrease with ``nu``.
    """
    nus = list(nu_list)
    if nus != sorted(nus) or len(set(nus)) != len(nus):
        raise ValueError("nu_list must be strictly ascending")
    bc = critical_beta(n, l, digits + 2, N, precision_bits)
    rows = []
    for nu in nus:
        if nu < n:
            raise ValueError(f"nu={nu} has no root with n={n}")
        root = _roots(l, nu, digits + 2, precision_bits)[n].beta_root
        prec = root.precision_bits
        with mpmath.workprec(prec):
            gap = root.value - bc.beta_c.value
            if gap <= 0:
                raise ModelAnomalyError(f"non-positive gap {mpmath.nstr(gap, 5)} at l={l}, n={n}, nu={nu}")
            rows.append(GapRow(nu, root, bc.beta_c, BigFloat(gap, prec), BigFloat(mpmath.log(gap), prec)))
    for prev, cur in zip(rows, rows[1:]):
        if not cur.gap.value < prev.gap.value:
            raise ModelAnomalyError(f"gap does not decrease from nu={prev.nu} to nu={cur.nu}")
    return rows


def beta_grid(beta_max, step) -> list:
    step = Q(step)
    beta_max = Q(beta_max)
    if step <= 0:
        raise ValueError("step must be > 0")
    count = int(beta_max // step)
    return [step * j for j in range(count + 1)]


def energy_sweep(
    l_set: Iterable[int],
    beta_max=8,
    step=mpq(1, 4),
    k: int = 4,
    N: int = DEFAULT_BASIS_SIZE,
    digits: int = DEFAULT_DIGITS,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    nu_max: int = 4,
) -> SweepTable:
    """Lowest ``k`` levels of each ``l`` on ``0, step, ..., <= beta_max``.

    Ground-state truncation points ``beta_l^(nu,0)`` for ``nu <= nu_max`` that
    fall inside the range are added as extra rows, each tagged with its exact
    energy.
    """
    ls = tuple(sorted(set(l_set)))
    grid = beta_grid(beta_max, step)
    markers: dict = {}
    extra = []
    for l in ls:
        pts = []
        for nu in range(nu_max + 1):
            sol = _roots(l, nu, digits + 2, precision_bits)[0]
            # nu = 0 has the rational root (l+1)(l+2); other roots are rounded
            # to a dyadic, which keys the marker row and the Ritz run alike
            b = Q(truncation_beta(l)) if nu == 0 else dyadic(sol.beta_root.exact(), 96)
            if b <= Q(beta_max):
                pts.append((b, sol.energy))
                extra.append(b)
        markers[l] = pts
    betas = sorted(set(grid) | set(extra))
    columns = {}
    for l in ls:
        spectra = [ritz_values(DimensionlessProblem(l, b), N, k, digits, precision_bits) for b in betas]
        for n in range(k):
            columns[f"E{n}_{l}"] = tuple(s.values[n] for s in spectra)
    return SweepTable(ls, tuple(betas), columns, markers, frozenset(extra))


def log_gap_decay_is_concave(rows: Sequence[GapRow]) -> bool:
    """Whether ``log gap`` versus ``log nu`` bends down (or is straight) at every interior point."""
    pts = [(math.log(r.nu), float(r.log_gap.value)) for r in rows]
    slopes = [(y2 - y1) / (x2 - x1) for (x1, y1), (x2, y2) in zip(pts, pts[1:])]
    return all(s2 <= s1 + 1e-9 for s1, s2 in zip(slopes, slopes[1:]))

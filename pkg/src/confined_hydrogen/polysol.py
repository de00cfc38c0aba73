"""Exact polynomial solutions of the confined radial equation.

The ansatz ``R(r) = r^l (1 - r) exp(-alpha r) sum_j c_j r^j`` turns the radial
equation into a three-term recurrence for ``c_j``.  Requiring the series to
stop at degree ``nu`` fixes ``alpha = beta / (l + nu + 2)`` and leaves a single
polynomial condition ``c_{nu+1}(beta) = 0`` whose ``nu + 1`` roots are the
special couplings where the problem is exactly solvable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import mpmath
from gmpy2 import mpq

from .errors import ModelAnomalyError, PrecisionError
from .exact import (
    DEFAULT_DIGITS,
    DEFAULT_PRECISION_BITS,
    BigFloat,
    ExactPolynomial,
    Q,
    SturmSequence,
    refine_root,
    refined_brackets,
    positive_root_bound,
    root_bound,
    sturm_count,
    to_mpf,
)


@dataclass(frozen=True)
class RecurrenceSpec:
    l: int
    nu: int

    def __post_init__(self):
        if self.l < 0 or self.nu < 0:
            raise ValueError("l and nu must be non-negative")

    @property
    def alpha_divisor(self) -> int:
        return self.l + self.nu + 2

    def alpha(self, beta):
        return beta / self.alpha_divisor


@dataclass(frozen=True)
class PolySolution:
    """One truncation root together with its exact eigenfunction data."""

    l: int
    nu: int
    node_count: int
    beta_root: BigFloat
    alpha: BigFloat
    energy: BigFloat
    coefficients: tuple
    bracket: tuple = ()

    @property
    def i(self) -> int:
        return self.node_count


def recurrence_coefficients(spec: RecurrenceSpec, j: int) -> tuple[ExactPolynomial, ExactPolynomial]:
    """``(A_j, B_j)`` as polynomials in beta, with ``alpha`` already eliminated.

    ``j = -1`` gives the starting relation ``c_1 = A_{-1} c_0`` (``B_{-1}`` is zero
    because it multiplies ``c_{-1} = 0``).
    """
    if j < -1:
        raise ValueError("j must be >= -1")
    l, nu = spec.l, spec.nu
    s = spec.alpha_divisor
    den = (j + 2) * (j + 2 * l + 3) * s
    a = ExactPolynomial([mpq((j * j + j * (2 * l + 5) + 2 * (2 * l + 3)) * s, den), mpq(2 * (j - nu), den)])
    if j == -1:
        return a, ExactPolynomial()
    b = ExactPolynomial([0, mpq(2 * (nu - j), den)])
    return a, b


def recurrence_coefficients_alpha(l: int, j: int, alpha, beta) -> tuple:
    """``(A_j, B_j)`` for independent ``alpha`` and ``beta`` (energy ``-alpha^2/2``)."""
    den = (j + 2) * (j + 2 * l + 3)
    a = (2 * alpha * (j + l + 2) - 2 * beta + j * j + j * (2 * l + 5) + 2 * (2 * l + 3)) / den
    b = 2 * (beta - alpha * (j + l + 2)) / den
    return a, b


@lru_cache(maxsize=None)
def coefficient_polynomials(spec: RecurrenceSpec) -> tuple:
    """``(c_0, ..., c_{nu+1})`` as exact polynomials in beta with ``c_0 = 1``."""
    c = [ExactPolynomial([1]), recurrence_coefficients(spec, -1)[0]]
    for j in range(spec.nu):
        a, b = recurrence_coefficients(spec, j)
        c.append(a * c[-1] + b * c[-2])
    return tuple(c)


def truncation_polynomial(spec: RecurrenceSpec) -> ExactPolynomial:
    """``c_{nu+1}(beta)``; its roots are the exactly solvable couplings."""
    return coefficient_polynomials(spec)[-1]


def polysol_energy(l: int, nu: int, beta) -> BigFloat:
    """``-beta^2 / (2 (l + nu + 2)^2)``."""
    if isinstance(beta, BigFloat):
        prec = beta.precision_bits
        with mpmath.workprec(prec):
            return BigFloat(-beta.value**2 / (2 * (l + nu + 2) ** 2), prec)
    b = Q(beta)
    if b <= 0:
        raise ValueError("beta must be > 0")
    return BigFloat.from_exact(-b * b / (2 * (l + nu + 2) ** 2))


def node_count(coefficients: Sequence, digits: int = DEFAULT_DIGITS) -> int:
    """Zeros of ``sum c_j r^j`` in ``0 < r < 1``.

    Coefficients are converted to exact rationals (floats exactly), so the
    count is a Sturm count of that polynomial.  A value at ``r = 1`` that is
    zero to within ``10**-digits`` of the coefficient scale cannot be
    classified and raises :class:`PrecisionError`.
    """
    q = ExactPolynomial(Q(c) for c in coefficients)
    if q.degree <= 0:
        return 0
    scale = max(abs(c) for c in q.coefficients)
    if abs(q(mpq(1))) <= scale / mpq(10) ** digits or q(mpq(0)) == 0:
        raise PrecisionError("polynomial vanishes at an endpoint of (0, 1) within tolerance")
    return sturm_count(q, 0, 1)


def _certified_nodes(spec: RecurrenceSpec, sturm: SturmSequence, a, b, digits: int) -> tuple:
    """Node count valid throughout the bracket; shrinks the bracket when the ends disagree."""
    cs = coefficient_polynomials(spec)[:-1]
    for _ in range(12):
        try:
            ends = {node_count([c(x) for c in cs], digits) for x in {a, b}}
        except PrecisionError:
            ends = set()
        if len(ends) == 1:
            return ends.pop(), a, b
        a, b = refine_root(sturm, a, b, (b - a) / 2**16)
        digits += 4
    raise PrecisionError(f"node count for l={spec.l}, nu={spec.nu} not certified near beta={float(a)}")


def polysol_roots(
    l: int,
    nu: int,
    digits: int = DEFAULT_DIGITS,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> list[PolySolution]:
    """All ``nu + 1`` truncation roots ``beta_l^(nu, i)``, ascending, with certified node counts."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    spec = RecurrenceSpec(l, nu)
    p = truncation_polynomial(spec)
    if p.degree != nu + 1:
        raise ModelAnomalyError(f"truncation polynomial has degree {p.degree}, expected {nu + 1}")
    sturm = SturmSequence(p)
    bound = root_bound(p)
    if p(mpq(0)) == 0:
        raise ModelAnomalyError("beta = 0 is a truncation root")
    n_real = sturm.count(-bound, bound)
    n_pos = sturm.count(mpq(0), bound)
    if n_real != nu + 1 or n_pos != nu + 1:
        raise ModelAnomalyError(
            f"l={l}, nu={nu}: {n_pos} positive / {n_real} real distinct roots, expected {nu + 1}"
        )
    bound = positive_root_bound(p, sturm)
    prec = max(precision_bits, int(2 * digits * 3.33) + 64)
    out = []
    cs = coefficient_polynomials(spec)[: nu + 1]
    # node counts are certified on the short-endpoint brackets, then the root is refined
    for i, (a, b) in enumerate(refined_brackets(p, mpq(0), bound, digits, sturm)):
        nodes, a, b = _certified_nodes(spec, sturm, a, b, digits)
        if nodes != i:
            raise ModelAnomalyError(f"l={l}, nu={nu}: root {i} has {nodes} nodes")
        a, b = refine_root(sturm, a, b, max(abs(a), 1) / mpq(10) ** (2 * digits + 2))
        beta = (a + b) / 2
        with mpmath.workprec(prec):
            beta_f = to_mpf(beta, prec)
            coeffs = tuple(BigFloat(c(beta_f), prec) for c in cs)
            alpha = BigFloat(beta_f / spec.alpha_divisor, prec)
        out.append(
            PolySolution(
                l=l,
                nu=nu,
                node_count=nodes,
                beta_root=BigFloat(beta_f, prec),
                alpha=alpha,
                energy=polysol_energy(l, nu, BigFloat(beta_f, prec)),
                coefficients=coeffs,
                bracket=(a, b),
            )
        )
    return out


def radial_residual(sol: PolySolution, r) -> mpmath.mpf:
    """Relative residual of ``(H - E) R`` at ``r`` for the assembled exact eigenfunction."""
    prec = sol.beta_root.precision_bits
    l = sol.l
    with mpmath.workprec(prec):
        r = mpmath.mpf(r)
        beta = sol.beta_root.value
        alpha = sol.alpha.value
        energy = sol.energy.value
        # Q(r) = r^l (1 - r) P(r), R = exp(-alpha r) Q
        p = [c.value for c in sol.coefficients]
        factor = [mpmath.mpf(0)] * l + [mpmath.mpf(1), mpmath.mpf(-1)]
        qc = [mpmath.mpf(0)] * (len(p) + len(factor) - 1)
        for i, pi in enumerate(p):
            for j, fj in enumerate(factor):
                qc[i + j] += pi * fj
        q0 = mpmath.polyval(qc[::-1], r)
        dq = [k * c for k, c in enumerate(qc)][1:]
        ddq = [k * c for k, c in enumerate(dq)][1:]
        q1 = mpmath.polyval(dq[::-1], r) if dq else mpmath.mpf(0)
        q2 = mpmath.polyval(ddq[::-1], r) if ddq else mpmath.mpf(0)
        e = mpmath.exp(-alpha * r)
        R = e * q0
        R1 = e * (q1 - alpha * q0)
        R2 = e * (q2 - 2 * alpha * q1 + alpha**2 * q0)
        terms = [
            -R2 / 2,
            -R1 / r,
            l * (l + 1) * R / (2 * r**2),
            -beta * R / r,
            -energy * R,
        ]
        scale = max(abs(t) for t in terms)
        return abs(mpmath.fsum(terms)) / scale if scale else mpmath.mpf(0)

"""Rayleigh-Ritz solver in the basis ``f_i(r) = r^(i+l) (r0 - r)``.

Overlap, kinetic and Coulomb matrices are assembled exactly.  Ritz values are
located by bisection on exact inertia counts of ``T - beta*C - W*S``; a
high-precision floating eigensolve only supplies starting guesses, which are
accepted once two exact probes bracket them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import mpmath
from gmpy2 import mpq

from .errors import ProbeOnEigenvalueError, ResourceError
from .exact import (
    DEFAULT_DIGITS,
    DEFAULT_PRECISION_BITS,
    BigFloat,
    ExactScalar,
    Q,
    SymmetricExactMatrix,
    dyadic,
    inertia,
    to_mpf,
)
from .model import DimensionlessProblem

log = logging.getLogger(__name__)

DEFAULT_BASIS_SIZE = 40


@dataclass(frozen=True)
class BasisSpec:
    l: int
    r0: object = 1
    N: int = DEFAULT_BASIS_SIZE

    def __post_init__(self):
        if self.l < 0:
            raise ValueError("l must be >= 0")
        if self.N < 1:
            raise ValueError("N must be >= 1")
        r0 = Q(self.r0)
        if r0 <= 0:
            raise ValueError("r0 must be > 0")
        object.__setattr__(self, "r0", r0)

    def function(self, i: int, r):
        return r ** (i + self.l) * (self.r0 - r)


@dataclass(frozen=True)
class SecularMatrices:
    """``H(beta) = T - beta*C`` and overlap ``S`` for one basis."""

    basis: BasisSpec
    S: SymmetricExactMatrix
    T: SymmetricExactMatrix
    C: SymmetricExactMatrix

    def hamiltonian(self, beta) -> SymmetricExactMatrix:
        return SymmetricExactMatrix.combine([(1, self.T), (-Q(beta), self.C)])

    def shifted(self, beta, w) -> SymmetricExactMatrix:
        """``T - beta*C - w*S``."""
        return SymmetricExactMatrix.combine([(1, self.T), (-Q(beta), self.C), (-Q(w), self.S)])


@dataclass(frozen=True)
class RitzSpectrum:
    problem: DimensionlessProblem
    N: int
    values: tuple
    brackets: tuple
    digits: int
    vectors: tuple | None = None

    def __getitem__(self, n: int) -> BigFloat:
        return self.values[n]


@dataclass(frozen=True)
class RitzVector:
    level: int
    value: BigFloat
    coefficients: tuple
    degenerate: bool = False
    partners: tuple = ()


def _weighted(m: int, w: int, r0: ExactScalar) -> ExactScalar:
    """``int_0^r0 r^(m+w) (r0 - r)^2 dr``."""
    k = m + w
    return r0 ** (k + 3) * (mpq(1, k + 1) - mpq(2, k + 2) + mpq(1, k + 3))


@lru_cache(maxsize=64)
def assemble(basis: BasisSpec) -> SecularMatrices:
    """Exact ``S``, ``T`` (kinetic + centrifugal) and ``C`` (the ``1/r`` moment matrix).

    The kinetic term uses the symmetric gradient form ``1/2 int f_i' f_j' r^2``;
    boundary terms vanish because every ``f_i(r0) = 0``.
    """
    l, r0, n = basis.l, basis.r0, basis.N
    cent = mpq(l * (l + 1), 2)

    def s(i, j):
        return _weighted(i + j + 2 * l, 2, r0)

    def c(i, j):
        return _weighted(i + j + 2 * l, 1, r0)

    def t(i, j):
        m = i + j + 2 * l
        a, ap = i + l, i + l + 1
        b, bp = j + l, j + l + 1
        # f_i' = r^(i+l-1) (a r0 - a' r)
        kin = r0 ** (m + 3) * (
            (a * b * mpq(1, m + 1) if a * b else 0)
            - (a * bp + ap * b) * mpq(1, m + 2)
            + ap * bp * mpq(1, m + 3)
        )
        out = kin / 2
        if l:
            out += cent * _weighted(m, 0, r0)
        return out

    return SecularMatrices(
        basis,
        SymmetricExactMatrix.from_function(n, s),
        SymmetricExactMatrix.from_function(n, t),
        SymmetricExactMatrix.from_function(n, c),
    )


def secular_matrices(problem: DimensionlessProblem, N: int) -> SecularMatrices:
    return assemble(BasisSpec(problem.l, problem.r0, N))


def count_below(mat: SecularMatrices, beta, w) -> int:
    """Number of Ritz values of ``(T - beta*C, S)`` strictly below ``w``."""
    neg, zero, _ = inertia(mat.shifted(beta, w))
    if zero:
        raise ProbeOnEigenvalueError(f"W = {w} is a Ritz value")
    return neg


def count_critical_below(mat: SecularMatrices, beta) -> int:
    """Number of negative Ritz values at coupling ``beta`` (= critical couplings below ``beta``)."""
    return count_below(mat, beta, 0)


# ---------------------------------------------------------------------------
# floating guesses
# ---------------------------------------------------------------------------


def _working_prec(N: int, precision_bits: int) -> int:
    # the monomial overlap matrix loses roughly 5 bits per basis function
    return precision_bits + 6 * N


@lru_cache(maxsize=32)
def _reduced_pencil(A: SymmetricExactMatrix, B: SymmetricExactMatrix, prec: int):
    """``L^-1 A L^-T`` with ``B = L L^T``, at ``prec`` bits, plus ``L^-T``."""
    with mpmath.workprec(prec):
        L = mpmath.cholesky(B.to_mpmath(prec))
        Linv = mpmath.inverse(L)
        red = Linv * A.to_mpmath(prec) * Linv.T
    return red, Linv.T


def _eigsy(matrix, prec: int, vectors: bool = False):
    with mpmath.workprec(prec):
        a = (matrix + matrix.T) / 2
        if vectors:
            e, q = mpmath.eigsy(a)
            order = sorted(range(len(e)), key=lambda i: e[i])
            return [e[i] for i in order], [q[:, i] for i in order]
        e = mpmath.eigsy(a, eigvals_only=True)
        return sorted(e[i] for i in range(len(e)))


def ritz_guesses(mat: SecularMatrices, beta, precision_bits: int = DEFAULT_PRECISION_BITS, digits: int = DEFAULT_DIGITS) -> list:
    """Approximate Ritz values from a Cholesky-reduced floating eigensolve."""
    prec = _working_prec(mat.basis.N, precision_bits)
    red_t, _ = _reduced_pencil(mat.T, mat.S, prec)
    red_c, _ = _reduced_pencil(mat.C, mat.S, prec)
    b = to_mpf(Q(beta), prec)
    with mpmath.workprec(prec):
        a = red_t - b * red_c
    return _eigsy(a, max(2 * int(digits * 3.33) + 96, 192))


def critical_guesses(mat: SecularMatrices, precision_bits: int = DEFAULT_PRECISION_BITS, digits: int = DEFAULT_DIGITS) -> list:
    """Approximate eigenvalues of the pencil ``T c = beta C c``."""
    prec = _working_prec(mat.basis.N, precision_bits)
    red, _ = _reduced_pencil(mat.T, mat.C, prec)
    return _eigsy(red, max(2 * int(digits * 3.33) + 96, 192))


# ---------------------------------------------------------------------------
# bisection on counts
# ---------------------------------------------------------------------------


def _tolerance(x: ExactScalar, digits: int) -> ExactScalar:
    return max(abs(x), mpq(1)) / mpq(10) ** (digits + 2)


def bisect_levels(
    count: Callable[[ExactScalar], int],
    k: int,
    lo: ExactScalar,
    digits: int,
    guesses: Sequence | None = None,
    hi: ExactScalar | None = None,
) -> list:
    """Brackets ``[a_n, b_n)`` around the lowest ``k`` roots of a monotone counting function.

    ``count(x)`` must return the number of roots strictly below ``x``; ``lo``
    must satisfy ``count(lo) == 0``.  Returns ``[(a_n, b_n, value_n)]`` where
    ``value_n`` is the guess if it lies inside the final bracket, otherwise the
    bracket midpoint.
    """
    probes: dict = {}

    def probe(x):
        x = Q(x)
        if x not in probes:
            step = _tolerance(x, digits + 6)
            while True:
                try:
                    probes[x] = count(x)
                    break
                except ProbeOnEigenvalueError:
                    x = x + step
        return x, probes[x]

    if guesses is not None:
        for n in range(min(k, len(guesses))):
            g = Q(dyadic(guesses[n], 160))
            half = _tolerance(g, digits) / 2
            bits = max(40, int(-mpmath.log(half, 2)) + 8) if half < 1 else 40
            probe(dyadic(g - half, bits))
            probe(dyadic(g + half, bits))
    else:
        # lo is a proven bound when guesses are used; otherwise it is checked
        if probe(lo)[1] != 0:
            raise ValueError("lower bound is above the lowest root")
    if hi is not None:
        if probe(hi)[1] < k:
            raise ValueError("upper bound does not enclose k roots")
    elif max(probes.values(), default=0) < k:
        hi = max(abs(lo), mpq(1), *probes.keys())
        doublings = 0
        while probe(hi)[1] < k:
            hi *= 2
            doublings += 1
            if doublings > 256:
                raise ResourceError(f"fewer than {k} roots below {float(hi):.3g}")

    out = []
    for n in range(k):
        a = max((x for x, c in probes.items() if c <= n), default=Q(lo))
        b = min(x for x, c in probes.items() if c >= n + 1)
        while b - a > _tolerance(a if abs(a) > abs(b) else b, digits):
            m, c = probe((a + b) / 2)
            if c <= n:
                a = m
            else:
                b = m
        value = None
        if guesses is not None and n < len(guesses):
            g = Q(guesses[n])
            if a <= g <= b:
                value = guesses[n]
        out.append((a, b, value if value is not None else (a + b) / 2))
    return out


def _lower_bound(problem: DimensionlessProblem) -> ExactScalar:
    # confinement raises every level above the free-atom ground state -beta^2/2
    b = problem.beta_exact
    return -(b * b) / 2 - 1


def ritz_values(
    problem: DimensionlessProblem,
    N: int = DEFAULT_BASIS_SIZE,
    k: int = 1,
    digits: int = DEFAULT_DIGITS,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    accelerate: bool = True,
) -> RitzSpectrum:
    """Lowest ``k`` Ritz values, each certified to ``digits`` significant digits."""
    if not 1 <= k <= N:
        raise ValueError("need 1 <= k <= N")
    mat = secular_matrices(problem, N)
    beta = problem.beta_exact
    guesses = ritz_guesses(mat, beta, precision_bits, digits)[:k] if accelerate else None
    levels = bisect_levels(lambda w: count_below(mat, beta, w), k, _lower_bound(problem), digits, guesses)
    prec = max(precision_bits, int(digits * 3.33) + 64)
    values = tuple(BigFloat(to_mpf(v, prec), prec) for _, _, v in levels)
    brackets = tuple((a, b) for a, b, _ in levels)
    return RitzSpectrum(problem, N, values, brackets, digits)


def ritz_vector(
    problem: DimensionlessProblem,
    N: int,
    n: int,
    digits: int = DEFAULT_DIGITS,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> RitzVector:
    """Coefficients ``c`` of level ``n`` with ``c^T S c = 1`` and first nonzero entry positive."""
    k = min(n + 2, N)
    spec = ritz_values(problem, N, k, digits, precision_bits)
    w = spec.values[n]
    mat = secular_matrices(problem, N)
    prec = _working_prec(N, precision_bits)
    tol = mpmath.mpf(10) ** (-digits) * max(1, abs(w.value))
    close = [m for m in range(k) if m != n and abs(spec.values[m].value - w.value) < tol]
    if close:
        log.warning("levels %s are degenerate with level %d at this tolerance", close, n)
        red_t, linv_t = _reduced_pencil(mat.T, mat.S, prec)
        red_c, _ = _reduced_pencil(mat.C, mat.S, prec)
        with mpmath.workprec(prec):
            _, vecs = _eigsy(red_t - to_mpf(problem.beta_exact, prec) * red_c, prec, vectors=True)
            cols = [_normalize(linv_t * vecs[m], mat, prec) for m in [n] + close]
        return RitzVector(n, w, tuple(cols[0]), True, tuple(tuple(c) for c in cols[1:]))

    with mpmath.workprec(prec):
        S = mat.S.to_mpmath(prec)
        H = mat.hamiltonian(problem.beta_exact).to_mpmath(prec)
        M = H - w.value * S
        x = mpmath.matrix([1] * N)
        for _ in range(4):
            x = mpmath.lu_solve(M, S * x)
            x = x / mpmath.norm(x)
        c = _normalize(x, mat, prec)
    return RitzVector(n, w, tuple(c))


def _normalize(x, mat: SecularMatrices, prec: int) -> list:
    with mpmath.workprec(prec):
        S = mat.S.to_mpmath(prec)
        norm = mpmath.sqrt((x.T * S * x)[0])
        c = [x[i] / norm for i in range(len(x))]
        first = next((v for v in c if v != 0), 1)
        if first < 0:
            c = [-v for v in c]
        return c


def expectation_inverse_r(
    problem: DimensionlessProblem,
    N: int,
    n: int,
    digits: int = DEFAULT_DIGITS,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> BigFloat:
    """``<1/r>`` of Ritz level ``n``, i.e. ``c^T C c / c^T S c``."""
    vec = ritz_vector(problem, N, n, digits, precision_bits)
    mat = secular_matrices(problem, N)
    prec = _working_prec(N, precision_bits)
    with mpmath.workprec(prec):
        c = mpmath.matrix(list(vec.coefficients))
        num = (c.T * mat.C.to_mpmath(prec) * c)[0]
        den = (c.T * mat.S.to_mpmath(prec) * c)[0]
        return BigFloat(num / den, prec)


def ritz_residual(problem: DimensionlessProblem, N: int, vec: RitzVector, precision_bits: int = DEFAULT_PRECISION_BITS):
    """``||(H - W S) c||`` for a computed Ritz pair."""
    mat = secular_matrices(problem, N)
    prec = _working_prec(N, precision_bits)
    with mpmath.workprec(prec):
        c = mpmath.matrix(list(vec.coefficients))
        r = (mat.hamiltonian(problem.beta_exact).to_mpmath(prec) - vec.value.value * mat.S.to_mpmath(prec)) * c
        return mpmath.norm(r)

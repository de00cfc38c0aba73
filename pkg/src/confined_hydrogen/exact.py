"""Exact arithmetic kernel.

Rational scalars (``gmpy2.mpq``), univariate polynomials over the rationals,
Sturm-sequence root counting/isolation and Sylvester inertia of symmetric
rational matrices.  Floating point only enters through :class:`BigFloat`,
which is used for final values and root polishing.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Sequence

import gmpy2
import mpmath
from gmpy2 import mpq, mpz

from .errors import EndpointIsRootError, PrecisionError

ExactScalar = type(mpq())

DEFAULT_PRECISION_BITS = 256
DEFAULT_DIGITS = 10


def Q(value, den=None) -> ExactScalar:
    """Convert ``value`` (int, str, Fraction, mpq, float, mpf) to an exact rational.

    Binary floats and ``mpf`` values are converted exactly, i.e. the result is
    the dyadic rational the float actually stores.
    """
    if den is not None:
        return mpq(value, den)
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, BigFloat):
        value = value.value
    if isinstance(value, mpmath.mpf):
        sign, man, exp, _ = value._mpf_
        if not man:
            if exp:
                raise ValueError("cannot convert inf/nan to a rational")
            return mpq(0)
        q = mpq(man) * mpq(2) ** exp
        return -q if sign else q
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(Fraction(value))
    return mpq(value)


def to_mpf(x, prec: int) -> mpmath.mpf:
    """Round an exact rational (or anything mpmath understands) to ``prec`` bits."""
    with mpmath.workprec(prec):
        if isinstance(x, ExactScalar):
            return mpmath.mpf(int(x.numerator)) / int(x.denominator)
        if isinstance(x, BigFloat):
            return +x.value
        return mpmath.mpf(x)


def dyadic(x, bits: int) -> ExactScalar:
    """Nearest rational with denominator ``2**bits`` to the real number ``x``."""
    scale = mpz(2) ** bits
    if isinstance(x, ExactScalar):
        return mpq(gmpy2.f_div(x.numerator * scale * 2 + x.denominator, 2 * x.denominator), scale)
    with mpmath.workprec(bits + 64):
        n = int(mpmath.nint(mpmath.mpf(x) * int(scale)))
    return mpq(n, scale)


# ---------------------------------------------------------------------------
# BigFloat
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BigFloat:
    """A floating value tagged with the binary precision it was computed at."""

    value: mpmath.mpf
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        if not isinstance(self.value, mpmath.mpf):
            object.__setattr__(self, "value", to_mpf(self.value, self.precision_bits))

    @classmethod
    def from_exact(cls, x, precision_bits: int = DEFAULT_PRECISION_BITS) -> "BigFloat":
        return cls(to_mpf(Q(x), precision_bits), precision_bits)

    def __float__(self) -> float:
        return float(self.value)

    def __neg__(self) -> "BigFloat":
        return BigFloat(-self.value, self.precision_bits)

    def __lt__(self, other) -> bool:
        return self.value < _raw(other)

    def __le__(self, other) -> bool:
        return self.value <= _raw(other)

    def __gt__(self, other) -> bool:
        return self.value > _raw(other)

    def __ge__(self, other) -> bool:
        return self.value >= _raw(other)

    def __sub__(self, other) -> "BigFloat":
        with mpmath.workprec(self.precision_bits):
            return BigFloat(self.value - _raw(other), self.precision_bits)

    def __add__(self, other) -> "BigFloat":
        with mpmath.workprec(self.precision_bits):
            return BigFloat(self.value + _raw(other), self.precision_bits)

    def exact(self) -> ExactScalar:
        return Q(self.value)

    def to_decimal(self, digits: int = DEFAULT_DIGITS) -> decimal.Decimal:
        return round_sig(self.value, digits)

    def format(self, digits: int = DEFAULT_DIGITS) -> str:
        return format_sig(self.value, digits)

    def __str__(self) -> str:
        return self.format()


def _raw(x):
    if isinstance(x, BigFloat):
        return x.value
    if isinstance(x, ExactScalar):
        return mpmath.mpf(int(x.numerator)) / int(x.denominator)
    return x


def round_sig(x, digits: int) -> decimal.Decimal:
    """Round ``x`` half-even to ``digits`` significant decimal digits."""
    q = Q(x) if not isinstance(x, ExactScalar) else x
    ctx = decimal.Context(prec=digits, rounding=decimal.ROUND_HALF_EVEN)
    if q == 0:
        return decimal.Decimal(0).quantize(decimal.Decimal(1).scaleb(-(digits - 1)))
    # exact decimal expansion of a dyadic/other rational to enough places
    num, den = int(q.numerator), int(q.denominator)
    exact_ctx = decimal.Context(prec=max(digits + 40, len(str(abs(num))) + len(str(den)) + 10))
    d = exact_ctx.divide(decimal.Decimal(num), decimal.Decimal(den))
    return ctx.plus(d)


def format_sig(x, digits: int) -> str:
    """Fixed-point string with exactly ``digits`` significant digits."""
    d = round_sig(x, digits)
    if d == 0:
        return "0." + "0" * (digits - 1) if digits > 1 else "0"
    exponent = d.adjusted()
    places = digits - 1 - exponent
    if places < 0:
        # integer part longer than digits; keep plain notation
        return str(int(d))
    return f"{d:.{places}f}"


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class ExactPolynomial:
    """Univariate polynomial with rational coefficients, ``coefficients[k]`` multiplies ``x**k``."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        coeffs = [Q(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients: tuple = tuple(coeffs)

    @classmethod
    def x(cls) -> "ExactPolynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "ExactPolynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> ExactScalar:
        return self.coefficients[-1] if self.coefficients else mpq(0)

    def __repr__(self) -> str:
        return f"ExactPolynomial({[str(c) for c in self.coefficients]})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactPolynomial):
            other = ExactPolynomial([other])
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``, mpmath arithmetic for ``mpf``."""
        acc = x * 0
        for c in reversed(self.coefficients):
            acc = acc * x + (c if isinstance(x, (ExactScalar, int)) else _raw(c))
        return acc

    def _coerce(self, other) -> "ExactPolynomial":
        return other if isinstance(other, ExactPolynomial) else ExactPolynomial([other])

    def __add__(self, other) -> "ExactPolynomial":
        other = self._coerce(other)
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return ExactPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial(-c for c in self.coefficients)

    def __sub__(self, other) -> "ExactPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ExactPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ExactPolynomial":
        other = self._coerce(other)
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return ExactPolynomial()
        out = [mpq(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return ExactPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "ExactPolynomial":
        return ExactPolynomial(k * c for k, c in enumerate(self.coefficients) if k)

    def divmod(self, other: "ExactPolynomial") -> tuple["ExactPolynomial", "ExactPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        d = other.degree
        lead = other.leading
        quot = [mpq(0)] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            coef = rem[k] / lead
            if coef:
                quot[k - d] = coef
                for i, oc in enumerate(other.coefficients):
                    rem[k - d + i] -= coef * oc
        return ExactPolynomial(quot), ExactPolynomial(rem[:d])

    def __floordiv__(self, other) -> "ExactPolynomial":
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other) -> "ExactPolynomial":
        return self.divmod(self._coerce(other))[1]

    def integer_primitive(self) -> list:
        """Coefficients scaled to coprime integers with positive leading coefficient."""
        return _primitive(_integer_coeffs(self.coefficients))

    def to_mpmath(self, prec: int) -> list:
        return [to_mpf(c, prec) for c in self.coefficients]


def _integer_coeffs(coeffs: Sequence) -> list:
    den = mpz(1)
    for c in coeffs:
        den = gmpy2.lcm(den, mpq(c).denominator)
    return [mpz(c * den) for c in coeffs]


def _primitive(coeffs: list) -> list:
    g = mpz(0)
    for c in coeffs:
        g = gmpy2.gcd(g, c)
        if g == 1:
            break
    if g == 0:
        return []
    if coeffs[-1] < 0:
        g = -g
    return [c // g for c in coeffs]


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder of integer polynomials ``lc(b)**(deg a - deg b + 1) * a mod b``."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    delta = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, bc in enumerate(b):
            r[shift + i] -= lr * bc
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        delta -= 1
    if delta > 0:
        factor = lb**delta
        r = [c * factor for c in r]
    return r


def _sign_hom(coeffs: list, a, b) -> int:
    """Sign of ``sum c_k a^k b^(d-k)``, i.e. of the polynomial at ``a/b`` for ``b > 0``."""
    acc = mpz(0)
    bk = mpz(1)
    for k in range(len(coeffs) - 1, -1, -1):
        acc = acc * a + coeffs[k] * bk
        bk *= b
    return (acc > 0) - (acc < 0)


class SturmSequence:
    """Sturm chain of a polynomial built with primitive pseudo-remainders."""

    def __init__(self, p: ExactPolynomial):
        if p.is_zero():
            raise ValueError("zero polynomial has no Sturm sequence")
        self.polynomial = p
        chain = [p.integer_primitive()]
        if len(chain[0]) > 1:
            chain.append(_primitive(ExactPolynomial(chain[0]).derivative().integer_primitive()))
            while len(chain[-1]) > 1:
                a, b = chain[-2], chain[-1]
                r = _prem(a, b)
                if not r:
                    break
                delta = len(a) - len(b)
                # prem = lc(b)^(delta+1) * rem; sign of -rem is fixed below
                s = -1 if (b[-1] < 0 and (delta + 1) % 2 == 1) else 1
                nxt = _primitive(r)
                # _primitive forces a positive leading coefficient; restore the true sign of -rem
                true_lead_sign = -s * (1 if r[-1] > 0 else -1)
                if true_lead_sign < 0:
                    nxt = [-c for c in nxt]
                chain.append(nxt)
        self.chain = chain

    @cached_property
    def gcd_with_derivative(self) -> ExactPolynomial:
        return ExactPolynomial(self.chain[-1])

    @cached_property
    def squarefree(self) -> list:
        """Integer coefficients of ``p / gcd(p, p')``, sharing the roots of ``p`` (all simple)."""
        g = self.gcd_with_derivative
        if g.degree <= 0:
            return self.chain[0]
        return (ExactPolynomial(self.chain[0]) // g).integer_primitive()

    def variations(self, x: ExactScalar) -> int:
        count = 0
        prev = 0
        for c in self.chain:
            s = _sign_hom(c, x.numerator, x.denominator)
            if s:
                if prev and s != prev:
                    count += 1
                prev = s
        return count

    def count(self, lo: ExactScalar, hi: ExactScalar) -> int:
        return self.variations(lo) - self.variations(hi)


def _check_interval(p: ExactPolynomial, lo, hi) -> tuple:
    if p.is_zero():
        raise ValueError("zero polynomial")
    lo, hi = Q(lo), Q(hi)
    if not lo < hi:
        raise ValueError("require lo < hi")
    for end in (lo, hi):
        if p(end) == 0:
            raise EndpointIsRootError(f"endpoint {end} is a root; perturb it")
    return lo, hi


def sturm_count(p: ExactPolynomial, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the open interval ``(lo, hi)``."""
    lo, hi = _check_interval(p, lo, hi)
    return SturmSequence(p).count(lo, hi)


def root_bound(p: ExactPolynomial) -> ExactScalar:
    """Cauchy bound: every root satisfies ``|x| < bound``."""
    lead = abs(p.leading)
    return 1 + max((abs(c) / lead for c in p.coefficients[:-1]), default=mpq(0))


def positive_root_bound(p: ExactPolynomial, sturm: SturmSequence | None = None) -> ExactScalar:
    """Smallest power of two above every positive root (found by Sturm counts)."""
    sturm = sturm or SturmSequence(p)
    cauchy = root_bound(p)
    total = sturm.count(mpq(0), cauchy) if p(mpq(0)) != 0 else sturm.count(mpq(0, 1) + cauchy / 2**200, cauchy)
    hi = mpq(1)
    while hi < cauchy and (p(hi) == 0 or sturm.count(mpq(0), hi) < total):
        hi *= 2
    return min(hi, cauchy)


def isolating_intervals(p: ExactPolynomial, lo, hi, sturm: SturmSequence | None = None) -> list:
    """Disjoint rational intervals ``(a, b)``, ascending, each holding exactly one root in ``(lo, hi)``.

    An interval with ``a == b`` marks an exact rational root.
    """
    lo, hi = _check_interval(p, lo, hi)
    sturm = sturm or SturmSequence(p)
    out = []
    stack = [(lo, hi, sturm.count(lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if p(m) == 0:
            out.append((m, m))
            eps = (b - a) / 1024
            while p(m - eps) == 0 or p(m + eps) == 0 or sturm.count(m - eps, m + eps) != 1:
                eps /= 2
            stack.append((m + eps, b, sturm.count(m + eps, b)))
            stack.append((a, m - eps, sturm.count(a, m - eps)))
            continue
        stack.append((m, b, sturm.count(m, b)))
        stack.append((a, m, sturm.count(a, m)))
    out.sort(key=lambda ab: ab[0])
    return out


def refine_root(sturm: SturmSequence, a: ExactScalar, b: ExactScalar, width: ExactScalar) -> tuple:
    """Shrink an isolating interval by sign bisection until ``b - a <= width``."""
    if a == b:
        return a, b
    sq = sturm.squarefree
    sa = _sign_hom(sq, a.numerator, a.denominator)
    while b - a > width:
        m = (a + b) / 2
        sm = _sign_hom(sq, m.numerator, m.denominator)
        if sm == 0:
            return m, m
        if sm == sa:
            a = m
        else:
            b = m
    return a, b


def _relative_width(a: ExactScalar, b: ExactScalar, digits: int) -> ExactScalar:
    scale = max(abs(a), abs(b))
    if scale == 0:
        scale = mpq(1)
    return scale / mpq(10) ** (digits + 2)


def refined_brackets(p: ExactPolynomial, lo, hi, digits: int, sturm: SturmSequence | None = None) -> list:
    """Isolating brackets shrunk until both ends agree to ``digits`` significant digits."""
    sturm = sturm or SturmSequence(p)
    out = []
    for a, b in isolating_intervals(p, lo, hi, sturm):
        a, b = refine_root(sturm, a, b, _relative_width(a, b, digits))
        # a bracket straddling a rounding boundary is halved a bounded number of times
        for _ in range(64):
            if a == b or format_sig(a, digits) == format_sig(b, digits):
                break
            a, b = refine_root(sturm, a, b, (b - a) / 4)
        out.append((a, b))
    return out


def isolate_real_roots(
    p: ExactPolynomial,
    lo,
    hi,
    digits: int = DEFAULT_DIGITS,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    polish: bool = True,
) -> list:
    """All distinct real roots of ``p`` in ``(lo, hi)``, ascending, as :class:`BigFloat`.

    Each root is bracketed exactly by Sturm counts and shrunk by bisection until
    the bracket pins it to ``digits`` significant digits; an optional Newton
    polish at ``2*digits`` working digits follows (kept only if it stays inside
    the bracket).
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    _check_interval(p, lo, hi)
    sturm = SturmSequence(p)
    prec = max(precision_bits, int(2 * digits * 3.33) + 32)
    roots = []
    for a, b in refined_brackets(p, lo, hi, digits, sturm):
        value = to_mpf((a + b) / 2, prec)
        if polish and a != b:
            value = _newton_polish(sturm.squarefree, value, a, b, 2 * digits, prec)
        roots.append(BigFloat(value, prec))
    return roots


def _newton_polish(coeffs: list, x0, a, b, digits: int, prec: int):
    with mpmath.workprec(prec):
        f = [mpmath.mpf(int(c)) for c in coeffs]
        df = [k * c for k, c in enumerate(f)][1:]
        x = x0
        lo, hi = to_mpf(a, prec), to_mpf(b, prec)
        tol = mpmath.mpf(10) ** (-digits) * max(abs(x), 1)
        for _ in range(50):
            fx = mpmath.polyval(f[::-1], x)
            dfx = mpmath.polyval(df[::-1], x)
            if dfx == 0:
                break
            step = fx / dfx
            nx = x - step
            if not lo <= nx <= hi:
                return x0
            x = nx
            if abs(step) < tol:
                break
        return x


# ---------------------------------------------------------------------------
# Symmetric matrices and inertia
# ---------------------------------------------------------------------------


class SymmetricExactMatrix:
    """Symmetric rational matrix stored as its row-major upper triangle."""

    __slots__ = ("dimension", "entries", "__weakref__")

    def __init__(self, dimension: int, entries: Sequence):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        entries = tuple(Q(e) for e in entries)
        if len(entries) != dimension * (dimension + 1) // 2:
            raise ValueError("entry count must be N(N+1)/2")
        self.dimension = dimension
        self.entries = entries

    @classmethod
    def from_function(cls, n: int, f: Callable[[int, int], object]) -> "SymmetricExactMatrix":
        return cls(n, [f(i, j) for i in range(n) for j in range(i, n)])

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SymmetricExactMatrix":
        n = len(rows)
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("matrix must be square")
            for j in range(i):
                if Q(rows[i][j]) != Q(rows[j][i]):
                    raise ValueError("matrix is not symmetric")
        return cls.from_function(n, lambda i, j: rows[i][j])

    def _index(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        n = self.dimension
        return i * n - i * (i - 1) // 2 + (j - i)

    def __getitem__(self, ij: tuple) -> ExactScalar:
        return self.entries[self._index(*ij)]

    def rows(self) -> list:
        n = self.dimension
        return [[self[i, j] for j in range(n)] for i in range(n)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymmetricExactMatrix)
            and self.dimension == other.dimension
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.dimension, self.entries))

    def __repr__(self) -> str:
        return f"SymmetricExactMatrix(dimension={self.dimension})"

    def leading(self, n: int) -> "SymmetricExactMatrix":
        """Leading ``n x n`` principal block."""
        return SymmetricExactMatrix.from_function(n, lambda i, j: self[i, j])

    def permuted(self, perm: Sequence[int]) -> "SymmetricExactMatrix":
        return SymmetricExactMatrix.from_function(self.dimension, lambda i, j: self[perm[i], perm[j]])

    def congruent(self, d: Sequence[Sequence]) -> "SymmetricExactMatrix":
        """``D^T M D`` for a square rational ``D``."""
        n = self.dimension
        d = [[Q(x) for x in row] for row in d]
        m = self.rows()
        md = [[sum(m[i][k] * d[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        return SymmetricExactMatrix.from_function(
            n, lambda i, j: sum(d[k][i] * md[k][j] for k in range(n))
        )

    @staticmethod
    def combine(terms: Sequence[tuple]) -> "SymmetricExactMatrix":
        """Linear combination ``sum(coef * M)`` of equally sized matrices."""
        n = terms[0][1].dimension
        coefs = [Q(c) for c, _ in terms]
        mats = [m.entries for _, m in terms]
        size = len(mats[0])
        out = []
        for idx in range(size):
            acc = mpq(0)
            for c, e in zip(coefs, mats):
                if c:
                    acc += c * e[idx]
            out.append(acc)
        return SymmetricExactMatrix(n, out)

    def to_mpmath(self, prec: int) -> mpmath.matrix:
        n = self.dimension
        with mpmath.workprec(prec):
            out = mpmath.matrix(n, n)
            for i in range(n):
                for j in range(i, n):
                    v = to_mpf(self[i, j], prec)
                    out[i, j] = v
                    out[j, i] = v
        return out


def inertia(m: SymmetricExactMatrix) -> tuple[int, int, int]:
    """Sylvester inertia ``(n_negative, n_zero, n_positive)`` computed exactly.

    Runs a fraction-free (Bareiss) symmetric elimination on the matrix scaled to
    integers, choosing any nonzero diagonal pivot.  If the remaining Schur
    complement has an all-zero diagonal but nonzero off-diagonal entries the
    factorization restarts with rational ``LDL^T`` using 2x2 block pivots.
    """
    result = _inertia_bareiss(m)
    if result is None:
        result = _inertia_block_ldl(m)
    return result


def _integer_rows(m: SymmetricExactMatrix) -> list:
    den = mpz(1)
    for e in m.entries:
        d = e.denominator
        if d != 1:
            den = gmpy2.lcm(den, d)
    n = m.dimension
    rows = [[mpz(0)] * n for _ in range(n)]
    k = 0
    for i in range(n):
        for j in range(i, n):
            v = mpz(m.entries[k] * den)
            rows[i][j] = v
            rows[j][i] = v
            k += 1
    return rows


def _inertia_bareiss(m: SymmetricExactMatrix):
    a = _integer_rows(m)
    n = m.dimension
    active = list(range(n))
    prev = mpz(1)
    prev_sign = 1
    neg = pos = 0
    while active:
        k = next((i for i in active if a[i][i] != 0), None)
        if k is None:
            if all(a[i][j] == 0 for i in active for j in active):
                return neg, len(active), pos
            return None
        p = a[k][k]
        active.remove(k)
        sign = 1 if p > 0 else -1
        # pivot of LDL^T is the ratio of consecutive principal minors
        if sign == prev_sign:
            pos += 1
        else:
            neg += 1
        prev_sign = sign
        rk = a[k]
        for idx, i in enumerate(active):
            ri = a[i]
            f = rk[i]
            for j in active[idx:]:
                ri[j] = (p * ri[j] - f * rk[j]) // prev
            for j in active[:idx]:
                ri[j] = a[j][i]
        prev = p
    return neg, 0, pos


def _inertia_block_ldl(m: SymmetricExactMatrix) -> tuple[int, int, int]:
    a = m.rows()
    active = list(range(m.dimension))
    neg = zero = pos = 0
    while active:
        k = next((i for i in active if a[i][i] != 0), None)
        if k is not None:
            p = a[k][k]
            if p > 0:
                pos += 1
            else:
                neg += 1
            active.remove(k)
            rk = a[k]
            for i in active:
                f = rk[i] / p
                if f:
                    ri = a[i]
                    for j in active:
                        ri[j] -= f * rk[j]
            continue
        pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
        if pair is None:
            zero += len(active)
            break
        i0, j0 = pair
        # diagonal entries are zero here, so the 2x2 block [[0, b], [b, 0]] has det -b^2 < 0
        b = a[i0][j0]
        neg += 1
        pos += 1
        active.remove(i0)
        active.remove(j0)
        r0, r1 = a[i0], a[j0]
        for i in active:
            u = r1[i] / b
            v = r0[i] / b
            if u or v:
                ri = a[i]
                for j in active:
                    ri[j] -= u * r0[j] + v * r1[j]
    return neg, zero, pos


def require_precision(ok: bool, message: str) -> None:
    if not ok:
        raise PrecisionError(message)

"""Closed-form reference values built on Bessel-function zeros.

Two limits of the radial problem are solvable in closed form:

* ``beta = 0`` (particle in a sphere): ``E_nl = x^2 / 2`` with ``x`` the
  ``(n+1)``-th positive zero of the spherical Bessel function ``j_l``;
* ``E = 0``: ``R(r) = r^(-1/2) J_{2l+1}(sqrt(8 beta r))``, so the critical
  coupling is ``beta_nl^c = j_{2l+1, n+1}^2 / 8``.

The Bessel functions are summed from their power series and the zeros found
by a sign scan plus bisection, so nothing here shares code with the
Rayleigh-Ritz path.
"""

from __future__ import annotations

from functools import lru_cache

import mpmath

from .exact import BigFloat

_PREC = 256


def bessel_j(order: int, x) -> mpmath.mpf:
    """``J_order(x)`` for integer order from the ascending series."""
    with mpmath.workprec(_guard_prec(x)):
        x = mpmath.mpf(x)
        half = x / 2
        term = half**order / mpmath.factorial(order)
        total = term
        q = -half * half
        k = 0
        while True:
            k += 1
            term = term * q / (k * (k + order))
            total += term
            if abs(term) < abs(total) * mpmath.eps and k > half:
                break
        return total


def spherical_bessel_j(l: int, x) -> mpmath.mpf:
    """``j_l(x) = sum_k (-1)^k x^(2k+l) / (2^k k! (2l+2k+1)!!)``."""
    with mpmath.workprec(_guard_prec(x)):
        x = mpmath.mpf(x)
        term = x**l / mpmath.fac2(2 * l + 1)
        total = term
        q = -x * x
        k = 0
        while True:
            k += 1
            term = term * q / (2 * k * (2 * l + 2 * k + 1))
            total += term
            if abs(term) < abs(total) * mpmath.eps and k > x:
                break
        return total


def _guard_prec(x) -> int:
    # the alternating series cancels about |x| / ln 2 bits
    return _PREC + int(2 * abs(float(x))) + 32


def _zeros(f, count: int, step: float = 0.25, digits: int = 30) -> list:
    out = []
    a = mpmath.mpf(step)
    fa = f(a)
    while len(out) < count:
        b = a + step
        fb = f(b)
        if fa == 0:
            out.append(a)
        elif fa * fb < 0:
            lo, hi, flo = a, b, fa
            with mpmath.workprec(_PREC):
                tol = mpmath.mpf(10) ** (-digits)
                while hi - lo > tol * hi:
                    mid = (lo + hi) / 2
                    fm = f(mid)
                    if fm == 0:
                        lo = hi = mid
                        break
                    if (fm < 0) == (flo < 0):
                        lo, flo = mid, fm
                    else:
                        hi = mid
                out.append((lo + hi) / 2)
        a, fa = b, fb
    return out


@lru_cache(maxsize=None)
def bessel_zeros(order: int, count: int) -> tuple:
    """First ``count`` positive zeros of ``J_order``."""
    return tuple(_zeros(lambda x: bessel_j(order, x), count))


@lru_cache(maxsize=None)
def spherical_bessel_zeros(l: int, count: int) -> tuple:
    """First ``count`` positive zeros of ``j_l``."""
    return tuple(_zeros(lambda x: spherical_bessel_j(l, x), count))


def particle_in_box_energy(n: int, l: int) -> BigFloat:
    """Exact ``beta = 0`` level ``x_{l,n+1}^2 / 2`` in a unit sphere."""
    x = spherical_bessel_zeros(l, n + 1)[n]
    with mpmath.workprec(_PREC):
        return BigFloat(x * x / 2, _PREC)


def critical_beta_bessel(n: int, l: int) -> BigFloat:
    """Coupling where level ``(n, l)`` crosses zero: ``j_{2l+1, n+1}^2 / 8``."""
    x = bessel_zeros(2 * l + 1, n + 1)[n]
    with mpmath.workprec(_PREC):
        return BigFloat(x * x / 8, _PREC)

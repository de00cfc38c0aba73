import random

import mpmath
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from confined_hydrogen.errors import PrecisionError
from confined_hydrogen.exact import ExactPolynomial, Q, SturmSequence, positive_root_bound, refined_brackets
from confined_hydrogen.polysol import (
    RecurrenceSpec,
    coefficient_polynomials,
    node_count,
    polysol_energy,
    polysol_roots,
    recurrence_coefficients,
    recurrence_coefficients_alpha,
    truncation_polynomial,
)

BETA = ExactPolynomial.x()


def test_recurrence_examples():
    _, b0 = recurrence_coefficients(RecurrenceSpec(0, 0), 0)
    assert b0.is_zero()
    a0, b0 = recurrence_coefficients(RecurrenceSpec(0, 1), 0)
    assert a0 == 1 - BETA * mpq(1, 9)
    assert b0 == BETA * mpq(1, 9)
    a, b = recurrence_coefficients(RecurrenceSpec(0, 0), -1)
    assert a == BETA * mpq(1, 2) + 1 - BETA
    assert b.is_zero()
    with pytest.raises(ValueError):
        recurrence_coefficients(RecurrenceSpec(0, 0), -2)


@pytest.mark.parametrize("l", range(6))
def test_first_coefficient_relation(l):
    # A_{-1} = alpha + 1 - beta / (l + 1) for every nu
    for nu in range(4):
        a, _ = recurrence_coefficients(RecurrenceSpec(l, nu), -1)
        assert a == BETA * mpq(1, l + nu + 2) + 1 - BETA * mpq(1, l + 1)


def test_b_nu_vanishes_identically():
    for l in range(6):
        for nu in range(11):
            assert recurrence_coefficients(RecurrenceSpec(l, nu), nu)[1].is_zero()


@given(st.integers(0, 5), st.integers(0, 10), st.integers(0, 12), st.fractions(0, 40, max_denominator=97).map(Q))
@settings(max_examples=100, deadline=None)
def test_beta_form_agrees_with_alpha_form(l, nu, j, beta):
    spec = RecurrenceSpec(l, nu)
    a, b = recurrence_coefficients(spec, j)
    a2, b2 = recurrence_coefficients_alpha(l, j, spec.alpha(beta), beta)
    assert a(beta) == a2 and b(beta) == b2


def test_truncation_polynomial_examples():
    p = truncation_polynomial(RecurrenceSpec(0, 0))
    assert p.degree == 1 and p(Q(2)) == 0
    assert truncation_polynomial(RecurrenceSpec(1, 0))(Q(6)) == 0
    assert truncation_polynomial(RecurrenceSpec(0, 1)) == ExactPolynomial([1, mpq(-2, 3), mpq(2, 27)])


def test_truncation_degree():
    for l in range(4):
        for nu in range(11):
            assert truncation_polynomial(RecurrenceSpec(l, nu)).degree == nu + 1


def test_ground_truncation_root_is_closed_form():
    for l in range(4):
        (sol,) = polysol_roots(l, 0)
        a, b = sol.bracket
        assert a <= (l + 1) * (l + 2) <= b
        assert abs(float(sol.beta_root.value) - (l + 1) * (l + 2)) < 1e-20
        assert float(sol.energy.value) == pytest.approx(-((l + 1) ** 2) / 2, abs=1e-12)
        assert sol.node_count == 0


def test_polysol_root_examples():
    beta = polysol_roots(0, 5)[0].beta_root
    # the published 1.846838425 is the truncation of 1.846838425989...
    assert beta.format(12) == "1.84683842599"
    assert beta.format(10) == "1.846838426"
    assert polysol_roots(0, 1)[1].node_count == 1


def test_node_count_examples():
    assert node_count([1]) == 0
    # c_0 + c_1 r at the two nu = 1 roots
    cs = coefficient_polynomials(RecurrenceSpec(0, 1))
    with mpmath.workprec(200):
        for root, nodes in (((9 - 3 * mpmath.sqrt(3)) / 2, 0), ((9 + 3 * mpmath.sqrt(3)) / 2, 1)):
            assert node_count([c(root) for c in cs[:2]]) == nodes
    with pytest.raises(PrecisionError):
        node_count([1, -1])


def test_node_count_equals_index():
    for l in range(4):
        for nu in range(11):
            roots = polysol_roots(l, nu)
            assert [r.node_count for r in roots] == list(range(nu + 1))
            assert all(r.beta_root.value > 0 for r in roots)
            assert all(a.beta_root.value < b.beta_root.value for a, b in zip(roots, roots[1:]))


def test_solution_invariants():
    for sol in polysol_roots(1, 4):
        assert float(sol.coefficients[0].value) == 1
        assert sol.coefficients[-1].value != 0
        p = truncation_polynomial(RecurrenceSpec(1, 4))
        with mpmath.workprec(256):
            assert abs(p(sol.beta_root.value)) < mpmath.mpf(10) ** -15
        assert polysol_energy(1, 4, sol.beta_root).value == sol.energy.value


@pytest.mark.parametrize("l, nu, beta, energy", [(0, 0, 2, -0.5), (1, 0, 6, -2.0), (2, 0, 12, -4.5)])
def test_polysol_energy_examples(l, nu, beta, energy):
    assert float(polysol_energy(l, nu, beta).value) == energy


def test_polysol_energy_rejects_non_positive_beta():
    with pytest.raises(ValueError):
        polysol_energy(0, 0, 0)


@pytest.mark.parametrize("l, nu", [(0, 3), (1, 5), (2, 2), (3, 6)])
def test_eigenfunction_residual(l, nu):
    from confined_hydrogen.polysol import radial_residual

    rng = random.Random(1000 * l + nu)
    for sol in polysol_roots(l, nu):
        for _ in range(20):
            r = rng.uniform(0.01, 0.99)
            assert radial_residual(sol, r) < mpmath.mpf(10) ** (-10 + 2)


def test_roots_decrease_with_nu():
    # disjoint exact brackets: the n-th root for nu+1 lies strictly below the one for nu
    for l in range(4):
        prev = None
        for nu in range(3, 31):
            p = truncation_polynomial(RecurrenceSpec(l, nu))
            sturm = SturmSequence(p)
            brackets = refined_brackets(p, mpq(0), positive_root_bound(p, sturm), 6, sturm)[:4]
            if prev is not None:
                for n in range(4):
                    assert brackets[n][1] < prev[n][0], (l, nu, n)
            prev = brackets

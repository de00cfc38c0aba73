import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from confined_hydrogen.exact import BigFloat, Q
from confined_hydrogen.model import (
    DimensionlessProblem,
    PhysicalConfig,
    QuantumNumbers,
    free_atom_energy,
    scaling_partner,
    to_dimensionless,
    to_physical_energy,
)
from confined_hydrogen.rrm import ritz_values

positive = st.fractions(min_value=mpq(1, 100), max_value=100, max_denominator=1000).map(Q).filter(lambda x: x > 0)


@pytest.mark.parametrize(
    "cfg, beta, scale",
    [
        (PhysicalConfig(1, 1, 1, 1), 1, 1),
        (PhysicalConfig(1, 1, 1, 2), 2, mpq(1, 4)),
        (PhysicalConfig(1, 1, 3, 4), 12, mpq(1, 16)),
    ],
)
def test_to_dimensionless_examples(cfg, beta, scale):
    problem, s = to_dimensionless(cfg)
    assert problem.beta == beta
    assert problem.r0 == 1
    assert s == scale


@pytest.mark.parametrize("bad", [0, -1])
def test_physical_config_rejects_non_positive(bad):
    with pytest.raises(ValueError):
        PhysicalConfig(1, 1, bad, 1)
    with pytest.raises(ValueError):
        PhysicalConfig(1, 1, 1, bad)


def test_problem_validation():
    with pytest.raises(ValueError):
        DimensionlessProblem(-1)
    with pytest.raises(ValueError):
        DimensionlessProblem(0, -1)
    with pytest.raises(ValueError):
        DimensionlessProblem(0, 1, 0)
    with pytest.raises(ValueError):
        QuantumNumbers(-1, 0)


def test_bigfloat_beta_keeps_its_exact_value():
    b = BigFloat.from_exact(Q(1, 3), 128)
    p = DimensionlessProblem(0, b)
    assert p.beta_exact == b.exact()
    assert abs(p.beta_exact - Q(1, 3)) < Q(1, 2**120)


@given(positive, positive, positive, positive, st.fractions(-50, 50, max_denominator=100).map(Q))
@settings(max_examples=50, deadline=None)
def test_round_trip_to_physical_energy(m, hbar, k, r0, energy):
    problem, scale = to_dimensionless(PhysicalConfig(m, hbar, k, r0))
    assert problem.beta == m * r0 * k / hbar**2
    assert to_physical_energy(energy, scale) / scale == energy


def test_free_atom_examples():
    assert free_atom_energy(QuantumNumbers(0, 0)) == mpq(-1, 2)
    assert free_atom_energy(QuantumNumbers(1, 1)) == mpq(-1, 18)
    assert free_atom_energy(QuantumNumbers(0, 2)) == free_atom_energy(QuantumNumbers(2, 0)) == mpq(-1, 18)


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_free_atom_energy_orders_by_shell(n1, l1, n2, l2):
    e1 = free_atom_energy(QuantumNumbers(n1, l1))
    e2 = free_atom_energy(QuantumNumbers(n2, l2))
    if n1 + l1 > n2 + l2:
        assert e1 > e2


def test_scaling_partner_identity_at_one():
    a, b, factor = scaling_partner(1)
    assert a == b
    assert factor == 1
    with pytest.raises(ValueError):
        scaling_partner(0)


@pytest.mark.parametrize("beta, l, expected", [(2, 0, mpq(-1, 2)), (6, 1, mpq(-2))])
def test_scaling_partner_examples(beta, l, expected):
    a, b, factor = scaling_partner(beta, l)
    ea = ritz_values(a, 40, 1, 12).values[0]
    eb = ritz_values(b, 40, 1, 12).values[0]
    assert abs(float(ea.exact() - expected)) < 1e-9
    assert abs(float(factor * eb.exact() - expected)) < 1e-9


def test_scaling_identity_lowest_three_levels():
    for beta in (mpq(1, 2), 3):
        a, b, factor = scaling_partner(beta, 0)
        wa = ritz_values(a, 30, 3, 12).values
        wb = ritz_values(b, 30, 3, 12).values
        for x, y in zip(wa, wb):
            assert abs(float(x.exact() - factor * y.exact())) < 1e-8

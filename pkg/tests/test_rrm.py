import mpmath
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from confined_hydrogen.errors import ProbeOnEigenvalueError
from confined_hydrogen.exact import Q, inertia
from confined_hydrogen.model import DimensionlessProblem
from confined_hydrogen.oracles import particle_in_box_energy
from confined_hydrogen.rrm import (
    BasisSpec,
    assemble,
    bisect_levels,
    count_below,
    expectation_inverse_r,
    ritz_residual,
    ritz_values,
    ritz_vector,
    secular_matrices,
)


def test_assembled_entries():
    mat = assemble(BasisSpec(0, 1, 3))
    assert mat.S[0, 0] == mpq(1, 30)
    assert mat.T[0, 0] == mpq(1, 6)
    assert mat.C[0, 0] == mpq(1, 12)
    # f_0 f_1 = r (1 - r)^2: S_01 = 1/60
    assert mat.S[0, 1] == mpq(1, 60)


def test_assembly_against_quadrature():
    l, r0, N = 2, Q(3, 2), 4
    mat = assemble(BasisSpec(l, r0, N))
    f = lambda i, r: r ** (i + l) * (float(r0) - r)
    df = lambda i, r: (i + l) * r ** (i + l - 1) * (float(r0) - r) - r ** (i + l)
    for i in range(N):
        for j in range(N):
            s = mpmath.quad(lambda r: f(i, r) * f(j, r) * r * r, [0, float(r0)])
            c = mpmath.quad(lambda r: f(i, r) * f(j, r) * r, [0, float(r0)])
            t = mpmath.quad(lambda r: df(i, r) * df(j, r) * r * r / 2 + l * (l + 1) / 2 * f(i, r) * f(j, r), [0, float(r0)])
            assert float(mat.S[i, j]) == pytest.approx(float(s), rel=1e-12)
            assert float(mat.C[i, j]) == pytest.approx(float(c), rel=1e-12)
            assert float(mat.T[i, j]) == pytest.approx(float(t), rel=1e-12)


@pytest.mark.parametrize("l", range(4))
def test_overlap_is_positive_definite(l):
    assert inertia(assemble(BasisSpec(l, 1, 40)).S) == (0, 0, 40)


def test_count_below_examples():
    for N in (5, 12):
        assert count_below(secular_matrices(DimensionlessProblem(0, 0), N), 0, 0) == 0
    assert count_below(secular_matrices(DimensionlessProblem(0, 2), 8), 2, 0) == 1
    assert count_below(secular_matrices(DimensionlessProblem(0, 0), 12), 0, 5) == 1
    assert inertia(assemble(BasisSpec(0, 1, 8)).hamiltonian(2))[0] == 1


def test_count_below_rejects_probe_on_eigenvalue():
    # N = 1: the single Ritz value at beta = 0 is T_00 / S_00 = 5
    mat = assemble(BasisSpec(0, 1, 1))
    with pytest.raises(ProbeOnEigenvalueError):
        count_below(mat, 0, 5)


@given(st.fractions(-20, 200, max_denominator=64).map(Q), st.fractions(-20, 200, max_denominator=64).map(Q))
@settings(max_examples=40, deadline=None)
def test_count_below_is_monotone_in_w(w1, w2):
    mat = assemble(BasisSpec(1, 1, 8))
    lo, hi = sorted((w1, w2))
    try:
        assert count_below(mat, 3, lo) <= count_below(mat, 3, hi)
    except ProbeOnEigenvalueError:
        pass


@given(st.fractions(0, 20, max_denominator=64).map(Q), st.fractions(0, 20, max_denominator=64).map(Q), st.fractions(-30, 0, max_denominator=16).map(Q))
@settings(max_examples=40, deadline=None)
def test_count_below_is_monotone_in_beta(b1, b2, w):
    mat = assemble(BasisSpec(0, 1, 8))
    lo, hi = sorted((b1, b2))
    try:
        assert count_below(mat, lo, w) <= count_below(mat, hi, w)
    except ProbeOnEigenvalueError:
        pass


def test_ritz_value_examples():
    assert ritz_values(DimensionlessProblem(0, 0), 30).values[0].format(10) == "4.934802201"
    w = ritz_values(DimensionlessProblem(0, 2), 40, 2).values
    assert [x.format(10) for x in w] == ["-0.5000000000", "13.31003663"]
    assert ritz_values(DimensionlessProblem(3, 0), 30).values[0].format(10) == "24.41559682"


def test_ritz_values_are_upper_bounds_and_ascending():
    for l in (0, 2):
        w = ritz_values(DimensionlessProblem(l, 0), 10, 4).values
        assert all(a.value < b.value for a, b in zip(w, w[1:]))
        for n, x in enumerate(w):
            assert x.value >= particle_in_box_energy(n, l).value


def test_variational_monotonicity_small_sizes():
    p = DimensionlessProblem(0, 3)
    prev = None
    for N in range(5, 16):
        w = ritz_values(p, N, 3, 12).values
        if prev is not None:
            assert all(b.value <= a.value + 1e-12 for a, b in zip(prev, w))
        prev = w


def test_ritz_values_rejects_bad_k():
    with pytest.raises(ValueError):
        ritz_values(DimensionlessProblem(0, 0), 5, 6)


def test_unaccelerated_path_agrees():
    p = DimensionlessProblem(1, Q(7, 3))
    a = ritz_values(p, 12, 3, 12)
    b = ritz_values(p, 12, 3, 12, accelerate=False)
    for x, y in zip(a.values, b.values):
        assert abs(float(x.value - y.value)) < 1e-11


def test_bisect_levels_on_known_counts():
    roots = [Q(1, 3), Q(2), Q(7)]
    out = bisect_levels(lambda x: sum(1 for r in roots if r < x), 3, Q(0), 8)
    for (a, b, v), r in zip(out, roots):
        assert a <= r <= b
        assert abs(float(v - r)) < 1e-8 * max(1, float(r))


def test_ritz_vector_single_function():
    vec = ritz_vector(DimensionlessProblem(0, 0), 1, 0)
    assert float(vec.coefficients[0]) == pytest.approx(30**0.5, rel=1e-15)


def test_ritz_vector_residual_and_orthogonality():
    p = DimensionlessProblem(0, 2)
    v0 = ritz_vector(p, 40, 0)
    v1 = ritz_vector(p, 40, 1)
    assert ritz_residual(p, 40, v0) < 1e-8
    mat = secular_matrices(p, 40)
    with mpmath.workprec(600):
        S = mat.S.to_mpmath(600)
        c0 = mpmath.matrix(list(v0.coefficients))
        c1 = mpmath.matrix(list(v1.coefficients))
        assert abs((c0.T * S * c1)[0]) < 1e-8
        assert abs((c0.T * S * c0)[0] - 1) < 1e-20
    assert v0.coefficients[0] > 0


def test_inverse_r_of_particle_in_box_ground_state():
    # the radial density is 2 sin^2(pi r), so <1/r> = 2 * int_0^1 sin^2(pi r) / r dr
    with mpmath.workprec(120):
        oracle = 2 * mpmath.quad(lambda r: mpmath.sin(mpmath.pi * r) ** 2 / r, [0, 1])
    value = expectation_inverse_r(DimensionlessProblem(0, 0), 30, 0)
    assert abs(float(value.value - oracle)) < 1e-8
    assert float(oracle) == pytest.approx(2.4377, abs=1e-4)


def test_inverse_r_matches_hellmann_feynman_at_beta_two():
    h = Q(1, 10**6)
    up = ritz_values(DimensionlessProblem(0, 2 + h), 40, 1, 16).values[0]
    down = ritz_values(DimensionlessProblem(0, 2 - h), 40, 1, 16).values[0]
    slope = float((up.exact() - down.exact()) / (2 * h))
    inv_r = expectation_inverse_r(DimensionlessProblem(0, 2), 40, 0)
    assert abs(slope + float(inv_r.value)) < 1e-6
    assert float(inv_r.value) > 1


def test_levels_decrease_with_beta():
    values = [ritz_values(DimensionlessProblem(1, b), 20, 2).values for b in (0, 1, 2, 4)]
    for a, b in zip(values, values[1:]):
        assert all(y.value < x.value for x, y in zip(a, b))

import math
import random

import pytest
from hypothesis import given, strategies as st

from gridfunc.analytic import (
    Arccos,
    Composition,
    Constant,
    Cos,
    Identity,
    Polynomial,
    Product,
    Scaled,
    Sin,
    SinSquared,
    Sum,
    chebyshev,
    compose,
    fixtures,
    sin_squared,
    sin_squared_closure,
)
from gridfunc.errors import ConceptError

H = 1e-5


def central_difference(f, x, h=H):
    return (f(x + h) - f(x - h)) / (2 * h)


def power_sum(coeffs, x):
    # Independent reference: exact rational evaluation, rounded once.
    from fractions import Fraction

    return float(sum(Fraction(c) * Fraction(x) ** i for i, c in enumerate(coeffs)))


@pytest.mark.parametrize("x, expected", [(0.0, 1.0), (1.0, 6.0)])
def test_polynomial_eval(x, expected):
    assert Polynomial([1, 2, 3])(x) == expected


def test_zero_polynomial():
    assert Polynomial([])(7.0) == 0.0


def test_polynomial_matches_literal_loop_bitwise():
    p = Polynomial([1, 2, 3])
    x = 0.5 * math.pi
    y = 0.0
    for i, c in enumerate([1.0, 2.0, 3.0]):
        y += c * math.pow(x, i)
    assert p(x) == y


@pytest.mark.parametrize(
    "coeffs, expected",
    [([1, 2, 3], (2.0, 6.0)), ([5], ()), ([0, 0, 0, 4], (0.0, 0.0, 12.0)), ([], ())],
)
def test_polynomial_derivative(coeffs, expected):
    assert Polynomial(coeffs).derivative().coefficients == expected


coefficient_lists = st.lists(st.integers(-10, 10), max_size=6)


@given(coefficient_lists, st.floats(-2, 2))
def test_polynomial_derivative_matches_finite_differences(coeffs, x):
    p = Polynomial(coeffs)
    dp = p.derivative()(x)
    assert abs(dp - central_difference(p, x)) <= 1e-6 * (1 + abs(dp))


@given(coefficient_lists, st.floats(-2, 2))
def test_polynomial_value_close_to_exact(coeffs, x):
    assert Polynomial(coeffs)(x) == pytest.approx(power_sum(coeffs, x), rel=1e-12, abs=1e-12)


@given(coefficient_lists)
def test_repeated_derivative_reaches_zero(coeffs):
    p = Polynomial(coeffs)
    for _ in range(len(coeffs)):
        p = p.derivative()
    assert p.coefficients == ()


def test_chebyshev_t2():
    assert chebyshev(2)(0.5) == pytest.approx(-0.5, abs=1e-12)


def test_compose_with_identity():
    assert compose(Identity(), Polynomial([1, 2, 3]))(1.0) == 6.0


def test_chain_rule_square():
    c = compose(Polynomial([0, 0, 1]), Polynomial([0, 1]))
    assert c.derivative()(3.0) == 6.0
    assert c.derivative()(3.0) == pytest.approx(central_difference(c, 3.0), rel=1e-8)


@pytest.mark.parametrize("x", [-0.9, -0.5, 0.0, 0.3, 0.5, 0.9])
@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_chebyshev_chain_rule_vs_finite_differences(n, x):
    t = chebyshev(n)
    d = t.derivative()(x)
    assert abs(d - central_difference(t, x)) <= 1e-6 * (1 + abs(d))
    # n * sin(n acos x) / sqrt(1 - x^2) is the closed form
    assert d == pytest.approx(n * math.sin(n * math.acos(x)) / math.sqrt(1 - x * x), rel=1e-12)


@pytest.mark.parametrize("x", [-1.3, 0.2, 2.0])
def test_combinator_derivatives(x):
    f = Sum(Product(Sin(), Polynomial([1, 1])), Scaled(3.0, Cos()))
    for g in (f, f.derivative()):
        d = g.derivative()(x)
        assert abs(d - central_difference(g, x)) <= 1e-6 * (1 + abs(d))


def test_constant_derivative():
    assert Constant(3.0)(1.0) == 3.0
    assert Constant(3.0).derivative()(1.0) == 0.0


def test_compose_rejects_non_differentiable():
    with pytest.raises(ConceptError):
        compose(sin_squared, Identity())
    with pytest.raises(ConceptError):
        compose(Cos(), 3)


def test_composition_value():
    assert Composition(Cos(), Arccos())(0.3) == pytest.approx(0.3, abs=1e-15)


def test_fixture_values():
    fx = fixtures()
    assert set(fx) == {"sinSquared", "sinSquaredClosure", "sinSquaredObject"}
    assert fx["sinSquared"](math.pi) == pytest.approx(0.0, abs=1e-12)
    assert fx["sinSquaredClosure"](math.pi / 2) == pytest.approx(1.0, abs=1e-12)
    assert isinstance(fx["sinSquaredObject"], SinSquared)
    assert fx["sinSquaredClosure"] is sin_squared_closure


def test_fixtures_agree_bitwise():
    rng = random.Random(1)
    fx = list(fixtures().values())
    for _ in range(100):
        x = rng.uniform(0, 2 * math.pi)
        values = {f(x) for f in fx}
        assert len(values) == 1

import pytest
from hypothesis import given, strategies as st

from gridfunc.interface import INVALID, SCALAR, Covector, Matrix, Signature, Vector
from gridfunc.traits import (
    DEFAULT_TRAITS,
    DerivativeTraitsPolicy,
    default_derivative_range,
    local_forwarding_policy,
)

dims = st.integers(min_value=1, max_value=12)
kinds = st.one_of(st.just(SCALAR), dims.map(Vector))


@pytest.mark.parametrize(
    "sig, expected",
    [
        (Signature(SCALAR, SCALAR), SCALAR),
        (Signature(Vector(3), SCALAR), Covector(3)),
        (Signature(Vector(2), Vector(4)), Matrix(4, 2)),
        (Signature(SCALAR, Vector(5)), Vector(5)),
    ],
)
def test_default_mapping(sig, expected):
    assert default_derivative_range(sig) == expected


def test_covector_is_not_vector():
    assert Covector(3) != Vector(3)


def test_hessian_of_scalar_field():
    grad_sig = Signature(Vector(3), default_derivative_range(Signature(Vector(3), SCALAR)))
    assert default_derivative_range(grad_sig) == Matrix(3, 3)


def test_matrix_valued_range_is_invalid():
    assert default_derivative_range(Signature(Vector(2), Matrix(2, 2))) == INVALID
    assert default_derivative_range(Signature(SCALAR, Matrix(2, 2))) == INVALID


@given(kinds, kinds)
def test_default_never_invalid_for_scalar_and_vector(dom, rng):
    assert default_derivative_range(Signature(dom, rng)) != INVALID


def test_policy_is_total():
    def broken(sig):
        raise RuntimeError("nope")

    assert DerivativeTraitsPolicy("broken", broken)(Signature()) == INVALID
    assert DerivativeTraitsPolicy("junk", lambda sig: 42)(Signature()) == INVALID


@pytest.mark.parametrize(
    "global_sig, local_sig, expected",
    [
        (Signature(SCALAR, SCALAR), Signature(SCALAR, SCALAR), SCALAR),
        (Signature(Vector(2), SCALAR), Signature(SCALAR, SCALAR), Covector(2)),
        (Signature(Vector(2), Vector(2)), Signature(Vector(7), SCALAR), Matrix(2, 2)),
    ],
)
def test_local_forwarding(global_sig, local_sig, expected):
    policy = local_forwarding_policy(global_sig, DEFAULT_TRAITS)
    assert policy(local_sig) == expected
    assert policy(local_sig) == DEFAULT_TRAITS(global_sig)


@given(kinds, kinds, kinds)
def test_forwarding_twice_is_idempotent(dom, rng, local_dom):
    g = Signature(dom, rng)
    once = local_forwarding_policy(g, DEFAULT_TRAITS)
    twice = local_forwarding_policy(g, once)
    assert twice(Signature(local_dom, SCALAR)) == once(Signature(local_dom, SCALAR))


@pytest.mark.parametrize("bad", [0, -1, 2.0, True])
def test_dimensions_must_be_positive_integers(bad):
    with pytest.raises(ValueError):
        Vector(bad)


def test_signature_domain_restricted():
    with pytest.raises(ValueError):
        Signature(Matrix(2, 2), SCALAR)
    with pytest.raises(ValueError):
        Signature(SCALAR, INVALID)

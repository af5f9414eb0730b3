"""Closed-form differentiable scalar functions.

These are the model implementations of the function concepts: a
:class:`Polynomial`, a few elementary functions, and combinators
(:class:`Composition`, :class:`Sum`, :class:`Product`, :class:`Scaled`) whose
``derivative()`` applies the chain, sum and product rules.  All objects are
immutable.

>>> p = Polynomial([1, 2, 3])
>>> p(1.0), p.derivative().coefficients
(6.0, (2.0, 6.0))
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .concepts import check_differentiable_function, require

__all__ = [
    "Polynomial",
    "Constant",
    "Identity",
    "Sin",
    "Cos",
    "Arccos",
    "Scaled",
    "Sum",
    "Product",
    "Composition",
    "compose",
    "chebyshev",
    "sin_squared",
    "sin_squared_closure",
    "SinSquared",
    "fixtures",
]


@dataclass(frozen=True)
class Polynomial:
    """``coefficients[i]`` multiplies ``x**i``; an empty list is the zero function."""

    coefficients: tuple[float, ...] = ()

    def __init__(self, coefficients=()):
        object.__setattr__(self, "coefficients", tuple(float(c) for c in coefficients))

    def __call__(self, x):
        # Power-sum form, not Horner: values must match the reference loop exactly.
        y = 0.0
        for i, c in enumerate(self.coefficients):
            y += c * math.pow(x, i)
        return y

    def derivative(self) -> Polynomial:
        return Polynomial(c * i for i, c in enumerate(self.coefficients) if i > 0)

    @property
    def degree(self) -> int:
        """Length-based degree; -1 for the empty polynomial."""
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class Constant:
    value: float = 0.0

    def __call__(self, x):
        return self.value

    def derivative(self):
        return Constant(0.0)


class Identity:
    def __call__(self, x):
        return x

    def derivative(self):
        return Constant(1.0)

    def __eq__(self, other):
        return isinstance(other, Identity)

    def __hash__(self):
        return hash(Identity)


class Sin:
    def __call__(self, x):
        return math.sin(x)

    def derivative(self):
        return Cos()


class Cos:
    def __call__(self, x):
        return math.cos(x)

    def derivative(self):
        return Scaled(-1.0, Sin())


class _ArccosDerivative:
    def __call__(self, x):
        return -1.0 / math.sqrt(1.0 - x * x)


class Arccos:
    """Defined on [-1, 1]; the derivative is singular at the endpoints."""

    def __call__(self, x):
        return math.acos(x)

    def derivative(self):
        return _ArccosDerivative()


@dataclass(frozen=True)
class Scaled:
    factor: float
    inner: object

    def __call__(self, x):
        return self.factor * self.inner(x)

    def derivative(self):
        return Scaled(self.factor, self.inner.derivative())


@dataclass(frozen=True)
class Sum:
    left: object
    right: object

    def __call__(self, x):
        return self.left(x) + self.right(x)

    def derivative(self):
        return Sum(self.left.derivative(), self.right.derivative())


@dataclass(frozen=True)
class Product:
    left: object
    right: object

    def __call__(self, x):
        return self.left(x) * self.right(x)

    def derivative(self):
        return Sum(
            Product(self.left.derivative(), self.right),
            Product(self.left, self.right.derivative()),
        )


@dataclass(frozen=True)
class Composition:
    """``outer(inner(x))``, differentiated by the chain rule."""

    outer: object
    inner: object

    def __call__(self, x):
        return self.outer(self.inner(x))

    def derivative(self):
        return Product(Composition(self.outer.derivative(), self.inner), self.inner.derivative())


def compose(outer, inner) -> Composition:
    """Compose two scalar differentiable functions after checking both.

    Raises :class:`~gridfunc.errors.ConceptError` when either argument lacks a
    derivative or is not a scalar function.
    """
    require(check_differentiable_function(outer))
    require(check_differentiable_function(inner))
    return Composition(outer, inner)


def chebyshev(n: int) -> Composition:
    """``T_n(x) = cos(n arccos x)`` on [-1, 1]."""
    return compose(Cos(), Scaled(float(n), Arccos()))


# The three spellings of x -> sin(x)^2: free function, closure, function object.


def sin_squared(x):
    return math.sin(x) * math.sin(x)


sin_squared_closure = lambda x: math.sin(x) * math.sin(x)  # noqa: E731


class SinSquared:
    def __call__(self, x):
        return math.sin(x) * math.sin(x)


def fixtures() -> dict:
    return {
        "sinSquared": sin_squared,
        "sinSquaredClosure": sin_squared_closure,
        "sinSquaredObject": SinSquared(),
    }

"""Space kinds, signatures and the free ``derivative``/``local_function`` calls.

A signature pairs a domain kind with a range kind, e.g. ``Signature(SCALAR,
Vector(3))`` for a curve in R^3.  Derivative ranges additionally use
:class:`Covector` and :class:`Matrix`; :class:`Invalid` marks combinations a
traits policy refuses to map.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DerivativeUnavailableError

__all__ = [
    "SpaceKind",
    "Scalar",
    "Vector",
    "Covector",
    "Matrix",
    "Invalid",
    "SCALAR",
    "INVALID",
    "Signature",
    "derivative",
    "local_function",
]


class SpaceKind:
    """Common base of the kind descriptors; carries no data itself."""

    __slots__ = ()


@dataclass(frozen=True)
class Scalar(SpaceKind):
    def __str__(self):
        return "Scalar"


@dataclass(frozen=True)
class Vector(SpaceKind):
    n: int

    def __post_init__(self):
        _check_dim(self.n)

    def __str__(self):
        return f"Vector({self.n})"


@dataclass(frozen=True)
class Covector(SpaceKind):
    n: int

    def __post_init__(self):
        _check_dim(self.n)

    def __str__(self):
        return f"Covector({self.n})"


@dataclass(frozen=True)
class Matrix(SpaceKind):
    m: int
    n: int

    def __post_init__(self):
        _check_dim(self.m)
        _check_dim(self.n)

    def __str__(self):
        return f"Matrix({self.m},{self.n})"


@dataclass(frozen=True)
class Invalid(SpaceKind):
    def __str__(self):
        return "Invalid"


SCALAR = Scalar()
INVALID = Invalid()


def _check_dim(d):
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")


@dataclass(frozen=True)
class Signature:
    """Domain and range kind of a single-argument function.

    The domain is restricted to :class:`Scalar` or :class:`Vector`; the range
    may be any non-invalid kind so that derivative handles can carry
    covector and matrix ranges.
    """

    domain: SpaceKind = SCALAR
    range: SpaceKind = SCALAR

    def __post_init__(self):
        if not isinstance(self.domain, (Scalar, Vector)):
            raise ValueError(f"domain must be Scalar or Vector, got {self.domain}")
        if not isinstance(self.range, SpaceKind) or isinstance(self.range, Invalid):
            raise ValueError(f"invalid range kind {self.range!r}")

    def __str__(self):
        return f"{self.range}({self.domain})"


def derivative(f):
    """Return the derivative function of ``f`` via its ``derivative()`` method."""
    op = getattr(f, "derivative", None)
    if not callable(op):
        raise DerivativeUnavailableError(
            f"derivative unavailable: {type(f).__name__} has no derivative operation"
        )
    return op()


def local_function(f):
    """Return an unbound local function of the grid view function ``f``."""
    op = getattr(f, "local_function", None)
    if not callable(op):
        raise TypeError(f"{type(f).__name__} has no localFunction operation")
    return op()

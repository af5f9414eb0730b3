"""Derivative traits: which kind represents the derivative of a signature.

For ``f: D -> R`` the derivative takes values in the linear maps ``L(D, R)``.
The default policy represents them as

==================  ===================
signature           derivative range
==================  ===================
Scalar -> Scalar    Scalar
Scalar -> Vector(m) Vector(m)
Vector(n) -> Scalar Covector(n)
Vector(n) -> Vector(m)  Matrix(m, n)
==================  ===================

Repeated differentiation treats a covector range like a vector range, so the
second derivative of ``Vector(n) -> Scalar`` is the Hessian ``Matrix(n, n)``.
Anything else (matrix-valued ranges, non-vector domains) maps to ``INVALID``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .interface import INVALID, Covector, Matrix, Scalar, Signature, SpaceKind, Vector

__all__ = [
    "DerivativeTraitsPolicy",
    "default_derivative_range",
    "DEFAULT_TRAITS",
    "local_forwarding_policy",
]


@dataclass(frozen=True)
class DerivativeTraitsPolicy:
    """Named, total mapping from signatures to derivative range kinds."""

    name: str
    mapping: Callable[[Signature], SpaceKind]

    def __call__(self, sig: Signature) -> SpaceKind:
        try:
            result = self.mapping(sig)
        except Exception:  # noqa: BLE001 - a policy must stay total
            return INVALID
        return result if isinstance(result, SpaceKind) else INVALID


def default_derivative_range(sig: Signature) -> SpaceKind:
    dom, rng = sig.domain, sig.range
    if isinstance(dom, Scalar):
        if isinstance(rng, (Scalar, Vector, Covector)):
            return rng
        return INVALID
    if isinstance(dom, Vector):
        if isinstance(rng, Scalar):
            return Covector(dom.n)
        if isinstance(rng, (Vector, Covector)):
            return Matrix(rng.n, dom.n)
    return INVALID


DEFAULT_TRAITS = DerivativeTraitsPolicy("default", default_derivative_range)


def local_forwarding_policy(
    global_sig: Signature, global_policy: DerivativeTraitsPolicy = DEFAULT_TRAITS
) -> DerivativeTraitsPolicy:
    """Policy for local functions: every local signature maps to the global derivative range.

    Local derivatives are reported in global coordinates, so the range does not
    depend on the reference-element coordinate type.
    """
    target = global_policy(global_sig)
    return DerivativeTraitsPolicy(
        f"forward[{global_policy.name}:{global_sig}]", lambda _local_sig: target
    )


"""Pure-Python midpoint kernels, used when the compiled extension is unavailable.

Arithmetic matches the compiled kernels operation for operation: midpoints
``(k + 0.5) / n``, component-wise accumulation in ascending ``k``, one final
division by ``n``.
"""
from __future__ import annotations

import abc
from operator import add

from ..erasure import erase
from ..interface import SCALAR, Signature, Vector

MAX_COMPONENTS = None  # no limit


class VirtualFunction(abc.ABC):
    """Abstract base with an out-parameter ``evaluate``, the classic dynamic interface."""

    @abc.abstractmethod
    def evaluate(self, x, y) -> None: ...


class Integrand(VirtualFunction):
    """``f(x)_i = x + i - 1`` for ``i = 1..N``, callable by value or through ``evaluate``."""

    __slots__ = ("n_components", "_offsets")

    def __init__(self, n_components: int):
        if isinstance(n_components, bool) or not isinstance(n_components, int) or n_components < 1:
            raise ValueError(f"number of components must be a positive integer, got {n_components!r}")
        self.n_components = n_components
        self._offsets = tuple(float(i) for i in range(n_components))

    def __call__(self, x):
        return [x + c for c in self._offsets]

    def evaluate(self, x, y) -> None:
        for i, c in enumerate(self._offsets):
            y[i] = x + c

    def __repr__(self):
        return f"Integrand({self.n_components})"


def run_a(N: int, n: int) -> list[float]:
    offsets = tuple(float(i) for i in range(N))

    def f(x):
        return [x + c for c in offsets]

    acc = [0.0] * N
    for k in range(n):
        y = f((k + 0.5) / n)
        acc = list(map(add, acc, y))
    return [a / n for a in acc]


def run_b(N: int, n: int) -> list[float]:
    offsets = tuple(float(i) for i in range(N))

    def evaluate(x, y):
        for i, c in enumerate(offsets):
            y[i] = x + c

    acc = [0.0] * N
    y = [0.0] * N
    for k in range(n):
        evaluate((k + 0.5) / n, y)
        acc = list(map(add, acc, y))
    return [a / n for a in acc]


def run_c(N: int, n: int) -> list[float]:
    f = erase(Integrand(N), Signature(SCALAR, Vector(N)))
    acc = [0.0] * N
    for k in range(n):
        y = f((k + 0.5) / n)
        acc = list(map(add, acc, y))
    return [a / n for a in acc]


def run_d(N: int, n: int) -> list[float]:
    f: VirtualFunction = Integrand(N)
    acc = [0.0] * N
    y = [0.0] * N
    for k in range(n):
        f.evaluate((k + 0.5) / n, y)
        acc = list(map(add, acc, y))
    return [a / n for a in acc]


_RUNNERS = {"a": run_a, "b": run_b, "c": run_c, "d": run_d}


def run_variant(variant: str, N: int, n: int) -> list[float]:
    try:
        runner = _RUNNERS[variant]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r}") from None
    if N < 1 or n < 1:
        raise ValueError(f"cannot run variant {variant!r} with N={N}, n={n}")
    return runner(N, n)

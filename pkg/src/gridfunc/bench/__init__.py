"""Dispatch-cost benchmark: midpoint integration of ``f(x)_i = x + i - 1``.

Four call styles are compared:

``a``  static dispatch, result returned by value
``b``  static dispatch, result written to a caller-provided vector
``c``  call through an erased function handle, result by value
``d``  call through an abstract interface, result written to an out-parameter

Two kernel backends implement them.  ``"compiled"`` is the C++ extension
(``std::function`` for variant c, a virtual base class for d); ``"python"``
uses :func:`gridfunc.erasure.erase` and an ABC.  The compiled backend is
picked automatically when it was built; ``BACKEND`` says which one is active.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from . import _pykernels
from ._pykernels import Integrand, VirtualFunction
from .report import emit_chart, emit_csv

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

__all__ = [
    "VARIANTS",
    "BACKEND",
    "available_backends",
    "BenchConfig",
    "BenchRecord",
    "Integrand",
    "VirtualFunction",
    "make_integrand",
    "midpoint_integrate",
    "run_variant",
    "run_benchmark",
    "checksums_agree",
    "emit_csv",
    "emit_chart",
]

log = logging.getLogger(__name__)

VARIANTS = ("a", "b", "c", "d")
BACKEND = "compiled" if _ckernels is not None else "python"


def available_backends() -> tuple[str, ...]:
    return ("compiled", "python") if _ckernels is not None else ("python",)


def _resolve_backend(backend: str | None, N: int) -> str:
    if backend is None or backend == "auto":
        if _ckernels is not None and N <= _ckernels.MAX_COMPONENTS:
            return "compiled"
        return "python"
    if backend not in ("compiled", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "compiled":
        if _ckernels is None:
            raise ValueError("compiled backend not available")
        if N > _ckernels.MAX_COMPONENTS:
            raise ValueError(f"compiled backend supports N <= {_ckernels.MAX_COMPONENTS}")
    return backend


def make_integrand(N: int) -> Integrand:
    return Integrand(N)


def midpoint_integrate(f, n: int) -> np.ndarray:
    """Composite midpoint rule on [0, 1]: ``sum(f((k + 0.5) / n)) / n``.

    ``f`` may return a scalar or a sequence; the result is always a 1-D array.
    """
    if n < 1:
        raise ValueError(f"number of subintervals must be >= 1, got {n}")
    acc = None
    for k in range(n):
        y = np.atleast_1d(f((k + 0.5) / n)).tolist()
        if acc is None:
            acc = [0.0] * len(y)
        acc = [a + b for a, b in zip(acc, y)]
    return np.array([a / n for a in acc])


def run_variant(variant: str, N: int, n: int, backend: str | None = None) -> tuple[np.ndarray, float]:
    """Run one integration; returns the result vector and elapsed milliseconds."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if N < 1:
        raise ValueError(f"number of components must be >= 1, got {N}")
    kernels = _ckernels if _resolve_backend(backend, N) == "compiled" else _pykernels
    start = time.perf_counter_ns()
    result = kernels.run_variant(variant, N, n)
    elapsed = time.perf_counter_ns() - start
    return np.array(result), elapsed / 1e6


@dataclass(frozen=True)
class BenchConfig:
    components_range: tuple[int, ...] = tuple(range(1, 17))
    total_work: int = 10_000_000
    repeats: int = 4
    warmup_runs: int = 1
    variants: tuple[str, ...] = VARIANTS
    backend: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "components_range", tuple(self.components_range))
        object.__setattr__(self, "variants", tuple(self.variants))
        if not self.components_range or any(N < 1 for N in self.components_range):
            raise ValueError("component counts must be positive")
        if self.total_work < max(self.components_range):
            raise ValueError("total work must be at least the largest component count")
        if self.repeats < 1 or self.warmup_runs < 0:
            raise ValueError("repeats must be >= 1 and warmup runs >= 0")
        unknown = set(self.variants) - set(VARIANTS)
        if unknown or not self.variants:
            raise ValueError(f"variants must be a non-empty subset of {VARIANTS}")

    def subintervals(self, N: int) -> int:
        return self.total_work // N


@dataclass(frozen=True)
class BenchRecord:
    variant: str
    N: int
    n_calls: int
    all_times_ms: tuple[float, ...]
    checksum: float
    backend: str = field(default="python", compare=False)

    @property
    def min_time_ms(self) -> float:
        return min(self.all_times_ms)


def run_benchmark(cfg: BenchConfig) -> list[BenchRecord]:
    """Warm up, then time ``cfg.repeats`` runs per (variant, N), sequentially.

    Cells are visited N-major so the variants compared at one N run close
    together in time.  Records come back sorted by (variant, N).
    """
    records = []
    for N in cfg.components_range:
        n = cfg.subintervals(N)
        for variant in sorted(cfg.variants):
            backend = _resolve_backend(cfg.backend, N)
            for _ in range(cfg.warmup_runs):
                run_variant(variant, N, n, backend)
            times = []
            result = None
            for _ in range(cfg.repeats):
                result, ms = run_variant(variant, N, n, backend)
                times.append(ms)
            checksum = float(sum(result.tolist()))
            log.debug("variant %s N=%d n=%d min %.3f ms", variant, N, n, min(times))
            records.append(BenchRecord(variant, N, n, tuple(times), checksum, backend))
    return sorted(records, key=lambda r: (r.variant, r.N))


def checksums_agree(records) -> bool:
    """True if all variants produced the same checksum for every N."""
    by_n: dict[int, set] = {}
    for r in records:
        by_n.setdefault(r.N, set()).add(r.checksum)
    return all(len(s) == 1 for s in by_n.values())

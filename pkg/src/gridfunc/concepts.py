"""Runtime concept checks for the four function concepts.

Each check returns a :class:`ConceptReport` instead of raising, so the
diagnostic itself can be inspected and tested.  Static conformance is
expressed separately by the :class:`typing.Protocol` classes below, which a
type checker can verify without running anything.

Checks that need evidence of a return value call the candidate once on a
probe argument (``0.5`` or a vector of ``0.5``).  Pass ``probe=`` when a
candidate is not defined there.
"""
from __future__ import annotations

import copy
import inspect
from dataclasses import dataclass, field
from typing import Any, Protocol, runtime_checkable

import numpy as np

from .errors import ConceptError, RangeNotConvertibleError
from .interface import (
    INVALID,
    SCALAR,
    Covector,
    Matrix,
    Scalar,
    Signature,
    SpaceKind,
    Vector,
)
from .traits import DEFAULT_TRAITS, DerivativeTraitsPolicy

__all__ = [
    "CONCEPTS",
    "ConceptReport",
    "Function",
    "DifferentiableFunction",
    "LocalFunction",
    "GridViewFunction",
    "check_function",
    "check_differentiable_function",
    "check_local_function",
    "check_grid_view_function",
    "is_convertible",
    "accepts_domain",
    "probe_value",
    "require",
]

CONCEPTS = ("Function", "DifferentiableFunction", "GridViewFunction", "LocalFunction")

_HUMAN_NAMES = {
    "Function": "function",
    "DifferentiableFunction": "differentiable function",
    "GridViewFunction": "grid view function",
    "LocalFunction": "local function",
}

CALLABLE = "callable with domain argument"
HAS_DERIVATIVE = "has derivative operation"
HAS_BIND = "has bind operation"
CALLABLE_LOCAL = "callable with local coordinate"
HAS_LOCAL_FUNCTION = "has localFunction operation"
HAS_GRID_VIEW = "has associated grid view"

_REAL_SCALARS = (int, float, np.integer, np.floating, np.bool_)


# --- static conformance ------------------------------------------------------


@runtime_checkable
class Function(Protocol):
    def __call__(self, x: Any) -> Any: ...


@runtime_checkable
class DifferentiableFunction(Function, Protocol):
    def derivative(self) -> Function: ...


@runtime_checkable
class LocalFunction(DifferentiableFunction, Protocol):
    def bind(self, element: Any) -> None: ...


@runtime_checkable
class GridViewFunction(DifferentiableFunction, Protocol):
    grid_view: Any

    def local_function(self) -> LocalFunction: ...


# --- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class ConceptReport:
    concept_name: str
    missing_requirements: tuple[str, ...] = ()
    details: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.concept_name not in CONCEPTS:
            raise ValueError(f"unknown concept {self.concept_name!r}")

    @property
    def models(self) -> bool:
        return not self.missing_requirements

    @property
    def diagnostic(self) -> str:
        human = _HUMAN_NAMES[self.concept_name]
        if self.models:
            return f"Type models {human} concept [{self.concept_name}]"
        text = (
            f"Type does not model {human} concept [{self.concept_name}]: "
            f"missing {', '.join(self.missing_requirements)}"
        )
        if self.details:
            text += f" ({'; '.join(self.details)})"
        return text

    def __str__(self):
        return self.diagnostic


def require(report: ConceptReport) -> ConceptReport:
    """Raise :class:`ConceptError` unless ``report`` models its concept."""
    if report.models:
        return report
    if any(m.startswith("range convertible") for m in report.missing_requirements):
        raise RangeNotConvertibleError(report)
    raise ConceptError(report)


# --- value-level helpers -------------------------------------------------------


def is_convertible(value: Any, kind: SpaceKind) -> bool:
    """True if ``value`` can stand for an element of ``kind``.

    Integers widen to scalars; arrays and sequences convert when their shape
    matches and their entries are real.  Complex values never convert.
    """
    if isinstance(kind, Scalar):
        return isinstance(value, _REAL_SCALARS)
    if isinstance(value, (str, bytes)):
        return False
    try:
        arr = np.asarray(value)
    except (ValueError, TypeError):
        return False
    if arr.dtype.kind not in "biuf":
        return False
    if isinstance(kind, (Vector, Covector)):
        return arr.shape == (kind.n,)
    if isinstance(kind, Matrix):
        return arr.shape == (kind.m, kind.n)
    return False


def accepts_domain(x: Any, kind: SpaceKind) -> bool:
    if isinstance(kind, Scalar):
        return isinstance(x, _REAL_SCALARS)
    return is_convertible(x, kind)


def probe_value(kind: SpaceKind):
    if isinstance(kind, Scalar):
        return 0.5
    return np.full(kind.n, 0.5)


def _takes_one_argument(candidate) -> bool | None:
    """Whether ``candidate`` binds a single positional argument; None if unknown."""
    try:
        sig = inspect.signature(candidate)
    except (TypeError, ValueError):
        return None
    try:
        sig.bind(object())
    except TypeError:
        return False
    return True


# --- checks ----------------------------------------------------------------------


def _function_requirements(candidate, sig: Signature, probe) -> tuple[list, list]:
    missing, details = [], []
    if not callable(candidate):
        missing.append(CALLABLE)
        details.append(f"{type(candidate).__name__} is not callable")
        return missing, details
    if _takes_one_argument(candidate) is False:
        missing.append(CALLABLE)
        details.append("call signature does not accept one argument")
        return missing, details
    x = probe_value(sig.domain) if probe is None else probe
    try:
        y = candidate(x)
    except Exception as exc:  # noqa: BLE001 - any failure means "not invocable"
        missing.append(CALLABLE)
        details.append(f"call raised {type(exc).__name__}: {exc}")
        return missing, details
    if not is_convertible(y, sig.range):
        missing.append(f"range convertible to {sig.range}")
        details.append(f"returned {type(y).__name__}")
    return missing, details


def check_function(candidate, sig: Signature = Signature(), *, probe=None) -> ConceptReport:
    missing, details = _function_requirements(candidate, sig, probe)
    return ConceptReport("Function", tuple(missing), tuple(details))


def check_differentiable_function(
    candidate,
    sig: Signature = Signature(),
    traits: DerivativeTraitsPolicy = DEFAULT_TRAITS,
    *,
    probe=None,
) -> ConceptReport:
    missing, details = _function_requirements(candidate, sig, probe)
    op = getattr(candidate, "derivative", None)
    if not callable(op):
        missing.append(HAS_DERIVATIVE)
        return ConceptReport("DifferentiableFunction", tuple(missing), tuple(details))
    drange = traits(sig)
    if drange == INVALID:
        missing.append("derivative range defined")
        details.append(f"traits {traits.name!r} map {sig} to Invalid")
        return ConceptReport("DifferentiableFunction", tuple(missing), tuple(details))
    try:
        df = op()
    except Exception as exc:  # noqa: BLE001
        missing.append(HAS_DERIVATIVE)
        details.append(f"derivative raised {type(exc).__name__}: {exc}")
        return ConceptReport("DifferentiableFunction", tuple(missing), tuple(details))
    sub = check_function(df, Signature(sig.domain, drange), probe=probe)
    if not sub.models:
        missing.append(f"derivative range matches {drange}")
        details.extend(sub.details)
    return ConceptReport("DifferentiableFunction", tuple(missing), tuple(details))


def check_local_function(candidate) -> ConceptReport:
    """Check the bind protocol; probes a copy when the grid view is reachable."""
    missing, details = [], []
    if not callable(getattr(candidate, "bind", None)):
        missing.append(HAS_BIND)
    if not callable(candidate) or _takes_one_argument(candidate) is False:
        missing.append(CALLABLE_LOCAL)
    if missing:
        return ConceptReport("LocalFunction", tuple(missing))

    gv = getattr(candidate, "grid_view", None)
    elements = getattr(gv, "elements", None)
    if callable(elements):
        trial = copy.copy(candidate)
        try:
            trial.bind(next(iter(elements())))
            y = trial(0.5)
        except Exception as exc:  # noqa: BLE001
            missing.append("evaluates after bind")
            details.append(f"{type(exc).__name__}: {exc}")
        else:
            rng = getattr(getattr(candidate, "signature", None), "range", SCALAR)
            if not is_convertible(y, rng):
                missing.append(f"range convertible to {rng}")
    return ConceptReport("LocalFunction", tuple(missing), tuple(details))


def check_grid_view_function(candidate) -> ConceptReport:
    from .grid import GridView

    missing, details = [], []
    if not isinstance(getattr(candidate, "grid_view", None), GridView):
        missing.append(HAS_GRID_VIEW)
    op = getattr(candidate, "local_function", None)
    if not callable(op):
        missing.append(HAS_LOCAL_FUNCTION)
    else:
        try:
            sub = check_local_function(op())
        except Exception as exc:  # noqa: BLE001
            missing.append("localFunction models LocalFunction")
            details.append(f"{type(exc).__name__}: {exc}")
        else:
            if not sub.models:
                missing.append("localFunction models LocalFunction")
                details.append(sub.diagnostic)
    return ConceptReport("GridViewFunction", tuple(missing), tuple(details))

"""Grid view functions, local functions and their erased handles.

A grid view function is defined on the global domain [0, 1] of a
:class:`~gridfunc.grid.GridView`.  ``local_function()`` returns an unbound
:class:`LocalFunction`; after ``bind(element)`` it evaluates ``f`` at
reference coordinates of that element, i.e. ``f(global_from_local(e, xhat))``.
Element-dependent setup (reading the two nodal values of a P1 function, say)
happens once in ``bind``.

Derivatives of local functions are reported in *global* coordinates: binding
``derivative(f)`` to ``e`` and differentiating ``f``'s local function bound to
``e`` give the same function.  The reference-coordinate derivative, which
would carry an extra factor of the element width, is deliberately not
provided.

Typical use::

    gv = make_uniform_grid(8)
    f = lift(lambda x: x * x, lambda x: 2 * x, gv)
    lf = f.local_function()
    for e in gv.elements():
        lf.bind(e)
        y = lf(0.5)
"""
from __future__ import annotations

from collections.abc import Sequence

from .concepts import check_function, check_grid_view_function, check_local_function, require
from .erasure import DEFAULT_BUFFER_CAPACITY, _ErasedBase
from .errors import DerivativeUnavailableError, GridError, UnboundLocalFunctionError
from .grid import Element, GridView, global_from_local, locate
from .interface import INVALID, SCALAR, Signature, derivative
from .traits import DEFAULT_TRAITS, DerivativeTraitsPolicy, local_forwarding_policy

__all__ = [
    "GridViewFunction",
    "LocalFunction",
    "AnalyticGridViewFunction",
    "P1Function",
    "PiecewiseConstantFunction",
    "ErasedGridViewFunction",
    "ErasedLocalFunction",
    "lift",
    "p1_interpolate",
    "derivative_gvf",
    "derivative_local",
    "eval_local",
    "bind",
    "local_function",
    "erase_grid_view_function",
    "erase_local_function",
]


class GridViewFunction:
    """Common protocol of the concrete grid view functions.

    Subclasses set ``_local_class`` and implement ``__call__`` (global
    evaluation) and, where available, ``derivative``.  Instances are
    immutable.
    """

    _local_class: type[LocalFunction]

    def __init__(self, grid_view: GridView, signature: Signature, traits: DerivativeTraitsPolicy):
        self.grid_view = grid_view
        self.signature = signature
        self.traits = traits

    def local_function(self) -> LocalFunction:
        return self._local_class(self)

    def derivative(self) -> GridViewFunction:
        raise DerivativeUnavailableError(f"derivative unavailable for {type(self).__name__}")

    def __call__(self, x):
        raise NotImplementedError


class LocalFunction:
    """Restriction of a grid view function to one element at a time.

    A local function is mutable working state: ``bind`` replaces the element
    and any prefetched data.  Copies keep the binding of the original.
    """

    def __init__(self, parent: GridViewFunction):
        self.parent = parent
        self._element = None

    @property
    def grid_view(self) -> GridView:
        return self.parent.grid_view

    @property
    def signature(self) -> Signature:
        return Signature(SCALAR, self.parent.signature.range)

    @property
    def traits(self) -> DerivativeTraitsPolicy:
        return local_forwarding_policy(self.parent.signature, self.parent.traits)

    @property
    def element(self) -> Element | None:
        return self._element

    @property
    def bound(self) -> bool:
        return self._element is not None

    def bind(self, e: Element) -> None:
        if not self.parent.grid_view.contains(e):
            raise GridError("element not in grid view")
        self._prefetch(e)
        self._element = e

    def unbind(self) -> None:
        self._element = None

    def _prefetch(self, e: Element) -> None:
        pass

    def _evaluate(self, xhat):
        raise NotImplementedError

    def __call__(self, xhat):
        if self._element is None:
            raise UnboundLocalFunctionError("unbound local function")
        if not 0.0 <= xhat <= 1.0:
            raise GridError(f"local coordinate out of reference element: {xhat!r}")
        return self._evaluate(xhat)

    def derivative(self) -> LocalFunction:
        """Local function of the global derivative, bound to the same element."""
        dlf = self.parent.derivative().local_function()
        if self._element is not None:
            dlf.bind(self._element)
        return dlf


# --- analytic lifts -------------------------------------------------------------


class _AnalyticLocalFunction(LocalFunction):
    def _evaluate(self, xhat):
        return self.parent.global_eval(global_from_local(self._element, xhat))


class AnalyticGridViewFunction(GridViewFunction):
    _local_class = _AnalyticLocalFunction

    def __init__(self, global_eval, global_derivative, grid_view, signature=Signature(), traits=DEFAULT_TRAITS):
        super().__init__(grid_view, signature, traits)
        self.global_eval = global_eval
        self.global_derivative = global_derivative

    def __call__(self, x):
        if not 0.0 <= x <= 1.0:
            raise GridError(f"point outside grid: {x!r}")
        return self.global_eval(x)

    def derivative(self) -> AnalyticGridViewFunction:
        df = self.global_derivative
        if df is None:
            raise DerivativeUnavailableError("derivative unavailable: lift created without derivative")
        drange = self.traits(self.signature)
        if drange == INVALID:
            raise DerivativeUnavailableError(f"derivative unavailable: {self.signature} maps to Invalid")
        ddf = df.derivative if callable(getattr(df, "derivative", None)) else None
        return AnalyticGridViewFunction(
            df, _Deferred(ddf) if ddf else None, self.grid_view, Signature(self.signature.domain, drange), self.traits
        )


class _Deferred:
    """Evaluates ``factory()`` on first call, so higher derivatives stay lazy."""

    def __init__(self, factory):
        self._factory = factory
        self._f = None

    def _get(self):
        if self._f is None:
            self._f = self._factory()
        return self._f

    def __call__(self, x):
        return self._get()(x)

    def derivative(self):
        return derivative(self._get())


def lift(f, df=None, gv: GridView | None = None, traits: DerivativeTraitsPolicy = DEFAULT_TRAITS, *, signature=Signature()):
    """Make a grid view function from a global callable ``f`` and its derivative ``df``.

    When ``df`` is omitted but ``f`` has a ``derivative()`` method, that is
    used; otherwise ``derivative()`` on the result raises.
    """
    if not isinstance(gv, GridView):
        raise TypeError("lift requires a GridView")
    require(check_function(f, signature))
    if df is None and callable(getattr(f, "derivative", None)):
        df = _Deferred(f.derivative)
    return AnalyticGridViewFunction(f, df, gv, signature, traits)


# --- P1 and piecewise constant functions ----------------------------------------


class _P1LocalFunction(LocalFunction):
    def __init__(self, parent):
        super().__init__(parent)
        self._v0 = self._v1 = 0.0

    def _prefetch(self, e):
        values = self.parent.nodal_values
        self._v0 = values[e.index]
        self._v1 = values[e.index + 1]

    def _evaluate(self, xhat):
        return self._v0 + (self._v1 - self._v0) * xhat


class P1Function(GridViewFunction):
    """Continuous piecewise linear function given by its values at the vertices.

    ``nodal_values`` is kept by reference (it plays the role of a global
    coefficient vector); local functions copy the two entries they need when
    bound.
    """

    _local_class = _P1LocalFunction

    def __init__(self, grid_view: GridView, nodal_values: Sequence[float], traits=DEFAULT_TRAITS):
        if len(nodal_values) != grid_view.num_elements + 1:
            raise GridError(
                f"expected {grid_view.num_elements + 1} nodal values, got {len(nodal_values)}"
            )
        super().__init__(grid_view, Signature(), traits)
        self.nodal_values = nodal_values
        self._derivative = None

    def __call__(self, x):
        e, t = locate(self.grid_view, x)
        v0 = self.nodal_values[e.index]
        v1 = self.nodal_values[e.index + 1]
        return v0 + (v1 - v0) * t

    def derivative(self) -> PiecewiseConstantFunction:
        if self._derivative is None:
            v = self.nodal_values
            slopes = tuple(
                (v[k + 1] - v[k]) / e.width for k, e in enumerate(self.grid_view.elements())
            )
            self._derivative = PiecewiseConstantFunction(self.grid_view, slopes, self.traits)
        return self._derivative


class _P0LocalFunction(LocalFunction):
    def __init__(self, parent):
        super().__init__(parent)
        self._value = 0.0

    def _prefetch(self, e):
        self._value = self.parent.element_values[e.index]

    def _evaluate(self, xhat):
        return self._value


class PiecewiseConstantFunction(GridViewFunction):
    """One value per element; on shared vertices global evaluation follows ``locate``."""

    _local_class = _P0LocalFunction

    def __init__(self, grid_view: GridView, element_values, traits=DEFAULT_TRAITS):
        if len(element_values) != grid_view.num_elements:
            raise GridError(f"expected {grid_view.num_elements} element values, got {len(element_values)}")
        super().__init__(grid_view, Signature(), traits)
        self.element_values = tuple(element_values)

    def __call__(self, x):
        e, _ = locate(self.grid_view, x)
        return self.element_values[e.index]

    def derivative(self) -> PiecewiseConstantFunction:
        # Zero inside every element; the jumps at vertices are not represented.
        return PiecewiseConstantFunction(self.grid_view, (0.0,) * self.grid_view.num_elements, self.traits)


def p1_interpolate(gv: GridView, nodal_values) -> P1Function:
    return P1Function(gv, nodal_values)


# --- free-function spellings -------------------------------------------------------


def local_function(gvf) -> LocalFunction:
    return gvf.local_function()


def bind(lf, e: Element) -> None:
    lf.bind(e)


def eval_local(lf, xhat):
    return lf(xhat)


def derivative_gvf(gvf):
    return gvf.derivative()


def derivative_local(lf):
    return lf.derivative()


# --- erased handles ------------------------------------------------------------------


class ErasedGridViewFunction(_ErasedBase):
    """Erased grid view function; ``local_function()`` yields an :class:`ErasedLocalFunction`."""

    __slots__ = ("traits", "grid_view")

    def __init__(self, gvf, buffer_capacity: int = DEFAULT_BUFFER_CAPACITY, *, thread_transferable=True):
        require(check_grid_view_function(gvf))
        self.signature = getattr(gvf, "signature", Signature())
        self.traits = getattr(gvf, "traits", DEFAULT_TRAITS)
        self.grid_view = gvf.grid_view
        self.buffer_capacity = buffer_capacity
        self.thread_transferable = thread_transferable
        self._target = self._ops = self._cell = None
        self._install(gvf)

    def __call__(self, x):
        target = self._live_target()
        return self._ops.call(target, x)

    def local_function(self) -> ErasedLocalFunction:
        return ErasedLocalFunction(
            self._live_target().local_function(),
            self.buffer_capacity,
            traits=local_forwarding_policy(self.signature, self.traits),
        )

    def derivative(self) -> ErasedGridViewFunction:
        target = self._live_target()
        if self.traits(self.signature) == INVALID:
            raise DerivativeUnavailableError(f"derivative unavailable: {self.signature} maps to Invalid")
        return ErasedGridViewFunction(derivative(target), self.buffer_capacity)


class ErasedLocalFunction(_ErasedBase):
    """Erased local function; ``bind`` and evaluation forward to the wrapped object.

    Its traits are the forwarding policy of the originating grid view
    function, so derivative ranges are those of the global derivative.
    """

    __slots__ = ("traits", "grid_view")

    def __init__(self, lf, buffer_capacity: int = DEFAULT_BUFFER_CAPACITY, *, traits=None, thread_transferable=True):
        require(check_local_function(lf))
        self.signature = getattr(lf, "signature", Signature())
        self.traits = traits if traits is not None else getattr(lf, "traits", DEFAULT_TRAITS)
        self.grid_view = getattr(lf, "grid_view", None)
        self.buffer_capacity = buffer_capacity
        self.thread_transferable = thread_transferable
        self._target = self._ops = self._cell = None
        self._install(lf)

    @property
    def element(self):
        return getattr(self._live_target(), "element", None)

    def bind(self, e: Element) -> None:
        self._live_target().bind(e)

    def __call__(self, xhat):
        target = self._live_target()
        return self._ops.call(target, xhat)

    def derivative(self) -> ErasedLocalFunction:
        target = self._live_target()
        if self.traits(self.signature) == INVALID:
            raise DerivativeUnavailableError(f"derivative unavailable: {self.signature} maps to Invalid")
        return ErasedLocalFunction(derivative(target), self.buffer_capacity, traits=self.traits)


def erase_grid_view_function(gvf, buffer_capacity: int = DEFAULT_BUFFER_CAPACITY) -> ErasedGridViewFunction:
    return ErasedGridViewFunction(gvf, buffer_capacity)


def erase_local_function(lf, buffer_capacity: int = DEFAULT_BUFFER_CAPACITY) -> ErasedLocalFunction:
    return ErasedLocalFunction(lf, buffer_capacity)

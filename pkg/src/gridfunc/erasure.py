"""Type-erased function handles with small-object storage accounting.

An erased handle hides the concrete type of a callable behind a fixed
interface.  Calls are routed through a per-type operation table
(``call``, ``clone``, ``destroy``, ``size_of``), so a handle can be
reassigned to a free function, a closure or a function object and behave
identically.

Storage follows the small-object rule: the *footprint* of the wrapped
callable (the C layout of the state it carries, see :func:`footprint`) is
compared with the handle's buffer capacity (56 bytes by default).  Small
callables are stored inline; larger ones get one cell from the counting heap.
:func:`track_allocations` observes that heap, which is how the allocation
behaviour of construction, cloning and calling is measured.

>>> h = erase(lambda x: 2 * x)
>>> h(1.5), h.is_inline
(3.0, True)
"""
from __future__ import annotations

import copy
import ctypes
import functools
import threading
import types
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .concepts import (
    accepts_domain,
    check_differentiable_function,
    check_function,
    require,
)
from .errors import DerivativeUnavailableError, DomainMismatchError, EmptyHandleError
from .interface import INVALID, Scalar, Signature, derivative
from .traits import DEFAULT_TRAITS, DerivativeTraitsPolicy

__all__ = [
    "DEFAULT_BUFFER_CAPACITY",
    "AllocationStats",
    "track_allocations",
    "footprint",
    "ErasedFunction",
    "ErasedDifferentiableFunction",
    "erase",
    "erase_differentiable",
    "call",
    "is_inline",
]

DEFAULT_BUFFER_CAPACITY = 56


# --- counting heap -------------------------------------------------------------


@dataclass
class AllocationStats:
    allocations: int = 0
    deallocations: int = 0
    bytes_allocated: int = 0


_trackers: list[AllocationStats] = []
_trackers_lock = threading.Lock()


@contextmanager
def track_allocations():
    """Count heap cells allocated and freed by erased handles inside the block.

    >>> with track_allocations() as stats:
    ...     h = erase(abs)
    >>> stats.allocations
    0
    """
    stats = AllocationStats()
    with _trackers_lock:
        _trackers.append(stats)
    try:
        yield stats
    finally:
        with _trackers_lock:
            _trackers.remove(stats)


class _HeapCell:
    __slots__ = ("payload", "nbytes")

    def __init__(self, payload, nbytes):
        self.payload = payload
        self.nbytes = nbytes


def _heap_allocate(payload, nbytes: int) -> _HeapCell:
    for t in _trackers:
        t.allocations += 1
        t.bytes_allocated += nbytes
    return _HeapCell(payload, nbytes)


def _heap_free(cell: _HeapCell) -> None:
    for t in _trackers:
        t.deallocations += 1
    cell.payload = None


# --- footprint -----------------------------------------------------------------


def _ctype_of(value):
    if isinstance(value, (bool, np.bool_)):
        return ctypes.c_bool
    if isinstance(value, int):
        return ctypes.c_int64
    if isinstance(value, float):
        return ctypes.c_double
    if isinstance(value, complex):
        return ctypes.c_double * 2
    if isinstance(value, (np.generic, np.ndarray)):
        try:
            elem = np.ctypeslib.as_ctypes_type(value.dtype)
        except NotImplementedError:
            elem = ctypes.c_char * value.dtype.itemsize
        return elem if isinstance(value, np.generic) else elem * value.size
    if isinstance(value, tuple):
        return _struct_of(value)
    if isinstance(value, (bytes, bytearray)):
        return ctypes.c_char * len(value)
    return ctypes.c_void_p


def _struct_of(values) -> type:
    fields = [(f"f{i}", _ctype_of(v)) for i, v in enumerate(values)]
    return type("Layout", (ctypes.Structure,), {"_fields_": fields})


def _state_of(obj) -> list:
    """The values a callable carries, in declaration order."""
    if isinstance(obj, types.FunctionType):
        cells = obj.__closure__ or ()
        state = []
        for cell in cells:
            try:
                state.append(cell.cell_contents)
            except ValueError:  # unfilled cell
                state.append(None)
        return state
    if isinstance(obj, types.MethodType):
        return _state_of(obj.__self__)
    if isinstance(obj, functools.partial):
        return [obj.func, *obj.args, *obj.keywords.values()]
    if isinstance(obj, (types.BuiltinFunctionType, type)):
        return []
    state = []
    for klass in type(obj).__mro__:
        slots = klass.__dict__.get("__slots__", ())
        if isinstance(slots, str):
            slots = (slots,)
        for name in slots:
            if name in ("__dict__", "__weakref__"):
                continue
            try:
                state.append(getattr(obj, name))
            except AttributeError:
                pass
    state.extend(getattr(obj, "__dict__", {}).values())
    return state


def footprint(obj) -> int:
    """Bytes the callable would occupy as a C struct of its captured state.

    Closure cells, ``__slots__`` and instance attributes become struct
    fields.  Numbers, tuples, byte strings and numpy arrays are laid out by
    value with their natural alignment; any other object counts as a single
    pointer.  A function without captures has footprint 0.
    """
    return ctypes.sizeof(_struct_of(_state_of(obj)))


# --- dispatch tables ---------------------------------------------------------------


class _Ops(NamedTuple):
    call: Callable
    clone: Callable
    destroy: Callable
    size_of: Callable


_OPS: dict[type, _Ops] = {}


def _noop(obj):
    return None


def _ops_for(tp: type) -> _Ops:
    ops = _OPS.get(tp)
    if ops is None:
        ops = _OPS.setdefault(tp, _Ops(tp.__call__, copy.copy, _noop, footprint))
    return ops


# --- handles ---------------------------------------------------------------------


class _ErasedBase:
    """Storage, copy/move and emptiness shared by every erased handle type."""

    __slots__ = ("_target", "_ops", "_cell", "signature", "buffer_capacity", "thread_transferable")

    def _install(self, target) -> None:
        ops = _ops_for(type(target))
        size = ops.size_of(target)
        self._cell = None if size <= self.buffer_capacity else _heap_allocate(target, size)
        self._target = target
        self._ops = ops

    def _release(self) -> None:
        if self._ops is not None:
            self._ops.destroy(self._target)
        if self._cell is not None:
            _heap_free(self._cell)
        self._target = self._ops = self._cell = None

    def _empty_like(self):
        new = object.__new__(type(self))
        for name in self._copied_slots():
            setattr(new, name, getattr(self, name))
        new._target = new._ops = new._cell = None
        return new

    def _copied_slots(self):
        for klass in type(self).__mro__:
            for name in klass.__dict__.get("__slots__", ()):
                if name not in ("_target", "_ops", "_cell"):
                    yield name

    def _live_target(self):
        if self._ops is None:
            raise EmptyHandleError("empty handle")
        return self._target

    @property
    def is_inline(self) -> bool:
        """True when the wrapped callable fits the inline buffer."""
        self._live_target()
        return self._cell is None

    @property
    def target_footprint(self) -> int:
        return self._ops.size_of(self._live_target())

    def clone(self):
        """Copy the wrapped callable into a new, independent handle."""
        new = self._empty_like()
        new._install(self._ops.clone(self._live_target()))
        return new

    __copy__ = clone

    def move(self):
        """Transfer the wrapped callable to a new handle, leaving this one empty."""
        new = self._empty_like()
        new._target, new._ops, new._cell = self._target, self._ops, self._cell
        self._target = self._ops = self._cell = None
        return new

    def reset(self) -> None:
        self._release()

    def __bool__(self):
        return self._ops is not None

    def __del__(self):
        cell = getattr(self, "_cell", None)
        if cell is not None:
            _heap_free(cell)

    def __repr__(self):
        if self._ops is None:
            return f"<{type(self).__name__} {self.signature} empty>"
        where = "inline" if self._cell is None else "heap"
        return f"<{type(self).__name__} {self.signature} {type(self._target).__name__} {where}>"


class ErasedFunction(_ErasedBase):
    """Type-erased ``range(domain)`` function, the analogue of ``std::function``."""

    __slots__ = ("_accepts", "_to_range")

    def __init__(
        self,
        f,
        signature: Signature = Signature(),
        buffer_capacity: int = DEFAULT_BUFFER_CAPACITY,
        *,
        thread_transferable: bool = True,
    ):
        if buffer_capacity < 0:
            raise ValueError("buffer capacity must be non-negative")
        self.signature = signature
        self.buffer_capacity = buffer_capacity
        self.thread_transferable = thread_transferable
        self._target = self._ops = self._cell = None
        dom = signature.domain
        self._accepts = _scalar_domain if isinstance(dom, Scalar) else (lambda x: accepts_domain(x, dom))
        self._to_range = float if isinstance(signature.range, Scalar) else None
        self.assign(f)

    def _check(self, f):
        require(check_function(f, self.signature))

    def assign(self, f) -> None:
        """Replace the wrapped callable, checking it against the signature first."""
        self._check(f)
        self._release()
        self._install(f)

    def __call__(self, x):
        ops = self._ops
        if ops is None:
            raise EmptyHandleError("empty handle")
        if not self._accepts(x):
            raise DomainMismatchError(f"domain mismatch: expected {self.signature.domain}, got {x!r}")
        y = ops.call(self._target, x)
        return y if self._to_range is None else self._to_range(y)


def _scalar_domain(x) -> bool:
    return isinstance(x, (float, int, np.floating, np.integer))


class ErasedDifferentiableFunction(ErasedFunction):
    """Erased function that also forwards ``derivative()``.

    The derivative handle's range is ``traits(signature)``.  It is built on
    each call to :meth:`derivative`; an ``Invalid`` traits result or a target
    without a derivative raises :class:`DerivativeUnavailableError` at that
    point, not at construction.
    """

    __slots__ = ("traits", "_full_check")

    def __init__(
        self,
        f,
        signature: Signature = Signature(),
        traits: DerivativeTraitsPolicy = DEFAULT_TRAITS,
        buffer_capacity: int = DEFAULT_BUFFER_CAPACITY,
        *,
        thread_transferable: bool = True,
        _require_derivative: bool = True,
    ):
        self.traits = traits
        self._full_check = _require_derivative
        super().__init__(f, signature, buffer_capacity, thread_transferable=thread_transferable)

    def _check(self, f):
        if self._full_check:
            require(check_differentiable_function(f, self.signature, self.traits))
        else:
            require(check_function(f, self.signature))

    def derivative(self) -> ErasedDifferentiableFunction:
        target = self._live_target()
        drange = self.traits(self.signature)
        if drange == INVALID:
            raise DerivativeUnavailableError(
                f"derivative unavailable: traits {self.traits.name!r} map {self.signature} to Invalid"
            )
        return ErasedDifferentiableFunction(
            derivative(target),
            Signature(self.signature.domain, drange),
            self.traits,
            self.buffer_capacity,
            thread_transferable=self.thread_transferable,
            _require_derivative=False,
        )


def erase(f, sig: Signature = Signature(), buffer_capacity: int = DEFAULT_BUFFER_CAPACITY) -> ErasedFunction:
    return ErasedFunction(f, sig, buffer_capacity)


def erase_differentiable(
    f,
    sig: Signature = Signature(),
    traits: DerivativeTraitsPolicy = DEFAULT_TRAITS,
    buffer_capacity: int = DEFAULT_BUFFER_CAPACITY,
) -> ErasedDifferentiableFunction:
    return ErasedDifferentiableFunction(f, sig, traits, buffer_capacity)


def call(h: ErasedFunction, x):
    return h(x)


def is_inline(h: _ErasedBase) -> bool:
    return h.is_inline

"""Function interfaces: concept checks, type erasure, derivatives and grid functions.

The pieces, bottom up:

* :mod:`gridfunc.interface`  signatures and space kinds
* :mod:`gridfunc.traits`     derivative range policies
* :mod:`gridfunc.concepts`   runtime concept reports (and typing protocols)
* :mod:`gridfunc.analytic`   polynomials and other differentiable functions
* :mod:`gridfunc.erasure`    erased handles with small-object storage
* :mod:`gridfunc.grid`, :mod:`gridfunc.gridfn`  1-D grid and grid functions
* :mod:`gridfunc.bench`      the dispatch-cost benchmark
"""
from .analytic import Composition, Polynomial, compose, fixtures
from .concepts import (
    ConceptReport,
    check_differentiable_function,
    check_function,
    check_grid_view_function,
    check_local_function,
)
from .erasure import (
    ErasedDifferentiableFunction,
    ErasedFunction,
    erase,
    erase_differentiable,
    footprint,
    is_inline,
    track_allocations,
)
from .errors import (
    ConceptError,
    DerivativeUnavailableError,
    DomainMismatchError,
    EmptyHandleError,
    FunctionInterfaceError,
    GridError,
    RangeNotConvertibleError,
    UnboundLocalFunctionError,
)
from .grid import Element, GridView, global_from_local, geometry_jacobian, locate, make_uniform_grid
from .gridfn import (
    erase_grid_view_function,
    erase_local_function,
    lift,
    p1_interpolate,
)
from .interface import (
    INVALID,
    SCALAR,
    Covector,
    Invalid,
    Matrix,
    Scalar,
    Signature,
    Vector,
    derivative,
    local_function,
)
from .traits import DEFAULT_TRAITS, DerivativeTraitsPolicy, default_derivative_range, local_forwarding_policy

__version__ = "0.1.0"

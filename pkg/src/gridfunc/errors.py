"""Exception hierarchy shared by all modules."""


class FunctionInterfaceError(Exception):
    """Base class for every error raised by gridfunc."""


class ConceptError(FunctionInterfaceError, TypeError):
    """A candidate does not model the concept required by an operation.

    The failing :class:`~gridfunc.concepts.ConceptReport` is kept on
    ``report`` so callers can inspect the missing requirements.
    """

    def __init__(self, report, message=None):
        self.report = report
        super().__init__(message or report.diagnostic)


class RangeNotConvertibleError(ConceptError):
    def __init__(self, report):
        super().__init__(report, f"range not convertible: {report.diagnostic}")


class DomainMismatchError(FunctionInterfaceError, ValueError):
    pass


class EmptyHandleError(FunctionInterfaceError, RuntimeError):
    pass


class DerivativeUnavailableError(FunctionInterfaceError, LookupError):
    pass


class UnboundLocalFunctionError(FunctionInterfaceError, RuntimeError):
    pass


class GridError(FunctionInterfaceError, ValueError):
    """Invalid grid construction, foreign element or out-of-range coordinate."""

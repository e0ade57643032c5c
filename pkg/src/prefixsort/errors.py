"""Exception hierarchy shared by every module of the package."""


class PrefixSortError(Exception):
    """Base class for all errors raised by prefixsort."""


class InvalidPermutation(PrefixSortError, ValueError):
    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class DuplicateValue(InvalidPermutation):
    pass


class OutOfRange(InvalidPermutation):
    pass


class IndexOutOfRange(PrefixSortError, IndexError):
    pass


class DegenerateMove(PrefixSortError, ValueError):
    pass


class CursorNotSorted(PrefixSortError, ValueError):
    pass


class TraceError(PrefixSortError):
    """An operation of a trace failed; ``step`` is its 0-based index."""

    def __init__(self, step: int, cause: Exception):
        super().__init__(f"step {step}: {cause}")
        self.step = step
        self.cause = cause


class Unclassifiable(PrefixSortError):
    pass


class NoTrappedEdge(PrefixSortError):
    pass


class NoMatch(PrefixSortError):
    pass


class GuardExceeded(PrefixSortError):
    pass


class SizeTooLarge(PrefixSortError, ValueError):
    pass


class PreconditionViolated(PrefixSortError, ValueError):
    pass


class EmptyReport(PrefixSortError, ValueError):
    pass

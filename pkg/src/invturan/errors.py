"""Exception types shared across the package."""


class InvTuranError(Exception):
    """Base class for all package errors."""


class CapacityExceeded(InvTuranError):
    pass


class BadParameter(InvTuranError, ValueError):
    pass


class ParseError(InvTuranError, ValueError):
    """Malformed graph6/sparse6 or pattern literal. ``offset`` is the byte position."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class BudgetExhausted(InvTuranError):
    """Search stopped at its node budget; ``result`` holds the incumbent."""

    def __init__(self, result):
        super().__init__(f"node budget exhausted after {result.nodes_explored} nodes")
        self.result = result


class InfiniteInverse(InvTuranError):
    """The inverse Turán number is infinite (pattern is a matching or a star)."""


class Unsupported(InvTuranError):
    pass


class CapsTooTight(InvTuranError):
    """Proven vertex bound exceeds the caps; ``result`` is the caps-relative lower bound."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class CertificationFailed(InvTuranError):
    pass


class ChainFailed(InvTuranError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class SearchFailed(InvTuranError):
    pass

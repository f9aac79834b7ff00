"""Exception types shared across the package."""


class WebinvError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(WebinvError):
    """Malformed formula text.

    Carries the byte offset of the failure plus a description of what was
    expected and what was found, so the CLI can point at the exact spot.
    """

    def __init__(self, offset: int, expected: str, found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(f"at offset {offset}: expected {expected}, found {found}")


class DomainError(WebinvError):
    """Function argument outside its real domain (ln/sqrt of non-positive, ...)."""


class DivisionByDegenerateJet(WebinvError):
    """Division by a jet whose constant term vanishes (or nearly does).

    In the pipeline this signals a web-degeneracy point rather than a bug.
    """


class UnsupportedOnExactBackend(WebinvError):
    """Transcendental function requested on the exact-rational backend."""


class OrderExhausted(WebinvError):
    """A derivative was requested from an order-0 jet: the truncation order
    chosen for the run was too small for the requested derivative depth."""


class DegenerateWebPoint(WebinvError):
    """Web directions collapse at the point (vanishing gauge factor, singular
    coframe solve, or coincident foliation directions).

    ``pairs`` lists the offending foliation index pairs when known.
    """

    def __init__(self, message: str, pairs: tuple = ()):
        self.pairs = tuple(pairs)
        super().__init__(message)


class InadmissibleInvariant(WebinvError):
    """Basic invariant hit one of its two forbidden values (0 or 1)."""


class ConsistencyFailure(WebinvError):
    """Two extraction routes for the same invariant disagree beyond tolerance.

    Usually means the jet-order budget was exhausted or the point is close
    to degenerate.
    """


class EmptyAdmissibleSet(WebinvError):
    """No admissible point was found on the requested sample grid."""

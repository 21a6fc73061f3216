"""Exception types shared across the package."""

from __future__ import annotations


class EmsetError(Exception):
    """Base class for all errors raised by this package."""


class MalformedLiteral(EmsetError):
    """A value violates the structural constraints of its type."""


class NotInjective(EmsetError):
    """A candidate map is not injective; carries one colliding argument pair."""

    def __init__(self, x: int, y: int, message: str = ""):
        self.pair = (x, y)
        super().__init__(message or f"not injective: arguments {x} and {y} collide")


class FiniteSetError(EmsetError):
    """An operation requiring an infinite set was given a finite one."""


class NotCoinfinite(EmsetError):
    """An operation requiring a co-infinite set was given one with finite complement."""


class SearchExhausted(EmsetError):
    """A bounded deterministic search ran out of candidates."""

    def __init__(self, depth: int, message: str = ""):
        self.depth = depth
        super().__init__(message or f"search exhausted at depth {depth}")


class PreconditionFailed(EmsetError):
    """A named hypothesis of an operation does not hold for the given inputs."""

    def __init__(self, name: str, message: str = ""):
        self.name = name
        super().__init__(message or f"precondition failed: {name}")


class ArityMismatch(EmsetError):
    """Tuple lengths or operad arities do not line up."""


class IndexOutOfRange(EmsetError):
    """A simplicial index is outside 0..degree."""


class TruncationExceeded(EmsetError):
    """An operation would produce a simplex above the truncation degree."""


class GroupTooLarge(EmsetError):
    """The group order exceeds the configured enumeration bound."""


class UnsupportedFamily(EmsetError):
    """The requested operation is not available for this element family."""


class NoMinimalSupport(EmsetError):
    """A coordinate admits no least co-infinite supporting set, so the
    requested decision procedure does not apply."""


class NotSummable(EmsetError):
    """Two configurations overlap at some level and cannot be summed."""

    def __init__(self, level: int, reason: str):
        self.level = level
        self.reason = reason
        super().__init__(f"not summable at level {level}: {reason}")


class WitnessInvalid(EmsetError):
    """A supplied witness fails re-verification."""


class VerificationFailed(EmsetError):
    """A claimed property failed its exact re-check; carries the claim name."""

    def __init__(self, claim: str, message: str = ""):
        self.claim = claim
        super().__init__(message or f"verification failed: {claim}")


class UnknownCheck(EmsetError):
    """The check registry has no entry with the requested id."""


class ParseError(EmsetError):
    """A literal or expression failed to parse; carries the input position."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class BoundTooSmall(UserWarning):
    """Enumeration bound is likely too small to see a full period of behaviour."""

"""Exception types shared across the package."""


class OrdcoverError(Exception):
    """Base class for all package errors."""


class CapExceeded(OrdcoverError):
    """A configured size or iteration budget would be exceeded."""


class NotALimit(OrdcoverError):
    """Fundamental sequences exist only for limit ordinals."""


class ZeroHasNoFundParents(OrdcoverError):
    """0 occurs in no fundamental sequence; asking for its parents is a bug."""


class BadOrder(OrdcoverError):
    """Arguments violate the required order precondition."""


class IterationCapExceeded(OrdcoverError):
    """A greatest-sequence walk ran past its step budget."""


class PeriodMismatch(OrdcoverError):
    """The repeated segment of a degree word failed to reproduce itself.

    This would contradict the periodicity property and is treated as an
    internal consistency failure, not a user error.
    """


class NotInterior(OrdcoverError):
    """Operation requires a vertex with a complete out-neighborhood."""


class WalkLeftInterior(OrdcoverError):
    """A guided walk needed vertices outside the prefix interior."""


class MetaMissing(OrdcoverError):
    """Graph comparison requires ordinal labels on both graphs."""


class Overflow(OrdcoverError):
    """Tower arithmetic left the supported machine range."""


class NoFundParentInBound(OrdcoverError):
    """No covering successor beyond the +1 step exists within the bound."""


class OutOfRange(OrdcoverError):
    """Value not representable at the requested stack level."""


class TooLarge(OrdcoverError):
    """Graph too big for exhaustive second-order quantification."""


class FreeVariable(OrdcoverError):
    """Formula evaluation hit a variable with no binding."""


class BaseNotRooted(OrdcoverError):
    """The base prefix of a treegraph must be rooted at the zero vertex."""


class InfiniteOnlyFormula(OrdcoverError):
    """The formula encodes an infinite-path constraint; finite evaluation refused."""


class ParseError(OrdcoverError):
    """Syntax error in a textual input, with position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position

"""Exception types shared across the package."""


class SpintimeError(Exception):
    """Base class for package errors."""


class ArgumentError(SpintimeError, ValueError):
    """Invalid argument (bad index, malformed input, empty list)."""


class UnsupportedSignatureError(SpintimeError, ValueError):
    """Signature outside the constructible family (odd, oversized, quaternionic)."""


class ResourceLimitError(SpintimeError, RuntimeError):
    """Requested object exceeds the configured dimension cap."""


class ContractError(SpintimeError, ValueError):
    """Input violates an operator contract (e.g. symmetry requirement)."""


class ClosureError(SpintimeError, ValueError):
    """A set of generators failed to close under the bracket."""


class ConstructionError(SpintimeError, RuntimeError):
    """A requested construction degenerates (e.g. zero extremal eigenvalue)."""


class ParseError(SpintimeError, ValueError):
    """Malformed polynomial word or config text."""

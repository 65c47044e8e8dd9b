"""Exception hierarchy shared by the library and the command line."""


class FrechetError(Exception):
    """Base class for every error raised by this package."""


class InputError(FrechetError, ValueError):
    """Malformed curves, dimension mismatches, unreadable curve files."""


class ParameterError(FrechetError, ValueError):
    """A numeric argument lies outside its admissible domain."""


class ContractError(FrechetError, AssertionError):
    """An internal precondition or postcondition was violated."""


class GenerationError(FrechetError, RuntimeError):
    """A curve generator failed to reach its target within its retry budget."""

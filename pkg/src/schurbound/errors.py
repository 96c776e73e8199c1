"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when arguments violate a documented precondition."""


class ConsistencyError(RuntimeError):
    """Raised when an internal cross-check fails.

    A ConsistencyError means the computation contradicted an identity
    that is supposed to hold for every valid input, so it signals a bug
    in this package (or a numerical catastrophe), never bad user input.
    """


class SchedulerError(RuntimeError):
    """Raised when the increment scheduler exhausts its search."""

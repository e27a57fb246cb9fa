"""Exception hierarchy shared by the whole package.

The CLI maps these onto exit codes: InputError (and its subclasses) means
the caller handed us something malformed or out of range (exit 2), while
ContractError means a guaranteed property failed to hold (exit 1).
"""


class InputError(ValueError):
    """Malformed or out-of-range input."""


class PreconditionError(InputError):
    """A stated mathematical precondition does not hold for this input."""


class LimitError(InputError):
    """An exhaustive computation was refused because the instance is too large."""


class ContractError(RuntimeError):
    """A guaranteed invariant or verification contract was violated."""

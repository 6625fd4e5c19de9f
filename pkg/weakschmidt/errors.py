"""
Exception hierarchy for weakschmidt.

Two families:
  - InputError: the caller handed over something that violates a precondition
    (wrong shape, not Hermitian, not a Hadamard matrix, bad JSON document...).
    The CLI maps these to exit code 2.
  - NumericError: the inputs were fine but a numerical kernel gave up
    (iteration cap, construction retry limit). The CLI maps these to exit code 3.

Negative verdicts (not separable, not Schmidt-correlated, UNKNOWN equivalence)
are results, never exceptions.
"""


class WeakSchmidtError(Exception):
    """Base class for every error raised by weakschmidt."""


class InputError(WeakSchmidtError, ValueError):
    """A precondition or invariant of the input was violated."""


class InvalidInput(InputError):
    pass


class NonSquare(InputError):
    pass


class NotHermitian(InputError):
    pass


class NotCommuting(InputError):
    pass


class NotIsometry(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class InvalidState(InputError):
    pass


class NotDiagonalInBasis(InputError):
    pass


class NotHadamard(InputError):
    pass


class OrderMismatch(InputError):
    pass


class WrongCount(InputError):
    pass


class NotSimultaneouslyDiagonalizable(InputError):
    pass


class NotSchmidtCorrelated(InputError):
    pass


class DocumentError(InputError):
    """A JSON input document could not be read, parsed or validated."""


class NumericError(WeakSchmidtError, RuntimeError):
    """A numerical routine failed on valid input."""


class ConvergenceFailure(NumericError):
    pass


class ConstructionFailure(NumericError):
    pass

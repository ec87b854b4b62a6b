"""Exception taxonomy.  Exit codes: input errors 2, validation errors 3,
internal invariant breaches 4."""


class AvfqError(Exception):
    exit_code = 1


class InputError(AvfqError):
    exit_code = 2


class ValidationError(AvfqError):
    exit_code = 3


class InternalInvariantError(AvfqError):
    exit_code = 4


# -- input side ------------------------------------------------------------

class MalformedLabel(InputError):
    pass


class FunctionalEquationViolated(InputError):
    pass


class NotSquarefree(InputError):
    pass


class NotOrdinaryNotPrimeField(InputError):
    pass


class NotOrdinary(InputError):
    pass


class IndexOverflow(InputError):
    pass


class ZeroLambda(InputError):
    pass


class ParseError(InputError):
    pass


# -- fixture validation ----------------------------------------------------

class FieldDataMismatch(ValidationError):
    pass


class MissingFieldData(ValidationError):
    pass


class NotAnOrder(ValidationError):
    pass


class DiscriminantCheckFailed(ValidationError):
    pass


class NotInvertible(ValidationError):
    pass


class TypeMismatch(ValidationError):
    pass


# -- internal --------------------------------------------------------------

class GenerationFailure(InternalInvariantError):
    pass


class PrecisionInsufficient(AvfqError):
    """Raised by certified numeric routines; callers double the precision."""
    exit_code = 4

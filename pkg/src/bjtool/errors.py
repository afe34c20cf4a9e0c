"""Exception hierarchy shared by all bjtool modules.

Each top-level class carries the process exit code the command line front
end uses when the error escapes a command.
"""


class BJError(Exception):
    exit_code = 4


class ParseError(BJError):
    exit_code = 1


class AssumptionViolation(BJError):
    exit_code = 2


class Unsupported(BJError):
    exit_code = 3


class InternalCheckFailure(BJError):
    exit_code = 4


# parsing
class SchemaError(ParseError):
    pass


class FieldError(AssumptionViolation):
    pass


# ring_core
class ZeroPolynomial(AssumptionViolation):
    pass


class UnsupportedFactorization(Unsupported):
    pass


class NotSquarefree(AssumptionViolation):
    pass


# bj_data
class ZeroS(AssumptionViolation):
    pass


class NotMinimal(AssumptionViolation):
    pass


class NotCoprime(AssumptionViolation):
    pass


class SumMismatch(AssumptionViolation):
    pass


class UnitRootUnavailable(Unsupported):
    pass


class CoprimalityViolated(InternalCheckFailure):
    pass


# ramification / closure / cover
class PlaceNotRelevant(AssumptionViolation):
    pass


class InternalDiscMismatch(InternalCheckFailure):
    pass


class TindependenceFailure(InternalCheckFailure):
    pass


class WrongDegree(AssumptionViolation):
    pass


# quartic / quintic
class TauIsSquare(Unsupported):
    pass


class IdentityFailure(InternalCheckFailure):
    pass


class NonPrincipalObstruction(Unsupported):
    pass


class GeneralityFailure(AssumptionViolation):
    pass


class RadicalUnavailable(Unsupported):
    pass


class DegenerateCubic(Unsupported):
    pass


# oracle
class PrecisionExhausted(InternalCheckFailure):
    pass


class WildRamification(AssumptionViolation):
    pass

"""Exception hierarchy shared by all subpackages."""


class HasseForgeError(Exception):
    """Base class for every error raised by hasseforge."""


class DivisionByZero(HasseForgeError, ZeroDivisionError):
    pass


class FieldMismatch(HasseForgeError, TypeError):
    pass


class BothZero(HasseForgeError, ValueError):
    pass


class CharZeroUnsupported(HasseForgeError, ValueError):
    pass


class CharPUnsupported(HasseForgeError, ValueError):
    pass


class OrderExceedsTruncation(HasseForgeError, ValueError):
    pass


class BadDegree(HasseForgeError, ValueError):
    pass


class NotAssociative(HasseForgeError, ValueError):
    def __init__(self, triple, message=None):
        self.triple = triple
        super().__init__(message or f"associativity fails on basis triple {triple}")


class BadUnit(HasseForgeError, ValueError):
    pass


class BadRoot(HasseForgeError, ValueError):
    pass


class CocycleInvalid(HasseForgeError, ValueError):
    pass


class LeibnizInconsistent(HasseForgeError, ValueError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"Leibniz rule fails at (i, j, n) = {witness}")


class NotIterative(HasseForgeError, ValueError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"iterativity fails at (i, m, n) = {witness}")


class CocycleNotConstant(HasseForgeError, ValueError):
    pass


class GaloisDerivationMismatch(HasseForgeError, ValueError):
    pass


class SpanFailure(HasseForgeError, ValueError):
    pass


class WellDefinednessFailure(HasseForgeError, ValueError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"filtration level is not a form: {witness}")


class ScalarMismatch(HasseForgeError, ValueError):
    pass


class NotStabilized(HasseForgeError, RuntimeError):
    pass


class RelationFails(HasseForgeError, ValueError):
    pass


class CommutationFailure(HasseForgeError, RuntimeError):
    pass


class NotStable(HasseForgeError, RuntimeError):
    pass


class NotInner(HasseForgeError, ValueError):
    pass


class NotMatrixAlgebra(HasseForgeError, ValueError):
    pass


class ReynoldsDenominator(HasseForgeError, ValueError):
    pass


class PullbackRankMismatch(HasseForgeError, RuntimeError):
    pass


class ConfigInvalid(HasseForgeError, ValueError):
    def __init__(self, pointer, message):
        self.pointer = pointer
        self.message = message
        super().__init__(f"{pointer or '/'}: {message}")


class UnknownScenario(HasseForgeError, KeyError):
    def __str__(self):
        return f"unknown scenario {self.args[0]!r}"

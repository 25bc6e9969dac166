"""Exception types.  Validation errors derive from ValueError so callers can
catch them broadly; correctness failures derive from RuntimeError and are
never meant to be swallowed."""


class NotPrime(ValueError):
    pass


class NotIrreducible(ValueError):
    pass


class SizeGuardExceeded(ValueError):
    pass


class RangeOutOfBounds(ValueError):
    pass


class ZeroElement(ValueError):
    pass


class NotCoprime(ValueError):
    pass


class CharDividesIndex(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


class NotADivisor(ValueError):
    pass


class NotNormal(ValueError):
    def __init__(self, k):
        super().__init__(f"element is {k}-normal, not normal")
        self.k = k


class PhiOverflow(OverflowError):
    pass


class InternalInconsistency(RuntimeError):
    pass


class MethodDisagreement(RuntimeError):
    pass


class FormulaCensusMismatch(RuntimeError):
    pass

"""
Error hierarchy for the Chow ring toolkit.

Usage errors derive from ValueError as well, so callers that only know the
standard library can still catch them. Exactness errors mean a computation
that must divide or cancel exactly did not: they point at a transcription
bug, never at bad input.
"""


class ChowRingError(Exception):
    """Base class for every error raised by chowring"""


class ContextMismatchError(ChowRingError, ValueError):
    """Two polynomials live over different variable contexts or coefficient rings"""


class UnknownVariableError(ChowRingError, KeyError):
    """A variable name is not part of the context"""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown variable"


class UnboundVariableError(ChowRingError, ValueError):
    """An evaluation point leaves a variable unbound"""


class NotMonicError(ChowRingError, ValueError):
    """A relation is not monic in its designated variable"""


class NotReducedError(ChowRingError, ValueError):
    """A class was expected to be reduced below a fibre relation degree"""


class NotSymmetricError(ChowRingError, ValueError):
    """A polynomial is not invariant under permutations of the root variables"""


class InvalidPartitionError(ChowRingError, ValueError):
    """A partition or exponent vector does not have the required size"""


class InhomogeneousError(ChowRingError, ValueError):
    """A membership query received a polynomial that is not homogeneous"""


class UnsupportedCaseError(ChowRingError, ValueError):
    """No presentation is known for the requested (n, d)"""


class SizeLimitError(ChowRingError, ValueError):
    """The requested problem size exceeds the configured limits"""


class SliceTooLargeError(SizeLimitError):
    """A graded slice has more monomials than the configured bound"""


class ExactnessError(ChowRingError, ArithmeticError):
    """An exact division or cancellation failed"""


class DenominatorNotClearedError(ExactnessError):
    """The localization denominator does not divide the summed numerator"""


class DegreeDivisionError(ExactnessError):
    """A pushforward is not divisible by the degree of the product map"""


class AsymmetricResultError(ExactnessError):
    """A localization result is not symmetric in the root variables"""


class ConventionError(ExactnessError):
    """A built-in sign or restriction convention failed its self-test"""


class CertificateError(ExactnessError):
    """A membership certificate failed re-verification or consistency"""

"""Exception types raised by the public API.

Every failure of a mathematical precondition gets its own class so callers
(and the CLI exit-code mapping) can tell structural errors apart from bad
input syntax.
"""


class KoszulError(Exception):
    """Base class for all library errors."""


class ValidationError(KoszulError):
    """Malformed input: bad shapes, non-rational entries, bad JSON."""


class JacobiViolation(KoszulError):
    """Bracket table fails the Jacobi identity."""


class NotKV(KoszulError):
    """Product is not Koszul-Vinberg (left-symmetric)."""


class NotAssociative(KoszulError):
    """Product fails associativity where it is required."""


class NotFlat(KoszulError):
    """Connection has nonvanishing curvature where flatness is required."""


class NotTorsionFree(KoszulError):
    """Connection has torsion where torsion-freeness is required."""


class TorsionMismatch(KoszulError):
    """Connection torsion disagrees with the bracket it is paired with."""


class SingularMetric(KoszulError):
    """Bilinear form is degenerate where nondegeneracy is required."""


class NotRightIdeal(KoszulError):
    """Subspace is not stable under right multiplication."""


class NotSelfOrSkewAdjoint(KoszulError):
    """Form is neither symmetric nor antisymmetric where a parity is required."""


class ConformanceMismatch(KoszulError):
    """Two independently computed routes to the same value disagree."""


class UnsupportedOperation(KoszulError):
    """Operation is defined only on a restricted input class."""


class SingularFisher(KoszulError):
    """Fisher information matrix is numerically singular at a point."""


class DomainViolation(KoszulError):
    """Parameter lies outside the statistical model's open domain."""


class NonNormalized(KoszulError):
    """Probability vector does not sum to one within tolerance."""

"""Exception hierarchy.

Two broad classes matter for the CLI exit codes: MathRejection covers inputs
that parse fine but are rejected on mathematical grounds (exit code 1), and
MalformedInput covers inputs that do not even make sense (exit code 2).
"""


class EquibundleError(Exception):
    """Base class for all library errors."""


class MathRejection(EquibundleError):
    """Valid-looking input rejected for a mathematical reason."""


class MalformedInput(EquibundleError):
    """Input data is structurally invalid."""


class ModulusMismatch(MalformedInput):
    """Two exact scalars from different cyclotomic fields were combined."""


class DivisionByZero(MathRejection):
    """Inversion of a zero scalar, polynomial or rational function."""


class SingularMatrix(MathRejection):
    """Matrix inversion requested for a matrix with zero determinant."""


class DimensionMismatch(MalformedInput):
    """Incompatible shapes in a matrix operation."""


class NotACocycle(MathRejection):
    """Transition matrix whose determinant is not a nonzero monomial."""


class ClosureCapExceeded(MathRejection):
    """Group closure exceeded the configured cap (possibly infinite group)."""


class ParityObstruction(MathRejection):
    """Odd-degree line bundle requested over a non-split projective group."""


class InvalidStructure(MathRejection):
    """Equivariance data failed an exact consistency check."""

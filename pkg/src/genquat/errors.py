"""Exception types shared across the package.

Everything here derives from AlgebraError so callers (notably the CLI) can
catch domain failures as one family while still telling the cases apart.
"""


class AlgebraError(Exception):
    """Base class for domain errors raised by algebra, metric and rotation ops."""


class DegenerateSignature(AlgebraError):
    """The metric matrix is singular (alpha*beta == 0), the predicate is undefined."""


class NonInvertible(AlgebraError):
    """The quaternion has zero norm: a zero divisor or the zero quaternion."""


class NonPositiveNorm(AlgebraError):
    """The operation requires a strictly positive norm."""


class NotUnit(AlgebraError):
    """The operation requires a unit quaternion."""


class NullVectorPart(AlgebraError):
    """Nonzero vector part with zero self inner product; no polar branch applies."""


class NoPolarForm(AlgebraError):
    """No polar decomposition exists for this quaternion (but one exists for -q)."""


class InvalidAxis(AlgebraError):
    """The axis does not have self inner product +1 (elliptic) or -1 (hyperbolic)."""


class UnsupportedSignature(AlgebraError):
    """The requested decomposition branch is not defined for this signature."""

"""Exception types shared across the package."""


class AlgebraError(ValueError):
    """Base class for all domain errors raised by this package."""


class ContainmentError(AlgebraError):
    """Inner partition is not contained in the outer one."""


class SizeError(AlgebraError):
    """A size bound (number of rows, matrix size, ...) is violated."""


class SizeMismatch(AlgebraError):
    """Two diagrams that must have equally many boxes do not."""


class WeightMismatch(AlgebraError):
    """Tableau weight differs from the required row-length tuple."""


class ShapeMismatch(AlgebraError):
    """Tableau shape differs from the expected diagram."""


class CompatibilityError(AlgebraError):
    """The labelling tableaux and the diagram mapping are inconsistent."""


class NotSubgroup(AlgebraError):
    """Claimed subgroup is not contained in the ambient group."""


class DegreeMismatch(AlgebraError):
    """Partition sizes and multidegree coordinate sum disagree."""


class RingMismatch(AlgebraError):
    """Operands live over different coefficient rings."""


class AmbientMismatch(AlgebraError):
    """Operands live over different variable sets (r, s, m)."""


class DenominatorError(AlgebraError):
    """Rational coefficient with a nontrivial denominator cannot map to Z."""


class RingError(AlgebraError):
    """Operation requires a different kind of coefficient ring."""


class FieldRequired(RingError):
    """Operation requires coefficients in a field."""


class EntryRange(AlgebraError):
    """Tableau entry exceeds the allowed row or column index range."""


class CapExceeded(AlgebraError):
    """A configured desk-scale cap would be exceeded."""

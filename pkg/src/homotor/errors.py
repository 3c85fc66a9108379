"""Exception hierarchy shared by all homotor modules."""


class HomotorError(Exception):
    """Base class for all errors raised by this package."""


class LengthMismatch(HomotorError):
    """Multidegrees or generator vectors of incompatible lengths."""


class CompositionNonzero(HomotorError):
    """A complex whose differential does not square to zero."""


class EmptyInput(HomotorError):
    """An operation that needs a nonempty family received none."""


class UnitIdeal(HomotorError):
    """The unit ideal was passed where a proper ideal is required."""


class ZeroModule(HomotorError):
    """A quotient module R/I is zero (I is the unit ideal)."""


class BoxTooSmall(HomotorError):
    """A user-supplied degree box does not dominate the stability box."""


class MixedKinds(HomotorError):
    """Free and quotient summands mixed where a uniform kind is required."""


class EmptySelection(HomotorError):
    """A region selector with an empty axis set where axes are required."""


class FiltrationViolation(HomotorError):
    """A differential does not preserve the given filtration."""


class InvalidKind(HomotorError):
    """Unknown selector / builder / variant keyword."""


class OverlappingPartitions(HomotorError):
    """Variable index sets expected to be pairwise disjoint are not."""


class ParamOutOfRange(HomotorError):
    """Random-instance parameters outside the supported bounds."""


class ParseError(HomotorError):
    """A problem file that cannot be parsed."""


class ValidationError(HomotorError):
    """A problem file that parses but violates its schema."""


class UnknownCommand(HomotorError):
    """An unrecognised CLI command."""

"""Exception types shared across the package."""


class CherunityError(Exception):
    """Base class for all package errors."""


class NotReal(CherunityError):
    """Sign certification was asked for a value that is not conjugation-fixed."""


class PrecisionCeiling(CherunityError):
    """Interval sign certification exceeded the precision ceiling."""


class ArityMismatch(CherunityError):
    """Evaluation point length does not match the polynomial arity."""


class OutOfRange(CherunityError):
    """Group construction parameter outside the supported desk-scale range."""


class NotARepresentation(CherunityError):
    """Matrix family failed the multiplicativity check."""


class UnsupportedIrrep(CherunityError):
    """No closed-form locus is available for the requested irrep."""


class InvalidParams(CherunityError):
    """Invalid (n, r, m) parameters for lowest-weight bookkeeping."""


class NotDiagonalizable(CherunityError):
    """Requested spectral data for a module outside the diagonalizable family."""


class ConfigError(CherunityError):
    """CLI configuration could not be parsed or validated."""


class UnknownGroupSpec(ConfigError):
    """Group spec string not recognized."""


class PartitionParse(ConfigError):
    """Partition string could not be parsed."""

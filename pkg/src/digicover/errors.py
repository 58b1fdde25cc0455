"""Exception hierarchy; every error raised by the package derives from DigitalTopologyError."""


class DigitalTopologyError(ValueError):
    pass


class DimensionError(DigitalTopologyError):
    pass


class NotInImageError(DigitalTopologyError):
    pass


class UnrealizableCurveError(DigitalTopologyError):
    pass


class MapError(DigitalTopologyError):
    """Malformed map table (not total, or values outside the target)."""


class NotApplicable(DigitalTopologyError):
    """A predicate's precondition (continuity, surjectivity) does not hold."""


class OverflowCap(DigitalTopologyError):
    """An exhaustive search would exceed its configured cap."""

"""Exception types shared across the package."""


class GroupSpecError(ValueError):
    """Malformed group specification string or invalid Cayley table."""


class SizeCapError(ValueError):
    """An enumeration would exceed a configured size cap."""


class EquivarianceError(ValueError):
    """A map or point assignment fails to commute with the group action."""


class ObjectMismatchError(ValueError):
    """Sources/targets of bispans or Witt vectors do not line up."""


class DivisibilityError(ArithmeticError):
    """Exact division failed; the target is not in the ghost image."""


class NonFreeError(ValueError):
    """A bispan summand whose middle-left object is not a free G-set."""


class WitnessError(ValueError):
    """An ideal witness violates its defining constraints."""

"""Exception types shared across the package."""


class FatPointsError(Exception):
    """Base class for all package errors."""


class InvalidInputError(FatPointsError):
    """Malformed or inconsistent arguments, files or field modes."""


class UnsupportedCharacteristicError(FatPointsError):
    """Prime-field computation requested at a degree >= the characteristic."""


class HypothesisNotMetError(FatPointsError):
    """A closed-form regularity formula was asked for outside its hypothesis.

    ``condition`` names the first violated requirement.
    """

    def __init__(self, condition: str):
        super().__init__(f"hypothesis violated: {condition}")
        self.condition = condition


class GenerationFailureError(FatPointsError):
    """Seeded resampling exhausted its retry budget."""


class InternalInvariantViolationError(FatPointsError):
    """An unconditional internal bound failed; indicates an implementation bug."""

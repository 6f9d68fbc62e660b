"""Exception types shared across the package."""


class WreathlabError(Exception):
    """Base class for all package-specific errors."""


class GroupValidationError(WreathlabError):
    """A multiplication table violates a group axiom; message carries the witness."""


class ActionValidationError(WreathlabError):
    """An action table violates an action axiom."""


class SizeLimitError(WreathlabError):
    """A construction would exceed the configured element cap."""

    def __init__(self, message: str, order: int):
        super().__init__(message)
        self.order = order


class NonNormalSubgroupError(WreathlabError):
    """Quotient requested by a subgroup that is not normal."""


class SearchBudgetExceededError(WreathlabError):
    """Backtracking search ran out of nodes; distinct from a negative answer."""


class NotSurjectiveError(WreathlabError):
    """A section was requested for a non-surjective map."""


class SectionMismatchError(WreathlabError):
    """A supplied section is not a right inverse of the surjection."""


class NotEquivariantError(WreathlabError):
    """The supplied point bijection does not commute with the group actions."""


class NotIsomorphismError(WreathlabError):
    """A map required to be an isomorphism is not bijective or not a homomorphism."""


class UnsupportedPrimeError(WreathlabError):
    """Solvability criterion requested for a prime outside the desk-scale range."""


class NonUnitQuotientError(WreathlabError):
    """A radical quotient evaluated to something other than +1 or -1."""


class DivisibilityViolationError(WreathlabError):
    """Size formula arguments violate the required divisibility."""


class TowerError(WreathlabError):
    """Invalid multiquadratic tower data."""

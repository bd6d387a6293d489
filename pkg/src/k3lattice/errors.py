"""Exception hierarchy.

The CLI maps these onto report statuses, so keep the classes coarse.
"""


class LatticeError(ValueError):
    """Invalid input to a lattice or Mukai-lattice operation."""


class DegenerateLatticeError(LatticeError):
    pass


class UnsupportedSignatureError(LatticeError):
    """Raised instead of answering when no complete algorithm applies."""


class NonIntegralGlueError(LatticeError):
    pass


class DivisibilityError(LatticeError):
    def __init__(self, divisibility: int, message: str = ""):
        self.divisibility = divisibility
        super().__init__(message or f"divisibility {divisibility} > 1")


class UnnormalizableError(LatticeError):
    pass


class GlueError(LatticeError):
    pass


class SearchExhaustedError(LookupError):
    """A bounded search ended without a hit. Not a proof of nonexistence."""


class InsufficientDataError(ValueError):
    pass

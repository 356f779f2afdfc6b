"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Operands live in incompatible ambient dimensions."""


class InvalidNormError(ValueError):
    """A norm specification violates one of its structural requirements."""


class DependentSetError(ValueError):
    """A basis or functional set that must be independent is not."""


class OptimizationError(RuntimeError):
    """An iterative solve did not reach its stated tolerance."""

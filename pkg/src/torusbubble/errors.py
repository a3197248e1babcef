class DomainError(ValueError):
    """Parameters outside the domain where a formula or family is defined."""


class ConvergenceError(RuntimeError):
    """A root finder or Newton iteration failed to converge."""


class EmbeddingError(RuntimeError):
    """A feasible instance could not be realized as non-overlapping geometry."""

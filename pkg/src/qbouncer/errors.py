"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class AccuracyError(RuntimeError):
    """A numerical routine could not reach its requested accuracy.

    The best estimate found before giving up is kept on ``best`` so callers
    can still inspect or report it.
    """

    def __init__(self, message, best=None, error_estimate=None):
        super().__init__(message)
        self.best = best
        self.error_estimate = error_estimate

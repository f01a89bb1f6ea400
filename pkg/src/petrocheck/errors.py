"""Package-wide exception types."""


class DomainError(ValueError):
    """Evaluation or construction requested outside the admissible domain."""


class SolverError(RuntimeError):
    """Nonlinear time step failed to converge; carries step diagnostics."""

    def __init__(self, message, *, step=None, t=None, residual=None):
        super().__init__(message)
        self.step = step
        self.t = t
        self.residual = residual

"""Exception hierarchy shared across the package."""


class TpassError(Exception):
    """Base class for all package-specific errors."""


class InputError(TpassError, ValueError):
    """Caller input is malformed or violates an operation's preconditions."""


class NotSeparable(TpassError):
    """A bimatrix game has no additively separable payoff sum.

    Carries the tetrad residual that was measured and the tolerance it
    was compared against.
    """

    def __init__(self, residual: float, tol: float):
        super().__init__(
            f"payoff sum is not additively separable: "
            f"tetrad residual {residual:.6g} exceeds tolerance {tol:.6g}"
        )
        self.residual = float(residual)
        self.tol = float(tol)


class SolverFailure(TpassError):
    """The LP solver could not produce a trustworthy result."""

    def __init__(self, message: str, **diagnostics):
        if diagnostics:
            details = ", ".join(f"{k}={v}" for k, v in sorted(diagnostics.items()))
            message = f"{message} ({details})"
        super().__init__(message)
        self.diagnostics = diagnostics


class CertificationFailure(TpassError):
    """A computed solution failed its independent certificate check."""

"""Exception hierarchy shared by the numerical modules."""


class NumericalError(RuntimeError):
    """A computation produced no trustworthy value."""


class QuadratureError(NumericalError):
    """Quadrature failed to converge within the node budget."""


class UnphysicalStateError(NumericalError, ValueError):
    """A reconstructed density matrix is not positive semidefinite."""


class ConvergenceError(NumericalError):
    """An iterative eigensolver did not reach the requested residual."""

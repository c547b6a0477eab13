"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid run configuration (unknown key, unit conflict, bad range)."""


class DimensionError(ValueError):
    """Operator or truncation dimensions are invalid or incompatible."""


class SolverError(RuntimeError):
    """Base class for failures inside a numerical solve."""


class SingularSystemError(SolverError):
    """A linear block of the amplitude equations is singular (gamma = 0)."""


class UndefinedCorrelationError(SolverError):
    """Photon population vanishes; normalized correlations are undefined."""


class NonUniqueSteadyStateError(SolverError):
    """The Liouvillian admits more than one steady state (or none resolvable)."""


class LiouvillianSizeError(SolverError):
    """Requested superoperator exceeds the dense-size guard."""


class StiffnessError(SolverError):
    """Adaptive integration failed; the problem is too stiff for the contract."""

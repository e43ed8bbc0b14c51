"""Exception types shared across the package."""


class InvalidPreparationError(ValueError):
    """Raised when a qubit preparation is degenerate (both cw rates zero)."""


class IntegrationError(RuntimeError):
    """Raised when the adaptive integrator cannot advance the solution.

    Carries the time at which the step-size control gave up.
    """

    def __init__(self, message: str, time: float):
        super().__init__(f"{message} (at t = {time:.6g})")
        self.time = time


class UnsupportedRegimeError(ValueError):
    """Raised when a diagnostic is requested outside its validity regime,
    e.g. the adiabatic frame for chirped or two-photon-detuned drives,
    or the effective two-level reduction at zero one-photon detuning."""


class SolverError(RuntimeError):
    """Raised when the control search cannot evaluate any candidate point."""


class ConfigError(ValueError):
    """Raised for malformed configuration files or flag combinations."""

from typing import List, Optional, Tuple


class FuseSimError(Exception):
    """Base exception for all optical fuse simulator errors."""
    pass

class DomainError(FuseSimError):
    """Raised when a numeric input lies outside its physical domain."""
    pass

class ValidationError(FuseSimError):
    """Raised when structured input (grids, anchors, schedules) is malformed."""
    pass

class ConfigurationError(FuseSimError):
    """Raised when a run configuration fails validation.

    Carries every problem found, not just the first, as (key_path, message) pairs.
    """
    def __init__(self, errors: List[Tuple[str, str]]):
        self.errors = list(errors)
        lines = [f"{key}: {message}" for key, message in self.errors]
        super().__init__("Invalid configuration:\n  " + "\n  ".join(lines))

class ConvergenceError(FuseSimError):
    """Raised when an iterative solve does not converge."""
    def __init__(self, message: str, bracket: Optional[Tuple[float, float]] = None):
        self.bracket = bracket
        if bracket is not None:
            message = f"{message} (last bracket: [{bracket[0]:.6e}, {bracket[1]:.6e}])"
        super().__init__(message)

class InfeasibleError(FuseSimError):
    """Raised when a target cannot be met; names the binding constraint."""
    def __init__(self, message: str, constraint: str = ""):
        self.constraint = constraint
        super().__init__(f"{message} [binding: {constraint}]" if constraint else message)

class QuadratureError(FuseSimError):
    """Raised when spectral integration misses its tolerance."""
    def __init__(self, message: str, achieved: float = float("nan")):
        self.achieved = achieved
        super().__init__(f"{message} (achieved error estimate {achieved:.3e})")

class CalibrationError(FuseSimError):
    """Raised when a calibration cannot be performed."""
    pass

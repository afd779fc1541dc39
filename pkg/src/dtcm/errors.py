"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A scenario configuration is malformed or inconsistent."""


class NumericalError(RuntimeError):
    """A computed quantity violates a physical or numerical bound."""


class CutoffLeakageError(NumericalError):
    """Population reached the photon-number cutoff; the truncation is too small."""

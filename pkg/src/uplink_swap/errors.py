class ModelError(RuntimeError):
    """A model evaluation could not produce a trustworthy number."""


class QuadratureError(ModelError):
    pass


class DegenerateWindowError(ModelError):
    """Almost nothing of a wavepacket passes the gating window."""


class ConsistencyError(ModelError):
    """An internal invariant of the model was violated."""


class ConfigError(ValueError):
    """Invalid configuration document; the message names the offending field."""

"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Invalid or degenerate geometric input."""


class EnvelopeError(GeometryError):
    """Circle-sweep feasibility violated; carries the first offending index."""

    def __init__(self, message: str, index: int):
        super().__init__(f"{message} (index {index})")
        self.index = index


class ExtractionError(GeometryError):
    """Spine extraction failed at one or more stations."""


class ConfigError(ValueError):
    """Malformed configuration file or option value."""

"""Circle-sweep airfoil toolkit: geometry, constrained codec, neural stack,
latent diffusion, metrics, and the dataset/experiment pipeline."""

from .errors import ConfigError, EnvelopeError, ExtractionError, GeometryError
from .geometry import (
    CsRep,
    Profile,
    SmoothnessThresholds,
    ValidityReport,
    extract_csrep,
    naca4_profile,
    naca5_profile,
    resample_arclength,
    sweep_envelope,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "CsRep",
    "EnvelopeError",
    "ExtractionError",
    "GeometryError",
    "Profile",
    "SmoothnessThresholds",
    "ValidityReport",
    "extract_csrep",
    "naca4_profile",
    "naca5_profile",
    "resample_arclength",
    "sweep_envelope",
    "validate",
    "__version__",
]

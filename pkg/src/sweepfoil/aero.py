"""Deterministic aerodynamic surrogate and the performance-class grid.

Lift comes from thin-airfoil theory at zero incidence: the spine is treated
as the camber line and the zero-lift angle is integrated in the cosine
variable. Drag is a flat-plate skin-friction coefficient with a thickness
form factor. The surrogate labels the dataset and scores generated shapes,
so conditioning accuracy is judged against a self-consistent closed loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import CsRep

QUADRATURE_NODES = 256


@dataclass(frozen=True)
class AeroLabel:
    cl: float
    cd: float

    def __post_init__(self):
        if not (math.isfinite(self.cl) and math.isfinite(self.cd)):
            raise ValueError("aero label must be finite")
        if self.cd <= 0:
            raise ValueError("drag coefficient must be positive")


@dataclass(frozen=True)
class PerformanceClass:
    """Grid cell index, or the unconditional null class."""

    class_id: int | None = None
    null_flag: bool = False

    def __post_init__(self):
        if self.null_flag == (self.class_id is not None):
            raise ValueError("exactly one of class_id / null_flag must be set")

    @classmethod
    def null(cls) -> "PerformanceClass":
        return cls(class_id=None, null_flag=True)


@dataclass(frozen=True)
class ClassGrid:
    """Equal-width lift/drag bins; edges are ascending, cells are row-major."""

    cl_edges: tuple
    cd_edges: tuple

    def __post_init__(self):
        for edges in (self.cl_edges, self.cd_edges):
            e = np.asarray(edges)
            if e.ndim != 1 or e.size < 2 or np.any(np.diff(e) <= 0):
                raise ValueError("grid edges must be strictly ascending, length >= 2")

    @property
    def n_cl_bins(self) -> int:
        return len(self.cl_edges) - 1

    @property
    def n_cd_bins(self) -> int:
        return len(self.cd_edges) - 1

    @property
    def n_classes(self) -> int:
        return self.n_cl_bins * self.n_cd_bins


def lift_coefficient(camber_slope, n_nodes: int = QUADRATURE_NODES) -> float:
    """Zero-incidence lift from a camber-slope callable via midpoint quadrature.

    camber_slope maps chordwise x in [0, 1] to dz/dx; the integral runs over
    the cosine variable with x = (1 - cos(theta)) / 2.
    """
    theta = (np.arange(n_nodes) + 0.5) * math.pi / n_nodes
    x = 0.5 * (1.0 - np.cos(theta))
    slope = np.asarray(camber_slope(x), dtype=float)
    # CL = -2*pi*alpha_L0 with alpha_L0 = -(1/pi) * Int slope * (cos(theta) - 1)
    integrand = slope * (np.cos(theta) - 1.0)
    return 2.0 * float(np.sum(integrand)) * math.pi / n_nodes


def spine_slope_fn(csrep: CsRep):
    """Piecewise-constant slope lookup of the spine polyline, zero outside."""
    x = csrep.x
    dy = np.diff(csrep.spine_y) / csrep.delta_x

    def slope(xq):
        xq = np.asarray(xq, dtype=float)
        idx = np.searchsorted(x, xq, side="right") - 1
        inside = (idx >= 0) & (idx < dy.size)
        out = np.zeros_like(xq)
        out[inside] = dy[np.clip(idx, 0, dy.size - 1)][inside]
        return out

    return slope


def eval_surrogate(csrep: CsRep, reynolds: float) -> AeroLabel:
    """Label a shape with (cl, cd) at zero incidence."""
    if reynolds <= 0:
        raise ValueError("Reynolds number must be positive")
    if csrep.n < 2 or not np.all(np.isfinite(csrep.spine_y)) or np.any(csrep.radii <= 0):
        raise ValueError("surrogate needs a finite csrep with positive radii")
    cl = lift_coefficient(spine_slope_fn(csrep))
    t_over_c = 2.0 * float(np.max(csrep.radii))
    cf = 0.074 * reynolds ** (-0.2)
    cd = 2.0 * cf * (1.0 + 2.0 * t_over_c + 60.0 * t_over_c**4)
    return AeroLabel(cl=cl, cd=cd)


def build_grid(labels, bins: int = 5, clip: tuple = (1.0, 99.0)) -> ClassGrid:
    """Equal-width bins between the clipped percentiles of the label cloud."""
    labels = list(labels)
    if len(labels) < bins * bins:
        raise ValueError(f"need at least {bins * bins} labels for a {bins}x{bins} grid")
    cls = np.asarray([lab.cl for lab in labels])
    cds = np.asarray([lab.cd for lab in labels])
    edges = []
    for values in (cls, cds):
        lo, hi = np.percentile(values, clip)
        if hi - lo <= 0:
            raise ValueError("degenerate label range; cannot build grid")
        edges.append(tuple(np.linspace(lo, hi, bins + 1).tolist()))
    return ClassGrid(cl_edges=edges[0], cd_edges=edges[1])


def classify(label: AeroLabel, grid: ClassGrid) -> PerformanceClass:
    """Half-open bins, final bin closed; out-of-range clamps to the edge bins."""

    def bin_index(v, edges):
        i = int(np.searchsorted(edges, v, side="right")) - 1
        return min(max(i, 0), len(edges) - 2)

    i_cl = bin_index(label.cl, grid.cl_edges)
    i_cd = bin_index(label.cd, grid.cd_edges)
    return PerformanceClass(class_id=grid.n_cd_bins * i_cl + i_cd)

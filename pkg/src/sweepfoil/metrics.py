"""Point-set distances for shape comparison plus conditional-generation accuracy.

Chamfer averages nearest-neighbor deviations in both directions; Hausdorff
takes the worst one. Profiles are compared as fixed-size point sets after
equal-chord resampling so the numbers do not depend on the source sampling.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree

from .geometry import DEFAULT_N_POINTS, Profile, resample_arclength


def _as_points(p) -> np.ndarray:
    pts = np.asarray(p, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
        raise ValueError(f"expected a non-empty (N, 2) point set, got {pts.shape}")
    return pts


def chamfer(p, q) -> float:
    """Symmetric mean nearest-neighbor distance between two point sets."""
    p = _as_points(p)
    q = _as_points(q)
    d_pq, _ = cKDTree(q).query(p)
    d_qp, _ = cKDTree(p).query(q)
    return 0.5 * (float(np.mean(d_pq)) + float(np.mean(d_qp)))


def hausdorff(p, q) -> float:
    """Max of the two directed max-min distances."""
    p = _as_points(p)
    q = _as_points(q)
    d_pq, _ = cKDTree(q).query(p)
    d_qp, _ = cKDTree(p).query(q)
    return max(float(np.max(d_pq)), float(np.max(d_qp)))


def fidelity(generated: list, dataset: list) -> float:
    """Mean over generated samples of the Hausdorff distance to the nearest dataset sample."""
    if not generated or not dataset:
        raise ValueError("fidelity needs non-empty generated and dataset lists")
    total = 0.0
    for g in generated:
        total += min(hausdorff(g, d) for d in dataset)
    return total / len(generated)


def diversity(generated: list) -> float:
    """Mean pairwise Hausdorff distance among generated samples."""
    if len(generated) < 2:
        raise ValueError("diversity needs at least 2 samples")
    total = 0.0
    count = 0
    for i in range(len(generated)):
        for j in range(i + 1, len(generated)):
            total += hausdorff(generated[i], generated[j])
            count += 1
    return total / count


def conditional_accuracy(labels, target, grid) -> float:
    """Fraction of labels that classify into the target performance class."""
    from .aero import classify

    if not labels:
        raise ValueError("conditional_accuracy needs at least one label")
    hits = sum(1 for lab in labels if classify(lab, grid) == target)
    return hits / len(labels)


def profile_points(profile: Profile, n_pts: int = DEFAULT_N_POINTS) -> np.ndarray:
    """Canonical fixed-size point set of a profile for metric evaluation."""
    return resample_arclength(profile, n_pts).points


def profile_chamfer(a: Profile, b: Profile, n_pts: int = DEFAULT_N_POINTS) -> float:
    return chamfer(profile_points(a, n_pts), profile_points(b, n_pts))


def profile_hausdorff(a: Profile, b: Profile, n_pts: int = DEFAULT_N_POINTS) -> float:
    return hausdorff(profile_points(a, n_pts), profile_points(b, n_pts))


def metrics_report_csv(rows: list) -> str:
    """CSV rows of (metric, value, size_a, size_b, seed)."""
    out = ["metric,value,set_size_a,set_size_b,seed"]
    for metric, value, na, nb, seed in rows:
        out.append(f"{metric},{value:.17g},{na},{nb},{seed}")
    return "\n".join(out) + "\n"

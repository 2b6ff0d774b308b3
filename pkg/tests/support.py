"""Shared helpers for the test suite: reference shapes and brute-force oracles."""

from __future__ import annotations

import numpy as np

from sweepfoil.geometry import Profile


def stadium_profile(length: float = 0.8, radius: float = 0.1, n_arc: int = 60, n_side: int = 40) -> Profile:
    """Two parallel lines capped by semicircles, counter-clockwise."""
    th_left = np.linspace(np.pi / 2, 3 * np.pi / 2, n_arc)
    left = np.column_stack([radius * np.cos(th_left), radius * np.sin(th_left)])
    th_right = np.linspace(-np.pi / 2, np.pi / 2, n_arc)
    right = np.column_stack([length + radius * np.cos(th_right), radius * np.sin(th_right)])
    top_x = np.linspace(length, 0.0, n_side, endpoint=False)
    bot_x = np.linspace(0.0, length, n_side, endpoint=False)
    ring = np.vstack(
        [
            np.column_stack([top_x, np.full(n_side, radius)]),
            left[1:-1],
            np.column_stack([bot_x, np.full(n_side, -radius)]),
            right[1:-1],
        ]
    )
    return Profile(ring)


def brute_chamfer(p: np.ndarray, q: np.ndarray) -> float:
    d = np.linalg.norm(p[:, None, :] - q[None, :, :], axis=2)
    return 0.5 * (d.min(axis=1).mean() + d.min(axis=0).mean())


def brute_hausdorff(p: np.ndarray, q: np.ndarray) -> float:
    d = np.linalg.norm(p[:, None, :] - q[None, :, :], axis=2)
    return max(d.min(axis=1).max(), d.min(axis=0).max())


def finite_difference(f, x: np.ndarray, indices, h: float = 1e-6) -> np.ndarray:
    """Central finite differences of scalar f at selected flat indices of x."""
    grads = np.zeros(len(indices))
    flat = x.reshape(-1)
    for k, idx in enumerate(indices):
        old = flat[idx]
        flat[idx] = old + h
        fp = f()
        flat[idx] = old - h
        fm = f()
        flat[idx] = old
        grads[k] = (fp - fm) / (2 * h)
    return grads


def relative_error(a: np.ndarray, b: np.ndarray) -> float:
    denom = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1e-8)
    return float(np.max(np.abs(a - b) / denom))

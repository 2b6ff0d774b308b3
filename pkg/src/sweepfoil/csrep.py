"""Constrained spine/radius codec: valid airfoils by construction.

A shape is pinned by sixteen anchor values (start, spine-slope extremum,
radius extremum, end rows by x, y, step, radius columns) plus two
pre-coefficient sequences in [0, 1]. Cumulative products turn the
pre-coefficients into monotone interpolation ramps, one per segment, so the
spine-step and radius sequences are piecewise monotone with a single
extremum each; flooring the pre-coefficients bounds every interpolation step,
which bounds the curvature and radius increments. Any input inside the box
therefore decodes to a shape passing all four validity checks.

The exact inverse recovers anchors and pre-coefficients from a unimodal
sequence pair, which is how supervised training targets are built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import GeometryError
from .geometry import (
    DEFAULT_DELTA_X,
    R_EPS,
    R_NOSE_MIN,
    CsRep,
    SmoothnessThresholds,
)

GRID_TOL = 1e-9
MIN_STATIONS = 8

# Envelope-regularity budgets for the decoder. The swept boundary stays simple
# while r'^2 + r*max(r'', 0) + r*|y''| stays clearly below 1; the caps below
# hold real extracted shapes with margin (worst observed: slope 0.69, convex
# radius curvature product 0.004, spine curvature product 0.26) while bounding
# what arbitrary pre-coefficients can reach.
REG_RADIUS_STEP_FRAC = 0.8   # radius step cap as a fraction of delta_x
REG_KAPPA_R = 0.12           # convex-side radius curvature budget
REG_KAPPA_Y = 0.35           # spine curvature budget, local-radius weighted
REG_R_REF = 0.012            # radius floor in curvature budget conversions
RAMP_SAFETY = 1.0 - 1e-9

# Row/column layout of the anchor matrix.
ROW_START, ROW_SPINE_EXT, ROW_RADIUS_EXT, ROW_END = 0, 1, 2, 3
COL_X, COL_Y, COL_DY, COL_R = 0, 1, 2, 3


@dataclass
class MetaParams:
    """4x4 anchor matrix: rows (start, spine extremum, radius extremum, end),
    columns (x, y, spine step, radius)."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (4, 4):
            raise GeometryError(f"meta matrix must be 4x4, got {v.shape}")
        self.values = v

    @property
    def x(self) -> np.ndarray:
        return self.values[:, COL_X]

    @property
    def y(self) -> np.ndarray:
        return self.values[:, COL_Y]

    @property
    def dy(self) -> np.ndarray:
        return self.values[:, COL_DY]

    @property
    def r(self) -> np.ndarray:
        return self.values[:, COL_R]

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    @classmethod
    def from_flat(cls, flat) -> "MetaParams":
        return cls(np.asarray(flat, dtype=float).reshape(4, 4))

    def check(self, delta_x: float, thresholds: SmoothnessThresholds | None = None) -> None:
        """Raise unless the anchor box invariants hold.

        Besides ordering and grid alignment, each segment must be long enough
        to cover its anchor span under the per-step bounds; otherwise no
        smooth ramp between the anchors exists.
        """
        if thresholds is None:
            thresholds = SmoothnessThresholds.defaults(delta_x)
        x = self.x
        if not np.all(np.isfinite(self.values)):
            raise GeometryError("meta matrix contains non-finite entries")
        for row in (ROW_SPINE_EXT, ROW_RADIUS_EXT, ROW_END):
            if not x[ROW_START] < x[row] <= x[ROW_END] + GRID_TOL:
                raise GeometryError("meta x anchors out of order")
        for row in range(4):
            frac = (x[row] - x[ROW_START]) / delta_x
            if abs(frac - round(frac)) * delta_x > GRID_TOL:
                raise GeometryError(f"meta x anchor {x[row]} off the spacing grid")
        r = self.r
        if r[ROW_START] < R_NOSE_MIN:
            raise GeometryError("leading radius below the nose minimum")
        if r[ROW_RADIUS_EXT] + 1e-12 < max(r[ROW_START], r[ROW_END]):
            raise GeometryError("radius extremum below an endpoint radius")
        if r[ROW_END] > R_EPS:
            raise GeometryError("trailing radius above the closure value")
        if np.any(r[:3] <= 0):
            raise GeometryError("radii must be positive")
        n, pos_p, pos_r = derive_counts(self, delta_x)
        for steps, span, cap in segment_budgets(self, n, pos_p, pos_r, thresholds, delta_x):
            if steps * cap * (1.0 - 1e-9) + 1e-15 < abs(span):
                raise GeometryError(
                    f"segment span {span:.3g} unreachable in {steps} steps of {cap:.3g}"
                )


def effective_caps(meta: "MetaParams", delta_x: float, thresholds: SmoothnessThresholds) -> tuple:
    """Worst-case per-step bounds (spine, radius) the decoder will enforce."""
    r_peak = max(float(meta.r[ROW_RADIUS_EXT]), REG_R_REF)
    cap_y = min(thresholds.thres_y, REG_KAPPA_Y * delta_x**2 / r_peak)
    cap_r = min(thresholds.thres_r, REG_RADIUS_STEP_FRAC * delta_x)
    return cap_y, cap_r


def segment_budgets(
    meta: "MetaParams",
    n: int,
    pos_p: int,
    pos_r: int,
    thresholds: SmoothnessThresholds,
    delta_x: float = DEFAULT_DELTA_X,
) -> list:
    """(step count, anchor span, step bound) for the four interpolation ramps."""
    dy = meta.dy
    r = meta.r
    cap_y, cap_r = effective_caps(meta, delta_x, thresholds)
    split_p = min(pos_p, n - 1)
    mid_dy = dy[ROW_SPINE_EXT] if pos_p <= n - 1 else dy[ROW_END]
    budgets = [(split_p - 1, mid_dy - dy[ROW_START], cap_y)]
    if split_p < n - 1:
        budgets.append((n - 1 - split_p, dy[ROW_END] - mid_dy, cap_y))
    split_r = min(pos_r, n - 1)
    budgets.append((split_r - 1, r[ROW_RADIUS_EXT] - r[ROW_START], cap_r))
    budgets.append((n - split_r, r[ROW_END] - r[ROW_RADIUS_EXT], cap_r))
    return budgets


@dataclass
class CoeffSeq:
    """Pre-coefficient sequences in [0, 1] driving the monotone ramps."""

    u_tilde: np.ndarray
    v_tilde: np.ndarray

    def __post_init__(self):
        self.u_tilde = np.asarray(self.u_tilde, dtype=float)
        self.v_tilde = np.asarray(self.v_tilde, dtype=float)
        if self.u_tilde.shape != self.v_tilde.shape or self.u_tilde.ndim != 1:
            raise GeometryError("pre-coefficient sequences must be equal-length 1-D")
        for name, seq in (("u_tilde", self.u_tilde), ("v_tilde", self.v_tilde)):
            if np.any(seq < -1e-12) or np.any(seq > 1 + 1e-12):
                raise GeometryError(f"{name} entries outside [0, 1]")

    @property
    def n(self) -> int:
        return self.u_tilde.shape[0]


def derive_counts(meta: MetaParams, delta_x: float) -> tuple:
    """Station count and extremum indices (1-based) from the x anchors."""
    x = meta.x
    for row in range(4):
        frac = (x[row] - x[ROW_START]) / delta_x
        if abs(frac - round(frac)) * delta_x > GRID_TOL:
            raise GeometryError(f"x anchor {x[row]} not aligned to the grid")
    n = int(round((x[ROW_END] - x[ROW_START]) / delta_x)) + 1
    pos_p = int(round((x[ROW_SPINE_EXT] - x[ROW_START]) / delta_x)) + 1
    pos_r = int(round((x[ROW_RADIUS_EXT] - x[ROW_START]) / delta_x)) + 1
    if n < MIN_STATIONS:
        raise GeometryError(f"n={n} below the {MIN_STATIONS}-station minimum")
    if not (1 <= pos_p <= n and 1 <= pos_r <= n):
        raise GeometryError("extremum index outside the station range")
    return n, pos_p, pos_r


def cumprod_monotone(a_tilde) -> np.ndarray:
    """Non-decreasing ramp in [0, 1]: a_i = 1 - prod_{j<=i} a_tilde_j."""
    a_tilde = np.asarray(a_tilde, dtype=float)
    if np.any(a_tilde < 0) or np.any(a_tilde > 1):
        raise GeometryError("pre-coefficients must lie in [0, 1]")
    return 1.0 - np.cumprod(a_tilde)


def coeff_floor(span: float, thres: float, safety: float = 1.0 - 1e-9) -> float:
    """Smallest pre-coefficient keeping each ramp step below thres/|span|."""
    span = abs(span)
    if span <= thres:
        return 0.0
    return 1.0 - safety * thres / span


def thresholds_for_meta(
    meta: MetaParams, delta_x: float, base: SmoothnessThresholds | None = None
) -> SmoothnessThresholds:
    """Thresholds with the pre-coefficient floor tightened for these anchors.

    Each interpolation step moves by at most (1 - floor) of the segment span,
    so flooring at 1 - cap/|span| keeps every step inside the decoder's
    effective per-step bound for all four segments at once.
    """
    if base is None:
        base = SmoothnessThresholds.defaults(delta_x)
    cap_y, cap_r = effective_caps(meta, delta_x, base)
    dy = meta.dy
    r = meta.r
    spans = [
        (dy[ROW_SPINE_EXT] - dy[ROW_START], cap_y),
        (dy[ROW_END] - dy[ROW_SPINE_EXT], cap_y),
        (r[ROW_RADIUS_EXT] - r[ROW_START], cap_r),
        (r[ROW_END] - r[ROW_RADIUS_EXT], cap_r),
    ]
    floor = max(coeff_floor(span, cap) for span, cap in spans)
    return replace(base, a_tilde_min=max(base.a_tilde_min, floor))


def clamp_feasible(coeffs: CoeffSeq, thresholds: SmoothnessThresholds) -> CoeffSeq:
    """Floor the pre-coefficients so every interpolation step stays bounded."""
    floor = thresholds.a_tilde_min
    return CoeffSeq(
        np.maximum(coeffs.u_tilde, floor),
        np.maximum(coeffs.v_tilde, floor),
    )


def constrained_ramp(
    a_tilde: np.ndarray,
    pin_start: bool,
    caps: np.ndarray,
    convex_eta: float = math.inf,
    convex_side: int = 0,
    tape: list | None = None,
) -> np.ndarray:
    """Monotone 0-to-1 ramp from pre-coefficients with bounded steps.

    Unclamped, the recurrence a_i = a_prev + (1 - a_prev)(1 - at_i) is exactly
    the cumulative-product ramp. The end entry is forced to 0 (ramp reaches 1
    exactly) and a pinned start is forced to 1 (ramp leaves 0 exactly). Three
    clamps keep arbitrary inputs inside the smooth region while acting as the
    identity on inputs that already satisfy the bounds:

    - per-step cap: step_i <= caps[i];
    - completion floor: remaining budget after i must cover the distance to 1,
      so a ramp loitering near 0 cannot jump to the forced end in one move;
    - one-sided step-change bound (convex_side +1 caps increases, -1 caps
      decreases) limiting the curvature the ramp can inject.

    When tape is given, one (branch, a_prev, s_prev, at) record per index is
    appended for the reverse pass.
    """
    m = a_tilde.size
    out = np.empty(m)
    if m == 0:
        return out
    suffix = np.concatenate([np.cumsum(caps[::-1])[::-1][1:], [0.0]])
    a_prev = 0.0
    s_prev = 0.0
    for i in range(m):
        at = a_tilde[i]
        forced = False
        if pin_start and i == 0:
            at = 1.0
            forced = True
        if i == m - 1:
            at = 0.0
            forced = True
        raw = (1.0 - a_prev) * (1.0 - at)
        lo = max(0.0, (1.0 - a_prev) - suffix[i])
        hi = caps[i]
        if i > 0 and convex_side > 0:
            hi = min(hi, s_prev + convex_eta)
        elif i > 0 and convex_side < 0:
            lo = max(lo, s_prev - convex_eta)
        if lo > hi:
            lo = hi
        if raw < lo:
            step, branch = lo, "lo"
        elif raw > hi:
            step, branch = hi, "hi"
        else:
            step, branch = raw, "raw"
        if tape is not None:
            tape.append((branch if not forced else branch + "!", a_prev, s_prev, at))
        out[i] = a_prev + step
        a_prev = out[i]
        s_prev = step
    return out


def _radius_caps(span: float, r_peak: float, thresholds: SmoothnessThresholds, delta_x: float, m: int):
    span = abs(span)
    cap_abs = min(thresholds.thres_r, REG_RADIUS_STEP_FRAC * delta_x) * RAMP_SAFETY
    if span <= 1e-15:
        return np.full(m, math.inf), math.inf
    caps = np.full(m, cap_abs / span)
    eta = REG_KAPPA_R * delta_x**2 / max(r_peak, REG_R_REF) / span
    return caps, eta


def _spine_caps(span: float, r_local: np.ndarray, thresholds: SmoothnessThresholds, delta_x: float):
    span = abs(span)
    if span <= 1e-15:
        return np.full(r_local.size, math.inf)
    cap_abs = np.minimum(
        thresholds.thres_y,
        REG_KAPPA_Y * delta_x**2 / np.maximum(r_local, REG_R_REF),
    )
    return cap_abs * RAMP_SAFETY / span


def decode_coeffs(
    meta: MetaParams,
    coeffs: CoeffSeq,
    delta_x: float,
    thresholds: SmoothnessThresholds | None = None,
) -> CsRep:
    """Reconstruct the spine/radius sequences; output is valid by construction.

    Anchor-index entries of the pre-coefficients are forced so the ramps hit
    the anchors exactly regardless of what the caller generated there, and the
    ramp clamps keep every step inside the smoothness and envelope-regularity
    bounds. The radius decodes first; the spine-step caps then scale with the
    local radius, which is what keeps the swept boundary simple.
    """
    if thresholds is None:
        thresholds = SmoothnessThresholds.defaults(delta_x)
    n, pos_p, pos_r = derive_counts(meta, delta_x)
    if coeffs.n < n:
        raise GeometryError(f"need {n} pre-coefficients, got {coeffs.n}")

    r_peak = float(meta.r[ROW_RADIUS_EXT])
    split_r = min(pos_r, n - 1)
    r = np.empty(n)
    span1 = meta.r[ROW_RADIUS_EXT] - meta.r[ROW_START]
    caps1, _ = _radius_caps(span1, r_peak, thresholds, delta_x, split_r)
    ramp1 = constrained_ramp(coeffs.v_tilde[:split_r], True, caps1)
    r[:split_r] = meta.r[ROW_START] + ramp1 * span1
    span2 = meta.r[ROW_END] - meta.r[ROW_RADIUS_EXT]
    caps2, _ = _radius_caps(span2, r_peak, thresholds, delta_x, n - split_r)
    ramp2 = constrained_ramp(coeffs.v_tilde[split_r:n], False, caps2)
    r[split_r:] = meta.r[ROW_RADIUS_EXT] + ramp2 * span2
    # Anchor values exactly, not via a + ramp*span float round trips.
    r[0] = meta.r[ROW_START]
    r[split_r - 1] = meta.r[ROW_RADIUS_EXT]
    r[-1] = meta.r[ROW_END]

    r_pair = np.maximum(r[:-1], r[1:])  # local radius seen by each spine step
    split_p = min(pos_p, n - 1)
    mid_dy = meta.dy[ROW_SPINE_EXT] if pos_p <= n - 1 else meta.dy[ROW_END]
    dy = np.empty(n - 1)
    span_u1 = mid_dy - meta.dy[ROW_START]
    caps_u1 = _spine_caps(span_u1, r_pair[:split_p], thresholds, delta_x)
    dy[:split_p] = meta.dy[ROW_START] + constrained_ramp(coeffs.u_tilde[:split_p], True, caps_u1) * span_u1
    if split_p < n - 1:
        span_u2 = meta.dy[ROW_END] - mid_dy
        caps_u2 = _spine_caps(span_u2, r_pair[split_p:], thresholds, delta_x)
        dy[split_p:] = mid_dy + constrained_ramp(coeffs.u_tilde[split_p : n - 1], False, caps_u2) * span_u2

    y = meta.y[ROW_START] + np.concatenate([[0.0], np.cumsum(dy)])
    return CsRep(float(meta.x[ROW_START]), delta_x, y, r)


def _turning_point(seq: np.ndarray, tol: float) -> tuple:
    """(reversal count, index of the first trend extreme) with hysteresis tol.

    Moves smaller than tol neither open nor flip a trend, so sub-resolution
    wiggles are ignored. A monotone sequence reports its last index.
    """
    direction = 0
    anchor = float(seq[0])
    anchor_idx = 0
    changes = 0
    turn_idx = seq.size - 1
    for i in range(1, seq.size):
        v = float(seq[i])
        if direction == 0:
            if abs(v - anchor) > tol:
                direction = 1 if v > anchor else -1
                anchor, anchor_idx = v, i
        elif direction == 1:
            if v > anchor:
                anchor, anchor_idx = v, i
            elif anchor - v > tol:
                if changes == 0:
                    turn_idx = anchor_idx
                direction, anchor, anchor_idx = -1, v, i
                changes += 1
        else:
            if v < anchor:
                anchor, anchor_idx = v, i
            elif v - anchor > tol:
                if changes == 0:
                    turn_idx = anchor_idx
                direction, anchor, anchor_idx = 1, v, i
                changes += 1
    return changes, turn_idx


def _extremum_index(seq: np.ndarray, tol: float) -> int:
    """Split index for piecewise-monotone inversion of a unimodal sequence.

    Reversals beyond the hysteresis resolution reject the input; the split is
    then placed at the point deviating farthest outside the endpoint range so
    each side stays inside its anchor interval (exact ramp inversion even for
    sub-resolution dips).
    """
    changes, _ = _turning_point(seq, tol)
    if changes > 1:
        raise GeometryError("sequence has multiple trend reversals; not unimodal")
    top = max(seq[0], seq[-1])
    bot = min(seq[0], seq[-1])
    over = seq - top
    under = bot - seq
    dev = np.maximum(over, under)
    idx = int(np.argmax(dev))
    if dev[idx] <= 1e-15 or idx == 0:
        return seq.size - 1
    return idx


def _ramp_to_tilde(values: np.ndarray, a_start: float, a_end: float, pin_start: bool) -> np.ndarray:
    """Invert one segment: interpolation positions, then the cumprod ratios."""
    span = a_end - a_start
    if abs(span) < 1e-12:
        u = np.zeros_like(values)  # flat segment: canonical all-zero positions
    else:
        u = np.clip((values - a_start) / span, 0.0, 1.0)
    tilde = np.empty_like(u)
    prev = 0.0
    for i, ui in enumerate(u):
        denom = 1.0 - prev
        tilde[i] = 1.0 if denom < 1e-12 else (1.0 - ui) / denom
        prev = ui
    np.clip(tilde, 0.0, 1.0, out=tilde)
    if tilde.size:
        tilde[-1] = 0.0
        if pin_start:
            tilde[0] = 1.0
    return tilde


def encode_coeffs(csrep: CsRep, thresholds: SmoothnessThresholds | None = None) -> tuple:
    """Exact inverse of decode_coeffs on unimodal spine/radius sequences."""
    n = csrep.n
    if n < MIN_STATIONS:
        raise GeometryError(f"n={n} below the {MIN_STATIONS}-station minimum")
    if thresholds is None:
        thresholds = SmoothnessThresholds.defaults(csrep.delta_x)
    y = csrep.spine_y
    r = csrep.radii
    dy = np.diff(y)
    pos_p = _extremum_index(dy, thresholds.thres_y) + 1  # 1-based
    pos_r = _extremum_index(r, thresholds.thres_r) + 1
    pos_r = min(max(pos_r, 2), n - 1)
    pos_p = min(max(pos_p, 2), n - 1)

    x = csrep.x
    meta = MetaParams(
        np.array(
            [
                [x[0], y[0], dy[0], r[0]],
                [x[pos_p - 1], y[pos_p - 1], dy[pos_p - 1], r[pos_p - 1]],
                [x[pos_r - 1], y[pos_r - 1], dy[pos_r - 1], r[pos_r - 1]],
                [x[-1], y[-1], dy[-1], r[-1]],
            ]
        )
    )

    u_tilde = np.zeros(n)
    u_tilde[:pos_p] = _ramp_to_tilde(dy[:pos_p], dy[0], dy[pos_p - 1], pin_start=True)
    if pos_p < n - 1:
        u_tilde[pos_p : n - 1] = _ramp_to_tilde(dy[pos_p:], dy[pos_p - 1], dy[-1], pin_start=False)
    v_tilde = np.zeros(n)
    v_tilde[:pos_r] = _ramp_to_tilde(r[:pos_r], r[0], r[pos_r - 1], pin_start=True)
    v_tilde[pos_r:n] = _ramp_to_tilde(r[pos_r:], r[pos_r - 1], r[-1], pin_start=False)
    return meta, CoeffSeq(u_tilde, v_tilde)


# ---------------------------------------------------------------------------
# Sampling boxes (shared by the fuzz harness, augmentation, and optimization)
# ---------------------------------------------------------------------------

META_BOX = {
    "y1": (-0.05, 0.05),
    "dy_scale": 0.25,        # anchor spine steps within +/- scale * delta_x
    "r1": (R_NOSE_MIN, 0.04),
    "r_peak": (0.015, 0.09),
    "n": (24, 128),
}


def sample_meta(rng, delta_x: float = DEFAULT_DELTA_X) -> MetaParams:
    """Uniform draw from the valid anchor box on the spacing grid.

    Anchor spans are drawn inside each segment's reachable window so a smooth
    ramp between them always exists (span <= steps * threshold).
    """
    thr = SmoothnessThresholds.defaults(delta_x)
    margin = 0.9
    n = int(rng.integers(META_BOX["n"][0], META_BOX["n"][1] + 1))
    x1 = 0.0
    xn = (n - 1) * delta_x
    y1 = rng.uniform(*META_BOX["y1"])

    r1 = rng.uniform(*META_BOX["r1"])
    rn = R_EPS
    cap_r = min(thr.thres_r, REG_RADIUS_STEP_FRAC * delta_x)
    # The descent to the closure radius needs enough trailing stations.
    min_tail = int(math.ceil((r1 - rn) / (margin * cap_r))) + 1
    pos_r = int(rng.integers(2, max(3, n - min_tail)))
    peak_hi = min(
        META_BOX["r_peak"][1],
        r1 + margin * (pos_r - 1) * cap_r,
        rn + margin * (n - pos_r) * cap_r,
    )
    rp = rng.uniform(max(r1, META_BOX["r_peak"][0] if peak_hi > META_BOX["r_peak"][0] else r1), peak_hi)

    cap_y = min(thr.thres_y, REG_KAPPA_Y * delta_x**2 / max(rp, REG_R_REF))
    s = META_BOX["dy_scale"] * delta_x
    pos_p = int(rng.integers(2, n))       # 2 .. n-1
    dy1 = rng.uniform(-s, s)
    w = margin * (pos_p - 1) * cap_y
    dyp = rng.uniform(max(-s, dy1 - w), min(s, dy1 + w))
    w = margin * (n - 1 - pos_p) * cap_y if pos_p < n - 1 else 0.0
    dyn = rng.uniform(max(-s, dyp - w), min(s, dyp + w)) if w > 0 else dyp
    # Off-anchor matrix slots (y/step/radius at rows that do not pin them) are
    # backfilled with plausible mid values; decoding never reads them.
    values = np.array(
        [
            [x1, y1, dy1, r1],
            [x1 + (pos_p - 1) * delta_x, y1, dyp, rp],
            [x1 + (pos_r - 1) * delta_x, y1, 0.5 * (dy1 + dyn), rp],
            [xn, y1, dyn, rn],
        ]
    )
    meta = MetaParams(values)
    meta.check(delta_x, thr)
    return meta


def sample_coeffs(
    rng, meta: MetaParams, delta_x: float = DEFAULT_DELTA_X,
    thresholds: SmoothnessThresholds | None = None,
) -> CoeffSeq:
    """Uniform pre-coefficients over the clamped valid box for these anchors."""
    n, _, _ = derive_counts(meta, delta_x)
    thr = thresholds_for_meta(meta, delta_x, thresholds)
    u = rng.uniform(thr.a_tilde_min, 1.0, size=n)
    v = rng.uniform(thr.a_tilde_min, 1.0, size=n)
    return CoeffSeq(u, v)


def coeffs_to_dict(meta: MetaParams, coeffs: CoeffSeq) -> dict:
    return {
        "meta": meta.flat().tolist(),
        "u_tilde": coeffs.u_tilde.tolist(),
        "v_tilde": coeffs.v_tilde.tolist(),
    }


def coeffs_from_dict(d: dict) -> tuple:
    return (
        MetaParams.from_flat(d["meta"]),
        CoeffSeq(np.asarray(d["u_tilde"], dtype=float), np.asarray(d["v_tilde"], dtype=float)),
    )

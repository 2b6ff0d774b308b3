"""Planar airfoil geometry.

Profiles are chord-normalized closed polylines: x runs nose to tail, y is the
thickness direction. Points are stored counter-clockwise as an (N, 2) float64
array with no repeated end point; the edge from the last point back to the
first is implicit.

The circle-sweep representation stores a spine sampled uniformly in x together
with per-station radii. Sweeping the circle family and taking the envelope
reconstructs the boundary; extraction inverts that by locating, on each
vertical station line, the interior point farthest from the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import EnvelopeError, ExtractionError, GeometryError

# Chord-normalized defaults. Station spacing keeps at most 128 stations on the
# unit chord; thresholds are spacing-relative so the per-step radius change can
# never outrun the per-step spine advance.
DEFAULT_DELTA_X = 1.0 / 127.0
DEFAULT_N_POINTS = 200
R_EPS = 1e-4
R_NOSE_MIN = 5e-3


@dataclass
class Profile:
    """Closed counter-clockwise boundary polyline on the unit chord."""

    points: np.ndarray
    chord: float = 1.0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise GeometryError(f"profile points must be (N, 2), got {pts.shape}")
        if pts.shape[0] < 3:
            raise GeometryError("profile needs at least 3 points")
        if not np.all(np.isfinite(pts)):
            raise GeometryError("profile contains non-finite coordinates")
        self.points = pts

    def __len__(self) -> int:
        return self.points.shape[0]

    def perimeter(self) -> float:
        closed = np.vstack([self.points, self.points[:1]])
        return float(np.sum(np.linalg.norm(np.diff(closed, axis=0), axis=1)))

    def signed_area(self) -> float:
        x, y = self.points[:, 0], self.points[:, 1]
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


@dataclass
class CsRep:
    """Uniform-x spine with per-station sweep radii."""

    x0: float
    delta_x: float
    spine_y: np.ndarray
    radii: np.ndarray

    def __post_init__(self):
        self.spine_y = np.asarray(self.spine_y, dtype=float)
        self.radii = np.asarray(self.radii, dtype=float)
        if self.spine_y.ndim != 1 or self.radii.ndim != 1:
            raise GeometryError("spine_y and radii must be 1-D")
        if self.spine_y.shape != self.radii.shape:
            raise GeometryError("spine_y and radii length mismatch")
        if self.delta_x <= 0:
            raise GeometryError("delta_x must be positive")

    @property
    def n(self) -> int:
        return self.spine_y.shape[0]

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.delta_x * np.arange(self.n)

    @property
    def centers(self) -> np.ndarray:
        return np.column_stack([self.x, self.spine_y])

    def scaled(self, s: float) -> "CsRep":
        return CsRep(self.x0 * s, self.delta_x * s, self.spine_y * s, self.radii * s)


@dataclass(frozen=True)
class SmoothnessThresholds:
    """Bounds on spine curvature steps, radius steps, and the coefficient floor."""

    thres_y: float
    thres_r: float
    a_tilde_min: float = 0.0

    @classmethod
    def defaults(cls, delta_x: float = DEFAULT_DELTA_X) -> "SmoothnessThresholds":
        return cls(thres_y=0.1 * delta_x, thres_r=delta_x, a_tilde_min=0.0)


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of the four geometric checks.

    Violations are (check_id, index, magnitude) triples; every flag is true
    exactly when no violation with the matching check id is present.
    """

    violations: tuple = field(default_factory=tuple)

    _FLAG_CHECKS = {
        "simple_closed": ("closed", "simple", "orientation"),
        "rounded_nose_sharp_tail": ("nose", "tail"),
        "monotone_progression": ("monotone",),
        "smooth_unimodal_thickness": ("smooth_y", "smooth_r", "unimodal_y", "unimodal_r"),
    }

    def _flag(self, name: str) -> bool:
        ids = self._FLAG_CHECKS[name]
        return not any(v[0] in ids for v in self.violations)

    @property
    def simple_closed(self) -> bool:
        return self._flag("simple_closed")

    @property
    def rounded_nose_sharp_tail(self) -> bool:
        return self._flag("rounded_nose_sharp_tail")

    @property
    def monotone_progression(self) -> bool:
        return self._flag("monotone_progression")

    @property
    def smooth_unimodal_thickness(self) -> bool:
        return self._flag("smooth_unimodal_thickness")

    @property
    def all_valid(self) -> bool:
        return len(self.violations) == 0


# ---------------------------------------------------------------------------
# NACA generators
# ---------------------------------------------------------------------------

def naca4_thickness(x, t: float):
    """Standard five-term half-thickness polynomial for max thickness t."""
    x = np.asarray(x, dtype=float)
    return (t / 0.20) * (
        0.2969 * np.sqrt(np.maximum(x, 0.0))
        - 0.1260 * x
        - 0.3516 * x**2
        + 0.2843 * x**3
        - 0.1015 * x**4
    )


def naca4_camber(x, m: float, p: float):
    """Camber line and slope of the four-digit family; (0, 0) when m == 0."""
    x = np.asarray(x, dtype=float)
    yc = np.zeros_like(x)
    dyc = np.zeros_like(x)
    if m == 0.0:
        return yc, dyc
    front = x <= p
    rear = ~front
    yc[front] = (m / p**2) * (2 * p * x[front] - x[front] ** 2)
    dyc[front] = (2 * m / p**2) * (p - x[front])
    yc[rear] = (m / (1 - p) ** 2) * ((1 - 2 * p) + 2 * p * x[rear] - x[rear] ** 2)
    dyc[rear] = (2 * m / (1 - p) ** 2) * (p - x[rear])
    return yc, dyc


def parse_naca4(designation: str) -> tuple:
    """Decode e.g. "2412" (or "NACA2412") into (m, p, t) chord fractions."""
    s = designation.upper().replace("NACA", "").strip()
    if len(s) != 4 or not s.isdigit():
        raise GeometryError(f"not a 4-digit designation: {designation!r}")
    return int(s[0]) / 100.0, int(s[1]) / 10.0, int(s[2:]) / 100.0


def _cosine_x(count: int) -> np.ndarray:
    beta = np.linspace(0.0, math.pi, count)
    return 0.5 * (1.0 - np.cos(beta))


def naca4_profile(m: float, p: float, t: float, n_pts: int = DEFAULT_N_POINTS) -> Profile:
    """Closed unit-chord four-digit profile with cosine-spaced sampling."""
    if not (0.0 <= m <= 0.1):
        raise GeometryError(f"camber fraction m={m} outside [0, 0.1]")
    if m > 0.0 and not (0.0 < p < 1.0):
        raise GeometryError(f"camber position p={p} outside (0, 1)")
    if not (0.0 < t <= 0.4):
        raise GeometryError(f"thickness fraction t={t} outside (0, 0.4]")
    if n_pts < 32:
        raise GeometryError(f"n_pts={n_pts} below minimum 32")

    n_upper = n_pts // 2 + 1
    n_lower = n_pts - n_upper + 2
    xu = _cosine_x(n_upper)
    xl = _cosine_x(n_lower)

    def surface(xs, sign):
        yc, dyc = naca4_camber(xs, m, p if m > 0 else 0.5)
        yt = naca4_thickness(xs, t)
        th = np.arctan(dyc)
        px = xs - sign * yt * np.sin(th)
        py = yc + sign * yt * np.cos(th)
        return np.column_stack([px, py])

    upper = surface(xu, +1.0)
    lower = surface(xl, -1.0)
    upper[0] = lower[0] = (0.0, 0.0)
    upper[-1] = lower[-1] = (1.0, 0.0)
    ring = np.vstack([upper[::-1], lower[1:-1]])
    return Profile(ring)


# Published non-reflex five-digit camber families are indexed by the first
# three digits; m and k1 are solved from the camber-position and design-lift
# constraints rather than read from tables.
def naca5_constants(camber_code: int) -> tuple:
    """Solve (p, m, k1) for a non-reflex five-digit camber code like 230."""
    digits = f"{camber_code:03d}"
    lift_digit, pos_digit, reflex_digit = int(digits[0]), int(digits[1]), int(digits[2])
    if reflex_digit != 0:
        raise GeometryError(f"reflex camber family {camber_code} not supported")
    if lift_digit < 1 or pos_digit < 1 or pos_digit > 5:
        raise GeometryError(f"unsupported five-digit camber code {camber_code}")
    cl_design = 0.15 * lift_digit
    p = 0.05 * pos_digit

    # Max-camber position: p = m (1 - sqrt(m / 3)), increasing in m on (0, 4/3).
    lo, hi = p, 0.9
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid * (1.0 - math.sqrt(mid / 3.0)) < p:
            lo = mid
        else:
            hi = mid
    m = 0.5 * (lo + hi)

    q = (3 * m - 7 * m**2 + 8 * m**3 - 4 * m**4) / math.sqrt(m * (1 - m)) - 1.5 * (
        1 - 2 * m
    ) * (math.pi / 2 - math.asin(1 - 2 * m))
    k1 = 6.0 * cl_design / q
    return p, m, k1


def naca5_camber(x, camber_code: int):
    x = np.asarray(x, dtype=float)
    _, m, k1 = naca5_constants(camber_code)
    yc = np.zeros_like(x)
    dyc = np.zeros_like(x)
    front = x < m
    rear = ~front
    yc[front] = (k1 / 6.0) * (x[front] ** 3 - 3 * m * x[front] ** 2 + m**2 * (3 - m) * x[front])
    dyc[front] = (k1 / 6.0) * (3 * x[front] ** 2 - 6 * m * x[front] + m**2 * (3 - m))
    yc[rear] = (k1 * m**3 / 6.0) * (1 - x[rear])
    dyc[rear] = -(k1 * m**3 / 6.0)
    return yc, dyc


def naca5_profile(code, n_pts: int = DEFAULT_N_POINTS) -> Profile:
    """Closed unit-chord five-digit profile; non-reflex families only."""
    s = str(code).upper().replace("NACA", "").strip()
    if len(s) != 5 or not s.isdigit():
        raise GeometryError(f"not a 5-digit designation: {code!r}")
    camber_code = int(s[:3])
    t = int(s[3:]) / 100.0
    if not (0.0 < t <= 0.4):
        raise GeometryError(f"thickness fraction {t} outside (0, 0.4]")
    if n_pts < 32:
        raise GeometryError(f"n_pts={n_pts} below minimum 32")

    n_upper = n_pts // 2 + 1
    n_lower = n_pts - n_upper + 2

    def surface(xs, sign):
        yc, dyc = naca5_camber(xs, camber_code)
        yt = naca4_thickness(xs, t)
        th = np.arctan(dyc)
        px = xs - sign * yt * np.sin(th)
        py = yc + sign * yt * np.cos(th)
        return np.column_stack([px, py])

    upper = surface(_cosine_x(n_upper), +1.0)
    lower = surface(_cosine_x(n_lower), -1.0)
    upper[0] = lower[0] = (0.0, 0.0)
    upper[-1] = lower[-1] = (1.0, 0.0)
    ring = np.vstack([upper[::-1], lower[1:-1]])
    return Profile(ring)


# ---------------------------------------------------------------------------
# Arc-length resampling
# ---------------------------------------------------------------------------

_RESAMPLE_PASSES = 4


def _equal_arc_pass(pts: np.ndarray, n_pts: int) -> np.ndarray:
    """Place n_pts points at equal arc positions along the closed polyline."""
    closed = np.vstack([pts, pts[:1]])
    seg = np.diff(closed, axis=0)
    ln = np.linalg.norm(seg, axis=1)
    cum = np.concatenate([[0.0], np.cumsum(ln)])
    total = cum[-1]
    if total <= 1e-12:
        raise GeometryError("degenerate zero-perimeter input")
    targets = np.arange(n_pts) * (total / n_pts)
    # Guard: spacings must tile the full closed loop.
    if abs(n_pts * (total / n_pts) - total) > 1e-9 * max(1.0, total):
        raise GeometryError("arc accounting lost the closed loop")
    idx = np.clip(np.searchsorted(cum, targets, side="right") - 1, 0, ln.size - 1)
    denom = np.where(ln[idx] > 0, ln[idx], 1.0)
    frac = (targets - cum[idx]) / denom
    return closed[idx] + frac[:, None] * seg[idx]


@lru_cache(maxsize=256)
def _resample_cached(key: bytes, n: int, n_pts: int) -> bytes:
    pts = np.frombuffer(key, dtype=float).reshape(n, 2)
    for _ in range(_RESAMPLE_PASSES):
        pts = _equal_arc_pass(pts, n_pts)
    return np.ascontiguousarray(pts).tobytes()


def resample_arclength(profile: Profile, n_pts: int) -> Profile:
    """Resample the closed boundary into n_pts equally spaced points.

    Points sit at equal arc positions along the closed polyline, anchored at
    the first input point, with the full perimeter (closing edge included)
    tiling the spacings. The pass is iterated a few times so the output is a
    near-exact fixed point: resampling the result again moves points by less
    than 1e-6 chord, and already equally spaced polygons reproduce exactly.
    """
    if n_pts < 3:
        raise GeometryError(f"n_pts={n_pts} below minimum 3")
    pts = np.ascontiguousarray(profile.points, dtype=float)
    out = _resample_cached(pts.tobytes(), pts.shape[0], n_pts)
    return Profile(np.frombuffer(out, dtype=float).reshape(n_pts, 2).copy(), profile.chord)


# ---------------------------------------------------------------------------
# Envelope sweep
# ---------------------------------------------------------------------------

def _sweep_directions(csrep: CsRep):
    """Unit tangency directions of the upper and lower envelope branches."""
    c = csrep.centers
    r = csrep.radii
    n = csrep.n
    if n < 2:
        raise GeometryError("need at least 2 stations to sweep")
    dc = np.empty_like(c)
    dr = np.empty_like(r)
    dc[1:-1] = c[2:] - c[:-2]
    dr[1:-1] = r[2:] - r[:-2]
    dc[0] = c[1] - c[0]
    dr[0] = r[1] - r[0]
    dc[-1] = c[-1] - c[-2]
    dr[-1] = r[-1] - r[-2]

    norm2 = np.sum(dc * dc, axis=1)
    bad = np.nonzero(dr * dr > norm2)[0]
    if bad.size:
        raise EnvelopeError("radius change exceeds spine advance", int(bad[0]))
    norm = np.sqrt(norm2)
    that = dc / norm[:, None]
    normal = np.column_stack([-that[:, 1], that[:, 0]])
    ratio = dr / norm
    root = np.sqrt(np.maximum(0.0, 1.0 - ratio * ratio))
    upper = -ratio[:, None] * that + root[:, None] * normal
    lower = -ratio[:, None] * that - root[:, None] * normal
    return upper, lower


def _cap_arc(center, radius, theta_from, theta_to, step):
    """Interior points of the CCW arc from theta_from up to theta_to."""
    while theta_to <= theta_from:
        theta_to += 2.0 * math.pi
    arc_len = (theta_to - theta_from) * radius
    n_interior = max(1, int(round(arc_len / step)))
    thetas = np.linspace(theta_from, theta_to, n_interior + 2)[1:-1]
    return center + radius * np.column_stack([np.cos(thetas), np.sin(thetas)])


def _outside_all(points: np.ndarray, centers: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """Mask of points not strictly inside any of the circles."""
    d2 = np.sum((points[:, None, :] - centers[None, :, :]) ** 2, axis=2)
    inside = d2 < (radii[None, :] - 1e-12) ** 2
    return ~np.any(inside, axis=1)


def sweep_envelope(csrep: CsRep) -> Profile:
    """Trace the closed envelope of the swept circle family.

    Upper and lower tangency branches are joined by arcs of the first and last
    circles, giving a counter-clockwise ring: upper branch tail to nose, nose
    arc, lower branch nose to tail, tail arc. Tangency points swallowed by a
    neighbouring circle are interior to the swept region, not on its boundary,
    and are dropped; this is what keeps the ring simple when the radius
    sequence is locally kinky.
    """
    d_up, d_lo = _sweep_directions(csrep)
    c = csrep.centers
    r = csrep.radii[:, None]
    upper = c + r * d_up
    lower = c + r * d_lo

    step = 0.5 * csrep.delta_x
    nose = _cap_arc(
        c[0],
        csrep.radii[0],
        math.atan2(d_up[0, 1], d_up[0, 0]),
        math.atan2(d_lo[0, 1], d_lo[0, 0]),
        step,
    )
    tail = _cap_arc(
        c[-1],
        csrep.radii[-1],
        math.atan2(d_lo[-1, 1], d_lo[-1, 0]),
        math.atan2(d_up[-1, 1], d_up[-1, 0]),
        step,
    )
    ring = np.vstack([upper[::-1], nose, lower, tail])
    keep = _outside_all(ring, c, csrep.radii)
    return Profile(ring[keep])


# ---------------------------------------------------------------------------
# Spine extraction
# ---------------------------------------------------------------------------

def _point_segment_distance(px, py, ax, ay, dx, dy, inv_len2) -> np.ndarray:
    """Min distance from points (px, py) to the polyline segments (batched)."""
    relx = px[:, None] - ax[None, :]
    rely = py[:, None] - ay[None, :]
    t = (relx * dx + rely * dy) * inv_len2
    np.clip(t, 0.0, 1.0, out=t)
    fx = relx - t * dx
    fy = rely - t * dy
    d2 = fx * fx + fy * fy
    return np.sqrt(d2.min(axis=1))


def _vertical_interior_interval(points: np.ndarray, x: float):
    """Widest interior y-interval of the vertical line at x, or None."""
    x1 = points[:, 0]
    y1 = points[:, 1]
    x2 = np.roll(x1, -1)
    y2 = np.roll(y1, -1)
    hit = ((x1 <= x) & (x < x2)) | ((x2 <= x) & (x < x1))
    if not np.any(hit):
        return None
    tt = (x - x1[hit]) / (x2[hit] - x1[hit])
    ys = np.sort(y1[hit] + tt * (y2[hit] - y1[hit]))
    if ys.size % 2 != 0:
        return None
    widths = ys[1::2] - ys[0::2]
    k = int(np.argmax(widths))
    if widths[k] <= 1e-12:
        return None
    return float(ys[2 * k]), float(ys[2 * k + 1])


def extract_csrep(profile: Profile, delta_x: float = DEFAULT_DELTA_X) -> CsRep:
    """Recover the spine and radii of a simple closed profile.

    Each station keeps the point on its vertical line that is farthest from
    the boundary (golden-section search; the interior distance along the line
    is unimodal for airfoil-like shapes) with that distance as radius. The
    leading station is the last one whose circle still reaches the nose; the
    trailing station's radius is snapped to the closure value.
    """
    report = _check_simple_closed(profile)
    if report:
        raise GeometryError(f"profile is not simple/closed: {report[0]}")
    pts = profile.points
    nose_x = float(pts[:, 0].min())
    tail_x = float(pts[:, 0].max())
    if tail_x - nose_x <= 10 * delta_x:
        raise ExtractionError("profile span too small for the station grid")

    k_lo = int(math.floor(nose_x / delta_x)) - 1
    k_hi = int(math.ceil(tail_x / delta_x)) + 1
    xs = []
    intervals = []
    for k in range(k_lo, k_hi + 1):
        x = k * delta_x
        if x <= nose_x + 1e-9 or x >= tail_x - 1e-9:
            continue
        iv = _vertical_interior_interval(pts, x)
        if iv is None:
            raise ExtractionError(f"no interior intersection at station x={x:.6f}")
        xs.append(x)
        intervals.append(iv)
    if len(xs) < 8:
        raise ExtractionError("fewer than 8 usable stations; reduce delta_x")

    xs = np.asarray(xs)
    lo = np.asarray([iv[0] for iv in intervals])
    hi = np.asarray([iv[1] for iv in intervals])
    # Closure radius in the caller's length scale, so uniform scaling of the
    # profile together with delta_x commutes with extraction.
    r_eps = R_EPS * (delta_x / DEFAULT_DELTA_X)

    closed = np.vstack([pts, pts[:1]])
    seg_ax = closed[:-1, 0]
    seg_ay = closed[:-1, 1]
    seg_d = np.diff(closed, axis=0)
    seg_dx = seg_d[:, 0]
    seg_dy = seg_d[:, 1]
    seg_len2 = seg_dx * seg_dx + seg_dy * seg_dy
    inv_len2 = np.where(seg_len2 > 0, 1.0 / np.where(seg_len2 > 0, seg_len2, 1.0), 0.0)

    def interior_distance(ys):
        return _point_segment_distance(xs, ys, seg_ax, seg_ay, seg_dx, seg_dy, inv_len2)

    # Lockstep golden-section maximization over every station at once; one
    # batched distance evaluation per iteration.
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo.copy(), hi.copy()
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1 = interior_distance(x1)
    f2 = interior_distance(x2)
    for _ in range(48):
        left = f1 >= f2
        b = np.where(left, x2, b)
        a = np.where(left, a, x1)
        x2_new = np.where(left, x1, a + inv_phi * (b - a))
        x1_new = np.where(left, b - inv_phi * (b - a), x2)
        f2_keep = np.where(left, f1, f2)
        probe = np.where(left, x1_new, x2_new)
        f_probe = interior_distance(probe)
        f1 = np.where(left, f_probe, f2_keep)
        f2 = np.where(left, f2_keep, f_probe)
        x1, x2 = x1_new, x2_new
    y_star = 0.5 * (a + b)
    r_star = interior_distance(y_star)

    # Leading trim: keep from the last station whose circle still reaches the
    # nose; earlier stations sit inside the nose cap and add nothing. Then
    # advance past the bendy tip of the medial axis (cambered noses) so the
    # spine start satisfies the curvature-step bound.
    covering = np.nonzero(xs - r_star <= nose_x + 0.5 * delta_x)[0]
    i_start = int(covering[-1]) if covering.size else 0
    curv_cap = 0.9 * 0.1 * delta_x
    for _ in range(6):
        if i_start + 2 >= xs.size:
            break
        step = abs(y_star[i_start] - 2 * y_star[i_start + 1] + y_star[i_start + 2])
        if step < curv_cap:
            break
        i_start += 1

    # Trailing trim: stop at the first station whose circle already reaches
    # the tail (round tail caps), else at the last station with usable radius.
    reach_tail = np.nonzero(
        (np.arange(xs.size) > i_start) & (xs + r_star >= tail_x - 0.5 * delta_x)
    )[0]
    if reach_tail.size:
        i_last = int(reach_tail[0])
    else:
        usable = np.nonzero(r_star[i_start:] >= r_eps)[0]
        if usable.size == 0:
            raise ExtractionError("no stations with usable radius")
        i_last = i_start + int(usable[-1])
    # The medial tip degenerates inside the tail wedge; back off while the
    # junction bends harder than the spine curvature bound.
    for _ in range(6):
        if i_last - i_start + 1 <= 8 or i_last - 2 < i_start:
            break
        step = abs(y_star[i_last] - 2 * y_star[i_last - 1] + y_star[i_last - 2])
        if step < curv_cap:
            break
        i_last -= 1
    if i_last - i_start + 1 < 8:
        raise ExtractionError("fewer than 8 stations between nose and tail limits")

    spine_y = y_star[i_start : i_last + 1].copy()
    radii = r_star[i_start : i_last + 1].copy()
    if i_last + 1 < xs.size and r_star[i_last + 1] >= r_eps:
        # Room for one more circle: append the trailing closure anchor there,
        # provided its spine point continues the trend rather than chasing a
        # corner sliver.
        y_next = y_star[i_last + 1]
        y_trend = 2 * y_star[i_last] - y_star[i_last - 1]
        if abs(y_next - y_trend) < curv_cap:
            spine_y = np.append(spine_y, y_next)
            radii = np.append(radii, r_eps)
        else:
            radii[-1] = r_eps
    else:
        radii[-1] = r_eps
    return CsRep(float(xs[i_start]), delta_x, spine_y, radii)


# ---------------------------------------------------------------------------
# Validity checks
# ---------------------------------------------------------------------------

def _orient(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def _pairs_properly_intersect(p, q, r, s) -> bool:
    """Exact test for two segments p-q and r-s, shared endpoints excluded."""
    shared = 0
    for u in (p, q):
        for v in (r, s):
            if u[0] == v[0] and u[1] == v[1]:
                shared += 1
    d1 = _orient(r[0], r[1], s[0], s[1], p[0], p[1])
    d2 = _orient(r[0], r[1], s[0], s[1], q[0], q[1])
    d3 = _orient(p[0], p[1], q[0], q[1], r[0], r[1])
    d4 = _orient(p[0], p[1], q[0], q[1], s[0], s[1])
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    if shared:
        # Adjacent edges may only fail by overlapping collinearly.
        if d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0:
            lo1, hi1 = sorted((p[0], q[0])) if p[0] != q[0] else sorted((p[1], q[1]))
            if p[0] != q[0]:
                lo2, hi2 = sorted((r[0], s[0]))
            else:
                lo2, hi2 = sorted((r[1], s[1]))
            return min(hi1, hi2) - max(lo1, lo2) > 0
        return False

    def on_segment(a, b, c):
        return (
            min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])
        )

    if d1 == 0 and on_segment(r, s, p):
        return True
    if d2 == 0 and on_segment(r, s, q):
        return True
    if d3 == 0 and on_segment(p, q, r):
        return True
    if d4 == 0 and on_segment(p, q, s):
        return True
    return False


def _self_intersections(points: np.ndarray, max_report: int = 4):
    """Bounding-box pruned pairwise crossing scan over the closed ring."""
    n = points.shape[0]
    closed = np.vstack([points, points[:1]])
    a = closed[:-1]
    b = closed[1:]
    xmin = np.minimum(a[:, 0], b[:, 0])
    xmax = np.maximum(a[:, 0], b[:, 0])
    ymin = np.minimum(a[:, 1], b[:, 1])
    ymax = np.maximum(a[:, 1], b[:, 1])

    overlap = (
        (xmin[:, None] <= xmax[None, :])
        & (xmax[:, None] >= xmin[None, :])
        & (ymin[:, None] <= ymax[None, :])
        & (ymax[:, None] >= ymin[None, :])
    )
    iu = np.triu_indices(n, k=2)
    cand = overlap[iu]
    ii = iu[0][cand]
    jj = iu[1][cand]
    found = []
    for i, j in zip(ii.tolist(), jj.tolist()):
        if i == 0 and j == n - 1:
            # The closing edge is adjacent to the first edge.
            if _pairs_properly_intersect(tuple(a[i]), tuple(b[i]), tuple(a[j]), tuple(b[j])):
                found.append((i, j))
        elif _pairs_properly_intersect(tuple(a[i]), tuple(b[i]), tuple(a[j]), tuple(b[j])):
            found.append((i, j))
        if len(found) >= max_report:
            break
    # Neighbouring edges: collinear overlap only.
    for i in range(n):
        j = (i + 1) % n
        if _pairs_properly_intersect(tuple(a[i]), tuple(b[i]), tuple(a[j]), tuple(b[j])):
            found.append((i, j))
            if len(found) >= max_report:
                break
    return found


def _check_simple_closed(profile: Profile):
    violations = []
    pts = profile.points
    n = pts.shape[0]
    if n < 16:
        violations.append(("closed", 0, float(n)))
        return violations
    closed = np.vstack([pts, pts[:1]])
    edge_len = np.linalg.norm(np.diff(closed, axis=0), axis=1)
    dup = np.nonzero(edge_len <= 0.0)[0]
    if dup.size:
        violations.append(("closed", int(dup[0]), 0.0))
    if profile.signed_area() <= 0.0:
        violations.append(("orientation", 0, profile.signed_area()))
    for i, j in _self_intersections(pts):
        violations.append(("simple", i, float(j)))
    return violations


def _trend_reversals(seq: np.ndarray, tol: float) -> int:
    """Count trend reversals of a sequence with hysteresis tol.

    Moves smaller than tol do not open or flip a trend, so sub-resolution
    wiggles are ignored; a unimodal sequence yields at most one reversal.
    """
    direction = 0
    anchor = float(seq[0])
    changes = 0
    for v in seq[1:]:
        v = float(v)
        if direction == 0:
            if abs(v - anchor) > tol:
                direction = 1 if v > anchor else -1
                anchor = v
        elif direction == 1:
            if v > anchor:
                anchor = v
            elif anchor - v > tol:
                direction = -1
                anchor = v
                changes += 1
        else:
            if v < anchor:
                anchor = v
            elif v - anchor > tol:
                direction = 1
                anchor = v
                changes += 1
    return changes


def validate(profile: Profile, csrep: CsRep, thresholds: SmoothnessThresholds) -> ValidityReport:
    """Run the four geometric checks; always returns a report."""
    violations = list(_check_simple_closed(profile))

    r = csrep.radii
    y = csrep.spine_y
    if r[0] < R_NOSE_MIN:
        violations.append(("nose", 0, float(r[0])))
    if r[-1] > R_EPS:
        violations.append(("tail", csrep.n - 1, float(r[-1])))

    if csrep.delta_x <= 0 or csrep.n < 2:
        violations.append(("monotone", 0, float(csrep.delta_x)))
    if not np.all(np.isfinite(y)) or not np.all(np.isfinite(r)):
        violations.append(("monotone", 0, math.nan))

    dy = np.diff(y)
    d2y = np.diff(dy)
    dr = np.diff(r)
    band_y = np.nonzero(np.abs(d2y) >= thresholds.thres_y)[0]
    if band_y.size:
        j = int(band_y[0])
        violations.append(("smooth_y", j, float(abs(d2y[j]))))
    # The final radius step is the trailing-closure snap, not part of the
    # thickness distribution; its magnitude is exempt from the step bound.
    band_r = np.nonzero(np.abs(dr[:-1]) >= thresholds.thres_r)[0]
    if band_r.size:
        j = int(band_r[0])
        violations.append(("smooth_r", j, float(abs(dr[j]))))
    rev_y = _trend_reversals(dy, thresholds.thres_y)
    if rev_y > 1:
        violations.append(("unimodal_y", 0, float(rev_y)))
    rev_r = _trend_reversals(r, thresholds.thres_r)
    if rev_r > 1:
        violations.append(("unimodal_r", 0, float(rev_r)))

    return ValidityReport(tuple(violations))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def profile_to_csv(profile: Profile) -> str:
    lines = [f"{x:.17g},{y:.17g}" for x, y in profile.points]
    return "\n".join(lines) + "\n"


def profile_from_csv(text: str) -> Profile:
    rows = [line.split(",") for line in text.strip().splitlines() if line.strip()]
    return Profile(np.asarray([[float(a), float(b)] for a, b in rows]))


def csrep_to_dict(csrep: CsRep) -> dict:
    return {
        "x0": csrep.x0,
        "delta_x": csrep.delta_x,
        "spine_y": csrep.spine_y.tolist(),
        "radii": csrep.radii.tolist(),
    }


def csrep_from_dict(d: dict) -> CsRep:
    return CsRep(
        float(d["x0"]),
        float(d["delta_x"]),
        np.asarray(d["spine_y"], dtype=float),
        np.asarray(d["radii"], dtype=float),
    )

import math

import numpy as np
import pytest

import sweepfoil as sf
from sweepfoil import metrics
from sweepfoil.errors import EnvelopeError, ExtractionError, GeometryError
from sweepfoil.geometry import (
    DEFAULT_DELTA_X,
    R_EPS,
    CsRep,
    Profile,
    SmoothnessThresholds,
    naca4_thickness,
    naca5_constants,
    parse_naca4,
    profile_from_csv,
    profile_to_csv,
)
from support import stadium_profile


THR = SmoothnessThresholds.defaults()


def unit_square():
    return Profile(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))


class TestNaca4:
    def test_symmetric_profile_mirrors_about_chord(self):
        prof = sf.naca4_profile(0.0, 0.4, 0.12, n_pts=200)
        pts = prof.points
        # For every point, its mirror is also on the profile.
        flipped = pts.copy()
        flipped[:, 1] *= -1
        assert metrics.hausdorff(pts, flipped) < 1e-12

    def test_designation_decodes_to_parameters(self):
        assert parse_naca4("NACA 2412".replace(" ", "")) == (0.02, 0.4, 0.12)
        assert parse_naca4("0012") == (0.0, 0.0, 0.12)

    def test_thickness_polynomial_value(self):
        # Independent evaluation of the five-term polynomial at x = 0.3.
        x, t = 0.3, 0.12
        expected = (t / 0.2) * (
            0.2969 * math.sqrt(x) - 0.1260 * x - 0.3516 * x**2 + 0.2843 * x**3 - 0.1015 * x**4
        )
        assert naca4_thickness(x, t) == pytest.approx(expected, abs=1e-15)

    def test_profile_is_closed_unit_chord(self):
        prof = sf.naca4_profile(0.02, 0.4, 0.12)
        assert len(prof) == 200
        assert prof.points[:, 0].min() >= -0.01
        assert prof.points[:, 0].max() == pytest.approx(1.0, abs=1e-12)
        assert prof.signed_area() > 0

    @pytest.mark.parametrize(
        "m,p,t,n",
        [(-0.01, 0.4, 0.12, 200), (0.02, 1.2, 0.12, 200), (0.02, 0.4, 0.5, 200), (0.02, 0.4, 0.12, 16)],
    )
    def test_rejects_out_of_range(self, m, p, t, n):
        with pytest.raises(GeometryError):
            sf.naca4_profile(m, p, t, n)


class TestNaca5:
    def test_thickness_digits(self):
        # The last two digits set the thickness fraction: max circle diameter
        # of the swept representation recovers it.
        cs = sf.extract_csrep(sf.naca5_profile("23012"))
        assert 2 * cs.radii.max() == pytest.approx(0.12, rel=0.03)

    def test_reflex_codes_rejected(self):
        with pytest.raises(GeometryError):
            sf.naca5_profile("23112")

    def test_camber_constants_match_published_tables(self):
        # Published constants for the 230 family; implementation solves the
        # position and design-lift relations numerically.
        p, m, k1 = naca5_constants(230)
        assert p == pytest.approx(0.15, abs=1e-12)
        assert m == pytest.approx(0.2025, rel=5e-3)
        assert k1 == pytest.approx(15.957, rel=5e-3)
        # Cross-check the position relation independently.
        assert m * (1 - math.sqrt(m / 3)) == pytest.approx(p, abs=1e-9)

    def test_all_supported_position_codes(self):
        # m matches the published tables; k1 is checked against an independent
        # thin-airfoil quadrature of the design-lift constraint (the historic
        # tables round m first, shifting k1 by up to a few percent for the
        # forward-camber families).
        published_m = {210: 0.0580, 220: 0.1260, 230: 0.2025, 240: 0.2900, 250: 0.3910}
        for code, m_ref in published_m.items():
            _, m, k1 = naca5_constants(code)
            assert m == pytest.approx(m_ref, rel=5e-3)
            # Design lift at the ideal angle: CL_i = 2 Int slope(x) cos(theta) dtheta.
            theta = (np.arange(20000) + 0.5) * math.pi / 20000
            x = 0.5 * (1 - np.cos(theta))
            slope = np.where(
                x < m,
                (k1 / 6) * (3 * x**2 - 6 * m * x + m**2 * (3 - m)),
                -(k1 * m**3 / 6),
            )
            cl_design = 2 * np.sum(slope * np.cos(theta)) * math.pi / 20000
            assert cl_design == pytest.approx(0.30, rel=1e-4)


class TestResample:
    def test_square_four_points_gives_corners(self):
        out = sf.resample_arclength(unit_square(), 4)
        np.testing.assert_allclose(out.points, unit_square().points, atol=1e-9)

    def test_square_eight_points_gives_corners_and_midpoints(self):
        out = sf.resample_arclength(unit_square(), 8)
        expected = np.array(
            [[0, 0], [0.5, 0], [1, 0], [1, 0.5], [1, 1], [0.5, 1], [0, 1], [0, 0.5]], dtype=float
        )
        np.testing.assert_allclose(out.points, expected, atol=1e-9)

    def test_resampled_profile_close_to_original(self):
        prof = sf.naca4_profile(0.0, 0.4, 0.12, n_pts=200)
        out = sf.resample_arclength(prof, 200)
        assert metrics.profile_chamfer(prof, out) <= 1e-4

    def test_idempotent(self):
        prof = sf.naca4_profile(0.02, 0.4, 0.12)
        once = sf.resample_arclength(prof, 200)
        twice = sf.resample_arclength(once, 200)
        assert metrics.chamfer(once.points, twice.points) <= 1e-6

    def test_spacing_tiles_full_perimeter(self):
        prof = sf.naca4_profile(0.02, 0.4, 0.12)
        out = sf.resample_arclength(prof, 128)
        closed = np.vstack([out.points, out.points[:1]])
        spacing = np.linalg.norm(np.diff(closed, axis=0), axis=1)
        assert abs(spacing.sum() - out.perimeter()) < 1e-9

    def test_degenerate_input_rejected(self):
        degenerate = Profile(np.zeros((5, 2)))
        with pytest.raises(GeometryError):
            sf.resample_arclength(degenerate, 10)


class TestSweepEnvelope:
    def test_straight_spine_constant_radius(self):
        cs = CsRep(0.0, 0.1, np.zeros(9), np.full(9, 0.1))
        prof = sf.sweep_envelope(cs)
        pts = prof.points
        # Upper points at +r, lower at -r over the spine span.
        span = (pts[:, 0] >= 0) & (pts[:, 0] <= 0.8)
        on_lines = np.isclose(np.abs(pts[span][:, 1]), 0.1, atol=1e-12)
        arcs = ~on_lines
        # Everything off the lines belongs to the end caps.
        cap_pts = pts[span][arcs]
        d_left = np.linalg.norm(cap_pts - [0.0, 0.0], axis=1)
        d_right = np.linalg.norm(cap_pts - [0.8, 0.0], axis=1)
        assert np.all(np.isclose(d_left, 0.1, atol=1e-12) | np.isclose(d_right, 0.1, atol=1e-12))
        # Circular caps exist on both ends (sampled arcs reach near the poles).
        assert pts[:, 0].min() == pytest.approx(-0.1, abs=5e-3)
        assert pts[:, 0].max() == pytest.approx(0.9, abs=5e-3)

    def test_homogeneous_under_scaling(self):
        rng = np.random.default_rng(0)
        y = np.cumsum(rng.uniform(-1e-4, 1e-4, 12))
        r = np.linspace(0.05, 0.02, 12)
        cs = CsRep(0.0, 0.05, y, r)
        s = 2.5
        a = sf.sweep_envelope(cs).points * s
        b = sf.sweep_envelope(cs.scaled(s)).points
        np.testing.assert_allclose(a, b, atol=1e-12)

    def test_tangency_points_sit_on_their_circles(self):
        cs = sf.extract_csrep(sf.naca4_profile(0.02, 0.4, 0.12))
        prof = sf.sweep_envelope(cs)
        centers = cs.centers
        radii = cs.radii
        d = np.linalg.norm(prof.points[:, None, :] - centers[None, :, :], axis=2)
        on_some_circle = np.any(np.abs(d - radii[None, :]) < 1e-12, axis=1)
        assert np.all(on_some_circle)

    def test_matches_rasterized_union_boundary(self):
        # Tapering radius on a straight spine; oracle rasterizes the union of
        # a 10x supersampled circle family and traces its boundary pixels.
        n = 9
        delta = 0.1
        radii = np.linspace(0.08, 0.02, n)
        cs = CsRep(0.0, delta, np.zeros(n), radii)
        prof = sf.sweep_envelope(cs)

        xs_f = np.linspace(0.0, (n - 1) * delta, 10 * n)
        rs_f = np.interp(xs_f, cs.x, radii)
        gx, gy = np.meshgrid(np.linspace(-0.15, 0.95, 1100), np.linspace(-0.15, 0.15, 300))
        occ = np.zeros(gx.shape, dtype=bool)
        for cx, rr in zip(xs_f, rs_f):
            occ |= (gx - cx) ** 2 + gy**2 <= rr**2
        interior = occ.copy()
        interior[1:-1, 1:-1] &= occ[:-2, 1:-1] & occ[2:, 1:-1] & occ[1:-1, :-2] & occ[1:-1, 2:]
        boundary = occ & ~interior
        boundary_pts = np.column_stack([gx[boundary], gy[boundary]])
        assert metrics.hausdorff(prof.points, boundary_pts) <= 2 * delta

    def test_infeasible_radius_change_reports_index(self):
        r = np.full(10, 0.05)
        r[6] = 0.05 + 0.3  # jump exceeding the spine advance
        cs = CsRep(0.0, 0.1, np.zeros(10), r)
        with pytest.raises(EnvelopeError) as exc:
            sf.sweep_envelope(cs)
        assert exc.value.index in (5, 6, 7)


class TestExtract:
    def test_stadium_spine_and_radius(self):
        stad = stadium_profile()
        cs = sf.extract_csrep(stad)
        mask = (cs.x >= 0.0) & (cs.x <= 0.8)
        assert mask.sum() >= 90
        assert np.abs(cs.spine_y[mask]).max() < 1e-4
        assert np.abs(cs.radii[mask] - 0.1).max() < 5e-3

    def test_symmetric_profile_gives_zero_spine(self):
        cs = sf.extract_csrep(sf.naca4_profile(0.0, 0.4, 0.12))
        assert np.abs(cs.spine_y[:-1]).max() <= 1e-6

    def test_round_trip_against_distance_transform_oracle(self):
        # Brute-force oracle: rasterize the interior and take the per-column
        # distance-transform ridge as (spine, radius).
        from matplotlib.path import Path as MplPath
        from scipy.ndimage import distance_transform_edt

        prof = sf.naca4_profile(0.02, 0.4, 0.12)
        cs = sf.extract_csrep(prof)

        nx = ny = 2048
        gx = np.linspace(-0.02, 1.02, nx)
        gy = np.linspace(-0.16, 0.16, ny)
        xx, yy = np.meshgrid(gx, gy)
        inside = MplPath(prof.points).contains_points(np.column_stack([xx.ravel(), yy.ravel()]))
        inside = inside.reshape(xx.shape)
        px = gx[1] - gx[0]
        py = gy[1] - gy[0]
        edt = distance_transform_edt(inside, sampling=(py, px))

        for i in range(0, cs.n - 1, 16):
            col = int(np.argmin(np.abs(gx - cs.x[i])))
            ridge_row = int(np.argmax(edt[:, col]))
            assert abs(gy[ridge_row] - cs.spine_y[i]) < 4 * py
            assert abs(edt[ridge_row, col] - cs.radii[i]) < 4 * max(px, py)

        back = sf.sweep_envelope(cs)
        assert metrics.profile_chamfer(prof, back) <= 5e-3

    def test_scaling_commutes(self):
        prof = sf.naca4_profile(0.02, 0.4, 0.12)
        s = 3.0
        scaled = Profile(prof.points * s)
        cs_scaled = sf.extract_csrep(scaled, delta_x=s * DEFAULT_DELTA_X)
        cs = sf.extract_csrep(prof).scaled(s)
        assert cs_scaled.n == cs.n
        np.testing.assert_allclose(cs_scaled.spine_y, cs.spine_y, atol=1e-9 * s)
        np.testing.assert_allclose(cs_scaled.radii, cs.radii, atol=1e-9 * s)

    def test_non_simple_profile_rejected(self):
        bowtie = Profile(
            np.array([[0, 0], [1, 1], [1, 0], [0, 1]] * 4 + [[0, 0.5]], dtype=float)
        )
        with pytest.raises(GeometryError):
            sf.extract_csrep(bowtie)

    def test_too_coarse_grid_rejected(self):
        prof = sf.naca4_profile(0.0, 0.4, 0.12)
        with pytest.raises(ExtractionError):
            sf.extract_csrep(prof, delta_x=0.2)


class TestValidate:
    def test_stadium_extraction_all_four_flags(self):
        stad = stadium_profile()
        cs = sf.extract_csrep(stad)
        rep = sf.validate(stad, cs, THR)
        assert rep.all_valid
        assert rep.simple_closed and rep.rounded_nose_sharp_tail
        assert rep.monotone_progression and rep.smooth_unimodal_thickness

    def test_figure_eight_reports_crossing(self):
        t = np.linspace(0, 2 * np.pi, 40, endpoint=False)
        eight = Profile(np.column_stack([np.sin(2 * t) * 0.5, np.sin(t)]))
        cs = sf.extract_csrep(stadium_profile())  # any valid csrep
        rep = sf.validate(eight, cs, THR)
        assert not rep.simple_closed
        assert any(v[0] == "simple" for v in rep.violations)

    def test_wiggly_radius_fails_unimodality(self):
        r = np.array([0.02, 0.08, 0.03, 0.06, 0.05, 0.04, 0.03, 0.02, 0.01, R_EPS])
        cs = CsRep(0.0, DEFAULT_DELTA_X, np.zeros(10), r)
        prof = stadium_profile()
        rep = sf.validate(prof, cs, THR)
        assert not rep.smooth_unimodal_thickness
        assert any(v[0] == "unimodal_r" for v in rep.violations)

    def test_flags_match_violation_emptiness(self):
        stad = stadium_profile()
        cs = sf.extract_csrep(stad)
        rep = sf.validate(stad, cs, THR)
        assert rep.all_valid == (len(rep.violations) == 0)


class TestSerialization:
    def test_profile_csv_round_trip(self):
        prof = sf.naca4_profile(0.02, 0.4, 0.12)
        text = profile_to_csv(prof)
        back = profile_from_csv(text)
        np.testing.assert_array_equal(prof.points, back.points)

    def test_csrep_json_round_trip(self):
        import json

        from sweepfoil.geometry import csrep_from_dict, csrep_to_dict

        cs = sf.extract_csrep(sf.naca4_profile(0.0, 0.4, 0.12))
        back = csrep_from_dict(json.loads(json.dumps(csrep_to_dict(cs))))
        assert back.x0 == cs.x0 and back.delta_x == cs.delta_x
        np.testing.assert_array_equal(back.spine_y, cs.spine_y)
        np.testing.assert_array_equal(back.radii, cs.radii)

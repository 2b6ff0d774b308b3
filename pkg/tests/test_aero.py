import math

import numpy as np
import pytest

import sweepfoil as sf
from sweepfoil import aero
from sweepfoil.aero import AeroLabel, ClassGrid, PerformanceClass
from sweepfoil.geometry import CsRep, naca4_camber


class TestSurrogate:
    def test_symmetric_spine_zero_lift(self):
        cs = CsRep(0.0, 0.01, np.zeros(64), np.linspace(0.03, 1e-4, 64))
        label = aero.eval_surrogate(cs, 2e6)
        assert label.cl == 0.0

    def test_lift_matches_dense_trapezoid_oracle(self):
        # Analytic camber slope integrated two ways: 256-node midpoint rule
        # against a 10,000-node trapezoid oracle.
        def slope(x):
            _, dyc = naca4_camber(x, 0.02, 0.4)
            return dyc

        cl = aero.lift_coefficient(slope)

        theta = np.linspace(0.0, math.pi, 10_000)
        x = 0.5 * (1 - np.cos(theta))
        integrand = slope(x) * (np.cos(theta) - 1.0)
        cl_oracle = 2.0 * np.trapezoid(integrand, theta)
        assert cl == pytest.approx(cl_oracle, abs=1e-4)

    def test_drag_formula_value(self):
        # t/c = 0.12 at Re = 2e6, evaluated straight from the formula.
        re = 2e6
        cf = 0.074 * re ** (-0.2)
        expected = 2 * cf * (1 + 2 * 0.12 + 60 * 0.12**4)
        cs = CsRep(0.0, 0.01, np.zeros(64), np.full(64, 0.06))
        label = aero.eval_surrogate(cs, re)
        assert label.cd == pytest.approx(expected, rel=1e-12)

    def test_lift_invariant_under_vertical_shift(self):
        cs = sf.extract_csrep(sf.naca4_profile(0.02, 0.4, 0.12))
        shifted = CsRep(cs.x0, cs.delta_x, cs.spine_y + 0.05, cs.radii)
        a = aero.eval_surrogate(cs, 2e6)
        b = aero.eval_surrogate(shifted, 2e6)
        assert a.cl == pytest.approx(b.cl, abs=1e-15)

    def test_lift_odd_under_mirror(self):
        cs = sf.extract_csrep(sf.naca4_profile(0.03, 0.4, 0.12))
        mirrored = CsRep(cs.x0, cs.delta_x, -cs.spine_y, cs.radii)
        a = aero.eval_surrogate(cs, 2e6)
        b = aero.eval_surrogate(mirrored, 2e6)
        assert a.cl == pytest.approx(-b.cl, abs=1e-15)

    def test_drag_increases_with_max_radius(self):
        prev = 0.0
        for r_max in (0.02, 0.04, 0.06, 0.08):
            cs = CsRep(0.0, 0.01, np.zeros(32), np.full(32, r_max))
            cd = aero.eval_surrogate(cs, 2e6).cd
            assert cd > prev
            prev = cd

    def test_cambered_lift_in_plausible_range(self):
        cs = sf.extract_csrep(sf.naca4_profile(0.02, 0.4, 0.12))
        label = aero.eval_surrogate(cs, 2e6)
        assert 0.1 < label.cl < 0.4

    def test_invalid_inputs_rejected(self):
        cs = CsRep(0.0, 0.01, np.zeros(16), np.full(16, 0.02))
        with pytest.raises(ValueError):
            aero.eval_surrogate(cs, -1.0)
        bad = CsRep(0.0, 0.01, np.zeros(16), np.full(16, -0.02))
        with pytest.raises(ValueError):
            aero.eval_surrogate(bad, 2e6)


class TestGrid:
    def labels_spanning(self, lo_cl, hi_cl, lo_cd, hi_cd, count=60):
        cls = np.linspace(lo_cl, hi_cl, count)
        cds = np.linspace(lo_cd, hi_cd, count)
        return [AeroLabel(c, d) for c, d in zip(cls, cds)]

    def test_uniform_split(self):
        labels = self.labels_spanning(0.0, 1.0, 0.01, 0.02, count=200)
        grid = aero.build_grid(labels, bins=5, clip=(0.0, 100.0))
        np.testing.assert_allclose(grid.cl_edges, [0, 0.2, 0.4, 0.6, 0.8, 1.0], atol=1e-12)

    def test_outlier_clamped_by_percentiles(self):
        labels = self.labels_spanning(0.0, 1.0, 0.01, 0.02, count=200)
        labels.append(AeroLabel(100.0, 1.0))
        grid = aero.build_grid(labels, bins=5)
        assert grid.cl_edges[-1] < 2.0

    def test_every_source_label_classifies(self):
        labels = self.labels_spanning(-0.2, 0.9, 0.008, 0.03, count=80)
        grid = aero.build_grid(labels, bins=5)
        for lab in labels:
            pc = aero.classify(lab, grid)
            assert 0 <= pc.class_id < 25

    def test_degenerate_range_rejected(self):
        labels = [AeroLabel(0.5, 0.01 + 1e-5 * i) for i in range(40)]
        with pytest.raises(ValueError):
            aero.build_grid(labels, bins=5)

    def test_too_few_labels_rejected(self):
        with pytest.raises(ValueError):
            aero.build_grid([AeroLabel(0.1, 0.01)] * 10, bins=5)


class TestClassify:
    def grid(self):
        return ClassGrid(
            cl_edges=tuple(np.linspace(0, 1, 6)), cd_edges=tuple(np.linspace(0.01, 0.02, 6))
        )

    def test_bottom_corner_is_class_zero(self):
        pc = aero.classify(AeroLabel(0.0, 0.01), self.grid())
        assert pc.class_id == 0

    def test_interior_edge_goes_to_upper_bin(self):
        pc = aero.classify(AeroLabel(0.2, 0.012), self.grid())
        assert pc.class_id == 5 * 1 + 1

    def test_beyond_max_clamps_to_last_class(self):
        pc = aero.classify(AeroLabel(5.0, 1.0), self.grid())
        assert pc.class_id == 24

    def test_row_major_indexing(self):
        pc = aero.classify(AeroLabel(0.45, 0.0105), self.grid())
        assert pc.class_id == 5 * 2 + 0

    def test_null_class_construction(self):
        null = PerformanceClass.null()
        assert null.null_flag and null.class_id is None
        with pytest.raises(ValueError):
            PerformanceClass(class_id=3, null_flag=True)

import math
from importlib import resources

import numpy as np
import pytest
from scipy.integrate import quad

from gravdec.constants import (EARTH_MASS, EARTH_RADIUS, RB87_MASS,
                               RB87_RECOIL_VELOCITY, constants)
from gravdec.interferometry import (EXPERIMENTS, Fig1Row, GradiometerConfig,
                                    LMTSequence, VisibilityPrediction,
                                    fig1_dataset, gradiometer_contrast,
                                    load_measured, separation_profile,
                                    visibility_exponent, visibility_max,
                                    visibility_numeric)

C = constants()

MEASURED = str(resources.files("gravdec.data").joinpath("fig1_measured.txt"))


def kovachy_like_sequence():
    # 54 cm peak at T = 1.04 s with a 5.8 mm/s recoil needs splitting 90 (N = 45)
    return LMTSequence.from_recoil(n=45, recoil_velocity=RB87_RECOIL_VELOCITY,
                                   t_half=1.04, m=RB87_MASS)


class TestSequence:
    def test_recoil_consistency(self):
        seq = kovachy_like_sequence()
        assert seq.recoil_velocity == pytest.approx(5.8e-3, rel=1e-12)
        k = seq.k
        with pytest.raises(ValueError):
            LMTSequence(n=45, k=k, t_half=1.04, m=RB87_MASS,
                        recoil_velocity=1.01 * 5.8e-3)

    def test_validation(self):
        with pytest.raises(ValueError):
            LMTSequence(n=0, k=1e7, t_half=1.0, m=RB87_MASS)
        with pytest.raises(ValueError):
            LMTSequence(n=2, k=1e7, t_half=0.0, m=RB87_MASS)


class TestSeparationProfile:
    def test_closed_interferometer(self):
        seq = kovachy_like_sequence()
        assert separation_profile(seq, 0.0) == 0.0
        assert separation_profile(seq, 2 * seq.t_half) == pytest.approx(0.0, abs=1e-18)

    def test_peak_separation(self):
        seq = kovachy_like_sequence()
        peak = separation_profile(seq, seq.t_half)
        assert peak == pytest.approx(0.54288, rel=1e-10)
        assert peak == pytest.approx(0.54, rel=0.01)

    def test_triangular_symmetry(self):
        seq = kovachy_like_sequence()
        T = seq.t_half
        for f in (0.2, 0.5, 0.9):
            assert separation_profile(seq, f * T) == pytest.approx(
                separation_profile(seq, 2 * T - f * T), rel=1e-12)

    def test_outside_sequence_rejected(self):
        seq = kovachy_like_sequence()
        with pytest.raises(ValueError):
            separation_profile(seq, -0.1)
        with pytest.raises(ValueError):
            separation_profile(seq, 2 * seq.t_half + 0.1)


class TestVisibilityMax:
    def test_no_decoherence(self):
        pred = visibility_max(kovachy_like_sequence(), 0.0)
        assert pred.v_max == 1.0 and pred.exponent == 0.0

    def test_exponent_matches_time_quadrature(self):
        seq = kovachy_like_sequence()
        c_factor = 0.47
        pred = visibility_max(seq, c_factor)
        coeff = c_factor * C.G * EARTH_MASS * seq.m / (C.hbar * EARTH_RADIUS**3)
        val, _ = quad(lambda t: coeff * separation_profile(seq, t) ** 2,
                      0.0, seq.t_half, epsabs=0.0, epsrel=1e-13)
        assert pred.exponent == pytest.approx(2.0 * val, rel=1e-10)

    def test_profile_square_integral_closed_form(self):
        seq = kovachy_like_sequence()
        speed = seq.splitting_order * seq.recoil_velocity
        analytic = (2.0 / 3.0) * speed**2 * seq.t_half**3
        val = 0.0
        for a, b in ((0.0, seq.t_half), (seq.t_half, 2 * seq.t_half)):
            v, _ = quad(lambda t: separation_profile(seq, t) ** 2, a, b,
                        epsabs=0.0, epsrel=1e-13)
            val += v
        assert val == pytest.approx(analytic, rel=1e-10)

    def test_exponent_scalings(self):
        m, k = RB87_MASS, 7.7e6
        base = visibility_exponent(10, k, 1.0, m, 1.0)
        for order in (20, 40, 80):
            assert visibility_exponent(order, k, 1.0, m, 1.0) / order**2 == \
                pytest.approx(base / 100.0, rel=1e-12)
        for T in (0.5, 2.0, 4.0):
            assert visibility_exponent(10, k, T, m, 1.0) / T**3 == \
                pytest.approx(base, rel=1e-12)

    def test_prediction_record_consistency(self):
        with pytest.raises(ValueError):
            VisibilityPrediction(c_factor=1.0, v_max=0.5, exponent=0.5)


class TestVisibilityNumeric:
    def test_zero_rate(self):
        assert visibility_numeric(kovachy_like_sequence(), 0.0) == 1.0

    def test_agrees_with_closed_form(self):
        seq = kovachy_like_sequence()
        for c_factor in (1.0, 0.47, 0.1):
            coeff = c_factor * C.G * EARTH_MASS * seq.m / (C.hbar * EARTH_RADIUS**3)
            got = visibility_numeric(seq, coeff)
            want = visibility_max(seq, c_factor).v_max
            assert got == pytest.approx(want, rel=1e-8)

    def test_static_superposition_constant_rate(self):
        seq = LMTSequence.from_recoil(n=1, recoil_velocity=5.8e-3, t_half=0.5,
                                      m=RB87_MASS)
        coeff, dx0 = 3.0, 0.2
        got = visibility_numeric(seq, coeff, profile=lambda t: dx0)
        assert got == pytest.approx(math.exp(-coeff * dx0**2 * 2 * seq.t_half),
                                    rel=1e-10)

    def test_never_exceeds_one(self):
        seq = kovachy_like_sequence()
        for coeff in (0.0, 1e-3, 1.0, 1e4):
            assert visibility_numeric(seq, coeff) <= 1.0


class TestFig1Dataset:
    def test_row_count_cartesian(self):
        rows = fig1_dataset(EXPERIMENTS["fountain_54cm"], [1.0, 0.47, 0.1],
                            lmt_orders=[10, 20, 30])
        assert len(rows) == 9

    def test_monotone_in_order_and_ordered_in_c(self):
        rows = fig1_dataset(EXPERIMENTS["fountain_54cm"], [1.0, 0.47, 0.1],
                            lmt_orders=[10, 30, 60, 90])
        by_c = {}
        for r in rows:
            by_c.setdefault(r.c_factor, []).append(r.log10_v_pred)
        for series in by_c.values():
            assert all(a > b for a, b in zip(series, series[1:]))
        for i in range(4):
            assert by_c[1.0][i] < by_c[0.47][i] < by_c[0.1][i]

    def test_predictions_below_measurements(self):
        for name, params in EXPERIMENTS.items():
            rows = fig1_dataset(params, [1.0, 0.47], measured=MEASURED)
            assert rows, name
            for r in rows:
                assert r.log10_v_meas is not None
                assert r.log10_v_pred < r.log10_v_meas

    def test_reduced_factor_ratio_span(self):
        ratios = []
        for params in EXPERIMENTS.values():
            for r in fig1_dataset(params, [0.1], measured=MEASURED):
                ratios.append(10.0 ** (r.log10_v_meas - r.log10_v_pred))
        assert min(ratios) >= 2.5
        assert min(ratios) < 10.0      # the quoted low end is ~2.5
        assert max(ratios) >= 1e15

    def test_measured_file_round_trip(self):
        points = load_measured(MEASURED)
        assert {p.experiment for p in points} == {"fountain_54cm", "fountain_8cm"}
        assert all(0.0 < p.visibility <= 1.0 for p in points)

    def test_malformed_file_reports_line(self, tmp_path):
        bad = tmp_path / "meas.txt"
        bad.write_text("fountain_54cm 30 0.63\nfountain_54cm oops 0.4\n")
        with pytest.raises(ValueError, match=":2"):
            load_measured(bad)
        bad.write_text("fountain_54cm 30 1.63\n")
        with pytest.raises(ValueError, match=":1"):
            load_measured(bad)

    def test_orders_required_without_measurements(self):
        with pytest.raises(ValueError):
            fig1_dataset(EXPERIMENTS["fountain_54cm"], [1.0])


class TestGradiometer:
    def test_far_source_converges_to_earth_only(self):
        base = GradiometerConfig()
        far = GradiometerConfig(horizontal_distance=1e4)
        lo_far, up_far = gradiometer_contrast(far)
        seq = LMTSequence.from_recoil(base.lmt_order // 2, base.recoil_velocity,
                                      base.t_half, base.atom_mass)
        earth_only = visibility_numeric(
            seq, base.earth_c_factor * C.G * base.atom_mass * EARTH_MASS /
            (C.hbar * EARTH_RADIUS**3))
        assert lo_far == pytest.approx(earth_only, rel=1e-9)
        assert up_far == pytest.approx(earth_only, rel=1e-9)

    def test_lower_varies_more_than_upper(self):
        lows, ups = [], []
        for d_h in np.linspace(0.25, 0.5, 6):
            lo, up = gradiometer_contrast(GradiometerConfig(horizontal_distance=d_h))
            lows.append(lo)
            ups.append(up)
        assert max(lows) - min(lows) > 5.0 * (max(ups) - min(ups))
        assert all(a < b for a, b in zip(lows, lows[1:]))  # less noise further away

    def test_source_always_reduces_contrast(self):
        lo, up = gradiometer_contrast(GradiometerConfig())
        cfg = GradiometerConfig()
        seq = LMTSequence.from_recoil(cfg.lmt_order // 2, cfg.recoil_velocity,
                                      cfg.t_half, cfg.atom_mass)
        earth_only = visibility_numeric(
            seq, cfg.earth_c_factor * C.G * cfg.atom_mass * EARTH_MASS /
            (C.hbar * EARTH_RADIUS**3))
        assert lo < earth_only
        assert up < earth_only

    @pytest.mark.xfail(reason="quoted contrast windows (lower 0.5-0.65, upper "
                       "0.62-0.64) are not reproducible from the stated "
                       "point-source model with principled Earth factors; "
                       "the geometry is under-specified", strict=False)
    def test_quoted_contrast_windows(self):
        lo_near, up_near = gradiometer_contrast(
            GradiometerConfig(horizontal_distance=0.25))
        lo_far, up_far = gradiometer_contrast(
            GradiometerConfig(horizontal_distance=0.5))
        assert abs(lo_near - 0.5) <= 0.05
        assert abs(lo_far - 0.65) <= 0.05
        assert abs(up_near - 0.62) <= 0.05
        assert abs(up_far - 0.64) <= 0.05

    def test_config_validation(self):
        with pytest.raises(ValueError):
            GradiometerConfig(horizontal_distance=0.0)
        with pytest.raises(ValueError):
            GradiometerConfig(lmt_order=5)

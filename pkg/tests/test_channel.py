import math

import numpy as np
import pytest

from gravdec.channel import (DecoherenceRate, PairChannelParams,
                             collisional_noise, decoherence_coefficient,
                             force_gradient, min_decoherence_rate,
                             newtonian_expansion, optimal_noise)
from gravdec.constants import constants

C = constants()

# 87Rb against the rounded Earth at one Earth radius; oracle 2*G*m1*m2/d^3
K_EARTH_RB = 5.191122222222222e-31


class TestForceGradient:
    def test_zero_mass(self):
        assert force_gradient(0.0, 5.0, 1.0) == 0.0

    def test_unit_inputs_reduce_to_2g(self):
        assert force_gradient(1.0, 1.0, 1.0) == pytest.approx(1.33486e-10, rel=1e-12)

    def test_earth_rubidium(self):
        assert force_gradient(1.4e-25, 6e24, 6e6) == pytest.approx(K_EARTH_RB, rel=1e-12)

    def test_symmetric_in_masses(self):
        assert force_gradient(3.0, 7.0, 2.0) == force_gradient(7.0, 3.0, 2.0)

    def test_cubed_distance_invariant(self):
        # K * d^3 must not depend on d
        vals = [force_gradient(2.0, 5.0, d) * d**3 for d in np.geomspace(1e-3, 1e9, 13)]
        assert np.allclose(vals, vals[0], rtol=1e-12)

    def test_nonpositive_separation_rejected(self):
        with pytest.raises(ValueError):
            force_gradient(1.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            force_gradient(1.0, 1.0, -1.0)


class TestDecoherenceCoefficient:
    def test_minimum_value(self):
        K = K_EARTH_RB
        got = decoherence_coefficient(K, C.hbar / K)
        assert got == pytest.approx(K / (2.0 * C.hbar), rel=1e-12)
        assert got == pytest.approx(2461.2464217893194, rel=1e-12)

    def test_zero_gradient(self):
        assert decoherence_coefficient(0.0, 1.0) == 0.25

    def test_invalid_noise(self):
        with pytest.raises(ValueError):
            decoherence_coefficient(1.0, 0.0)

    def test_lower_bound_over_ten_decades(self):
        rng = np.random.default_rng(7)
        K = 3.3e-28
        floor = K / (2.0 * C.hbar)
        d_star = C.hbar / K
        for _ in range(200):
            D = d_star * 10 ** rng.uniform(-5.0, 5.0)
            val = decoherence_coefficient(K, D)
            assert val >= floor * (1.0 - 1e-12)
            if not math.isclose(D, d_star, rel_tol=1e-3):
                assert val > floor


class TestOptimalNoise:
    def test_identity_scaling(self):
        assert optimal_noise(C.hbar) == pytest.approx(1.0, rel=1e-14)

    def test_earth_rubidium(self):
        assert optimal_noise(K_EARTH_RB) == pytest.approx(2.0314910184267586e-4,
                                                          rel=1e-12)

    def test_is_the_minimiser(self):
        K = 5.2e-31
        d_star = optimal_noise(K)
        best = decoherence_coefficient(K, d_star)
        assert decoherence_coefficient(K, 2.0 * d_star) > best
        assert decoherence_coefficient(K, 0.5 * d_star) > best

    def test_invalid_gradient(self):
        with pytest.raises(ValueError):
            optimal_noise(0.0)


class TestMinDecoherenceRate:
    def test_fountain_scenario(self):
        rate = min_decoherence_rate(K_EARTH_RB, 0.54)
        assert 1.0 / rate.gamma == pytest.approx(1.3933408905533323e-3, rel=1e-12)
        # quoted one-significant-figure value: 2e-3 s, within a factor of two
        assert 0.5 < (1.0 / rate.gamma) / 2e-3 < 2.0

    def test_zero_superposition(self):
        assert min_decoherence_rate(1e-30, 0.0).gamma == 0.0

    def test_matches_coefficient_at_optimum(self):
        K, dx = 7.7e-29, 0.1
        rate = min_decoherence_rate(K, dx)
        assert rate.gamma == pytest.approx(
            decoherence_coefficient(K, optimal_noise(K)) * dx**2, rel=1e-12)

    def test_scaling_linear_in_k_quadratic_in_dx(self):
        base = min_decoherence_rate(1e-30, 0.1).gamma
        assert min_decoherence_rate(3e-30, 0.1).gamma == pytest.approx(3 * base, rel=1e-12)
        assert min_decoherence_rate(1e-30, 0.2).gamma == pytest.approx(4 * base, rel=1e-12)

    def test_negative_dx_rejected(self):
        with pytest.raises(ValueError):
            min_decoherence_rate(1.0, -0.1)


class TestNewtonianExpansion:
    def test_zeroth_order(self):
        m1, m2, d = 2.0, 3.0, 5.0
        assert newtonian_expansion(m1, m2, d, 0.0, 0.0) == pytest.approx(
            -C.G * m1 * m2 / d, rel=1e-14)

    def test_symmetric_in_displacements(self):
        assert newtonian_expansion(1.0, 1.0, 1.0, 0.1, 0.3) == \
            newtonian_expansion(1.0, 1.0, 1.0, 0.3, 0.1)

    def test_relative_error_cubic(self):
        m1, m2, d = 1.0, 1.0, 1.0
        s = 1e-3
        exact = -C.G * m1 * m2 / (d + s)
        approx = newtonian_expansion(m1, m2, d, s / 2, s / 2)
        assert abs(approx - exact) / abs(exact) < 2e-9

    def test_error_decays_as_cube(self):
        m1, m2, d = 1.0, 1.0, 1.0
        errs = []
        for s in (1e-2, 5e-3, 2.5e-3, 1.25e-3):
            exact = -C.G * m1 * m2 / (d + s)
            errs.append(abs(newtonian_expansion(m1, m2, d, s, 0.0) - exact) / abs(exact))
        for a, b in zip(errs, errs[1:]):
            assert a / b == pytest.approx(8.0, rel=0.05)

    def test_invalid_distance(self):
        with pytest.raises(ValueError):
            newtonian_expansion(1.0, 1.0, 0.0, 0.0, 0.0)


class TestCollisionalNoise:
    def test_unit_product(self):
        assert collisional_noise(1.0, 1.0) == 1.0

    def test_product(self):
        assert collisional_noise(1e-6, 2e2) == pytest.approx(2e-4, rel=1e-14)

    def test_invariant_along_limit_sequence(self):
        d0 = 0.37
        for n in (1, 10, 1000, 10**6):
            assert collisional_noise(1.0 / n, n * d0) == pytest.approx(d0, rel=1e-12)

    def test_nonpositive_inputs(self):
        with pytest.raises(ValueError):
            collisional_noise(0.0, 1.0)
        with pytest.raises(ValueError):
            collisional_noise(1.0, -1.0)


class TestParamRecords:
    def test_pair_params_derived_gradient(self):
        p = PairChannelParams(m1=1.0, m2=1.0, d=1.0, D=1.0)
        assert p.K == pytest.approx(2.0 * C.G, rel=1e-14)

    def test_pair_params_consistency(self):
        PairChannelParams(m1=1.0, m2=1.0, d=1.0, D=2e-4, tau=1e-6, sigma=2e2)
        with pytest.raises(ValueError):
            PairChannelParams(m1=1.0, m2=1.0, d=1.0, D=3e-4, tau=1e-6, sigma=2e2)

    def test_pair_params_domain(self):
        with pytest.raises(ValueError):
            PairChannelParams(m1=1.0, m2=1.0, d=0.0, D=1.0)
        with pytest.raises(ValueError):
            PairChannelParams(m1=-1.0, m2=1.0, d=1.0, D=1.0)
        with pytest.raises(ValueError):
            PairChannelParams(m1=1.0, m2=1.0, d=1.0, D=0.0)

    def test_rate_record_consistency(self):
        r = DecoherenceRate.from_coefficient(2.0, 3.0)
        assert r.gamma == 18.0
        with pytest.raises(ValueError):
            DecoherenceRate(gamma=1.0, dx=1.0, coefficient=2.0)
        with pytest.raises(ValueError):
            DecoherenceRate(gamma=-1.0, dx=1.0, coefficient=-1.0)

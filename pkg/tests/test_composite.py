import math

import numpy as np
import pytest

from gravdec.channel import force_gradient, min_decoherence_rate
from gravdec.composite import (BALL_GEOMETRIC_FACTOR, Constituent,
                               MassDistribution, SuperpositionAxis,
                               ball_rate_bound, ball_rate_numeric,
                               ball_rate_quad, composite_min_rate, d_min,
                               fibonacci_sphere, gradient_along_axis,
                               pairwise_gradient_3d, shell_rate)
from gravdec.constants import constants
from gravdec.errors import GeometryError, PrecisionError

C = constants()
Z = np.array([0.0, 0.0, 1.0])


def atom(mass=1.4e-25, pos=(0.0, 0.0, 0.0)):
    return MassDistribution.point_set([Constituent(mass, np.asarray(pos))])


def points(entries):
    return MassDistribution.point_source_list(
        [Constituent(m, np.asarray(p)) for m, p in entries])


class TestPairwiseGradient:
    def test_on_axis_reduces_to_1d(self):
        assert pairwise_gradient_3d(2.0, 3.0, 1.5, 0.0) == pytest.approx(
            force_gradient(2.0, 3.0, 1.5), rel=1e-14)

    def test_quadratic_root(self):
        d_perp = 0.8
        d_par = d_perp / math.sqrt(2.0)
        assert pairwise_gradient_3d(1.0, 1.0, d_par, d_perp) == pytest.approx(0.0, abs=1e-25)

    def test_transverse_pair(self):
        d = 0.7
        assert pairwise_gradient_3d(1.0, 1.0, 0.0, d) == pytest.approx(
            -0.5 * force_gradient(1.0, 1.0, d), rel=1e-14)

    def test_coincident_rejected(self):
        with pytest.raises(ValueError):
            pairwise_gradient_3d(1.0, 1.0, 0.0, 0.0)

    def test_rotation_invariance_about_axis(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            disp = rng.normal(size=3)
            base = gradient_along_axis(1.0, 2.0, disp, Z)
            th = rng.uniform(0, 2 * math.pi)
            rot = np.array([[math.cos(th), -math.sin(th), 0.0],
                            [math.sin(th), math.cos(th), 0.0],
                            [0.0, 0.0, 1.0]])
            assert gradient_along_axis(1.0, 2.0, rot @ disp, Z) == pytest.approx(
                base, rel=1e-12)

    def test_even_under_inversion(self):
        # antipodal constituents contribute identically
        disp = np.array([0.3, -0.2, 0.9])
        assert gradient_along_axis(1.0, 1.0, disp, Z) == pytest.approx(
            gradient_along_axis(1.0, 1.0, -disp, Z), rel=1e-14)


class TestDMin:
    def test_single_pair_matches_pointwise_model(self):
        m, M, d = 1.4e-25, 6e24, 6e6
        axis = SuperpositionAxis(Z, 0.54)
        got = d_min(atom(m), points([(M, (0, 0, -d))]), axis)
        assert got == pytest.approx(force_gradient(m, M, d) / (2 * C.hbar), rel=1e-12)
        assert got == pytest.approx(min_decoherence_rate(force_gradient(m, M, d), 1.0).gamma,
                                    rel=1e-12)

    def test_two_identical_sources_double(self):
        m, M, d = 1.0e-26, 10.0, 2.0
        axis = SuperpositionAxis(Z, 1.0)
        one = d_min(atom(m), points([(M, (0, 0, -d))]), axis)
        two = d_min(atom(m), points([(M, (0, 0, -d)), (M, (0, 0, -d))]), axis)
        assert two == pytest.approx(2.0 * one, rel=1e-12)

    def test_additivity_over_disjoint_sources(self):
        m = 1e-26
        axis = SuperpositionAxis(Z, 1.0)
        part_a = [(3.0, (0, 0, -1.0)), (2.0, (0.5, 0, -2.0))]
        part_b = [(5.0, (0, 1.0, -1.5))]
        total = d_min(atom(m), points(part_a + part_b), axis)
        assert total == pytest.approx(
            d_min(atom(m), points(part_a), axis) + d_min(atom(m), points(part_b), axis),
            rel=1e-12)

    def test_adding_matter_never_decreases(self):
        m = 1e-26
        axis = SuperpositionAxis(Z, 1.0)
        rng = np.random.default_rng(11)
        entries = []
        last = 0.0
        for _ in range(12):
            pos = rng.normal(size=3) * 2.0
            if np.linalg.norm(pos) < 0.1:
                pos += 0.5
            entries.append((rng.uniform(0.5, 4.0), tuple(pos)))
            val = d_min(atom(m), points(entries), axis)
            assert val >= last - 1e-30
            last = val

    def test_gradiometer_scenario(self):
        # Earth as a point plus 24 on-axis tungsten points; quoted 2e1 s
        m = 1.4e-25
        axis = SuperpositionAxis(Z, 1.86e-3)
        entries = [(6e24, (0, 0, -6e6))]
        for d in (0.1076, 0.1776, 0.2795, 0.3131):
            entries += [(21.5, (0, 0, -d - 1e-9 * i)) for i in range(6)]
        coeff = d_min(atom(m), points(entries), axis)
        inv_gamma = 1.0 / (coeff * 1.86e-3**2)
        assert inv_gamma == pytest.approx(19.8351857, rel=1e-4)
        assert 0.5 < inv_gamma / 2e1 < 2.0

    def test_internal_sum_rigid_body_reduction(self):
        # brute force over all pairs for small explicit bodies
        rng = np.random.default_rng(5)
        cons1 = [Constituent(rng.uniform(1, 2), rng.normal(size=3)) for _ in range(3)]
        cons2 = [Constituent(rng.uniform(1, 2), rng.normal(size=3) + 8.0) for _ in range(3)]
        s1 = MassDistribution.point_set(cons1)
        s2 = MassDistribution.point_source_list(cons2)
        axis = SuperpositionAxis(Z, 1.0)
        expected = 0.0
        for i, a in enumerate(cons1):
            for j, b in enumerate(cons1):
                if i != j:
                    expected += abs(gradient_along_axis(a.mass, b.mass,
                                                        b.position - a.position, Z))
        for a in cons1:
            for b in cons2:
                expected += abs(gradient_along_axis(a.mass, b.mass,
                                                    b.position - a.position, Z))
        expected /= 2.0 * C.hbar
        assert d_min(s1, s2, axis) == pytest.approx(expected, rel=1e-12)

    def test_single_constituent_has_no_internal_sum(self):
        axis = SuperpositionAxis(Z, 1.0)
        src = points([(1.0, (0, 0, -1.0))])
        assert d_min(atom(1.0), src, axis) == pytest.approx(
            force_gradient(1.0, 1.0, 1.0) / (2 * C.hbar), rel=1e-12)

    def test_overlap_rejected(self):
        axis = SuperpositionAxis(Z, 1.0)
        with pytest.raises(GeometryError):
            d_min(atom(1.0, (0, 0, 0)), points([(1.0, (0, 0, 0))]), axis)
        ball = MassDistribution.homogeneous_ball(1.0, 2.0)
        with pytest.raises(GeometryError):
            d_min(atom(1.0, (0, 0, 1.0)), ball, axis)

    def test_unsupported_pairing(self):
        axis = SuperpositionAxis(Z, 1.0)
        ball = MassDistribution.homogeneous_ball(1.0, 1.0)
        with pytest.raises(GeometryError):
            d_min(ball, atom(1.0), axis)

    def test_ball_source_matches_quadrature(self):
        # radial superposition above the ball centre: same geometry as the
        # dedicated surface quadrature at a standoff
        m, M, R, standoff = 1e-26, 1e3, 1.0, 0.5
        axis = SuperpositionAxis(Z, 1.0)
        ball = MassDistribution.homogeneous_ball(M, R, center=(0, 0, -(R + standoff)))
        got = d_min(atom(m, (0, 0, 0)), ball, axis)
        want = ball_rate_quad(m, M, R, standoff=standoff)
        assert got == pytest.approx(want, rel=1e-6)

    def test_ball_source_off_axis_against_monte_carlo(self):
        # generic geometry: superposition axis not through the ball centre
        m, M, R = 1e-26, 1e3, 1.0
        center = np.array([1.5, 0.0, -2.0])
        axis = SuperpositionAxis(Z, 1.0)
        ball = MassDistribution.homogeneous_ball(M, R, center=center)
        got = d_min(atom(m, (0, 0, 0)), ball, axis)
        rng = np.random.default_rng(0)
        n = 400_000
        pts = rng.uniform(-1.0, 1.0, size=(n, 3))
        pts = pts[np.sum(pts**2, axis=1) <= 1.0] * R + center
        k_per_mass = np.empty(len(pts))
        for i, p in enumerate(pts):
            k_per_mass[i] = abs(gradient_along_axis(m, 1.0, p, Z))
        mean = k_per_mass.mean() * M / (2 * C.hbar)
        assert got == pytest.approx(mean, rel=0.02)


class TestCompositeMinRate:
    def test_zero_dx(self):
        assert composite_min_rate(1.0, 0.0).gamma == 0.0

    def test_quadratic_scaling(self):
        assert composite_min_rate(3.0, 2.0).gamma == pytest.approx(
            4.0 * composite_min_rate(3.0, 1.0).gamma, rel=1e-14)

    def test_fountain_rate_scale(self):
        gamma = composite_min_rate(2461.2464217893194, 0.54).gamma
        assert gamma == pytest.approx(717.6994565937656, rel=1e-12)

    def test_negative_inputs(self):
        with pytest.raises(ValueError):
            composite_min_rate(-1.0, 1.0)
        with pytest.raises(ValueError):
            composite_min_rate(1.0, -1.0)


class TestBallRateBound:
    def test_exact_rational(self):
        c_factor, _ = ball_rate_bound(1.0, 1.0, 1.0)
        assert c_factor == pytest.approx(162.0 / 343.0, rel=1e-15)
        assert abs(c_factor - 0.4723) < 1e-4
        assert c_factor == BALL_GEOMETRIC_FACTOR

    def test_coefficient_is_c_times_point_value(self):
        m, M, R = 1.4e-25, 6e24, 6e6
        c_factor, coeff = ball_rate_bound(m, M, R)
        point = C.G * m * M / (C.hbar * R**3)
        assert coeff / point == pytest.approx(c_factor, rel=1e-14)
        assert coeff == pytest.approx(1162.4545782211944, rel=1e-12)

    def test_positive_inputs_required(self):
        with pytest.raises(ValueError):
            ball_rate_bound(0.0, 1.0, 1.0)


class TestBallRateNumeric:
    def test_exceeds_bound_at_surface(self):
        m, M, R = 1.4e-25, 6e24, 6e6
        _, bound = ball_rate_bound(m, M, R)
        est = ball_rate_numeric(m, M, R, samples=10**5, seed=1)
        assert est.coefficient - est.error_99 > bound

    def test_far_field_decay(self):
        m, M, R = 1.0, 1.0, 1.0
        near = ball_rate_numeric(m, M, R, samples=10**5, seed=2)
        far = ball_rate_numeric(m, M, R, standoff=10.0 * R, samples=10**5, seed=2)
        assert far.coefficient < 0.01 * near.coefficient
        # far field approaches the point-pair value at the centre distance
        point = force_gradient(m, M, 11.0 * R) / (2 * C.hbar)
        assert far.coefficient == pytest.approx(point, rel=0.05)

    def test_seed_consistency(self):
        m, M, R = 1.0, 1.0, 1.0
        a = ball_rate_numeric(m, M, R, samples=10**5, seed=0)
        b = ball_rate_numeric(m, M, R, samples=10**5, seed=123)
        assert abs(a.coefficient - b.coefficient) < a.error_99 + b.error_99

    def test_deterministic_given_seed(self):
        a = ball_rate_numeric(1.0, 1.0, 1.0, samples=2 * 10**4, seed=9)
        b = ball_rate_numeric(1.0, 1.0, 1.0, samples=2 * 10**4, seed=9)
        assert a.coefficient == b.coefficient

    def test_matches_deterministic_quadrature(self):
        m, M, R = 1.0, 1.0, 1.0
        est = ball_rate_numeric(m, M, R, standoff=0.25, samples=2 * 10**5, seed=4)
        want = ball_rate_quad(m, M, R, standoff=0.25)
        assert est.coefficient == pytest.approx(want, abs=3 * est.error_99)

    def test_insufficient_samples(self):
        with pytest.raises(PrecisionError):
            ball_rate_numeric(1.0, 1.0, 1.0, samples=100)

    def test_precision_target_enforced(self):
        with pytest.raises(PrecisionError) as info:
            ball_rate_numeric(1.0, 1.0, 1.0, samples=10**4, seed=0, rel_tol=1e-9)
        assert info.value.error_estimate > 0.0


class TestShellRate:
    def test_inverse_cube_in_radius_at_centre(self):
        shell1 = MassDistribution.spherical_shell(64.0, 1.0, 64)
        shell10 = MassDistribution.spherical_shell(64.0, 10.0, 64)
        r1 = shell_rate(1.0, shell1, 0.0)
        r10 = shell_rate(1.0, shell10, 0.0)
        assert r10 / r1 == pytest.approx(1e-3, rel=1e-9)

    def test_stays_finite_where_point_model_diverges(self):
        shell = MassDistribution.spherical_shell(64.0, 1.0, 64)
        finite = shell_rate(1.0, shell, 1e-6)
        naive = force_gradient(1.0, 64.0, 1e-6) / (2 * C.hbar)
        assert math.isfinite(finite)
        assert naive > 1e12 * finite

    def test_monotone_vanishing_with_radius(self):
        vals = [shell_rate(1.0, MassDistribution.spherical_shell(64.0, r, 64), 0.0)
                for r in (1.0, 2.0, 4.0, 8.0)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_offset_must_be_inside(self):
        shell = MassDistribution.spherical_shell(1.0, 1.0, 16)
        with pytest.raises(ValueError):
            shell_rate(1.0, shell, 1.0)

    def test_requires_shell_kind(self):
        with pytest.raises(GeometryError):
            shell_rate(1.0, MassDistribution.homogeneous_ball(1.0, 1.0), 0.0)


class TestDistributions:
    def test_total_mass_must_match(self):
        with pytest.raises(ValueError):
            MassDistribution(kind="point_set", total_mass=5.0,
                             constituents=(Constituent(1.0, np.zeros(3)),))

    def test_radius_positive(self):
        with pytest.raises(ValueError):
            MassDistribution.homogeneous_ball(1.0, -1.0)

    def test_unknown_kind(self):
        with pytest.raises(GeometryError):
            MassDistribution(kind="blob", total_mass=1.0)

    def test_axis_validation(self):
        with pytest.raises(ValueError):
            SuperpositionAxis(np.array([0.0, 0.0, 2.0]), 1.0)
        with pytest.raises(ValueError):
            SuperpositionAxis(Z, -1.0)

    def test_fibonacci_sphere_unit_norm(self):
        pts = fibonacci_sphere(257)
        assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)
        # roughly isotropic: mean position near the origin
        assert np.linalg.norm(pts.mean(axis=0)) < 0.02

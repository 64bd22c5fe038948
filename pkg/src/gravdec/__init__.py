"""Gravitational decoherence modelling toolkit.

Implements the pairwise classical-channel description of Newtonian gravity
(measurement-and-feedback ancillae forcing a minimal position dephasing),
its composite-body extension, and the rival Diosi-Penrose self-energy
model, and confronts both with atom-fountain visibilities, torsion-balance
scatter and optomechanics noise floors.
"""

__version__ = "0.1.0"

from .channel import (DecoherenceRate, PairChannelParams, collisional_noise,
                      decoherence_coefficient, force_gradient,
                      min_decoherence_rate, newtonian_expansion, optimal_noise)
from .composite import (BALL_GEOMETRIC_FACTOR, Constituent, MassDistribution,
                        SuperpositionAxis, ball_rate_bound, ball_rate_numeric,
                        ball_rate_quad, composite_min_rate, d_min,
                        pairwise_gradient_3d, shell_rate)
from .constants import (EARTH_MASS, EARTH_RADIUS, PhysConsts, constants,
                        schwarzschild_radius)
from .dp import (DPParams, MassDensity, MassDensityPair, comparison_row,
                 dp_pair_energy, dp_rate, ktm_rate_range, self_energy_rate)
from .gaussian import (DynamicsSpec, GaussianState, drift_diffusion,
                       entanglement_threshold_scan, evolve, log_negativity)
from .interferometry import (EXPERIMENTS, ExperimentParams, GradiometerConfig,
                             LMTSequence, VisibilityPrediction, fig1_dataset,
                             gradiometer_contrast, separation_profile,
                             visibility_max, visibility_numeric)
from .scenarios import Scenario, SourceSpec, load_scenarios
from .torsion import (TorsionBalanceConfig, TorsionReduction, angle_variance,
                      constraint_chain, effective_inertia, ktm_torsion_estimate,
                      optomech_thresholds, quadratic_coeffs)

__all__ = [
    "__version__",
    # constants
    "PhysConsts", "constants", "schwarzschild_radius", "EARTH_MASS", "EARTH_RADIUS",
    # pair channel
    "PairChannelParams", "DecoherenceRate", "force_gradient",
    "decoherence_coefficient", "optimal_noise", "min_decoherence_rate",
    "newtonian_expansion", "collisional_noise",
    # composite bodies
    "Constituent", "MassDistribution", "SuperpositionAxis", "pairwise_gradient_3d",
    "d_min", "composite_min_rate", "ball_rate_bound", "ball_rate_numeric",
    "ball_rate_quad", "shell_rate", "BALL_GEOMETRIC_FACTOR",
    # Gaussian dynamics
    "GaussianState", "DynamicsSpec", "drift_diffusion", "evolve",
    "log_negativity", "entanglement_threshold_scan",
    # self-energy model
    "DPParams", "MassDensity", "MassDensityPair", "dp_pair_energy", "dp_rate",
    "self_energy_rate", "ktm_rate_range", "comparison_row",
    # interferometry
    "LMTSequence", "VisibilityPrediction", "ExperimentParams", "EXPERIMENTS",
    "separation_profile", "visibility_max", "visibility_numeric", "fig1_dataset",
    "GradiometerConfig", "gradiometer_contrast",
    # laboratory constraints
    "TorsionBalanceConfig", "TorsionReduction", "effective_inertia",
    "quadratic_coeffs", "angle_variance", "constraint_chain",
    "ktm_torsion_estimate", "optomech_thresholds",
    # scenarios
    "Scenario", "SourceSpec", "load_scenarios",
]

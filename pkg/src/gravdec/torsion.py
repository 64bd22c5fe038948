"""Torsion-balance constraint chain and laboratory feasibility thresholds.

A four-plus-four sphere Cavendish balance reduces, for small deviations of
the arm angle from equilibrium, to a single angular mode with effective
inertia ``I_eff = 2 m r^2 M R^2 / (m r^2 + M R^2)`` and a potential
``B * da + C_quad * da^2`` whose coefficients are three-term sums over the
sphere pairings. Treating the channel noise as a repeated measurement of
the angle, the time-averaged angular variance is
``(hbar / 8 I_eff) T (eps + 1/eps)``; demanding it stay below the quoted
scatter of G measurements chains into a bound on the dephasing rate.

The reference analysis of this apparatus quotes ``I_eff = 8.35e-3 kg m^2``
and a rate bound of ``3.7e40 s^-1``; both disagree with direct evaluation
of the formulas at the same inputs (factors ~4.0 and ~4.6). The quoted
values are carried as defaults so the chain's numbers reproduce, and every
result reports both.
"""

import math
from dataclasses import dataclass
from typing import Tuple, Union

from .constants import EARTH_MASS, EARTH_RADIUS, constants

__all__ = [
    "TorsionBalanceConfig",
    "TorsionReduction",
    "ConstraintChain",
    "I_EFF_QUOTED",
    "C_QUAD_QUOTED",
    "effective_inertia",
    "quadratic_coeffs",
    "torsion_reduction",
    "angle_variance",
    "constraint_chain",
    "ktm_torsion_estimate",
    "optomech_thresholds",
]

_C = constants()

# Quoted reduction values for the reference apparatus (see module docstring).
I_EFF_QUOTED = 8.35e-3    # kg m^2
C_QUAD_QUOTED = 1.1148e-9  # J rad^-2, implied by the quoted chain output


@dataclass(frozen=True)
class TorsionBalanceConfig:
    """Four small bodies (mass m, arm r) against four large (M, R) at
    equilibrium angle alpha0. Defaults are the reference apparatus."""

    m: float = 1.2
    M: float = 11.0
    r: float = 0.120
    R: float = 0.214
    alpha0: float = math.radians(18.9)

    def __post_init__(self):
        for name in ("m", "M", "r", "R"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 < self.alpha0 < math.pi / 2.0:
            raise ValueError("alpha0 must lie in (0, pi/2)")


@dataclass(frozen=True)
class TorsionReduction:
    """Reduced inertia and the linear/quadratic potential coefficients."""

    i_eff: float
    b_coeff: float
    c_quad: float

    def __post_init__(self):
        if self.i_eff <= 0.0:
            raise ValueError("effective inertia must be positive")


def effective_inertia(cfg: TorsionBalanceConfig) -> float:
    """``2 m r^2 M R^2 / (m r^2 + M R^2)`` in kg m^2."""
    small = cfg.m * cfg.r**2
    large = cfg.M * cfg.R**2
    return 2.0 * small * large / (small + large)


def _denominators(cfg: TorsionBalanceConfig):
    vals = []
    for n in (1, 2, 3):
        d = cfg.r**2 + cfg.R**2 - 2.0 * cfg.r * cfg.R * math.sin(
            cfg.alpha0 + n * math.pi / 2.0)
        if d <= 0.0:
            raise ValueError("touching-sphere geometry: vanishing pair distance")
        vals.append(d)
    return vals


def quadratic_coeffs(cfg: TorsionBalanceConfig) -> Tuple[float, float]:
    """Linear and quadratic coefficients (B, C_quad) of the angular potential.

    Both are three-term sums over the relevant sphere pairings; B is the
    first derivative and C_quad half the second derivative of that sum at
    the equilibrium angle.
    """
    dens = _denominators(cfg)
    pref = _C.G * cfg.m * cfg.M * cfg.r * cfg.R
    b = 0.0
    c = 0.0
    for n, den in zip((1, 2, 3), dens):
        sin_n = math.sin(cfg.alpha0 + n * math.pi / 2.0)
        sin_n1 = math.sin(cfg.alpha0 + (n + 1) * math.pi / 2.0)
        b += 4.0 * pref * sin_n1 / den**1.5
        c += (-2.0 * pref * sin_n / den**1.5
              + 6.0 * pref * cfg.r * cfg.R * sin_n1**2 / den**2.5)
    return b, c


def torsion_reduction(cfg: TorsionBalanceConfig) -> TorsionReduction:
    b, c = quadratic_coeffs(cfg)
    return TorsionReduction(i_eff=effective_inertia(cfg), b_coeff=b, c_quad=c)


def angle_variance(i_eff: float, T: float, epsilon: float) -> float:
    """Time-averaged angular variance ``(hbar / 8 I_eff) T (eps + 1/eps)``.

    Minimised over the noise split at ``epsilon = 1``.
    """
    if i_eff <= 0.0 or T <= 0.0 or epsilon <= 0.0:
        raise ValueError("i_eff, T and epsilon must be positive")
    return _C.hbar / (8.0 * i_eff) * T * (epsilon + 1.0 / epsilon)


@dataclass(frozen=True)
class ConstraintChain:
    """The chained bounds plus both reduction-value routes for comparison."""

    variance_coefficient: float   # hbar / (8 I_eff), s^-1 per (eps + 1/eps) T
    t_eps_bound: float            # bound on T (eps + 1/eps)
    eps_bound: float              # bound on eps + 1/eps at the given T
    rate_bound: float             # bound on the dephasing rate, s^-1
    i_eff_used: float
    i_eff_formula: float
    i_eff_quoted: float
    c_quad_used: float
    c_quad_formula: float
    c_quad_quoted: float

    @property
    def i_eff_ratio(self) -> float:
        """Formula over quoted inertia (~4.0 for the reference apparatus)."""
        return self.i_eff_formula / self.i_eff_quoted

    @property
    def c_quad_ratio(self) -> float:
        """|formula| over quoted quadratic coefficient (~4.6 for the reference)."""
        return abs(self.c_quad_formula) / self.c_quad_quoted


def constraint_chain(cfg: TorsionBalanceConfig = TorsionBalanceConfig(),
                     t_experiment: float = 86400.0,
                     dg_over_g: float = 1e-6,
                     delta_alpha: float = 1.0,
                     i_eff: Union[str, float] = "quoted",
                     c_quad: Union[str, float] = "quoted") -> ConstraintChain:
    """Chain the angular-variance bound into a dephasing-rate bound.

    Steps: ``sqrt(coeff T (eps + 1/eps)) / delta_alpha <= dG/G`` caps
    ``T (eps + 1/eps)``, dividing by the experiment duration caps
    ``eps + 1/eps``, and the rate is at most ``(C_quad / 2 hbar)`` times
    that. ``i_eff`` and ``c_quad`` select the quoted reduction values
    (default, reproducing the reference chain), the formula evaluations,
    or explicit overrides; the mismatch between routes is exposed either way.
    """
    if t_experiment <= 0.0 or dg_over_g <= 0.0 or delta_alpha <= 0.0:
        raise ValueError("t_experiment, dg_over_g and delta_alpha must be positive")
    i_formula = effective_inertia(cfg)
    _, c_formula = quadratic_coeffs(cfg)

    if i_eff == "quoted":
        i_used = I_EFF_QUOTED
    elif i_eff == "formula":
        i_used = i_formula
    else:
        i_used = float(i_eff)
    if c_quad == "quoted":
        c_used = C_QUAD_QUOTED
    elif c_quad == "formula":
        c_used = abs(c_formula)
    else:
        c_used = float(c_quad)

    coeff = _C.hbar / (8.0 * i_used)
    t_eps_bound = (dg_over_g * delta_alpha) ** 2 / coeff
    eps_bound = t_eps_bound / t_experiment
    rate_bound = c_used / (2.0 * _C.hbar) * eps_bound
    return ConstraintChain(
        variance_coefficient=coeff,
        t_eps_bound=t_eps_bound,
        eps_bound=eps_bound,
        rate_bound=rate_bound,
        i_eff_used=i_used,
        i_eff_formula=i_formula,
        i_eff_quoted=I_EFF_QUOTED,
        c_quad_used=c_used,
        c_quad_formula=c_formula,
        c_quad_quoted=C_QUAD_QUOTED,
    )


def ktm_torsion_estimate(mass_scale: float, separation: float, dx: float,
                         second_mass: float = None) -> float:
    """Channel dephasing rate ``G m M dx^2 / (d^3 hbar)`` at laboratory scale.

    ``second_mass`` defaults to ``mass_scale``. For kilogram-scale bodies at
    decimetre separations and arm-scale superpositions this lands around
    1e25 s^-1, some fifteen orders of magnitude below the torsion-balance
    bound of the constraint chain.
    """
    if mass_scale < 0.0 or dx < 0.0:
        raise ValueError("mass and superposition size must be non-negative")
    if separation <= 0.0:
        raise ValueError("separation must be positive")
    other = mass_scale if second_mass is None else second_mass
    if other < 0.0:
        raise ValueError("second mass must be non-negative")
    return _C.G * mass_scale * other * dx**2 / (separation**3 * _C.hbar)


def optomech_thresholds(M: float = EARTH_MASS, R: float = EARTH_RADIUS
                        ) -> Tuple[float, float]:
    """Feasibility thresholds for optomechanical searches near a ball source.

    Returns ``(T Omega / Q threshold in K/s, omega^2 threshold in s^-2)``:
    the channel signal beats thermal noise only below
    ``G hbar M / (2 kB R^3)`` and measurement noise only below
    ``G M / R^3``. Earth defaults give ~7e-18 K/s and ~1.9e-6 s^-2.
    """
    if M <= 0.0 or R <= 0.0:
        raise ValueError("source mass and radius must be positive")
    thermal = _C.G * _C.hbar * M / (2.0 * _C.kB * R**3)
    freq_sq = _C.G * M / R**3
    return thermal, freq_sq

"""Diosi-Penrose decoherence rates and distance-range comparisons.

The DP rate is the gravitational self-energy mismatch between the two
superposed mass configurations of the same system, regularised by smearing
point particles into uniform balls of radius ``delta`` (coherent-spread
cutoff). The two standard regimes for a single particle of mass ``m`` are

* ``delta >> dx``:  ``G m^2 dx^2 / (2 delta^3 hbar)``
* ``delta << dx``:  ``(2 G m^2 / (delta hbar)) (6/5 - delta/dx)``

In between, the rate is evaluated from the uniform-ball pair energies
directly; the general expression is normalised to join the ``delta << dx``
form, which is the one anchored by the decoherence-time comparisons (the
two asymptotes are mutually inconsistent by a factor of two at
``delta ~ dx``, 0.5 vs 0.4 in units of ``G m^2 / (delta hbar)``).

Unlike the pair-channel model, the DP rate of a single particle carries no
dependence on other masses, while the channel rate spans zero (isolated
particle) up to ``(m c^2 / hbar)(dx / R_S)^2`` at the Schwarzschild-radius
separation ``R_S = 2 G M / c^2``.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.integrate import quad

from .channel import DecoherenceRate
from .constants import constants, schwarzschild_radius

__all__ = [
    "DPParams",
    "MassDensity",
    "MassDensityPair",
    "dp_pair_energy",
    "dp_rate",
    "self_energy_rate",
    "ktm_rate_range",
    "comparison_row",
]

_C = constants()


@dataclass(frozen=True)
class DPParams:
    """Cutoff ``delta`` (m), mass (kg), superposition ``dx`` (m), and the
    constituent count ``n1`` for rigid composite bodies (rate scales as n1)."""

    delta: float
    mass: float
    dx: float
    n1: int = 1

    def __post_init__(self):
        if self.delta <= 0.0:
            raise ValueError("cutoff delta must be positive")
        if self.mass <= 0.0:
            raise ValueError("mass must be positive")
        if self.dx < 0.0:
            raise ValueError("superposition size dx must be non-negative")
        if self.n1 < 1:
            raise ValueError("constituent count n1 must be >= 1")


@dataclass(frozen=True)
class MassDensity:
    """A mass-density descriptor: uniform ball or point mass at a centre."""

    kind: str  # "ball" | "point"
    mass: float
    radius: float = 0.0
    center: np.ndarray = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.kind not in ("ball", "point"):
            raise ValueError("kind must be 'ball' or 'point'")
        if self.mass <= 0.0:
            raise ValueError("mass must be positive")
        if self.kind == "ball" and self.radius <= 0.0:
            raise ValueError("ball radius must be positive")
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))


@dataclass(frozen=True)
class MassDensityPair:
    """Two mass densities of the same total mass (two branches of one system)."""

    fX: MassDensity
    fY: MassDensity

    def __post_init__(self):
        if not math.isclose(self.fX.mass, self.fY.mass, rel_tol=1e-12):
            raise ValueError("both densities must integrate to the same mass")

    @property
    def separation(self) -> float:
        return float(np.linalg.norm(self.fX.center - self.fY.center))


def _ball_ball_energy(m: float, radius: float, s: float) -> float:
    """Mutual energy of two identical uniform balls at centre separation s.

    Piecewise: the point form ``-G m^2 / s`` outside contact, a quintic in
    ``s / (2 radius)`` when overlapping, down to ``-(6/5) G m^2 / radius``
    at full overlap (the double integral carries no 1/2).
    """
    if s >= 2.0 * radius:
        return -_C.G * m**2 / s
    lam = s / (2.0 * radius)
    g = 1.2 - 2.0 * lam**2 + 1.5 * lam**3 - 0.2 * lam**5
    return -(_C.G * m**2 / radius) * g


def _point_ball_energy(m_point: float, m_ball: float, radius: float, s: float) -> float:
    """Mutual energy of a point mass and a uniform ball at separation s."""
    if s >= radius:
        return -_C.G * m_point * m_ball / s
    return -_C.G * m_point * m_ball * (3.0 * radius**2 - s**2) / (2.0 * radius**3)


def _ball_ball_energy_quad(m: float, radius: float, s: float) -> float:
    """1-D quadrature for the ball-ball energy (cross-check of the closed form).

    Shells of one ball are averaged against the other ball's potential; the
    angular average reduces to an elementary radial antiderivative.
    """
    if s == 0.0:
        # limit handled by the closed form; integrate the potential over one ball
        val, _ = quad(lambda u: u**2 * _phi_ball(radius, u), 0.0, radius,
                      epsabs=0.0, epsrel=1e-12)
        return _C.G * m**2 * 3.0 / radius**3 * val

    def anti(w):
        # antiderivative of w * phi(w) with phi the unit ball potential
        if w <= radius:
            return -(3.0 * radius**2 * w**2 / 2.0 - w**4 / 4.0) / (2.0 * radius**3)
        inner = -(3.0 * radius**4 / 2.0 - radius**4 / 4.0) / (2.0 * radius**3)
        return inner - (w - radius)

    def shell(u):
        lo, hi = abs(s - u), s + u
        return u**2 * (anti(hi) - anti(lo)) / (2.0 * s * u)

    val, _ = quad(shell, 0.0, radius, epsabs=0.0, epsrel=1e-12, limit=200)
    return _C.G * m**2 * 3.0 / radius**3 * val


def _phi_ball(radius: float, w: float) -> float:
    """Potential of a unit-mass uniform ball (per G) at distance w."""
    if w >= radius:
        return -1.0 / w
    return -(3.0 * radius**2 - w**2) / (2.0 * radius**3)


def dp_pair_energy(pair: MassDensityPair, method: str = "closed") -> float:
    """Gravitational energy ``-G int int fX(r) fY(r') / |r - r'|`` (J, <= 0).

    Closed forms cover identical uniform balls (any overlap), point-ball and
    separated point-point configurations; ``method="quadrature"`` evaluates
    the ball-ball case by radial quadrature instead (1e-6 relative or
    better), as an independent route.
    """
    fX, fY = pair.fX, pair.fY
    s = pair.separation
    if fX.kind == "point" and fY.kind == "point":
        if s == 0.0:
            raise ZeroDivisionError("point-point energy diverges at zero separation")
        return -_C.G * fX.mass * fY.mass / s
    if fX.kind == "ball" and fY.kind == "ball":
        if not math.isclose(fX.radius, fY.radius, rel_tol=1e-12):
            raise ValueError("ball-ball energies support equal radii only")
        if method == "quadrature":
            return _ball_ball_energy_quad(fX.mass, fX.radius, s)
        return _ball_ball_energy(fX.mass, fX.radius, s)
    ball = fX if fX.kind == "ball" else fY
    point = fY if fX.kind == "ball" else fX
    return _point_ball_energy(point.mass, ball.mass, ball.radius, s)


def self_energy_rate(mass: float, delta: float, dx: float,
                     method: str = "closed") -> float:
    """General self-energy route: both branches smeared into uniform balls.

    ``(1/hbar) [U(XX) + U(YY) - 2 U(XY)]`` with the positive-kernel
    convention, i.e. ``(2/hbar) (|U_self| - |U(dx)|)``; normalised so that it
    reproduces the ``delta << dx`` asymptote exactly (see module docstring).
    """
    if dx == 0.0:
        return 0.0
    ball0 = MassDensity("ball", mass, delta, (0.0, 0.0, 0.0))
    ball1 = MassDensity("ball", mass, delta, (dx, 0.0, 0.0))
    u_self = dp_pair_energy(MassDensityPair(ball0, ball0), method=method)
    u_cross = dp_pair_energy(MassDensityPair(ball0, ball1), method=method)
    return 2.0 * (u_cross - u_self) / _C.hbar


def dp_rate(params: DPParams) -> DecoherenceRate:
    """DP decoherence rate with piecewise regime selection.

    The quoted asymptotes are used verbatim for ``delta/dx`` outside a
    factor of ten of unity; in between, the uniform-ball self-energy route
    avoids the spurious jump where the asymptotes disagree. Composite rigid
    bodies scale the single-particle rate by ``n1``. Independent of any
    source mass by construction.
    """
    m, delta, dx = params.mass, params.delta, params.dx
    if dx == 0.0:
        coeff = params.n1 * _C.G * m**2 / (2.0 * delta**3 * _C.hbar)
        return DecoherenceRate.from_coefficient(coeff, 0.0)
    ratio = delta / dx
    if ratio >= 10.0:
        gamma = _C.G * m**2 * dx**2 / (2.0 * delta**3 * _C.hbar)
    elif ratio <= 0.1:
        gamma = (2.0 * _C.G * m**2 / (delta * _C.hbar)) * (1.2 - ratio)
    else:
        gamma = self_energy_rate(m, delta, dx)
    gamma *= params.n1
    return DecoherenceRate.from_coefficient(gamma / dx**2, dx)


def ktm_rate_range(m: float, M: float, dx: float) -> Tuple[float, float]:
    """Distance range of the pair-channel rate for fixed partner mass ``M``.

    Returns ``(0, (m c^2 / hbar)(dx / R_S)^2)``: the rate vanishes as the
    partner recedes and is capped by the closest-approach value at the
    Schwarzschild radius ``R_S = 2 G M / c^2``.
    """
    if M <= 0.0:
        raise ValueError("partner mass M must be positive")
    if m < 0.0 or dx < 0.0:
        raise ValueError("mass and superposition size must be non-negative")
    rs = schwarzschild_radius(M)
    upper = m * _C.c**2 / _C.hbar * (dx / rs) ** 2
    return 0.0, upper


def comparison_row(scenario) -> Tuple[float, float]:
    """Decoherence times ``(1/Gamma_DP, 1/Gamma_KTM)`` for a scenario.

    The DP column ignores the scenario's sources entirely; the channel
    column sums the constituent gradients of every source.
    """
    gamma_dp = dp_rate(scenario.dp_params()).gamma
    gamma_ktm = scenario.ktm_coefficient() * scenario.dx**2
    inv_dp = 1.0 / gamma_dp if gamma_dp > 0.0 else math.inf
    inv_ktm = 1.0 / gamma_ktm if gamma_ktm > 0.0 else math.inf
    return inv_dp, inv_ktm

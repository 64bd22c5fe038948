"""Pairwise classical-channel gravity: force gradients and minimal dephasing.

Two masses coupled only through local measurement-and-feedback ancillae
exchange classical information. The channel reproduces the Newtonian pair
force (to second order in the displacements) at the price of position
dephasing with coefficient ``1/(4D) + K^2 D / (4 hbar^2)``, where
``K = 2 G m1 m2 / d^3`` is the Newtonian force gradient and ``D`` the
measurement-noise parameter (m^2 s, the continuum limit of the collision
time tau times the ancilla width sigma). The coefficient is bounded below
by ``K / (2 hbar)``, reached at ``D = hbar / K``; for superposition size
``dx`` the minimal dephasing rate is ``(K / 2 hbar) dx^2``.
"""

import math
from dataclasses import dataclass
from typing import Optional

from .constants import constants

__all__ = [
    "PairChannelParams",
    "DecoherenceRate",
    "force_gradient",
    "decoherence_coefficient",
    "optimal_noise",
    "min_decoherence_rate",
    "newtonian_expansion",
    "collisional_noise",
]

_C = constants()


@dataclass(frozen=True)
class PairChannelParams:
    """Parameters of the two-mass channel.

    ``D`` is the measurement-noise parameter in m^2 s. When both ``tau``
    (collision timescale, s) and ``sigma`` (ancilla width, m^2) are given,
    their product must equal ``D``.
    """

    m1: float
    m2: float
    d: float
    D: float
    tau: Optional[float] = None
    sigma: Optional[float] = None

    def __post_init__(self):
        if self.m1 < 0.0 or self.m2 < 0.0:
            raise ValueError("masses must be non-negative")
        if self.d <= 0.0:
            raise ValueError("separation d must be positive")
        if self.D <= 0.0:
            raise ValueError("noise parameter D must be positive")
        if self.tau is not None and self.sigma is not None:
            prod = self.tau * self.sigma
            if not math.isclose(prod, self.D, rel_tol=1e-12):
                raise ValueError(
                    f"tau*sigma = {prod!r} inconsistent with D = {self.D!r}"
                )

    @property
    def K(self) -> float:
        """Newtonian force gradient of the pair, N/m."""
        return force_gradient(self.m1, self.m2, self.d)


@dataclass(frozen=True)
class DecoherenceRate:
    """A dephasing rate together with the superposition size it refers to.

    ``coefficient`` is the rate per squared superposition size (m^-2 s^-1),
    so ``gamma == coefficient * dx**2`` holds exactly.
    """

    gamma: float
    dx: float
    coefficient: float

    def __post_init__(self):
        if self.gamma < 0.0:
            raise ValueError("rate must be non-negative")
        if self.gamma != self.coefficient * self.dx**2:
            raise ValueError("gamma must equal coefficient * dx**2")

    @classmethod
    def from_coefficient(cls, coefficient: float, dx: float) -> "DecoherenceRate":
        return cls(gamma=coefficient * dx**2, dx=dx, coefficient=coefficient)


def force_gradient(m1: float, m2: float, d: float) -> float:
    """Gradient of the Newtonian force between two point masses.

    Parameters
    ----------
    m1, m2 : float
        Masses in kg (non-negative).
    d : float
        Separation in m (positive).

    Returns
    -------
    float
        ``2 G m1 m2 / d^3`` in N/m.
    """
    if d <= 0.0:
        raise ValueError("separation d must be positive")
    if m1 < 0.0 or m2 < 0.0:
        raise ValueError("masses must be non-negative")
    return 2.0 * _C.G * (m1 * m2) / d**3


def decoherence_coefficient(K: float, D: float) -> float:
    """Position-dephasing coefficient of the channel, m^-2 s^-1.

    Strictly convex in ``D`` for fixed ``K``, with a global minimum
    ``K / (2 hbar)`` at ``D = hbar / K``.
    """
    if D <= 0.0:
        raise ValueError("noise parameter D must be positive")
    return 1.0 / (4.0 * D) + K**2 * D / (4.0 * _C.hbar**2)


def optimal_noise(K: float) -> float:
    """Noise parameter minimising the dephasing coefficient: ``hbar / K``."""
    if K <= 0.0:
        raise ValueError("force gradient K must be positive")
    return _C.hbar / K


def min_decoherence_rate(K: float, dx: float) -> DecoherenceRate:
    """Minimal dephasing rate ``(K / 2 hbar) dx^2`` for superposition ``dx``."""
    if dx < 0.0:
        raise ValueError("superposition size dx must be non-negative")
    if K < 0.0:
        raise ValueError("force gradient K must be non-negative")
    return DecoherenceRate.from_coefficient(K / (2.0 * _C.hbar), dx)


def newtonian_expansion(m1: float, m2: float, d: float, x1: float, x2: float) -> float:
    """Quadratic expansion of the pair potential about separation ``d``.

    Returns ``-G m1 m2 / d * (1 - s/d + (s/d)^2)`` with ``s = x1 + x2``,
    which agrees with the exact ``-G m1 m2 / |d + s|`` up to third order
    in ``s/d``.
    """
    if d <= 0.0:
        raise ValueError("separation d must be positive")
    s = (x1 + x2) / d
    return -_C.G * m1 * m2 / d * (1.0 - s + s**2)


def collisional_noise(tau: float, sigma: float) -> float:
    """Noise parameter of the collisional limit: ``tau * sigma`` (m^2 s)."""
    if tau <= 0.0 or sigma <= 0.0:
        raise ValueError("tau and sigma must be positive")
    return tau * sigma

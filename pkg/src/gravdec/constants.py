"""Physical constants and shared reference parameters (SI units throughout).

Fundamental constants are CODATA 2018 values and never change at runtime.
The rounded Earth parameters and the rubidium fountain numbers are modelling
inputs used by the reference scenarios, kept separate from the fundamental
constants on purpose.
"""

from dataclasses import dataclass

__all__ = [
    "PhysConsts",
    "constants",
    "schwarzschild_radius",
    "EARTH_MASS",
    "EARTH_RADIUS",
    "RB87_MASS",
    "RB87_RECOIL_VELOCITY",
    "DP_CUTOFF_DEFAULT",
]


@dataclass(frozen=True)
class PhysConsts:
    """Fundamental constants, SI.

    Attributes
    ----------
    G : float
        Gravitational constant, m^3 kg^-1 s^-2.
    hbar : float
        Reduced Planck constant, J s.
    c : float
        Speed of light, m s^-1.
    kB : float
        Boltzmann constant, J K^-1.
    """

    G: float
    hbar: float
    c: float
    kB: float

    def __post_init__(self):
        for name in ("G", "hbar", "c", "kB"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"constant {name} must be positive")


_CODATA = PhysConsts(
    G=6.67430e-11,
    hbar=1.054571817e-34,
    c=299792458.0,
    kB=1.380649e-23,
)


def constants() -> PhysConsts:
    """Return the fixed constant set (same values on every call)."""
    return _CODATA


def schwarzschild_radius(mass: float) -> float:
    """2 G M / c^2 for a body of mass ``mass`` (kg), in metres."""
    if mass < 0.0:
        raise ValueError("mass must be non-negative")
    return 2.0 * _CODATA.G * mass / _CODATA.c**2


# Rounded modelling inputs for the reference scenarios. The rounded Earth
# values are deliberate: the comparison tables are quoted against them.
EARTH_MASS = 6.0e24        # kg
EARTH_RADIUS = 6.0e6       # m
RB87_MASS = 1.4e-25        # kg, 87Rb
RB87_RECOIL_VELOCITY = 5.8e-3   # m/s, single-photon recoil hbar*k/m for 87Rb
DP_CUTOFF_DEFAULT = 1e-15  # m, coherent-spread cutoff for self-energy rates

"""Large-momentum-transfer fountain model: separation profile and visibility.

A beam splitter of N simultaneous pi/2 pulses imparts momentum difference
``2 N hbar k``; the wave packets separate linearly for a time T, a mirror
pulse swaps the momenta, and the packets reunite at 2T. The accumulated
position dephasing suppresses the fringe visibility to

    V = exp(-int_0^{2T} coeff * dx(t)^2 dt)
      = exp(-(2/3) C (G hbar M / (m R^3)) (2 N k)^2 T^3)

for a source of mass M and radius R with geometric factor C. ``fig1_dataset``
confronts this prediction with measured fountain visibilities read from a
plain-text data file; ``gradiometer_contrast`` adds a movable point source
next to one of two vertically separated interferometers.
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

from scipy.integrate import quad

from .composite import pairwise_gradient_3d
from .constants import (EARTH_MASS, EARTH_RADIUS, RB87_MASS,
                        RB87_RECOIL_VELOCITY, constants)

__all__ = [
    "LMTSequence",
    "VisibilityPrediction",
    "ExperimentParams",
    "MeasuredPoint",
    "Fig1Row",
    "GradiometerConfig",
    "EXPERIMENTS",
    "separation_profile",
    "visibility_exponent",
    "visibility_max",
    "visibility_numeric",
    "load_measured",
    "fig1_dataset",
    "gradiometer_contrast",
]

_C = constants()


@dataclass(frozen=True)
class LMTSequence:
    """Pulse/timing description of one fountain interferometer.

    ``n`` is the number of pi/2 pulses per beam splitter (momentum splitting
    ``2 n hbar k``), ``k`` the laser wave number, ``t_half`` the half-sequence
    duration T and ``m`` the atom mass. ``recoil_velocity`` is derived as
    ``hbar k / m`` when not given.
    """

    n: int
    k: float
    t_half: float
    m: float
    recoil_velocity: Optional[float] = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("LMT order n must be an integer >= 1")
        if self.k <= 0.0 or self.m <= 0.0:
            raise ValueError("wave number and mass must be positive")
        if self.t_half <= 0.0:
            raise ValueError("half-sequence duration must be positive")
        derived = _C.hbar * self.k / self.m
        if self.recoil_velocity is None:
            object.__setattr__(self, "recoil_velocity", derived)
        elif not math.isclose(self.recoil_velocity, derived, rel_tol=1e-9):
            raise ValueError(
                f"recoil_velocity {self.recoil_velocity!r} inconsistent with "
                f"hbar*k/m = {derived!r}")

    @classmethod
    def from_recoil(cls, n: int, recoil_velocity: float, t_half: float,
                    m: float) -> "LMTSequence":
        return cls(n=n, k=recoil_velocity * m / _C.hbar, t_half=t_half, m=m)

    @property
    def splitting_order(self) -> int:
        """Momentum splitting in units of hbar*k (= 2n)."""
        return 2 * self.n

    @property
    def peak_separation(self) -> float:
        return self.splitting_order * self.recoil_velocity * self.t_half


@dataclass(frozen=True)
class VisibilityPrediction:
    """Geometric factor, dephasing exponent and the visibility it allows."""

    c_factor: float
    v_max: float
    exponent: float

    def __post_init__(self):
        if self.exponent < 0.0:
            raise ValueError("exponent must be non-negative")
        if not math.isclose(self.v_max, math.exp(-self.exponent), rel_tol=1e-12,
                            abs_tol=1e-300):
            raise ValueError("v_max must equal exp(-exponent)")


def separation_profile(seq: LMTSequence, t: float) -> float:
    """Triangular wave-packet separation: grows to 2T's midpoint, closes at 2T."""
    tt = 2.0 * seq.t_half
    if t < 0.0 or t > tt:
        raise ValueError(f"time {t!r} outside the sequence [0, {tt!r}]")
    speed = seq.splitting_order * seq.recoil_velocity
    return speed * t if t <= seq.t_half else speed * (tt - t)


def visibility_exponent(order: int, k: float, t_half: float, m: float,
                        c_factor: float, M: float = EARTH_MASS,
                        R: float = EARTH_RADIUS) -> float:
    """Dephasing exponent ``(2/3) C (G hbar M / (m R^3)) (order k)^2 T^3``.

    ``order`` is the momentum splitting in units of hbar*k (2N).
    """
    if c_factor < 0.0:
        raise ValueError("c_factor must be non-negative")
    return (2.0 / 3.0) * c_factor * (_C.G * _C.hbar * M / (m * R**3)) \
        * (order * k) ** 2 * t_half**3


def visibility_max(seq: LMTSequence, c_factor: float, M: float = EARTH_MASS,
                   R: float = EARTH_RADIUS) -> VisibilityPrediction:
    """Closed-form maximal visibility for a ball source of mass M, radius R."""
    if M <= 0.0 or R <= 0.0:
        raise ValueError("source mass and radius must be positive")
    exponent = visibility_exponent(seq.splitting_order, seq.k, seq.t_half,
                                   seq.m, c_factor, M, R)
    return VisibilityPrediction(c_factor=c_factor, v_max=math.exp(-exponent),
                                exponent=exponent)


def visibility_numeric(seq: LMTSequence, rate_coefficient: float,
                       profile: Optional[Callable[[float], float]] = None) -> float:
    """Visibility from time quadrature of ``coeff * dx(t)^2`` over [0, 2T].

    ``profile`` overrides the separation profile (for non-closing or static
    configurations); defaults to the sequence's triangular profile.
    """
    if rate_coefficient < 0.0:
        raise ValueError("rate coefficient must be non-negative")
    dx = profile if profile is not None else (lambda t: separation_profile(seq, t))
    T = seq.t_half
    acc = 0.0
    for a, b in ((0.0, T), (T, 2.0 * T)):
        val, _ = quad(lambda t: rate_coefficient * dx(t) ** 2, a, b,
                      epsabs=0.0, epsrel=1e-12)
        acc += val
    return math.exp(-acc)


@dataclass(frozen=True)
class ExperimentParams:
    """Fountain parameters of one reported experiment."""

    name: str
    atom_mass: float
    recoil_velocity: float
    t_half: float

    @property
    def wave_number(self) -> float:
        return self.recoil_velocity * self.atom_mass / _C.hbar


# The two rubidium fountains confronted with the channel prediction:
# a 10 m fountain reaching 54 cm packet separation and an 8 cm-class one.
EXPERIMENTS = {
    "fountain_54cm": ExperimentParams("fountain_54cm", RB87_MASS,
                                      RB87_RECOIL_VELOCITY, 1.04),
    "fountain_8cm": ExperimentParams("fountain_8cm", RB87_MASS,
                                     RB87_RECOIL_VELOCITY, 1.15),
}


@dataclass(frozen=True)
class MeasuredPoint:
    experiment: str
    order: int
    visibility: float
    error: float = 0.0


@dataclass(frozen=True)
class Fig1Row:
    experiment: str
    order: int
    c_factor: float
    log10_v_pred: float
    log10_v_meas: Optional[float]


def load_measured(path) -> List[MeasuredPoint]:
    """Read measured visibilities: one ``experiment order visibility error``
    record per line, '#' comments allowed."""
    points = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) not in (3, 4):
                raise ValueError(
                    f"{path}:{lineno}: expected 3 or 4 fields, got {len(fields)}")
            try:
                order = int(fields[1])
                vis = float(fields[2])
                err = float(fields[3]) if len(fields) == 4 else 0.0
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if not 0.0 < vis <= 1.0:
                raise ValueError(
                    f"{path}:{lineno}: visibility must lie in (0, 1], got {vis}")
            points.append(MeasuredPoint(fields[0], order, vis, err))
    return points


def fig1_dataset(params: ExperimentParams, c_values: Sequence[float],
                 lmt_orders: Optional[Sequence[int]] = None,
                 measured: Union[None, str, Sequence[MeasuredPoint]] = None,
                 M: float = EARTH_MASS, R: float = EARTH_RADIUS) -> List[Fig1Row]:
    """Predicted (and measured, where available) log10 visibilities.

    One row per (order, c_factor); ``log10_v_pred`` comes straight from the
    exponent so it stays exact where ``exp(-exponent)`` underflows. Orders
    default to the measured points of this experiment.
    """
    if isinstance(measured, str):
        measured = load_measured(measured)
    meas_map = {}
    if measured is not None:
        for p in measured:
            if p.experiment == params.name:
                meas_map[p.order] = p.visibility
    if lmt_orders is None:
        if not meas_map:
            raise ValueError("no LMT orders given and no measured points found")
        lmt_orders = sorted(meas_map)

    rows = []
    for order in lmt_orders:
        for c in c_values:
            expo = visibility_exponent(order, params.wave_number, params.t_half,
                                       params.atom_mass, c, M, R)
            log_v = -expo / math.log(10.0)
            meas = meas_map.get(order)
            rows.append(Fig1Row(params.name, order, c,
                                log_v, math.log10(meas) if meas else None))
    return rows


@dataclass(frozen=True)
class GradiometerConfig:
    """Two vertically separated fountains with a movable point source.

    The source of mass ``source_mass`` sits in the horizontal plane of the
    lower interferometer at distance ``horizontal_distance``; the upper one
    is ``vertical_separation`` above. ``lmt_order`` is the momentum
    splitting in hbar*k units; the Earth term uses ``earth_c_factor``.
    The vertical separation and the treatment of the source as a point are
    configuration choices, not measured inputs; the predicted windows move
    at the few-percent level with them.
    """

    source_mass: float = 252.0
    horizontal_distance: float = 0.25
    vertical_separation: float = 1.0
    lmt_order: int = 10
    t_half: float = 0.5
    atom_mass: float = RB87_MASS
    recoil_velocity: float = RB87_RECOIL_VELOCITY
    earth_c_factor: float = 1.0
    earth_mass: float = EARTH_MASS
    earth_radius: float = EARTH_RADIUS

    def __post_init__(self):
        if self.source_mass <= 0.0 or self.horizontal_distance <= 0.0:
            raise ValueError("source mass and horizontal distance must be positive")
        if self.vertical_separation <= 0.0:
            raise ValueError("vertical separation must be positive")
        if self.lmt_order < 2 or self.lmt_order % 2:
            raise ValueError("lmt_order is a momentum splitting, an even count >= 2")


def gradiometer_contrast(config: GradiometerConfig) -> Tuple[float, float]:
    """(lower, upper) interferometer contrasts for the configured geometry.

    Each contrast integrates the triangular profile against the Earth term
    plus the source's three-dimensional gradient resolved along the vertical
    superposition axis; the upper interferometer sees the source displaced
    vertically, so its contrast varies far less with the horizontal
    distance than the lower one's.
    """
    m = config.atom_mass
    earth_coeff = config.earth_c_factor * _C.G * m * config.earth_mass / (
        _C.hbar * config.earth_radius**3)
    seq = LMTSequence.from_recoil(config.lmt_order // 2, config.recoil_velocity,
                                  config.t_half, m)

    def coeff_at(vertical_offset: float) -> float:
        k_src = pairwise_gradient_3d(m, config.source_mass,
                                     vertical_offset, config.horizontal_distance)
        return earth_coeff + abs(k_src) / (2.0 * _C.hbar)

    lower = visibility_numeric(seq, coeff_at(0.0))
    upper = visibility_numeric(seq, coeff_at(config.vertical_separation))
    return lower, upper

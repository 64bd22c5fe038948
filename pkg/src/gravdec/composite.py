"""Composite bodies: three-dimensional force gradients and constituent sums.

A rigid test body superposed along one direction dephases at a rate set by
the sum of |K_ij| over constituent pairs, where ``K_ij`` is the gradient of
the Newtonian force between constituents i and j resolved along the
superposition axis. For a continuous source the cross-body sum becomes a
density integral; the body's own internal sum must stay discrete (it
diverges in the continuum limit), which is why explicit constituents are
required whenever the test body has more than one.

For a test mass on the surface of a homogeneous ball the summed rate is
bounded below by ``C * G m M / (hbar R^3)`` per squared superposition size,
with ``C = (3/4)(6/7)^3 = 162/343``: the bound keeps only the convex region
of the integrand (a cone plus half-ball holding 3/4 of the mass, centre of
mass 7R/6 deep) and applies the point-pair rate at that depth.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy import stats
from scipy.integrate import quad
from scipy.stats import qmc

from .channel import DecoherenceRate, force_gradient
from .constants import constants
from .errors import GeometryError, PrecisionError

__all__ = [
    "Constituent",
    "MassDistribution",
    "SuperpositionAxis",
    "BallRateEstimate",
    "pairwise_gradient_3d",
    "gradient_along_axis",
    "d_min",
    "composite_min_rate",
    "ball_rate_bound",
    "ball_rate_numeric",
    "ball_rate_quad",
    "shell_rate",
    "fibonacci_sphere",
    "BALL_GEOMETRIC_FACTOR",
]

_C = constants()

# Convex-region lower bound for a test mass at the surface of a homogeneous
# ball: (3/4) of the mass at effective depth (7/6) R, i.e. (3/4)(6/7)^3.
BALL_GEOMETRIC_FACTOR = 162.0 / 343.0

# Continuum |K| integrals diverge logarithmically at contact; physical sums
# are finite because constituents are atoms. Default inner cutoff ~ atomic
# spacing.
DEFAULT_INNER_CUTOFF = 1e-10  # m


@dataclass(frozen=True)
class Constituent:
    """A point constituent: mass (kg) and position (3-vector, m)."""

    mass: float
    position: np.ndarray

    def __post_init__(self):
        if self.mass <= 0.0:
            raise ValueError("constituent mass must be positive")
        pos = np.asarray(self.position, dtype=float)
        if pos.shape != (3,):
            raise ValueError("position must be a 3-vector")
        object.__setattr__(self, "position", pos)


@dataclass(frozen=True)
class MassDistribution:
    """Geometric mass model used in constituent sums and quadrature.

    Kinds: ``point_set`` / ``point_source_list`` (explicit constituents),
    ``homogeneous_ball`` and ``spherical_shell`` (radius, center; the shell
    additionally carries the constituent count it stands for).
    """

    kind: str
    total_mass: float
    radius: Optional[float] = None
    center: np.ndarray = field(default_factory=lambda: np.zeros(3))
    constituents: Optional[Tuple[Constituent, ...]] = None
    n_constituents: Optional[int] = None

    _KINDS = ("point_set", "point_source_list", "homogeneous_ball", "spherical_shell")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise GeometryError(f"unknown distribution kind {self.kind!r}")
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        if self.kind in ("point_set", "point_source_list"):
            if not self.constituents:
                raise ValueError("explicit distributions need constituents")
            total = sum(c.mass for c in self.constituents)
            if not math.isclose(total, self.total_mass, rel_tol=1e-9):
                raise ValueError(
                    "total_mass must equal the sum of constituent masses"
                )
        else:
            if self.radius is None or self.radius <= 0.0:
                raise ValueError("radius must be positive")
            if self.total_mass <= 0.0:
                raise ValueError("total mass must be positive")
            if self.kind == "spherical_shell":
                n = self.n_constituents
                if n is None or n < 1:
                    raise ValueError("spherical_shell needs n_constituents >= 1")

    @classmethod
    def point_set(cls, constituents) -> "MassDistribution":
        cons = tuple(constituents)
        return cls(kind="point_set", total_mass=sum(c.mass for c in cons),
                   constituents=cons)

    @classmethod
    def point_source_list(cls, constituents) -> "MassDistribution":
        cons = tuple(constituents)
        return cls(kind="point_source_list", total_mass=sum(c.mass for c in cons),
                   constituents=cons)

    @classmethod
    def homogeneous_ball(cls, mass, radius, center=(0.0, 0.0, 0.0)) -> "MassDistribution":
        return cls(kind="homogeneous_ball", total_mass=mass, radius=radius,
                   center=np.asarray(center, dtype=float))

    @classmethod
    def spherical_shell(cls, mass, radius, n_constituents,
                        center=(0.0, 0.0, 0.0)) -> "MassDistribution":
        return cls(kind="spherical_shell", total_mass=mass, radius=radius,
                   n_constituents=int(n_constituents),
                   center=np.asarray(center, dtype=float))

    def shell_constituents(self) -> Tuple[Constituent, ...]:
        """Explicit constituents of a spherical shell (deterministic lattice)."""
        if self.kind != "spherical_shell":
            raise GeometryError("shell_constituents requires a spherical_shell")
        unit = fibonacci_sphere(self.n_constituents)
        m = self.total_mass / self.n_constituents
        return tuple(
            Constituent(m, self.center + self.radius * u) for u in unit
        )


@dataclass(frozen=True)
class SuperpositionAxis:
    """Direction of the spatial superposition and its size ``dx`` (m)."""

    direction: np.ndarray
    dx: float

    def __post_init__(self):
        vec = np.asarray(self.direction, dtype=float)
        if vec.shape != (3,):
            raise ValueError("direction must be a 3-vector")
        if abs(np.linalg.norm(vec) - 1.0) > 1e-12:
            raise ValueError("direction must have unit norm")
        if self.dx < 0.0:
            raise ValueError("superposition size dx must be non-negative")
        object.__setattr__(self, "direction", vec)


def fibonacci_sphere(n: int) -> np.ndarray:
    """n approximately uniform unit vectors on the sphere (golden-angle lattice)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return np.array([[0.0, 0.0, 1.0]])
    k = np.arange(n, dtype=float)
    z = 1.0 - 2.0 * (k + 0.5) / n
    phi = k * math.pi * (3.0 - math.sqrt(5.0))
    s = np.sqrt(1.0 - z**2)
    return np.column_stack([s * np.cos(phi), s * np.sin(phi), z])


def pairwise_gradient_3d(mi: float, mj: float, d_par: float, d_perp: float) -> float:
    """Signed force gradient along the superposition axis for one pair.

    ``2 G mi mj (d_par^2 - d_perp^2 / 2) / d^5`` with
    ``d = sqrt(d_par^2 + d_perp^2)``. Reduces to the one-dimensional
    ``2 G mi mj / d^3`` when the pair lies on the axis.
    """
    d2 = d_par**2 + d_perp**2
    if d2 == 0.0:
        raise ValueError("coincident constituents have no defined gradient")
    return 2.0 * _C.G * mi * mj * (d_par**2 - 0.5 * d_perp**2) / d2**2.5


def gradient_along_axis(mi: float, mj: float, displacement, direction) -> float:
    """Pair gradient from the 3-vector joining the constituents."""
    disp = np.asarray(displacement, dtype=float)
    e = np.asarray(direction, dtype=float)
    d_par = float(disp @ e)
    d_perp = float(np.linalg.norm(disp - d_par * e))
    return pairwise_gradient_3d(mi, mj, d_par, d_perp)


def _require_explicit(dist: MassDistribution, role: str) -> Tuple[Constituent, ...]:
    if dist.kind in ("point_set", "point_source_list"):
        return dist.constituents
    raise GeometryError(f"{role} must be an explicit point distribution, got {dist.kind!r}")


def _check_disjoint(cons1, dist2: MassDistribution):
    if dist2.kind in ("point_set", "point_source_list"):
        for a in cons1:
            for b in dist2.constituents:
                if np.array_equal(a.position, b.position):
                    raise GeometryError("distributions overlap: coincident constituents")
    elif dist2.kind == "homogeneous_ball":
        for a in cons1:
            if np.linalg.norm(a.position - dist2.center) <= dist2.radius:
                raise GeometryError("test constituent lies on or inside the source ball")
    elif dist2.kind == "spherical_shell":
        for a in cons1:
            r = np.linalg.norm(a.position - dist2.center)
            if math.isclose(r, dist2.radius, rel_tol=1e-12, abs_tol=0.0):
                raise GeometryError("test constituent lies on the shell")


def d_min(s1: MassDistribution, s2: MassDistribution, axis: SuperpositionAxis) -> float:
    """Minimal dephasing coefficient of the composite pair, m^-2 s^-1.

    ``(1/2 hbar) * (sum_{i != j in s1} |K_ij| + sum_{i in s1, j in s2} |K_ij|)``.
    The internal sum runs over ordered pairs of s1 constituents; the cross
    sum couples every s1 constituent to every element of s2 (explicit sum
    for point sources, deterministic quadrature for a homogeneous ball,
    lattice constituents for a shell).
    """
    cons1 = _require_explicit(s1, "test body s1")
    _check_disjoint(cons1, s2)
    e = axis.direction

    total = 0.0
    # internal pairs of s1, ordered (i != j) = 2x the unordered sum
    for i in range(len(cons1)):
        for j in range(i + 1, len(cons1)):
            kij = gradient_along_axis(
                cons1[i].mass, cons1[j].mass,
                cons1[j].position - cons1[i].position, e,
            )
            total += 2.0 * abs(kij)

    if s2.kind in ("point_set", "point_source_list"):
        cons2 = s2.constituents
    elif s2.kind == "spherical_shell":
        cons2 = s2.shell_constituents()
    elif s2.kind == "homogeneous_ball":
        rho = s2.total_mass / (4.0 / 3.0 * math.pi * s2.radius**3)
        for a in cons1:
            integral = _ball_abs_gradient_integral(a.position, s2.center, s2.radius, e)
            # |K| dV = 2 G m rho |g| / d^3 dV, halved by the 1/(2 hbar) below
            total += 2.0 * _C.G * a.mass * rho * integral
        return total / (2.0 * _C.hbar)
    else:  # pragma: no cover - guarded by MassDistribution validation
        raise GeometryError(f"unsupported source kind {s2.kind!r}")

    for a in cons1:
        for b in cons2:
            total += abs(gradient_along_axis(a.mass, b.mass, b.position - a.position, e))
    return total / (2.0 * _C.hbar)


def composite_min_rate(dmin: float, dx: float) -> DecoherenceRate:
    """Minimal dephasing rate ``dmin * dx^2`` of the composite test body."""
    if dmin < 0.0:
        raise ValueError("rate coefficient must be non-negative")
    if dx < 0.0:
        raise ValueError("superposition size dx must be non-negative")
    return DecoherenceRate.from_coefficient(dmin, dx)


def ball_rate_bound(m: float, M: float, R: float) -> Tuple[float, float]:
    """Geometric factor and bound coefficient for a mass at a ball's surface.

    Returns ``(C, C * G m M / (hbar R^3))`` with ``C = 162/343 ~ 0.4723``.
    """
    if m <= 0.0 or M <= 0.0 or R <= 0.0:
        raise ValueError("masses and radius must be positive")
    c_factor = BALL_GEOMETRIC_FACTOR
    return c_factor, c_factor * _C.G * m * M / (_C.hbar * R**3)


def _ball_abs_gradient_integral(point, center, radius, direction,
                                inner_cutoff=0.0, n_phi=256):
    """Deterministic quadrature of ``|(3/2) cos^2(psi) - 1/2| / d^3`` over a ball.

    ``psi`` is the angle between the line of sight from ``point`` and the
    superposition ``direction``. Spherical coordinates about ``point`` make
    the radial integral analytic (a logarithm); the polar integral is done
    adaptively and the azimuthal average on a uniform periodic grid.
    Requires the point outside the ball unless an ``inner_cutoff`` caps the
    contact divergence.
    """
    w = np.asarray(center, dtype=float) - np.asarray(point, dtype=float)
    a = float(np.linalg.norm(w))
    if a < radius or (a == radius and inner_cutoff <= 0.0):
        raise GeometryError("quadrature requires the point outside the ball "
                            "(or an inner cutoff at contact)")
    zhat = w / a
    # orthonormal frame completing zhat
    seed = np.array([1.0, 0.0, 0.0]) if abs(zhat[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    xhat = seed - (seed @ zhat) * zhat
    xhat /= np.linalg.norm(xhat)
    yhat = np.cross(zhat, xhat)
    e = np.asarray(direction, dtype=float)
    ex, ey, ez = float(e @ xhat), float(e @ yhat), float(e @ zhat)

    aligned = abs(ex) < 1e-14 and abs(ey) < 1e-14
    phi = (np.arange(n_phi) + 0.5) * (2.0 * math.pi / n_phi)
    cphi, sphi = np.cos(phi), np.sin(phi)

    c_min = math.sqrt(max(0.0, 1.0 - (radius / a) ** 2))

    def integrand(c):
        disc = radius**2 - a**2 * (1.0 - c**2)
        if disc <= 0.0:
            return 0.0
        root = math.sqrt(disc)
        dmax = a * c + root
        dmin = max(a * c - root, inner_cutoff)
        if dmax <= dmin or dmin <= 0.0:
            return 0.0
        radial = math.log(dmax / dmin)
        s = math.sqrt(max(0.0, 1.0 - c**2))
        if aligned:
            ang = 2.0 * math.pi * abs(1.5 * (ez * c) ** 2 - 0.5)
        else:
            ue = s * (ex * cphi + ey * sphi) + ez * c
            ang = (2.0 * math.pi / n_phi) * float(np.sum(np.abs(1.5 * ue**2 - 0.5)))
        return ang * radial

    # kinks of the |...| factor keep adaptive refinement busy; off-axis
    # accuracy is floored by the azimuthal grid anyway
    eps = 1e-9 if aligned else 1e-7
    val, _ = quad(integrand, c_min, 1.0, limit=500, epsabs=0.0, epsrel=eps)
    return val


def ball_rate_quad(m: float, M: float, R: float, standoff: float = 0.0,
                   inner_cutoff: float = DEFAULT_INNER_CUTOFF) -> float:
    """Deterministic quadrature of the ball dephasing coefficient, m^-2 s^-1.

    Test mass at distance ``R + standoff`` from the centre, superposed along
    the radial direction. At ``standoff = 0`` the continuum integral is cut
    at ``inner_cutoff`` (see module docstring).
    """
    if m <= 0.0 or M <= 0.0 or R <= 0.0:
        raise ValueError("masses and radius must be positive")
    if standoff < 0.0:
        raise ValueError("standoff must be non-negative")
    a = R + standoff
    point = np.array([0.0, 0.0, a])
    cutoff = inner_cutoff if standoff == 0.0 else 0.0
    integral = _ball_abs_gradient_integral(point, np.zeros(3), R,
                                           np.array([0.0, 0.0, 1.0]),
                                           inner_cutoff=cutoff)
    rho = M / (4.0 / 3.0 * math.pi * R**3)
    return _C.G * m * rho * integral / _C.hbar


@dataclass(frozen=True)
class BallRateEstimate:
    """Monte Carlo estimate of the ball coefficient with its 99% half-width."""

    coefficient: float
    error_99: float
    samples: int

    @property
    def relative_error(self) -> float:
        return self.error_99 / self.coefficient if self.coefficient else math.inf


def ball_rate_numeric(m: float, M: float, R: float, standoff: float = 0.0,
                      samples: int = 1_000_000, seed: int = 0,
                      inner_cutoff: float = DEFAULT_INNER_CUTOFF,
                      rel_tol: Optional[float] = None) -> BallRateEstimate:
    """Quasi-Monte Carlo estimate of the ball dephasing coefficient.

    Importance sampling is log-uniform in the distance from the test mass,
    which bounds the estimator (the 1/d^3 peak under the test mass cancels
    exactly) and restricted to the cone of directions subtending the ball.
    Sixteen independently scrambled low-discrepancy replicates provide the
    99% confidence half-width.

    Raises
    ------
    PrecisionError
        If fewer than 1e4 samples are requested, or ``rel_tol`` is given and
        the achieved half-width exceeds ``rel_tol`` relative.
    """
    if m <= 0.0 or M <= 0.0 or R <= 0.0:
        raise ValueError("masses and radius must be positive")
    if standoff < 0.0:
        raise ValueError("standoff must be non-negative")
    if samples < 10_000:
        raise PrecisionError(f"at least 1e4 samples required, got {samples}")

    a = R + standoff
    d_lo = max(standoff, inner_cutoff)
    d_hi = a + R
    log_span = math.log(d_hi / d_lo)
    c_min = math.sqrt(max(0.0, 1.0 - (R / a) ** 2))

    n_rep = 16
    m2 = max(6, math.ceil(math.log2(samples / n_rep)))
    rep_means = np.empty(n_rep)
    for i in range(n_rep):
        sob = qmc.Sobol(d=3, scramble=True, seed=seed * n_rep + i)
        u = sob.random_base2(m2)
        d = d_lo * np.exp(u[:, 0] * log_span)
        c = c_min + u[:, 1] * (1.0 - c_min)
        phi = 2.0 * math.pi * u[:, 2]
        inside = d**2 + a**2 - 2.0 * a * d * c <= R**2
        # radial superposition axis == line of sight to the centre
        g = np.abs(1.5 * c**2 - 0.5)
        weight = 2.0 * math.pi * (1.0 - c_min) * log_span
        rep_means[i] = weight * np.mean(g * inside)

    rho = M / (4.0 / 3.0 * math.pi * R**3)
    scale = _C.G * m * rho / _C.hbar
    coeffs = scale * rep_means
    value = float(np.mean(coeffs))
    std_err = float(np.std(coeffs, ddof=1) / math.sqrt(n_rep))
    error_99 = float(stats.t.ppf(0.995, n_rep - 1) * std_err)
    total = n_rep * 2**m2

    if rel_tol is not None and error_99 > rel_tol * abs(value):
        raise PrecisionError(
            f"achieved relative error {error_99 / abs(value):.2e} exceeds "
            f"target {rel_tol:.2e}", value=value, error_estimate=error_99)
    return BallRateEstimate(coefficient=value, error_99=error_99, samples=total)


def shell_rate(m: float, shell: MassDistribution, offset: float,
               axis=(0.0, 0.0, 1.0)) -> float:
    """Dephasing coefficient for a test mass inside a constituent shell.

    The test mass sits at ``offset`` from the centre along ``axis`` (also
    the superposition direction). Finite for any offset strictly inside,
    and falls off as 1/radius^3 at fixed constituent count, unlike the
    centre-of-mass point model which diverges as the offset shrinks.
    """
    if shell.kind != "spherical_shell":
        raise GeometryError("shell_rate requires a spherical_shell distribution")
    if offset >= shell.radius:
        raise ValueError("offset must be smaller than the shell radius")
    if offset < 0.0:
        raise ValueError("offset must be non-negative")
    e = np.asarray(axis, dtype=float)
    e = e / np.linalg.norm(e)
    point = shell.center + offset * e
    total = 0.0
    for b in shell.shell_constituents():
        total += abs(gradient_along_axis(m, b.mass, b.position - point, e))
    return total / (2.0 * _C.hbar)

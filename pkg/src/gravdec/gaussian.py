"""Two-mode Gaussian dynamics under the bilinear channel generator.

The channel's generator is quadratic, so first and second moments close on
themselves: means follow ``dv/dt = A v`` and the symmetrised covariance
``ds/dt = A s + s A^T + Dm``. Position dephasing with coefficient ``D_c``
(m^-2 s^-1 per mode) enters only as momentum diffusion
``d<p_i^2>/dt = 2 hbar^2 D_c``. Entanglement is tracked through the
logarithmic negativity of the covariance matrix; with the bilinear coupling
``K x1 x2``, dephasing at ``D_c >= K / (2 hbar)`` renders the channel
entanglement non-increasing while weaker dephasing lets the unitary part
entangle the modes.

Mode ordering is ``(x1, p1, x2, p2)``. All functions accept an ``hbar`` so
the same code runs in SI or rescaled (hbar = 1) units.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

import numpy as np

from .constants import constants
from .errors import IntegrationError

__all__ = [
    "GaussianState",
    "DynamicsSpec",
    "drift_diffusion",
    "evolve",
    "log_negativity",
    "symplectic_eigenvalues",
    "min_pt_symplectic_eigenvalue",
    "entanglement_threshold_scan",
    "vacuum_state",
    "two_mode_squeezed_state",
    "single_mode_cov",
    "random_separable_state",
    "dephasing_decay_factor",
    "SYMPLECTIC_FORM",
]

_HBAR_SI = constants().hbar

SYMPLECTIC_FORM = np.array([
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0, 0.0],
])


@dataclass(frozen=True)
class GaussianState:
    """Means ``<x1, p1, x2, p2>`` and symmetrised 4x4 covariance matrix."""

    means: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.means, dtype=float)
        sig = np.asarray(self.cov, dtype=float)
        if mu.shape != (4,) or sig.shape != (4, 4):
            raise ValueError("means must be a 4-vector and cov a 4x4 matrix")
        object.__setattr__(self, "means", mu)
        object.__setattr__(self, "cov", sig)

    def validate(self, hbar: float = _HBAR_SI, rtol: float = 1e-10):
        """Check symmetry and the uncertainty principle; raises ValueError."""
        scale = float(np.abs(self.cov).max())
        if scale == 0.0:
            raise ValueError("covariance matrix is zero")
        asym = float(np.abs(self.cov - self.cov.T).max())
        if asym > 1e-12 * scale:
            raise ValueError(f"covariance not symmetric (relative {asym / scale:.2e})")
        herm = self.cov + 0.5j * hbar * SYMPLECTIC_FORM
        min_eig = float(np.linalg.eigvalsh(herm)[0])
        if min_eig < -rtol * scale:
            raise ValueError(
                f"uncertainty principle violated (min eig {min_eig:.3e}, "
                f"scale {scale:.3e})")
        return self


@dataclass(frozen=True)
class DynamicsSpec:
    """Masses, Hamiltonian kind, bilinear coupling and per-mode dephasing.

    ``hamiltonian_kind`` is ``"free"`` or ``"harmonic"`` (frequencies
    ``omega1``, ``omega2``); ``K`` is the ``K x1 x2`` coupling (N/m) and
    ``dephasing`` the per-mode position-dephasing coefficient (m^-2 s^-1).
    """

    m1: float
    m2: float
    hamiltonian_kind: str = "free"
    omega1: float = 0.0
    omega2: float = 0.0
    K: float = 0.0
    dephasing: float = 0.0
    hbar: float = _HBAR_SI

    def __post_init__(self):
        if self.m1 <= 0.0 or self.m2 <= 0.0:
            raise ValueError("masses must be positive")
        if self.dephasing < 0.0:
            raise ValueError("dephasing coefficient must be non-negative")
        if self.hamiltonian_kind not in ("free", "harmonic"):
            raise ValueError("hamiltonian_kind must be 'free' or 'harmonic'")
        if self.hamiltonian_kind == "harmonic" and (self.omega1 < 0 or self.omega2 < 0):
            raise ValueError("harmonic frequencies must be non-negative")
        if self.hbar <= 0.0:
            raise ValueError("hbar must be positive")


def drift_diffusion(spec: DynamicsSpec) -> Tuple[np.ndarray, np.ndarray]:
    """Drift matrix A and diffusion matrix Dm of the moment equations."""
    w1 = spec.omega1 if spec.hamiltonian_kind == "harmonic" else 0.0
    w2 = spec.omega2 if spec.hamiltonian_kind == "harmonic" else 0.0
    A = np.array([
        [0.0, 1.0 / spec.m1, 0.0, 0.0],
        [-spec.m1 * w1**2, 0.0, -spec.K, 0.0],
        [0.0, 0.0, 0.0, 1.0 / spec.m2],
        [-spec.K, 0.0, -spec.m2 * w2**2, 0.0],
    ])
    diff = 2.0 * spec.hbar**2 * spec.dephasing
    Dm = np.diag([0.0, diff, 0.0, diff])
    return A, Dm


def _rhs(A, Dm, mu, sig):
    return A @ mu, A @ sig + sig @ A.T + Dm


def _rk4_step(A, Dm, mu, sig, h):
    k1m, k1s = _rhs(A, Dm, mu, sig)
    k2m, k2s = _rhs(A, Dm, mu + 0.5 * h * k1m, sig + 0.5 * h * k1s)
    k3m, k3s = _rhs(A, Dm, mu + 0.5 * h * k2m, sig + 0.5 * h * k2s)
    k4m, k4s = _rhs(A, Dm, mu + h * k3m, sig + h * k3s)
    return (mu + (h / 6.0) * (k1m + 2 * k2m + 2 * k3m + k4m),
            sig + (h / 6.0) * (k1s + 2 * k2s + 2 * k3s + k4s))


def _error_metric(mu_a, sig_a, mu_b, sig_b):
    # unit-covariant: covariance entries relative to sqrt(s_ii s_jj), means to sqrt(s_ii)
    diag = np.sqrt(np.abs(np.diag(sig_b)))
    scale = np.outer(diag, diag)
    err = float(np.max(np.abs(sig_a - sig_b) / scale))
    err = max(err, float(np.max(np.abs(mu_a - mu_b) / diag)))
    return err


def evolve(state: GaussianState, spec: DynamicsSpec, t: float,
           tol: float = 1e-10) -> GaussianState:
    """Integrate the moment equations to time ``t``.

    Classic fourth-order Runge-Kutta with step doubling: each step is taken
    once at h and twice at h/2, the difference controls the local relative
    error against ``tol`` and the extrapolated (fifth-order) result is kept.

    Raises
    ------
    IntegrationError
        If the integrated covariance violates the uncertainty principle
        beyond the integration tolerance.
    """
    if t < 0.0:
        raise ValueError("time must be non-negative")
    state.validate(spec.hbar)
    if t == 0.0:
        return state
    A, Dm = drift_diffusion(spec)
    mu = state.means.copy()
    sig = state.cov.copy()

    h = t / 16.0
    done = 0.0
    max_steps = 2_000_000
    for _ in range(max_steps):
        if done >= t:
            break
        h = min(h, t - done)
        mu_big, sig_big = _rk4_step(A, Dm, mu, sig, h)
        mu_half, sig_half = _rk4_step(A, Dm, mu, sig, 0.5 * h)
        mu_two, sig_two = _rk4_step(A, Dm, mu_half, sig_half, 0.5 * h)
        err = _error_metric(mu_two, sig_two, mu_big, sig_big) / 15.0
        if err <= tol or h <= t * 1e-14:
            mu = mu_two + (mu_two - mu_big) / 15.0
            sig = sig_two + (sig_two - sig_big) / 15.0
            sig = 0.5 * (sig + sig.T)
            done += h
        growth = 0.9 * (tol / err) ** 0.2 if err > 0.0 else 5.0
        h *= min(5.0, max(0.2, growth))
    else:  # pragma: no cover - defensive
        raise IntegrationError("step count exceeded before reaching target time")

    out = GaussianState(means=mu, cov=sig)
    try:
        out.validate(spec.hbar, rtol=max(1e-10, 10.0 * tol))
    except ValueError as exc:
        raise IntegrationError(f"integration produced invalid state: {exc}") from exc
    return out


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """The two symplectic eigenvalues of a 4x4 covariance matrix."""
    ev = np.sort(np.abs(np.linalg.eigvals(1j * SYMPLECTIC_FORM @ cov)))
    return np.array([0.5 * (ev[0] + ev[1]), 0.5 * (ev[2] + ev[3])])


def min_pt_symplectic_eigenvalue(cov: np.ndarray) -> float:
    """Smallest symplectic eigenvalue of the partial transpose (mode 2)."""
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    return float(symplectic_eigenvalues(flip @ cov @ flip)[0])


def log_negativity(state: GaussianState, hbar: float = _HBAR_SI) -> float:
    """Logarithmic negativity ``max(0, -log2(2 nu_min / hbar))``.

    Zero for every separable two-mode Gaussian state; invariant under local
    symplectic operations on the individual modes.
    """
    state.validate(hbar)
    nu = min_pt_symplectic_eigenvalue(state.cov)
    return max(0.0, float(-np.log2(2.0 * nu / hbar)))


def entanglement_threshold_scan(spec_base: DynamicsSpec,
                                dephasing_values: Sequence[float],
                                horizon: float,
                                initial: GaussianState,
                                samples: int = 120,
                                tol: float = 1e-12):
    """Max log-negativity over ``[0, horizon]`` for each dephasing value.

    The initial state must be separable. Returns ``[(D_c, max_EN), ...]``
    in the order given. Values at or above ``K / (2 hbar)`` stay at zero up
    to integration error; values well below permit entanglement growth.
    """
    if log_negativity(initial, spec_base.hbar) > 0.0:
        raise ValueError("initial state must be separable (zero log-negativity)")
    times = np.linspace(0.0, horizon, samples + 1)[1:]
    rows = []
    for dc in dephasing_values:
        if dc < 0.0:
            raise ValueError("dephasing values must be non-negative")
        spec = replace(spec_base, dephasing=dc)
        best = 0.0
        state = initial
        prev_t = 0.0
        for tk in times:
            state = evolve(state, spec, tk - prev_t, tol=tol)
            prev_t = tk
            best = max(best, log_negativity(state, spec.hbar))
        rows.append((float(dc), best))
    return rows


def vacuum_state(hbar: float = _HBAR_SI) -> GaussianState:
    """Two uncorrelated vacua: covariance ``(hbar/2) I``."""
    return GaussianState(means=np.zeros(4), cov=0.5 * hbar * np.eye(4))


def two_mode_squeezed_state(r: float, hbar: float = _HBAR_SI) -> GaussianState:
    """Two-mode squeezed vacuum with squeezing parameter ``r``."""
    ch, sh = math.cosh(2.0 * r), math.sinh(2.0 * r)
    cov = 0.5 * hbar * np.array([
        [ch, 0.0, sh, 0.0],
        [0.0, ch, 0.0, -sh],
        [sh, 0.0, ch, 0.0],
        [0.0, -sh, 0.0, ch],
    ])
    return GaussianState(means=np.zeros(4), cov=cov)


def single_mode_cov(r: float = 0.0, theta: float = 0.0, nbar: float = 0.0,
                    hbar: float = _HBAR_SI) -> np.ndarray:
    """2x2 covariance of a rotated squeezed thermal single-mode state."""
    if nbar < 0.0:
        raise ValueError("thermal occupation must be non-negative")
    c, s = math.cos(theta), math.sin(theta)
    rot = np.array([[c, s], [-s, c]])
    core = np.diag([math.exp(-2.0 * r), math.exp(2.0 * r)])
    return (nbar + 0.5) * hbar * rot @ core @ rot.T


def random_separable_state(rng: np.random.Generator, hbar: float = 1.0,
                           max_squeeze: float = 1.0,
                           max_thermal: float = 2.0) -> GaussianState:
    """Random product of rotated squeezed thermal modes (always separable)."""
    cov = np.zeros((4, 4))
    for k in (0, 2):
        cov[k:k + 2, k:k + 2] = single_mode_cov(
            r=rng.uniform(0.0, max_squeeze),
            theta=rng.uniform(0.0, math.pi),
            nbar=rng.uniform(0.0, max_thermal),
            hbar=hbar,
        )
    return GaussianState(means=np.zeros(4), cov=cov)


def dephasing_decay_factor(spec: DynamicsSpec, dx: float, t: float,
                           tol: float = 1e-10) -> float:
    """Coherence decay of a size-``dx`` superposition from integrated moments.

    Runs the moment integration with and without the dephasing term; the
    excess momentum variance it accumulates maps to the off-diagonal decay
    ``exp(-excess * dx^2 / (2 hbar^2))``. For a constant-rate generator this
    equals ``exp(-D_c dx^2 t)``.
    """
    start = vacuum_state(spec.hbar)
    noisy = evolve(start, spec, t, tol=tol)
    clean = evolve(start, replace(spec, dephasing=0.0), t, tol=tol)
    excess = noisy.cov[1, 1] - clean.cov[1, 1]
    return math.exp(-excess * dx**2 / (2.0 * spec.hbar**2))

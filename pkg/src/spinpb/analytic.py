"""Steady-state two-excitation amplitudes, interference optima, and dynamics.

In the weak-drive limit the system state stays inside the subspace spanned
by |m, n> with m + n <= 2.  The six amplitudes obey a closed linear ODE
system; the steady state is solved perturbatively (vacuum -> one-excitation
2x2 block -> two-excitation 3x3 block) and yields the equal-time photon
correlation g2(0) = 2 |c02|^2 / |c01|^4.  Destructive interference between
the drive pathway and the pair-source pathway makes c02 vanish on a
discrete set of (delta, Lambda) points, located by ``find_optimal_pairs``.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, SingularSystemError, UndefinedCorrelationError
from .model import SystemParams

logger = logging.getLogger(__name__)

_SQRT2 = np.sqrt(2.0)

# Newton stage of the optimal-pair search
_NEWTON_MAX_ITER = 100
_NEWTON_FD_STEP = 1e-7          # relative finite-difference step
_NEWTON_RESIDUAL_TOL = 1e-12    # |c02| convergence threshold
_NEWTON_DAMPING = 0.5           # step shrink factor on residual increase
_DEDUP_TOL = 1e-6               # root merge distance, in omega_b units


@dataclass(frozen=True)
class AmplitudeVector:
    """Amplitudes of the m + n <= 2 subspace, basis |m magnons, n photons>."""

    c00: complex
    c10: complex
    c01: complex
    c11: complex
    c02: complex
    c20: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.c00, self.c10, self.c01,
                         self.c11, self.c02, self.c20])

    @classmethod
    def from_array(cls, values) -> "AmplitudeVector":
        c00, c10, c01, c11, c02, c20 = (complex(v) for v in values)
        return cls(c00, c10, c01, c11, c02, c20)


@dataclass(frozen=True)
class OptimalPair:
    """A (delta, Lambda) point where the two-photon amplitude vanishes."""

    delta_opt: float      # rad/s
    lambda_opt: float     # rad/s
    residual: float       # |c02| at the root
    omega_b: float        # unit scale the pair is reported in

    @property
    def delta_opt_over_omega_b(self) -> float:
        return self.delta_opt / self.omega_b

    @property
    def lambda_opt_over_omega_b(self) -> float:
        return self.lambda_opt / self.omega_b


def steady_amplitudes(params: SystemParams) -> AmplitudeVector:
    """Solve the steady amplitude hierarchy with c00 = 1.

    The one-excitation block drops the drive feedback from the
    two-excitation amplitudes; the two-excitation block is then sourced by
    the one-excitation solution and the direct pair term of the amplifier.
    """
    d_a = params.delta - 0.5j * params.gamma       # complex cavity detuning
    d_m = params.delta - 0.5j * params.gamma       # complex magnon detuning
    drive = params.E
    pair = 1j * _SQRT2 * params.Lambda * np.exp(1j * params.beta)

    one_exc = np.array([
        [d_m + params.K, params.J],
        [params.J, d_a + params.delta_F],
    ])
    try:
        c10, c01 = np.linalg.solve(one_exc, [0.0, -drive])
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError("one-excitation block is singular") from exc

    two_exc = np.array([
        [d_a + params.delta_F + d_m + params.K, _SQRT2 * params.J, _SQRT2 * params.J],
        [_SQRT2 * params.J, 2.0 * (d_a + params.delta_F), 0.0],
        [_SQRT2 * params.J, 0.0, 2.0 * (d_m + 2.0 * params.K)],
    ])
    source = np.array([-drive * c10, -_SQRT2 * drive * c01 - pair, 0.0])
    try:
        c11, c02, c20 = np.linalg.solve(two_exc, source)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError("two-excitation block is singular") from exc

    return AmplitudeVector(1.0 + 0.0j, c10, c01, c11, c02, c20)


def g2_analytic(params: SystemParams) -> float:
    """Equal-time second-order correlation 2 |c02|^2 / |c01|^4."""
    amps = steady_amplitudes(params)
    if amps.c01 == 0:
        raise UndefinedCorrelationError("c01 vanishes; g2(0) is undefined")
    return 2.0 * abs(amps.c02) ** 2 / abs(amps.c01) ** 4


def _c02(params: SystemParams, delta: float, lam: float) -> complex:
    return steady_amplitudes(params.replace(delta=delta, Lambda=lam)).c02


def _newton_refine(params: SystemParams, delta0: float, lam0: float,
                   scale_delta: float, scale_lambda: float):
    """Damped Newton on (Re c02, Im c02) with finite-difference Jacobian."""
    x = np.array([delta0, lam0], dtype=float)
    residual = _c02(params, x[0], x[1])
    for _ in range(_NEWTON_MAX_ITER):
        if abs(residual) < _NEWTON_RESIDUAL_TOL:
            return x, abs(residual)
        jac = np.empty((2, 2))
        scales = (scale_delta, scale_lambda)
        for k in range(2):
            h = _NEWTON_FD_STEP * max(abs(x[k]), scales[k])
            shifted = x.copy()
            shifted[k] += h
            df = (_c02(params, shifted[0], shifted[1]) - residual) / h
            jac[0, k] = df.real
            jac[1, k] = df.imag
        try:
            step = np.linalg.solve(jac, [-residual.real, -residual.imag])
        except np.linalg.LinAlgError:
            return None
        frac = 1.0
        trial = x + step
        trial_res = _c02(params, trial[0], trial[1])
        while abs(trial_res) >= abs(residual) and frac > 1e-12:
            frac *= _NEWTON_DAMPING
            trial = x + frac * step
            trial_res = _c02(params, trial[0], trial[1])
        x, residual = trial, trial_res
    if abs(residual) < _NEWTON_RESIDUAL_TOL:
        return x, abs(residual)
    return None


def find_optimal_pairs(params: SystemParams,
                       delta_range: tuple[float, float] = (-1.0, 1.0),
                       lambda_range: tuple[float, float] = (0.0, 1.0e-5),
                       grid: tuple[int, int] = (400, 100)) -> list[OptimalPair]:
    """Locate all real roots of c02(delta, Lambda) = 0 inside a box.

    Ranges are given in units of omega_b.  A coarse |c02| scan over the box
    seeds damped Newton iterations; converged roots are deduplicated and
    returned sorted by delta.  An empty list means no root inside the box.
    """
    wb = params.omega_b
    d_lo, d_hi = (r * wb for r in delta_range)
    l_lo, l_hi = (r * wb for r in lambda_range)
    if not (d_lo < d_hi and l_lo < l_hi):
        raise ConfigError("search box must have min < max on both axes")

    deltas = np.linspace(d_lo, d_hi, grid[0])
    lambdas = np.linspace(l_lo, l_hi, grid[1])
    magnitude = np.empty((grid[0], grid[1]))
    for i, d in enumerate(deltas):
        for j, lam in enumerate(lambdas):
            magnitude[i, j] = abs(_c02(params, d, lam))

    # candidates: strict local minima of |c02| in the grid interior that sit
    # below the typical residual level
    threshold = np.median(magnitude)
    candidates = []
    for i in range(1, grid[0] - 1):
        for j in range(1, grid[1] - 1):
            window = magnitude[i - 1:i + 2, j - 1:j + 2]
            if magnitude[i, j] == window.min() and magnitude[i, j] < threshold:
                candidates.append((deltas[i], lambdas[j]))

    scale_delta = max(abs(d_lo), abs(d_hi), 1e-3 * wb)
    scale_lambda = max(abs(l_hi), 1e-9 * wb)
    roots: list[OptimalPair] = []
    for d0, l0 in candidates:
        refined = _newton_refine(params, d0, l0, scale_delta, scale_lambda)
        if refined is None:
            logger.warning("optimal-pair candidate (%.6g, %.6g) did not converge",
                           d0 / wb, l0 / wb)
            continue
        (d_root, l_root), res = refined
        if not (d_lo - _DEDUP_TOL * wb <= d_root <= d_hi + _DEDUP_TOL * wb
                and l_lo - _DEDUP_TOL * wb <= l_root <= l_hi + _DEDUP_TOL * wb):
            continue
        duplicate = any(
            abs(d_root - p.delta_opt) < _DEDUP_TOL * wb
            and abs(l_root - p.lambda_opt) < _DEDUP_TOL * wb
            for p in roots
        )
        if not duplicate:
            roots.append(OptimalPair(d_root, l_root, res, wb))
    roots.sort(key=lambda p: p.delta_opt)
    return roots


def _coefficient_matrix(params: SystemParams) -> np.ndarray:
    """Full 6x6 matrix M of i dC/dt = M C, order (c00, c10, c01, c11, c02, c20)."""
    d_a = params.delta - 0.5j * params.gamma
    d_m = params.delta - 0.5j * params.gamma
    drive = params.E
    J = params.J
    pair_up = 1j * _SQRT2 * params.Lambda * np.exp(1j * params.beta)
    M = np.zeros((6, 6), dtype=complex)
    M[0, 2] = drive
    M[0, 4] = -1j * _SQRT2 * params.Lambda * np.exp(-1j * params.beta)
    M[1, 1] = d_m + params.K
    M[1, 2] = J
    M[1, 3] = drive
    M[2, 0] = drive
    M[2, 1] = J
    M[2, 2] = d_a + params.delta_F
    M[2, 4] = _SQRT2 * drive
    M[3, 1] = drive
    M[3, 3] = d_a + params.delta_F + d_m + params.K
    M[3, 4] = _SQRT2 * J
    M[3, 5] = _SQRT2 * J
    M[4, 0] = pair_up
    M[4, 2] = _SQRT2 * drive
    M[4, 3] = _SQRT2 * J
    M[4, 4] = 2.0 * (d_a + params.delta_F)
    M[5, 3] = _SQRT2 * J
    M[5, 5] = 2.0 * (d_m + 2.0 * params.K)
    return M


def evolve_amplitudes(params: SystemParams, t_final: float,
                      dt: float) -> tuple[np.ndarray, list[AmplitudeVector]]:
    """Integrate the full six-amplitude system from the vacuum state.

    Classic fixed-step fourth-order Runge-Kutta on dC/dt = -i M C with
    C(0) = (1, 0, 0, 0, 0, 0).  Returns the sample times and the state at
    each step, including t = 0.

    Because the generator is non-Hermitian the norm (and c00 itself) decays
    slowly; states converge to ``steady_amplitudes`` in the c00 = 1 gauge,
    i.e. after dividing each state by its c00.
    """
    if dt <= 0 or t_final <= 0:
        raise ValueError("dt and t_final must be positive")
    M = _coefficient_matrix(params)
    scale = np.max(np.abs(M))
    if scale > 0 and dt > 0.1 / scale:
        warnings.warn(
            f"step dt={dt:.3e} s exceeds 0.1/|M| = {0.1 / scale:.3e} s; "
            "the integration may be inaccurate", stacklevel=2)
    generator = -1j * M
    n_steps = int(round(t_final / dt))
    times = np.arange(n_steps + 1) * dt
    state = np.array([1, 0, 0, 0, 0, 0], dtype=complex)
    states = [AmplitudeVector.from_array(state)]
    for _ in range(n_steps):
        k1 = generator @ state
        k2 = generator @ (state + 0.5 * dt * k1)
        k3 = generator @ (state + 0.5 * dt * k2)
        k4 = generator @ (state + dt * k3)
        state = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        states.append(AmplitudeVector.from_array(state))
    return times, states

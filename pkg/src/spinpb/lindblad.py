"""Open-system numerics: Liouvillian, steady state, correlations, dynamics.

The master equation evolves the density matrix on the truncated composite
space under the Hermitian reduced Hamiltonian plus Lindblad dissipators:
zero-temperature photon decay, thermal magnon decay/excitation, and
optional cavity pure dephasing,

    d rho/dt = -i [H, rho] + (gamma/2) L_a(rho)
               + (gamma/2)(m_th + 1) L_m(rho) + (gamma/2) m_th L_m+(rho)
               + (gamma_p/2) [2 n_a rho n_a - n_a^2 rho - rho n_a^2]

with L_c(rho) = 2 c rho c+ - {c+c, rho}, so a mode's total energy decay
rate is gamma.  Superoperators act on column-stacked density matrices.

Two-time correlations use the regression property: the conditional operator
a rho_ss a+ is propagated by the same generator as rho itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    LiouvillianSizeError,
    NonUniqueSteadyStateError,
    SolverError,
    StiffnessError,
    UndefinedCorrelationError,
)
from .model import SystemParams, build_hamiltonian
from .operators import HilbertConfig, embed_ops

_MAX_SUPER_DIM = 10_000       # refuse Liouvillians larger than this (dim^2)
_HERMITICITY_TOL = 1e-10
_TRACE_TOL = 1e-10
_EIGENVALUE_FLOOR = -1e-8
_STEADY_RESIDUAL_TOL = 1e-10  # relative to the Liouvillian norm
_EVOLVE_RTOL = 1e-9
_EVOLVE_ATOL = 1e-12
_TRACE_DRIFT_TOL = 1e-8
_POPULATION_FLOOR = 1e-300


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Column-stack a matrix into a vector."""
    return np.asarray(rho).reshape(-1, order="F")


def unvectorize(vec: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of ``vectorize``."""
    return np.asarray(vec).reshape((dim, dim), order="F")


@dataclass(frozen=True)
class DensityMatrix:
    """Trace-one Hermitian PSD matrix on the composite magnon-photon space."""

    data: np.ndarray

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def validate(self) -> None:
        """Raise if Hermiticity, unit trace, or numerical PSD is violated."""
        herm_dev = np.max(np.abs(self.data - self.data.conj().T))
        if herm_dev > _HERMITICITY_TOL:
            raise SolverError(f"density matrix not Hermitian: dev {herm_dev:.2e}")
        trace_dev = abs(np.trace(self.data) - 1.0)
        if trace_dev > _TRACE_TOL:
            raise SolverError(f"density matrix trace off by {trace_dev:.2e}")
        min_eig = float(np.min(np.linalg.eigvalsh(self.data)))
        if min_eig < _EIGENVALUE_FLOOR:
            raise SolverError(f"density matrix not PSD: min eigenvalue {min_eig:.2e}")


@dataclass(frozen=True)
class Liouvillian:
    """Dense generator acting on column-stacked density matrices."""

    matrix: np.ndarray
    cfg: HilbertConfig

    @property
    def dim(self) -> int:
        return self.cfg.dim


def _spre(op: np.ndarray) -> np.ndarray:
    return np.kron(np.eye(op.shape[0]), op)


def _spost(op: np.ndarray) -> np.ndarray:
    return np.kron(op.T, np.eye(op.shape[0]))


def _dissipator(op: np.ndarray) -> np.ndarray:
    """Superoperator of 2 c rho c+ - {c+c, rho}."""
    cdc = op.conj().T @ op
    return 2.0 * np.kron(op.conj(), op) - _spre(cdc) - _spost(cdc)


def build_liouvillian(params: SystemParams, cfg: HilbertConfig) -> Liouvillian:
    """Assemble the dense master-equation generator.

    Uses the Hermitian reduced Hamiltonian; all dissipation enters through
    the Lindblad terms.  Refuses superoperator dimensions above 10^4.
    """
    if cfg.dim**2 > _MAX_SUPER_DIM:
        raise LiouvillianSizeError(
            f"superoperator dimension {cfg.dim**2} exceeds guard {_MAX_SUPER_DIM}")
    H = build_hamiltonian(params, cfg, hermitian=True)
    ops = embed_ops(cfg)
    L = -1j * (_spre(H) - _spost(H))
    L += 0.5 * params.gamma * _dissipator(ops.a)
    L += 0.5 * params.gamma * (params.m_th + 1.0) * _dissipator(ops.m)
    if params.m_th > 0:
        L += 0.5 * params.gamma * params.m_th * _dissipator(ops.m_dag)
    if params.gamma_p > 0:
        L += 0.5 * params.gamma_p * _dissipator(ops.n_a)
    return Liouvillian(matrix=L, cfg=cfg)


def steady_state(liouvillian: Liouvillian) -> DensityMatrix:
    """Solve L rho = 0 with tr(rho) = 1 by trace-row replacement.

    The first row of L is replaced by the vectorized trace functional and
    the resulting dense system solved by LU.  The result is Hermitized and
    checked against the residual bound |L vec(rho)|_inf < 1e-10 |L|_inf.
    """
    L = liouvillian.matrix
    dim = liouvillian.dim
    system = L.copy()
    system[0, :] = 0.0
    system[0, ::dim + 1] = 1.0    # trace functional on column-stacked input
    rhs = np.zeros(L.shape[0], dtype=complex)
    rhs[0] = 1.0
    try:
        vec = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as exc:
        raise NonUniqueSteadyStateError(
            "steady state is not unique (trace-constrained system singular)"
        ) from exc
    rho = unvectorize(vec, dim)
    rho = 0.5 * (rho + rho.conj().T)
    residual = np.max(np.abs(L @ vectorize(rho)))
    norm = np.max(np.abs(L))
    if residual > _STEADY_RESIDUAL_TOL * norm:
        raise NonUniqueSteadyStateError(
            f"steady-state residual {residual:.2e} exceeds {_STEADY_RESIDUAL_TOL:.0e}"
            f" x |L| = {_STEADY_RESIDUAL_TOL * norm:.2e}")
    return DensityMatrix(rho)


def _photon_moments(rho: np.ndarray, cfg: HilbertConfig) -> tuple[float, float]:
    ops = embed_ops(cfg)
    n = float(np.real(np.trace(ops.n_a @ rho)))
    nn = float(np.real(np.trace(ops.a_dag @ ops.a_dag @ ops.a @ ops.a @ rho)))
    return n, nn


def g2_zero(rho: DensityMatrix, cfg: HilbertConfig) -> float:
    """Equal-time correlation Tr[a+a+aa rho] / Tr[a+a rho]^2."""
    n, nn = _photon_moments(rho.data, cfg)
    if n <= _POPULATION_FLOOR:
        raise UndefinedCorrelationError("photon population is zero")
    return nn / n**2


def mandel_q(rho: DensityMatrix, cfg: HilbertConfig) -> float:
    """Mandel parameter (Tr[rho a+^2 a^2] - Tr[rho a+a]^2) / Tr[rho a+a]."""
    n, nn = _photon_moments(rho.data, cfg)
    if n <= _POPULATION_FLOOR:
        raise UndefinedCorrelationError("photon population is zero")
    return (nn - n**2) / n


def evolve(liouvillian: Liouvillian, rho0: DensityMatrix,
           t_final: float) -> DensityMatrix:
    """Propagate rho0 for t_final seconds with adaptive Runge-Kutta.

    Local tolerances rtol=1e-9, atol=1e-12; the result is re-Hermitized and
    the trace drift over the run must stay below 1e-8.
    """
    if t_final < 0:
        raise ValueError("t_final must be non-negative")
    if t_final == 0:
        return rho0
    y0 = vectorize(rho0.data)
    sol = solve_ivp(lambda _t, y: liouvillian.matrix @ y, (0.0, t_final), y0,
                    method="RK45", rtol=_EVOLVE_RTOL, atol=_EVOLVE_ATOL)
    if not sol.success:
        raise StiffnessError(
            f"integration failed ({sol.message}); reduce t_final or use steady_state")
    rho = unvectorize(sol.y[:, -1], liouvillian.dim)
    rho = 0.5 * (rho + rho.conj().T)
    drift = abs(np.trace(rho).real - np.trace(rho0.data).real)
    if drift > _TRACE_DRIFT_TOL:
        raise SolverError(f"trace drifted by {drift:.2e} during evolution")
    return DensityMatrix(rho)


def g2_tau(params: SystemParams, cfg: HilbertConfig,
           tau_grid) -> list[tuple[float, float]]:
    """Delayed coincidence g2(tau) on a grid of delays (seconds).

    Computes the steady state, forms the conditional operator a rho_ss a+,
    propagates it with the master-equation generator, and normalizes by the
    squared steady photon number.  The grid is sorted ascending; delays must
    be non-negative.
    """
    taus = np.asarray(sorted(float(t) for t in tau_grid))
    if taus.size == 0:
        return []
    if taus[0] < 0:
        raise ValueError("delays must be non-negative")
    liouvillian = build_liouvillian(params, cfg)
    rho_ss = steady_state(liouvillian)
    ops = embed_ops(cfg)
    n_ss = float(np.real(np.trace(ops.n_a @ rho_ss.data)))
    if n_ss <= _POPULATION_FLOOR:
        raise UndefinedCorrelationError("photon population is zero")
    sigma = ops.a @ rho_ss.data @ ops.a_dag

    def correlate(mat: np.ndarray) -> float:
        return float(np.real(np.trace(ops.n_a @ mat))) / n_ss**2

    results: list[tuple[float, float]] = []
    positive = taus[taus > 0]
    for _ in range(int(np.sum(taus == 0))):
        results.append((0.0, correlate(sigma)))
    if positive.size:
        sol = solve_ivp(lambda _t, y: liouvillian.matrix @ y,
                        (0.0, float(positive[-1])), vectorize(sigma),
                        t_eval=positive, method="RK45",
                        rtol=_EVOLVE_RTOL, atol=_EVOLVE_ATOL)
        if not sol.success:
            raise StiffnessError(f"correlation propagation failed ({sol.message})")
        for k, t in enumerate(positive):
            mat = unvectorize(sol.y[:, k], liouvillian.dim)
            results.append((float(t), correlate(mat)))
    return results

"""Brute-force Floquet oracle: truncated Sambe-space diagonalization and
direct time propagation, independent of the analytic treatment."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .dynamics import TimeSeries, thermal_weights
from .errors import DomainError, NumericalError, StepSizeError
from .model import SystemParams, Truncation
from .vanvleck import FloquetState, QuasienergyLevel

_SQRT3 = math.sqrt(3.0)
# 4th-order commutator-free Magnus coefficients (Gauss-Legendre nodes)
_CF4_NODES = (0.5 - _SQRT3 / 6.0, 0.5 + _SQRT3 / 6.0)
_CF4_W1 = (3.0 - 2.0 * _SQRT3) / 12.0
_CF4_W2 = (3.0 + 2.0 * _SQRT3) / 12.0


@dataclass(frozen=True)
class SambeMatrix:
    """Floquet Hamiltonian on the truncated extended (Sambe) space.

    Basis ordering is lexicographic (spin, K, l) with spin 0 = up, 1 = down
    and the Fourier index stored as l + l_max; entries are real symmetric.
    """

    dimension: int
    entries: np.ndarray
    k_max: int
    l_max: int

    def basis_index(self, spin: int, K: int, l: int) -> int:
        n_k, n_l = self.k_max + 1, 2 * self.l_max + 1
        return spin * n_k * n_l + K * n_l + (l + self.l_max)


@dataclass(frozen=True)
class EvolutionResult:
    """Propagation record: sample times, state norms and spin-down survival."""

    times: np.ndarray
    state_norms: np.ndarray
    survival: np.ndarray


def build_sambe_matrix(
    params: SystemParams, trunc: Truncation, dim_limit: int = 20000
) -> SambeMatrix:
    """Assemble the real-symmetric Floquet Hamiltonian H(t) - i d/dt.

    Diagonal -+eps/2 + K*Omega - l*omega_ex; drive -A/4 (spin-up) and +A/4
    (spin-down) between l and l+-1; tunneling -Delta/2 between the spins;
    coupling +-g sqrt(K+1) between K and K+1, sign from sigma_z.
    """
    n_k = trunc.k_max + 1
    n_l = 2 * trunc.l_max + 1
    dim = 2 * n_k * n_l
    if dim > dim_limit:
        raise NumericalError(f"Sambe dimension {dim} exceeds limit {dim_limit}")

    sz = np.diag([1.0, -1.0])
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    id2 = np.eye(2)
    id_k = np.eye(n_k)
    id_l = np.eye(n_l)
    number = np.diag(np.arange(n_k, dtype=float))
    ladder = np.zeros((n_k, n_k))
    for K in range(n_k - 1):
        ladder[K, K + 1] = ladder[K + 1, K] = math.sqrt(K + 1.0)
    l_diag = np.diag(-np.arange(-trunc.l_max, trunc.l_max + 1, dtype=float) * params.omega_ex)
    l_shift = np.zeros((n_l, n_l))
    for i in range(n_l - 1):
        l_shift[i, i + 1] = l_shift[i + 1, i] = 1.0

    H = (
        -0.5 * params.epsilon * np.kron(sz, np.kron(id_k, id_l))
        - 0.5 * params.delta * np.kron(sx, np.kron(id_k, id_l))
        + params.g * np.kron(sz, np.kron(ladder, id_l))
        + params.Omega * np.kron(id2, np.kron(number, id_l))
        + np.kron(id2, np.kron(id_k, l_diag))
        - 0.25 * params.A * np.kron(sz, np.kron(id_k, l_shift))
    )
    return SambeMatrix(dimension=dim, entries=H, k_max=trunc.k_max, l_max=trunc.l_max)


def sambe_eigensystem(
    params: SystemParams, trunc: Truncation, dim_limit: int = 20000
) -> tuple[SambeMatrix, np.ndarray, np.ndarray]:
    """(matrix, eigenvalues, eigenvectors) of the truncated Floquet Hamiltonian."""
    matrix = build_sambe_matrix(params, trunc, dim_limit)
    try:
        vals, vecs = scipy.linalg.eigh(matrix.entries)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    return matrix, vals, vecs


def boundary_weights(vecs: np.ndarray, k_max: int, l_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-eigenvector weight on the outermost l and K slices of the basis."""
    n_k, n_l = k_max + 1, 2 * l_max + 1
    psi = vecs.reshape(2, n_k, n_l, -1)
    w_l = np.sum(psi[:, :, 0, :] ** 2, axis=(0, 1)) + np.sum(psi[:, :, -1, :] ** 2, axis=(0, 1))
    w_k = np.sum(psi[:, -1, :, :] ** 2, axis=(0, 1))
    return w_l, w_k


def fold_to_zone(values: np.ndarray, omega_ex: float, zone_center: float = 0.0) -> np.ndarray:
    """Map quasienergies into [zone_center - omega_ex/2, zone_center + omega_ex/2)."""
    return zone_center + np.mod(values - zone_center + 0.5 * omega_ex, omega_ex) - 0.5 * omega_ex


def quasienergy_spectrum(
    params: SystemParams,
    trunc: Truncation,
    zone_center: float = 0.0,
    boundary_tol: float = 0.1,
) -> list[QuasienergyLevel]:
    """Folded quasienergies of converged states.

    States putting more than ``boundary_tol`` of their weight on the outermost
    Fock or Fourier slice are truncation artifacts and are dropped.
    """
    _, vals, vecs = sambe_eigensystem(params, trunc)
    w_l, w_k = boundary_weights(vecs, trunc.k_max, trunc.l_max)
    keep = (w_l <= boundary_tol) & (w_k <= boundary_tol)
    folded = fold_to_zone(vals[keep], params.omega_ex, zone_center)
    return [QuasienergyLevel(float(v), "numeric", None) for v in np.sort(folded)]


def match_mode(
    state: FloquetState, vals: np.ndarray, vecs: np.ndarray
) -> tuple[float, float, int]:
    """Oracle eigenpair with maximal overlap against an analytic mode.

    Returns (eigenvalue, |overlap|, column index); the mode must be built
    with the same truncation as the eigensystem.
    """
    flat = state.sambe_vector()
    if flat.size != vecs.shape[0]:
        raise DomainError("mode and eigensystem use different truncations")
    ov = vecs.T @ flat
    i = int(np.argmax(np.abs(ov)))
    return float(vals[i]), float(abs(ov[i])), i


def _bare_hamiltonians(params: SystemParams, trunc: Truncation) -> tuple[np.ndarray, np.ndarray]:
    """Static part and drive operator of H(t) = H_s + A cos(omega_ex t) H_d
    on the bare (spin, Fock) space."""
    n_k = trunc.k_max + 1
    sz = np.diag([1.0, -1.0])
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    id_k = np.eye(n_k)
    number = np.diag(np.arange(n_k, dtype=float))
    ladder = np.zeros((n_k, n_k))
    for K in range(n_k - 1):
        ladder[K, K + 1] = ladder[K + 1, K] = math.sqrt(K + 1.0)
    h_static = (
        -0.5 * params.epsilon * np.kron(sz, id_k)
        - 0.5 * params.delta * np.kron(sx, id_k)
        + params.g * np.kron(sz, ladder)
        + params.Omega * np.kron(np.eye(2), number)
    )
    h_drive = -0.5 * np.kron(sz, id_k)
    return h_static, h_drive


def _expi(h: np.ndarray) -> np.ndarray:
    """exp(-i h) of a real-symmetric matrix (exactly unitary)."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w)) @ v.conj().T


def _cf4_step(h_static, h_drive, A, omega_ex, ts, dt):
    """Unitary for one 4th-order commutator-free Magnus substep from ts."""
    ca = A * math.cos(omega_ex * (ts + _CF4_NODES[0] * dt))
    cb = A * math.cos(omega_ex * (ts + _CF4_NODES[1] * dt))
    h1 = dt * (0.5 * h_static + (_CF4_W2 * ca + _CF4_W1 * cb) * h_drive)
    h2 = dt * (0.5 * h_static + (_CF4_W1 * ca + _CF4_W2 * cb) * h_drive)
    return _expi(h2) @ _expi(h1)


def evolve(
    params: SystemParams,
    initial: np.ndarray,
    t_grid: np.ndarray,
    trunc: Truncation,
    steps_per_period: int = 64,
) -> EvolutionResult:
    """Propagate the time-dependent Schroedinger equation in the bare basis.

    Fourth-order commutator-free Magnus stepping with exactly unitary
    substeps.  The drive period is split into ``steps_per_period`` substeps
    whose unitaries are precomputed once and reused through the periodicity
    of H(t); each sample needs only one extra partial substep.  Norm drift
    beyond 1e-8 raises StepSizeError (impossible with unitary substeps, so
    it flags a genuine numerical breakdown).
    """
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 2 or t[0] != 0.0 or np.any(np.diff(t) <= 0.0):
        raise DomainError("t_grid must be 1-d, start at 0 and increase strictly")
    psi0 = np.asarray(initial, dtype=complex).reshape(-1)
    n_k = trunc.k_max + 1
    if psi0.size != 2 * n_k:
        raise DomainError(f"initial state must have 2 * (k_max + 1) = {2 * n_k} amplitudes")
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-8:
        raise DomainError("initial state must be normalized")
    if steps_per_period < 1:
        raise DomainError("steps_per_period must be >= 1")

    h_static, h_drive = _bare_hamiltonians(params, trunc)
    down = slice(n_k, 2 * n_k)
    period = 2.0 * math.pi / params.omega_ex
    dt_sub = period / steps_per_period

    # cumulative propagators from 0 to j*dt_sub within one period
    dim = psi0.size
    cums = np.empty((steps_per_period + 1, dim, dim), dtype=complex)
    cums[0] = np.eye(dim)
    for j in range(steps_per_period):
        step = _cf4_step(h_static, h_drive, params.A, params.omega_ex, j * dt_sub, dt_sub)
        cums[j + 1] = step @ cums[j]
    u_period = cums[steps_per_period]

    norms = np.empty(t.size)
    survival = np.empty(t.size)
    strobe = psi0.copy()  # state at q full periods
    q_cur = 0
    for i, ti in enumerate(t):
        q = int(math.floor(ti / period + 1e-12))
        while q_cur < q:
            strobe = u_period @ strobe
            q_cur += 1
        r = ti - q * period
        j = min(int(math.floor(r / dt_sub + 1e-12)), steps_per_period)
        frac = r - j * dt_sub
        psi = cums[j] @ strobe
        if frac > 1e-12 * period:
            psi = _cf4_step(h_static, h_drive, params.A, params.omega_ex, j * dt_sub, frac) @ psi
        norms[i] = np.linalg.norm(psi)
        if abs(norms[i] - 1.0) > 1e-8:
            raise StepSizeError(f"norm drift {norms[i] - 1.0:.3e} at t = {ti:.6g}")
        survival[i] = float(np.sum(np.abs(psi[down]) ** 2))

    return EvolutionResult(times=t, state_norms=norms, survival=survival)


def survival_numeric(
    params: SystemParams,
    theta: float,
    t_grid: np.ndarray,
    trunc: Truncation,
    steps_per_period: int = 64,
) -> TimeSeries:
    """Thermal-average survival from direct propagation, one run per Fock state.

    Fock states are included until their cumulative Boltzmann weight reaches
    1 - 1e-10 and the retained weights are renormalized, so P(0) = 1 exactly.
    """
    if theta <= 0.0:
        raise DomainError(f"theta must be > 0, got {theta}")
    weights = thermal_weights(theta, trunc.k_max)
    cum = np.cumsum(weights)
    n_keep = int(np.searchsorted(cum, 1.0 - 1e-10) + 1)
    kept = weights[:n_keep] / weights[:n_keep].sum()
    kept[-1] = 1.0 - kept[:-1].sum()

    n_k = trunc.k_max + 1
    total = np.zeros(len(t_grid))
    for K, w in enumerate(kept):
        initial = np.zeros(2 * n_k)
        initial[n_k + K] = 1.0
        res = evolve(params, initial, t_grid, trunc, steps_per_period)
        total += w * res.survival
    return TimeSeries(times=np.asarray(t_grid, dtype=float), values=total)

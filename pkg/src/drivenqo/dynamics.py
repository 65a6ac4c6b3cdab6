"""Analytic qubit dynamics: Floquet-mode expansion of the initial state,
phase evolution of the coherences, survival probability, Fourier analysis
and peak prediction."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError, NumericalError, TruncationError
from .model import ResonanceIndex, SystemParams, Truncation, resonance_detuning
from .specialfns import displacement_matrix
from .vanvleck import (
    BRANCH_MINUS,
    BRANCH_PLUS,
    BRANCH_UNCOUPLED_DOWN,
    SHIFT_SIGN_DEFAULT,
    dressed_gap,
    floquet_mode,
    quasienergies,
    uncoupled_levels,
)

_UNIFORM_RTOL = 1e-9


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled survival probability."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)
        if t.ndim != 1 or t.size < 2 or v.shape != t.shape:
            raise DomainError("times and values must be equal-length 1-d arrays (>= 2 samples)")
        dt = np.diff(t)
        if dt[0] <= 0 or np.any(np.abs(dt - dt[0]) > _UNIFORM_RTOL * abs(dt[0])):
            raise DomainError("time grid must be uniform and increasing")
        if np.min(v) < -1e-6 or np.max(v) > 1.0 + 1e-6:
            raise DomainError("probabilities outside [0, 1] beyond tolerance")

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])


@dataclass(frozen=True)
class Spectrum:
    """Amplitude spectrum of a time series.

    freqs are non-negative ascending angular frequencies; resolution is the
    bin width 2*pi / (n_samples * dt).
    """

    freqs: np.ndarray
    amps: np.ndarray
    window: str
    resolution: float

    def __post_init__(self):
        f = np.asarray(self.freqs, dtype=float)
        a = np.asarray(self.amps, dtype=float)
        object.__setattr__(self, "freqs", f)
        object.__setattr__(self, "amps", a)
        if f.ndim != 1 or a.shape != f.shape:
            raise DomainError("freqs and amps must be equal-length 1-d arrays")
        if np.any(f < 0) or np.any(np.diff(f) <= 0):
            raise DomainError("freqs must be non-negative and ascending")
        if np.any(a < 0):
            raise DomainError("amplitudes must be >= 0")


@dataclass(frozen=True)
class PeakPrediction:
    """A predicted oscillation frequency of the survival probability.

    kind "gap" lines carry the initial-state weight of their doublet; the
    "oscillator" differences (K - K')*Omega and the "sum" combinations are
    listed as candidates with zero weight, since they do not contribute to
    the spin-down survival within a single manifold (they do show up in the
    full numerics through inter-manifold couplings).
    """

    omega: float
    label: str
    weight: float
    kind: str
    K_set: tuple[int, ...] = field(default=())


def thermal_weights(theta: float, k_max: int) -> np.ndarray:
    """Boltzmann weights p_K = e^{-K theta} / Z over K = 0..k_max; sums to 1."""
    if not (math.isfinite(theta) and theta > 0.0):
        raise DomainError(f"theta must be > 0, got {theta}")
    if k_max < 0:
        raise DomainError(f"k_max must be >= 0, got {k_max}")
    w = np.exp(-theta * np.arange(k_max + 1))
    w /= w.sum()
    w[0] = 1.0 - w[1:].sum()
    return w


def infer_manifold(params: SystemParams, m_max: int = 12, L_max: int = 12,
                   tol: float | None = None) -> tuple[int, int]:
    """(m, L) of the resonance nearest to params.epsilon.

    Raises ConfigError when the bias is further than ``tol`` (default
    1e-9 * omega_ex) from every candidate crossing.
    """
    if tol is None:
        tol = 1e-9 * params.omega_ex
    best = None
    for m in range(-m_max, m_max + 1):
        for L in range(0, L_max + 1):
            d = abs(resonance_detuning(params, m, L))
            if best is None or d < best[0]:
                best = (d, m, L)
    if best[0] > tol:
        raise ConfigError(
            f"bias {params.epsilon} is not at an (m, L) resonance (nearest detuning {best[0]:.3e})"
        )
    return best[1], best[2]


def _manifold_modes(params, trunc, manifold, second_order, shift_sign):
    """Floquet modes and quasienergies of one (m, L) manifold at n = 0.

    Doublets are collected from K = 0 upward until one fails the mode norm
    check: near the Fock cutoff the displaced states spill past the basis, so
    the top of the ladder is never representable.  Completeness for a given
    initial state is enforced separately by the caller's leakage check.
    """
    m, L = manifold
    modes, energies = [], []
    for K in range(trunc.k_max - L + 1):
        idx = ResonanceIndex(m, L, 0, K)
        try:
            mode_minus = floquet_mode(idx, BRANCH_MINUS, params, trunc, 0.0, second_order, shift_sign)
            mode_plus = floquet_mode(idx, BRANCH_PLUS, params, trunc, 0.0, second_order, shift_sign)
        except TruncationError:
            if K == 0:
                raise
            break
        q_minus, q_plus = quasienergies(idx, params, trunc, second_order, shift_sign)
        modes.append(mode_minus)
        energies.append(q_minus.value)
        modes.append(mode_plus)
        energies.append(q_plus.value)
    if L > 0:
        base = ResonanceIndex(m, L, 0, 0)
        for lev in uncoupled_levels(base, params, trunc, second_order, shift_sign):
            modes.append(
                floquet_mode(lev.index, BRANCH_UNCOUPLED_DOWN, params, trunc, 0.0,
                             second_order, shift_sign)
            )
            energies.append(lev.value)
    return modes, np.array(energies)


def survival_analytic(
    params: SystemParams,
    theta: float,
    t_grid: np.ndarray,
    trunc: Truncation,
    manifold: tuple[int, int],
    second_order: bool = False,
    shift_sign: str = SHIFT_SIGN_DEFAULT,
    leak_tol: float = 0.05,
    detuning_tol: float = 0.25,
) -> TimeSeries:
    """Survival probability of the spin-down qubit, thermal oscillator start.

    The initial density matrix |down><down| (x) thermal is expanded in the
    Floquet eigenbasis of the chosen (m, L) manifold at t = 0, the coherences
    pick up phase factors exp(-i (E_a - E_b) t), and the result is projected
    back on spin down, tracing the oscillator.  The Brillouin index n only
    contributes a global phase and is fixed to 0.  Values are not clamped:
    excursions beyond [0, 1] above 1e-6 raise NumericalError.
    """
    m, L = manifold
    if L < 0:
        raise DomainError("manifold L must be >= 0")
    d = resonance_detuning(params, m, L)
    if abs(d) > detuning_tol * params.omega_ex:
        raise ConfigError(
            f"manifold (m={m}, L={L}) detuning {d:.4g} exceeds "
            f"{detuning_tol} * omega_ex; wrong manifold for this bias"
        )
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 2 or t[0] != 0.0:
        raise DomainError("t_grid must be a 1-d array starting at 0")

    weights = thermal_weights(theta, trunc.k_max)
    modes, energies = _manifold_modes(params, trunc, manifold, second_order, shift_sign)
    # real bare amplitudes at t = 0 (the Fourier factors sum to 1 there)
    bare = np.stack([md.bare_vector(0.0).real for md in modes])
    down = bare[:, 1, :]  # (n_modes, k_max + 1)

    phases = np.exp(-1j * np.outer(t, energies))  # (n_t, n_modes)
    prob = np.zeros(t.size)
    leak_total = 0.0
    for K_i in range(trunc.k_max + 1):
        p_i = float(weights[K_i])
        if p_i < 1e-16:
            continue
        c = down[:, K_i]  # overlap of each mode with |down, K_i>
        leak_total += p_i * max(1.0 - float(c @ c), 0.0)
        psi_down = (phases * c) @ down  # (n_t, k_max + 1)
        prob += p_i * np.sum(np.abs(psi_down) ** 2, axis=1)

    if leak_total > leak_tol:
        raise TruncationError(
            "k_max", f"initial state leaks {leak_total:.3%} outside the kept manifold"
        )
    if prob.min() < -1e-6 or prob.max() > 1.0 + 1e-6:
        raise NumericalError(
            f"survival outside [0, 1]: min {prob.min():.3e}, max {prob.max():.3e}"
        )
    return TimeSeries(times=t, values=prob)


def fourier_spectrum(series: TimeSeries, window: str = "rect") -> Spectrum:
    """Amplitude spectrum of the mean-subtracted series.

    A pure cosine of amplitude a shows up with peak height ~a (exactly a for
    coherent sampling).  window "rect" (default) or "hann".
    """
    if window not in ("rect", "hann"):
        raise DomainError(f"unknown window {window!r}")
    vals = series.values - series.values.mean()
    if window == "hann":
        vals = vals * np.hanning(vals.size)
    n = vals.size
    amps = 2.0 * np.abs(np.fft.rfft(vals)) / n
    freqs = 2.0 * math.pi * np.fft.rfftfreq(n, series.dt)
    return Spectrum(freqs=freqs, amps=amps, window=window, resolution=2.0 * math.pi / (n * series.dt))


def spectral_peaks(spectrum: Spectrum, rel_threshold: float = 0.02) -> list[tuple[float, float]]:
    """(frequency, amplitude) of local spectral maxima above a relative height.

    A peak is a bin strictly higher than both neighbors with amplitude at
    least rel_threshold times the strongest non-DC bin; the DC bin is skipped.
    """
    a = spectrum.amps
    if a.size < 3:
        return []
    floor = rel_threshold * float(a[1:].max())
    out = []
    for i in range(1, a.size - 1):
        if a[i] >= floor and a[i] > a[i - 1] and a[i] > a[i + 1]:
            out.append((float(spectrum.freqs[i]), float(a[i])))
    return out


def predict_peaks(
    params: SystemParams,
    trunc: Truncation,
    theta: float,
    k_max: int | None = None,
    manifold: tuple[int, int] | None = None,
    threshold: float = 0.02,
    second_order: bool = False,
    shift_sign: str = SHIFT_SIGN_DEFAULT,
) -> list[PeakPrediction]:
    """Expected peak frequencies of the survival spectrum at a resonance.

    Doublet gaps whose initial-state weight (thermal occupation pushed through
    the displaced-Fock expansion) clears ``threshold`` are returned as "gap"
    lines; equal gaps are merged with their weights summed, zero gaps are
    dropped.  Oscillator differences (K - K')*Omega between retained doublets
    and gap+difference sums are appended as zero-weight candidates.
    """
    if k_max is None:
        k_max = trunc.k_max
    if manifold is None:
        manifold = infer_manifold(params)
    m, L = manifold
    n_doub = k_max - L + 1
    if n_doub < 1:
        raise ConfigError("k_max too small for this manifold")

    p = thermal_weights(theta, k_max)
    disp = displacement_matrix(k_max, params.g / params.Omega)
    q = np.array([p @ (disp[:, K + L] ** 2) for K in range(n_doub)])
    gaps = np.array(
        [
            dressed_gap(ResonanceIndex(m, L, 0, K), params, trunc, second_order, shift_sign)
            for K in range(n_doub)
        ]
    )

    # merge equal gaps (weight floor keeps irrelevant doublets out of labels)
    groups: list[list[int]] = []
    for K in range(n_doub):
        if q[K] < 1e-6:
            continue
        for grp in groups:
            ref = gaps[grp[0]]
            if abs(gaps[K] - ref) <= 1e-9 * max(ref, gaps[K]) + 1e-12 * params.Omega:
                grp.append(K)
                break
        else:
            groups.append([K])

    out = []
    kept_K: list[int] = []
    gap_floor = 1e-12 * params.Omega  # fp residue of exactly closed gaps
    for grp in groups:
        weight = float(q[grp].sum())
        freq = float(gaps[grp[0]])
        if weight < threshold or freq <= gap_floor:
            continue
        kept_K.extend(grp)
        label = "Omega^{" + ",".join(str(K) for K in grp) + "}"
        out.append(PeakPrediction(freq, label, weight, "gap", tuple(grp)))

    diffs = sorted({abs(a - b) for a in kept_K for b in kept_K if a != b})
    for dK in diffs:
        out.append(PeakPrediction(dK * params.Omega, f"{dK}*Omega", 0.0, "oscillator", ()))
    for entry in list(out):
        if entry.kind != "gap":
            continue
        for dK in diffs:
            f = entry.omega + dK * params.Omega
            out.append(PeakPrediction(f, f"{entry.label}+{dK}*Omega", 0.0, "sum", entry.K_set))
    out.sort(key=lambda e: (e.omega, e.kind, e.label))
    return out


def default_time_grid(
    params: SystemParams,
    trunc: Truncation,
    theta: float,
    manifold: tuple[int, int] | None = None,
    n_samples: int = 4096,
    periods: int = 50,
    threshold: float = 0.02,
) -> np.ndarray:
    """Uniform grid spanning ``periods`` of the slowest predicted gap line.

    Falls back to a fixed span 500/Omega when every gap vanishes (coherent
    destruction of tunneling).  The span is n_samples * dt exactly, so the
    predicted lines fall on integer FFT bins whenever they are commensurate.
    """
    if n_samples < 2:
        raise DomainError("n_samples must be >= 2")
    peaks = [
        e for e in predict_peaks(params, trunc, theta, manifold=manifold, threshold=threshold)
        if e.kind == "gap"
    ]
    if peaks:
        f_min = min(e.omega for e in peaks)
        span = periods * 2.0 * math.pi / f_min
    else:
        span = 500.0 / params.Omega
    return np.arange(n_samples) * (span / n_samples)

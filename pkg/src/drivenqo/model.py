"""Parameter and index types, unit conventions, and resonance bookkeeping.

Conventions: hbar = 1 and every parameter is an angular frequency in one
consistent, user-chosen unit.  The CLI normalizes to units of Omega or
omega_ex at its boundary; the library itself never rescales.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class SystemParams:
    """Physical parameters of the driven qubit-oscillator system.

    epsilon  static bias (any sign)
    delta    bare tunneling splitting (>= 0)
    g        qubit-oscillator coupling (>= 0)
    Omega    oscillator frequency (> 0)
    A        drive amplitude (>= 0)
    omega_ex drive frequency (> 0)
    """

    epsilon: float
    delta: float
    g: float
    Omega: float
    A: float
    omega_ex: float

    def __post_init__(self):
        for name in ("epsilon", "delta", "g", "Omega", "A", "omega_ex"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v}")
        if self.Omega <= 0.0:
            raise DomainError(f"Omega must be > 0, got {self.Omega}")
        if self.omega_ex <= 0.0:
            raise DomainError(f"omega_ex must be > 0, got {self.omega_ex}")
        if self.delta < 0.0:
            raise DomainError(f"delta must be >= 0, got {self.delta}")
        if self.g < 0.0:
            raise DomainError(f"g must be >= 0, got {self.g}")
        if self.A < 0.0:
            raise DomainError(f"A must be >= 0, got {self.A}")

    @property
    def alpha(self) -> float:
        """Squared scaled coupling (2g/Omega)^2."""
        return (2.0 * self.g / self.Omega) ** 2

    @property
    def drive_ratio(self) -> float:
        """Bessel-dressing argument A/omega_ex."""
        return self.A / self.omega_ex

    def replace(self, **kwargs) -> "SystemParams":
        fields = dict(
            epsilon=self.epsilon, delta=self.delta, g=self.g,
            Omega=self.Omega, A=self.A, omega_ex=self.omega_ex,
        )
        fields.update(kwargs)
        return SystemParams(**fields)


@dataclass(frozen=True)
class ResonanceIndex:
    """Integer labels (m, L, n, K) of a quasienergy doublet.

    m  drive-photon number of the crossing
    L  oscillator quantum difference (>= 0 in normalized form)
    n  Floquet Brillouin index
    K  oscillator quantum number of the spin-up member (>= 0)
    """

    m: int
    L: int
    n: int
    K: int

    def __post_init__(self):
        for name in ("m", "L", "n", "K"):
            v = getattr(self, name)
            if not isinstance(v, int):
                raise DomainError(f"{name} must be an integer, got {v!r}")
        if self.K < 0:
            raise DomainError(f"K must be >= 0, got {self.K}")
        if self.K + self.L < 0:
            raise DomainError(f"K + L must be >= 0, got {self.K + self.L}")


def normalize_resonance_index(index: ResonanceIndex) -> ResonanceIndex:
    """Return an equivalent index with L >= 0.

    An L < 0 doublet is the same pair of levels described with the spin
    labels mirrored (the bias changes sign under that relabeling); the map
    is idempotent.
    """
    if index.L >= 0:
        return index
    return ResonanceIndex(
        m=-index.m, L=-index.L, n=index.n + index.m, K=index.K + index.L
    )


@dataclass(frozen=True)
class Truncation:
    """Basis and summation cutoffs.

    k_max     Fock cutoff (states 0..k_max kept)
    l_max     Fourier cutoff (modes -l_max..l_max kept)
    p_max     photon-sum cutoff of the second-order shifts
    P_max     oscillator-sum cutoff of the second-order shifts
    denom_tol small-denominator guard, same frequency unit as the parameters
    """

    k_max: int = 20
    l_max: int = 40
    p_max: int = 30
    P_max: int = 30
    denom_tol: float = 1e-6

    def __post_init__(self):
        for name in ("k_max", "l_max", "p_max", "P_max"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise DomainError(f"{name} must be an integer >= 1, got {v!r}")
        if not (math.isfinite(self.denom_tol) and self.denom_tol > 0.0):
            raise DomainError(f"denom_tol must be > 0, got {self.denom_tol}")

    def replace(self, **kwargs) -> "Truncation":
        fields = dict(
            k_max=self.k_max, l_max=self.l_max, p_max=self.p_max,
            P_max=self.P_max, denom_tol=self.denom_tol,
        )
        fields.update(kwargs)
        return Truncation(**fields)


def resonance_detuning(params: SystemParams, m: int, L: int) -> float:
    """Distance epsilon - m*omega_ex + L*Omega from the (m, L) crossing."""
    return params.epsilon - m * params.omega_ex + L * params.Omega


def find_resonances(
    params: SystemParams,
    eps_range: tuple[float, float],
    m_range: tuple[int, int],
    L_max: int,
    window: float = 0.0,
) -> list[tuple[int, int, float]]:
    """All (m, L, eps*) with crossing bias eps* = m*omega_ex - L*Omega in range.

    ``window`` widens the accepted interval by that amount on both edges.
    Results are sorted by eps*, ties broken by (L, m) for determinism.
    """
    if window < 0.0:
        raise DomainError(f"window must be >= 0, got {window}")
    if L_max < 0:
        raise DomainError(f"L_max must be >= 0, got {L_max}")
    lo, hi = eps_range
    m_lo, m_hi = m_range
    out = []
    for m in range(int(m_lo), int(m_hi) + 1):
        for L in range(0, int(L_max) + 1):
            eps_star = m * params.omega_ex - L * params.Omega
            if lo - window <= eps_star <= hi + window:
                out.append((m, L, eps_star))
    out.sort(key=lambda t: (t[2], t[1], t[0]))
    return out


def commensurability_check(
    Omega: float, omega_ex: float, max_denominator: int
) -> tuple[int, int] | None:
    """Smallest (j, N) with |Omega/omega_ex - j/N| < 1e-9 and N <= max_denominator.

    Commensurable frequencies produce infinitely many degenerate Floquet
    states; only processes of order >= min(j, N) are affected, so high
    (j, N) are tolerable.  Returns None when no such fraction exists.
    """
    if Omega <= 0.0 or omega_ex <= 0.0:
        raise DomainError("both frequencies must be > 0")
    if max_denominator < 1:
        raise DomainError(f"max_denominator must be >= 1, got {max_denominator}")
    ratio = Omega / omega_ex
    for N in range(1, int(max_denominator) + 1):
        j = round(ratio * N)
        if j >= 1 and abs(ratio - j / N) < 1e-9:
            return (j, N)
    return None

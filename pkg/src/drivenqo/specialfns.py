"""Dressing functions for the driven qubit-oscillator problem.

Integer-order Bessel functions, generalized Laguerre polynomials, the
oscillator dressing factor, the drive dressing of the tunneling element,
and overlaps of displaced Fock states.  All routines are pure functions
and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# Documented order limit for bessel_j / bessel_j_array.
MAX_BESSEL_ORDER = 5000

_RESCALE = 1e250


@dataclass(frozen=True)
class DressingArgs:
    """Dimensionless arguments of the two tunneling dressings.

    alpha is the squared scaled coupling (2g/Omega)^2 entering the Laguerre
    dressing; drive_ratio is A/omega_ex entering the Bessel dressing.
    """

    alpha: float
    drive_ratio: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha >= 0.0):
            raise DomainError(f"alpha must be finite and >= 0, got {self.alpha}")
        if not (math.isfinite(self.drive_ratio) and self.drive_ratio >= 0.0):
            raise DomainError(f"drive_ratio must be finite and >= 0, got {self.drive_ratio}")

    @classmethod
    def from_params(cls, params) -> "DressingArgs":
        return cls(alpha=params.alpha, drive_ratio=params.drive_ratio)


def bessel_j_array(n_max: int, x: float) -> np.ndarray:
    """J_0(x) .. J_{n_max}(x) by downward (Miller) recurrence with normalization.

    Downward recurrence is stable for order > argument, which is the regime
    the Fourier expansions here live in (many orders at fixed argument).
    Absolute accuracy is close to machine precision for |x| <= 50.
    """
    if not math.isfinite(x):
        raise DomainError(f"bessel argument must be finite, got {x}")
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if n_max > MAX_BESSEL_ORDER:
        raise DomainError(f"order {n_max} exceeds supported limit {MAX_BESSEL_ORDER}")

    ax = abs(x)
    if ax < 1e-8:
        # Two-term power series per order; exact to well below 1e-30 here.
        out = np.zeros(n_max + 1)
        half = 0.5 * ax
        term = 1.0  # (x/2)^n / n!
        for n in range(n_max + 1):
            out[n] = term * (1.0 - half * half / (n + 1.0))
            term *= half / (n + 1.0)
            if term == 0.0:
                break
    else:
        m_start = int(max(n_max, math.ceil(ax))) + 64 + int(4.0 * math.sqrt(max(n_max, ax)))
        raw = np.zeros(m_start + 2)
        raw[m_start] = 1e-280
        for k in range(m_start, 0, -1):
            val = (2.0 * k / ax) * raw[k] - raw[k + 1]
            raw[k - 1] = val
            if abs(val) > _RESCALE:
                # keep the unnormalized sequence inside double range
                raw[k - 1 :] *= 1.0 / _RESCALE
        norm = raw[0] + 2.0 * raw[2 : m_start + 1 : 2].sum()
        out = raw[: n_max + 1] / norm

    if x < 0.0:
        out[1::2] *= -1.0
    return out


def bessel_j(order: int, x: float) -> float:
    """Integer-order Bessel function of the first kind J_order(x).

    Supports |order| <= MAX_BESSEL_ORDER; negative orders use the symmetry
    J_{-n}(x) = (-1)^n J_n(x) on the same recurrence output.
    """
    n = abs(int(order))
    val = float(bessel_j_array(n, x)[n])
    if order < 0 and n % 2 == 1:
        val = -val
    return val


def _laguerre_scaled(K: int, L: int, x: float) -> tuple[float, float]:
    """Generalized Laguerre L_K^{(L)}(x) as (mantissa, log_scale).

    The value is mantissa * exp(log_scale); the split keeps the three-term
    recurrence finite for large K + L.
    """
    if K == 0:
        return 1.0, 0.0
    prev = 1.0
    cur = 1.0 + L - x
    log_scale = 0.0
    for k in range(1, K):
        nxt = ((2.0 * k + L + 1.0 - x) * cur - (k + L) * prev) / (k + 1.0)
        prev, cur = cur, nxt
        if abs(cur) > _RESCALE or abs(prev) > _RESCALE:
            prev /= _RESCALE
            cur /= _RESCALE
            log_scale += math.log(_RESCALE)
    return cur, log_scale


def laguerre(K: int, L: int, x: float) -> float:
    """Generalized Laguerre polynomial L_K^{(L)}(x) via the three-term recurrence in K."""
    if K < 0 or L < 0:
        raise DomainError("Laguerre indices must be >= 0")
    if not math.isfinite(x):
        raise DomainError(f"Laguerre argument must be finite, got {x}")
    mant, log_scale = _laguerre_scaled(int(K), int(L), x)
    if mant == 0.0:
        return 0.0
    return float(mant * np.exp(log_scale))


def xi(K: int, L: int, alpha: float) -> float:
    """Oscillator dressing alpha^{L/2} sqrt(K!/(K+L)!) L_K^{(L)}(alpha) e^{-alpha/2}.

    Factorial ratios are taken in log space, so the result stays finite and
    accurate for K + L up to at least 500.
    """
    if K < 0 or L < 0:
        raise DomainError("xi indices must be >= 0")
    if not math.isfinite(alpha) or alpha < 0.0:
        raise DomainError(f"alpha must be finite and >= 0, got {alpha}")
    if alpha == 0.0:
        return 1.0 if L == 0 else 0.0
    mant, log_scale = _laguerre_scaled(int(K), int(L), alpha)
    if mant == 0.0:
        return 0.0
    log_mag = (
        0.5 * L * math.log(alpha)
        - 0.5 * alpha
        + 0.5 * (math.lgamma(K + 1) - math.lgamma(K + L + 1))
        + log_scale
        + math.log(abs(mant))
    )
    return math.copysign(math.exp(log_mag), mant)


def dressed_delta(m: int, delta: float, A: float, omega_ex: float) -> float:
    """Drive-dressed tunneling element Delta * J_m(A/omega_ex)."""
    if omega_ex <= 0.0:
        raise DomainError(f"omega_ex must be > 0, got {omega_ex}")
    if delta < 0.0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    if A < 0.0:
        raise DomainError(f"A must be >= 0, got {A}")
    return delta * bessel_j(m, A / omega_ex)


def displacement_overlap(K_row: int, K_col: int, lam: float) -> float:
    """Real overlap <K_row| exp{lam (B^dag - B)} |K_col> of displaced Fock states.

    The generator acts to the right, so the matrix over (K_row, K_col) is
    orthogonal.  Closed form with the factorial ratio in log space.
    """
    if K_row < 0 or K_col < 0:
        raise DomainError("Fock indices must be >= 0")
    if not math.isfinite(lam):
        raise DomainError(f"displacement must be finite, got {lam}")
    if lam == 0.0:
        return 1.0 if K_row == K_col else 0.0
    d = abs(K_row - K_col)
    kmin = min(K_row, K_col)
    mant, log_scale = _laguerre_scaled(kmin, d, lam * lam)
    if mant == 0.0:
        return 0.0
    log_mag = (
        0.5 * (math.lgamma(kmin + 1) - math.lgamma(kmin + d + 1))
        + d * math.log(abs(lam))
        - 0.5 * lam * lam
        + log_scale
        + math.log(abs(mant))
    )
    # raising entry gets lam^d, lowering entry (-lam)^d
    base = lam if K_row >= K_col else -lam
    sign = -1.0 if (base < 0.0 and d % 2 == 1) else 1.0
    return math.copysign(math.exp(log_mag), sign * mant)


def displacement_matrix(k_max: int, lam: float) -> np.ndarray:
    """Orthogonal matrix of displacement_overlap over Fock indices 0..k_max."""
    if k_max < 0:
        raise DomainError("k_max must be >= 0")
    out = np.empty((k_max + 1, k_max + 1))
    for i in range(k_max + 1):
        for j in range(k_max + 1):
            out[i, j] = displacement_overlap(i, j, lam)
    return out

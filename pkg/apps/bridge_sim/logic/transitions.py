"""
Closed-form moments of the α-Brownian bridge on the unit horizon.

The explicit solution X_t = ∫_0^t ((1−t)/(1−s))^α dW_s gives Gaussian
transitions X_t | X_s ~ N(decay·X_s, innovation_variance) with

    decay               = ((1−t)/(1−s))^α
    innovation_variance = (1−t)·(1 − ((1−t)/(1−s))^(2α−1)) / (2α−1)

which tends to (1−t)·ln((1−s)/(1−t)) as α → 1/2. All variance formulas are
written through `exprel(x) = (e^x − 1)/x` so that the removable singularity at
α = 1/2 costs no digits.
"""

import math

import numpy as np
from scipy.special import exprel

from apps.common.config import ALPHA_HALF_SWITCH
from apps.common.exceptions import DomainError


def _check_alpha(alpha: float):
    if not alpha >= 0.0 or not math.isfinite(alpha):
        raise DomainError(f"alpha must be a finite nonnegative number, got {alpha}")


def _relative_growth(beta: float, log_ratio: np.ndarray) -> np.ndarray:
    """
    (1 − e^(β·r)) / β for r = ln((1−t)/(1−s)) < 0, i.e. −r·exprel(β·r).
    Near β = 0 the logarithmic limit −r is used with its first-order correction.
    """

    if abs(beta) < ALPHA_HALF_SWITCH:
        return -log_ratio * (1.0 + 0.5 * beta * log_ratio)

    return -log_ratio * exprel(beta * log_ratio)


def transition_coeffs(alpha: float, s: float, t: float) -> tuple[float, float]:
    """Decay factor and innovation variance of the transition X_s → X_t."""

    _check_alpha(alpha)
    if not 0.0 <= s < t < 1.0:
        raise DomainError(f"transition needs 0 <= s < t < 1, got s={s}, t={t}")

    log_ratio = math.log1p(-t) - math.log1p(-s)
    decay = math.exp(alpha * log_ratio)
    variance = (1.0 - t) * float(_relative_growth(2.0 * alpha - 1.0, np.float64(log_ratio)))

    return decay, variance


def transition_arrays(alpha: float, times: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Vectorized `transition_coeffs` over consecutive grid times. Returns the
    decay factors and the innovation standard deviations of each step.
    """

    _check_alpha(alpha)
    times = np.asarray(times, dtype=float)
    if times.size and (times[0] < 0.0 or times[-1] >= 1.0 or np.any(np.diff(times) <= 0.0)):
        raise DomainError("grid times must be increasing within [0, 1)")

    log_gap = np.log1p(-times)
    log_ratio = np.diff(log_gap)
    decay = np.exp(alpha * log_ratio)
    variance = (1.0 - times[1:]) * _relative_growth(2.0 * alpha - 1.0, log_ratio)

    return decay, np.sqrt(variance)


def marginal_variance(alpha: float, t: float) -> float:
    """Var(X_t), equal to the innovation variance of the transition 0 → t."""

    _check_alpha(alpha)
    if not 0.0 <= t < 1.0:
        raise DomainError(f"marginal variance needs 0 <= t < 1, got t={t}")
    if t == 0.0:
        return 0.0

    return transition_coeffs(alpha, 0.0, t)[1]


def conditional_expectation(path_value: float, alpha: float, t: float, u: float) -> float:
    """E[X_u | X_t = path_value], the "expected future" of the path seen at time t."""

    _check_alpha(alpha)
    if not 0.0 <= t <= u < 1.0:
        raise DomainError(f"conditional expectation needs 0 <= t <= u < 1, got t={t}, u={u}")

    return path_value * math.exp(alpha * (math.log1p(-u) - math.log1p(-t)))


def mean_energy(alpha: float, T: float) -> float:
    """
    E_α[I_T] = ∫_0^T Var(X_s)/(1−s)² ds
             = ((1−T)^(2α−1) − 1 − (2α−1)·ln(1−T)) / (2α−1)²

    evaluated as ln(1−T)²·φ(x) with x = (2α−1)·ln(1−T) and
    φ(x) = (e^x − 1 − x)/x², whose limit at x = 0 is 1/2.
    """

    _check_alpha(alpha)
    if not 0.0 < T < 1.0:
        raise DomainError(f"observation end must lie in (0, 1), got T={T}")

    log_gap = math.log1p(-T)
    x = (2.0 * alpha - 1.0) * log_gap

    if abs(x) < 1e-4:
        phi = 0.5 + x / 6.0 + x * x / 24.0 + x**3 / 120.0
    else:
        phi = (math.expm1(x) - x) / (x * x)

    return log_gap * log_gap * phi

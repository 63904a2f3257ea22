"""
Priors on α.

The Jeffreys prior is √I_α(T) with the Fisher information

    I_α(T) = E_α[I_T] = ((1−T)^(2α−1) − 1 − (2α−1)·ln(1−T)) / (2α−1)²,

(ln(1−T))²/2 at α = 1/2, since the log-likelihood is quadratic in α with
second derivative −I_T.
"""

import math

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from apps.bayes.domain import PriorSpec
from apps.bridge_sim.logic.transitions import mean_energy
from apps.common.exceptions import DomainError

# nodes of the grid the prior CDF is tabulated on
MEDIAN_GRID_SIZE = 20_001

_SERIES_SWITCH = 1e-4


def fisher_information(alpha: float, T: float) -> float:
    """I_α(T), strictly positive and continuous across α = 1/2."""

    return mean_energy(alpha, T)


def fisher_information_array(alphas: np.ndarray, T: float) -> np.ndarray:
    """Vectorized `fisher_information`."""

    log_gap = math.log1p(-T)
    x = (2.0 * np.asarray(alphas, dtype=float) - 1.0) * log_gap
    small = np.abs(x) < _SERIES_SWITCH
    safe_x = np.where(small, 1.0, x)

    phi = np.where(
        small,
        0.5 + x / 6.0 + x * x / 24.0 + x**3 / 120.0,
        (np.expm1(safe_x) - safe_x) / (safe_x * safe_x),
    )
    return log_gap * log_gap * phi


def log_prior(spec: PriorSpec, alphas: np.ndarray) -> np.ndarray:
    """Log of the unnormalized prior density, −inf outside [0, support_upper]."""

    alphas = np.asarray(alphas, dtype=float)
    inside = (alphas >= 0.0) & (alphas <= spec.support_upper)

    if spec.kind == "uniform":
        values = np.zeros_like(alphas)
    else:
        values = 0.5 * np.log(fisher_information_array(np.clip(alphas, 0.0, None), spec.observation_end))

    return np.where(inside, values, -np.inf)


def prior_density_unnormalized(spec: PriorSpec, alpha: float) -> float:
    if not alpha >= 0.0:
        raise DomainError(f"alpha must be nonnegative, got {alpha}")
    if alpha > spec.support_upper:
        return 0.0
    if spec.kind == "uniform":
        return 1.0

    return math.sqrt(fisher_information(alpha, spec.observation_end))


def printed_jeffreys_density(alpha: float, T: float) -> float:
    """
    The Jeffreys density as it is commonly printed,

        1/(2α−1) · √((1−T)^(1/4 − α/2) − 1 − ln((1−T)^(2α−1))),   α ≠ 1/2
        ln(1−T)/√2,                                              α = 1/2

    kept only to compare against `prior_density_unnormalized`. It is not a
    density: the α = 1/2 value is negative, and the root is not real for
    small α (NaN is returned there).
    """

    if not alpha >= 0.0:
        raise DomainError(f"alpha must be nonnegative, got {alpha}")
    if not 0.0 < T < 1.0:
        raise DomainError(f"observation end must lie in (0, 1), got T={T}")

    log_gap = math.log1p(-T)
    if alpha == 0.5:
        return log_gap / math.sqrt(2.0)

    inner = math.exp((0.25 - 0.5 * alpha) * log_gap) - 1.0 - (2.0 * alpha - 1.0) * log_gap
    if inner < 0.0:
        return math.nan

    return math.sqrt(inner) / (2.0 * alpha - 1.0)


def prior_median(spec: PriorSpec) -> float:
    """Median of the prior truncated to [0, support_upper]."""

    if spec.kind == "uniform":
        return 0.5 * spec.support_upper

    # the Jeffreys density decays like α^(−1/2): a square-root grid spaces the nodes evenly in mass
    nodes = np.linspace(0.0, math.sqrt(spec.support_upper), MEDIAN_GRID_SIZE) ** 2
    density = np.sqrt(fisher_information_array(nodes, spec.observation_end))
    cdf = cumulative_simpson(density, x=nodes, initial=0.0)
    cdf /= cdf[-1]

    k = int(np.searchsorted(cdf, 0.5))
    window = slice(max(k - 2, 0), min(k + 2, nodes.size))
    curve = PchipInterpolator(nodes[window], cdf[window])
    return brentq(lambda alpha: float(curve(alpha)) - 0.5, nodes[k - 1], nodes[k])

"""
Closed-form maximum likelihood estimation of α from a discretized path.

With I_T the weighted energy, the log-likelihood is the quadratic

    ℓ(α) = −α·X_T²/(2(1−T)) + α(1−α)/2·I_T − α/2·ln(1−T)

and its stationary point is the MLE

    α̂ = (−X_T²/(1−T) + I_T − ln(1−T)) / (2·I_T).
"""

import logging
from functools import lru_cache

import numpy as np

from apps.bridge_sim.domain import SamplePath
from apps.bridge_sim.logic.simulate import to_unit_horizon
from apps.common.exceptions import DegeneratePath, DomainError
from apps.path_statistics.domain import EnergyResult, MleResult, SufficientStatistics
from apps.path_statistics.logic.energy import energy_from_arrays

logger = logging.getLogger(__name__)


@lru_cache(maxsize=4096)
def sufficient_statistics(path: SamplePath, rule: str = "rectangle") -> SufficientStatistics:
    """I_T, X_T and T of a path. Cached per (path, rule) since paths are immutable."""

    unit_path = to_unit_horizon(path)
    if len(unit_path.grid) < 2:
        raise DegeneratePath("a path observed at t=0 only carries no information about alpha")

    times, values = unit_path.as_arrays()
    energy = EnergyResult(i_t=float(energy_from_arrays(times, values, rule)), rule=rule)

    return SufficientStatistics(
        energy=energy,
        terminal_value=float(values[-1]),
        observation_end=float(times[-1]),
        n_points=times.size,
    )


def mle(path: SamplePath, rule: str = "rectangle") -> MleResult:
    """The MLE of α. Raises `DegeneratePath` when I_T = 0."""

    stats = sufficient_statistics(path, rule)
    if stats.energy.i_t <= 0.0:
        raise DegeneratePath("weighted energy is zero, the MLE is undefined")

    return MleResult(statistics=stats)


def mle_from_arrays(unit_times: np.ndarray, values: np.ndarray, rule: str = "rectangle") -> dict[str, np.ndarray]:
    """
    Batch version of `mle` over the rows of `values`. Degenerate rows get a
    NaN estimate instead of raising, the caller decides what to do with them.
    """

    unit_times = np.asarray(unit_times, dtype=float)
    values = np.atleast_2d(values)
    if unit_times.size < 2:
        raise DomainError("the MLE needs at least two observation times")

    observation_end = unit_times[-1]
    i_t = energy_from_arrays(unit_times, values, rule)
    x_t = values[:, -1]
    x_t_sq_over_gap = x_t**2 / (1.0 - observation_end)

    with np.errstate(divide="ignore", invalid="ignore"):
        alpha_hat = (-x_t_sq_over_gap + i_t - np.log1p(-observation_end)) / (2.0 * i_t)
    alpha_hat = np.where(i_t > 0.0, alpha_hat, np.nan)

    return {"alpha_hat": alpha_hat, "i_t": i_t, "x_t": x_t}


def log_likelihood(path: SamplePath, alpha: float, rule: str = "rectangle") -> float:
    """Log-likelihood of α for the observed path (up to an α-free constant)."""

    if not alpha >= 0.0:
        raise DomainError(f"alpha must be nonnegative, got {alpha}")

    a, b = sufficient_statistics(path, rule).quadratic_coefficients()
    return a * alpha * alpha + b * alpha


def score(path: SamplePath, alpha: float, rule: str = "rectangle") -> float:
    """∂ℓ/∂α, zero at the MLE."""

    a, b = sufficient_statistics(path, rule).quadratic_coefficients()
    return 2.0 * a * alpha + b

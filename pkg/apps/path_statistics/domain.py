import math
from typing import Literal

from pydantic import Field, computed_field

from apps.common.domain import AppDomainModel

EnergyRule = Literal["rectangle", "trapezoid"]


class EnergyResult(AppDomainModel):
    """Discrete approximation of I_T = ∫_0^T X_s²/(1−s)² ds."""

    i_t: float = Field(..., ge=0.0)
    rule: EnergyRule = "rectangle"


class SufficientStatistics(AppDomainModel):
    """Everything the likelihood needs from a unit-horizon path: I_T, X_T and T."""

    energy: EnergyResult
    terminal_value: float
    observation_end: float = Field(..., gt=0.0, lt=1.0)
    n_points: int = Field(..., ge=2)

    @property
    def log_gap(self) -> float:
        """ln(1−T), negative."""

        return math.log1p(-self.observation_end)

    @property
    def x_t_sq_over_gap(self) -> float:
        return self.terminal_value**2 / (1.0 - self.observation_end)

    def quadratic_coefficients(self) -> tuple[float, float]:
        """(a, b) with log-likelihood(α) = a·α² + b·α."""

        i_t = self.energy.i_t
        return -0.5 * i_t, -0.5 * self.x_t_sq_over_gap + 0.5 * i_t - 0.5 * self.log_gap


class MleResult(AppDomainModel):
    """
    The closed-form MLE together with the statistics it was computed from.
    `alpha_hat` is derived from the other fields, so the estimator algebra
    always holds. It is deliberately not clamped to [0, ∞).
    """

    statistics: SufficientStatistics

    @computed_field
    @property
    def alpha_hat(self) -> float:
        stats = self.statistics
        i_t = stats.energy.i_t
        return (-stats.x_t_sq_over_gap + i_t - stats.log_gap) / (2.0 * i_t)

    @property
    def i_t(self) -> EnergyResult:
        return self.statistics.energy

    @property
    def x_t_sq_over_gap(self) -> float:
        return self.statistics.x_t_sq_over_gap

    def as_record(self) -> dict:
        """JSON form of an estimate: {alpha_hat, i_t, x_T, T, n, rule}."""

        stats = self.statistics
        return {
            "alpha_hat": self.alpha_hat,
            "i_t": stats.energy.i_t,
            "x_T": stats.terminal_value,
            "T": stats.observation_end,
            "n": stats.n_points,
            "rule": stats.energy.rule,
        }

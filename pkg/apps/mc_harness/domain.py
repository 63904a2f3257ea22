from typing import Literal

from pydantic import Field, field_validator, model_validator

from apps.common.config import EXPERIMENT_CONFIG, PRIOR_CONFIG
from apps.common.domain import AppDomainModel

Estimator = Literal["mle", "cmle", "jeffreys_mean", "jeffreys_median", "uniform_mean", "uniform_median"]


class ExperimentConfig(AppDomainModel):
    """
    One Monte Carlo study: `n_paths` paths per α, every requested estimator
    applied to the same paths. Path `i` of the `k`-th α is drawn from the
    substream (seed, k·n_paths + i), so results do not depend on `workers`
    or `chunk_size`.
    """

    alphas: tuple[float, ...] = Field(tuple(EXPERIMENT_CONFIG["alphas"]), min_length=1)
    observation_end: float = Field(EXPERIMENT_CONFIG["observation_end"], gt=0.0, lt=1.0)
    n_paths: int = Field(EXPERIMENT_CONFIG["n_paths"], ge=1)
    n_grid: int = Field(EXPERIMENT_CONFIG["n_grid"], ge=2)
    estimators: tuple[Estimator, ...] = Field(tuple(EXPERIMENT_CONFIG["estimators"]), min_length=1)
    seed: int = Field(EXPERIMENT_CONFIG["seed"], ge=0, le=2**64 - 1)
    generator: Literal["exact", "euler"] = "exact"
    rule: Literal["rectangle", "trapezoid"] = "rectangle"
    jeffreys_upper: float = Field(PRIOR_CONFIG["jeffreys_upper"], gt=0.0)
    uniform_upper: float = Field(PRIOR_CONFIG["uniform_upper"], gt=0.0)
    posterior_tol: float = Field(PRIOR_CONFIG["posterior_tol"], gt=0.0)
    workers: int = Field(1, ge=1)
    chunk_size: int = Field(EXPERIMENT_CONFIG["chunk_size"], ge=1)

    @field_validator("alphas")
    @classmethod
    def check_alphas(cls, alphas):
        if any(not alpha >= 0.0 for alpha in alphas):
            raise ValueError("alphas must be nonnegative")
        return alphas

    @field_validator("estimators")
    @classmethod
    def unique_estimators(cls, estimators):
        return tuple(dict.fromkeys(estimators))

    @classmethod
    def from_settings(cls, **overrides) -> "ExperimentConfig":
        """Defaults from the `BRIDGE_*` Django settings, then `overrides`."""

        from django.conf import settings

        defaults = {
            "n_paths": getattr(settings, "BRIDGE_N_PATHS", EXPERIMENT_CONFIG["n_paths"]),
            "n_grid": getattr(settings, "BRIDGE_N_GRID", EXPERIMENT_CONFIG["n_grid"]),
            "jeffreys_upper": getattr(settings, "BRIDGE_JEFFREYS_UPPER", PRIOR_CONFIG["jeffreys_upper"]),
            "posterior_tol": getattr(settings, "BRIDGE_POSTERIOR_TOL", PRIOR_CONFIG["posterior_tol"]),
            "workers": getattr(settings, "BRIDGE_WORKERS", 1),
        }
        return cls(**{**defaults, **{k: v for k, v in overrides.items() if v is not None}})

    def stream_index(self, alpha_index: int, path_index: int) -> int:
        return alpha_index * self.n_paths + path_index

    def wants(self, *estimators: str) -> bool:
        return any(estimator in self.estimators for estimator in estimators)


class SummaryRow(AppDomainModel):
    """Bias and MSE of one estimator at one true α, with Monte Carlo standard errors."""

    alpha_true: float
    estimator: Estimator
    bias: float
    mse: float = Field(..., ge=0.0)
    mc_se_bias: float = Field(..., ge=0.0)
    mc_se_mse: float = Field(..., ge=0.0)
    n_effective: int = Field(..., ge=0)

    def as_csv_row(self) -> dict:
        return {
            "alpha": self.alpha_true,
            "estimator": self.estimator,
            "bias": self.bias,
            "mse": self.mse,
            "mc_se_bias": self.mc_se_bias,
            "mc_se_mse": self.mc_se_mse,
            "n_effective": self.n_effective,
        }


class ComparisonRow(AppDomainModel):
    """Empirical mean of the MLE against its exact expectation at one α."""

    alpha_true: float
    empirical_mean: float
    analytic_mean: float
    difference: float
    mc_se: float
    z_score: float
    discretization_allowance: float
    consistent: bool


class ExperimentResult(AppDomainModel):
    """
    Summary table of a study plus the per-α counts of excluded paths:
    degenerate paths (no estimator) and paths whose posterior summaries
    failed the truncation check (no posterior estimators).
    """

    config: ExperimentConfig
    rows: tuple[SummaryRow, ...]
    degenerate_counts: tuple[int, ...]
    tail_mass_counts: tuple[int, ...]

    @model_validator(mode="after")
    def check_counts(self):
        n_alphas = len(self.config.alphas)
        if len(self.degenerate_counts) != n_alphas or len(self.tail_mass_counts) != n_alphas:
            raise ValueError("one degenerate count and one tail mass count per alpha are required")
        return self

    def row(self, alpha: float, estimator: str) -> SummaryRow | None:
        for row in self.rows:
            if row.alpha_true == alpha and row.estimator == estimator:
                return row
        return None

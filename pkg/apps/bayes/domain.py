from typing import Literal

from pydantic import Field, model_validator

from apps.common.config import PRIOR_CONFIG
from apps.common.domain import AppDomainModel

PriorKind = Literal["jeffreys", "uniform"]

DEFAULT_UPPER = {"jeffreys": PRIOR_CONFIG["jeffreys_upper"], "uniform": PRIOR_CONFIG["uniform_upper"]}


class PriorSpec(AppDomainModel):
    """
    A prior on [0, support_upper]. The uniform prior is U(0, 10) by default,
    the Jeffreys prior is improper and truncated at 10³ unless configured
    otherwise. The Jeffreys density depends on the observation end T.
    """

    kind: PriorKind
    observation_end: float = Field(..., gt=0.0, lt=1.0)
    support_upper: float = Field(None, gt=0.0, allow_inf_nan=False, validate_default=False)

    @model_validator(mode="before")
    @classmethod
    def default_upper(cls, data):
        if isinstance(data, dict) and data.get("support_upper") is None and data.get("kind") in DEFAULT_UPPER:
            data = {**data, "support_upper": DEFAULT_UPPER[data["kind"]]}
        return data

    @classmethod
    def from_settings(cls, kind: PriorKind, observation_end: float, support_upper: float | None = None) -> "PriorSpec":
        """Jeffreys truncation taken from the `BRIDGE_JEFFREYS_UPPER` setting unless given."""

        if support_upper is None and kind == "jeffreys":
            from django.conf import settings

            support_upper = getattr(settings, "BRIDGE_JEFFREYS_UPPER", PRIOR_CONFIG["jeffreys_upper"])

        return cls(kind=kind, observation_end=observation_end, support_upper=support_upper)


class PosteriorSummary(AppDomainModel):
    """Posterior mean and median of α for one path, with the numerical diagnostics behind them."""

    kind: PriorKind
    support_upper: float
    mean: float
    median: float
    log_normalizer: float
    tail_mass_bound: float = Field(..., ge=0.0)
    grid_size: int = Field(..., ge=3)

    @model_validator(mode="after")
    def check_median(self):
        if not 0.0 <= self.median <= self.support_upper:
            raise ValueError(f"median {self.median} outside [0, {self.support_upper}]")
        return self


class PosteriorDensity(AppDomainModel):
    """Normalized posterior density on the integration grid."""

    alphas: tuple[float, ...]
    density: tuple[float, ...]

    def rows(self) -> list[dict]:
        return [{"alpha": a, "density": d} for a, d in zip(self.alphas, self.density)]

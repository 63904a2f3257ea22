import math
from typing import Literal

from pydantic import Field, model_validator

from apps.common.config import QUADRATURE_CONFIG
from apps.common.domain import AppDomainModel


class QuadratureSpec(AppDomainModel):
    """
    Tolerances and truncation policy of the semi-infinite integrals.

    The integrands decay like exp(−|ln(1−T)|·u/2) beyond the lower limit u₀,
    so integrating up to u₀ + (2/|ln(1−T)|)·ln(1/abs_tol) + safety keeps the
    discarded tail below abs_tol.
    """

    rel_tol: float = Field(QUADRATURE_CONFIG["rel_tol"], gt=0.0, lt=1.0)
    abs_tol: float = Field(QUADRATURE_CONFIG["abs_tol"], gt=0.0, lt=1.0)
    singularity_width: float = Field(QUADRATURE_CONFIG["singularity_width"], gt=0.0)
    truncation_safety: float = Field(QUADRATURE_CONFIG["truncation_safety"], ge=0.0)
    subdivision_limit: int = Field(QUADRATURE_CONFIG["subdivision_limit"], ge=50)

    @classmethod
    def from_settings(cls) -> "QuadratureSpec":
        """Defaults overridden by the `BRIDGE_QUADRATURE_*` Django settings."""

        from django.conf import settings

        return cls(
            rel_tol=getattr(settings, "BRIDGE_QUADRATURE_REL_TOL", QUADRATURE_CONFIG["rel_tol"]),
            abs_tol=getattr(settings, "BRIDGE_QUADRATURE_ABS_TOL", QUADRATURE_CONFIG["abs_tol"]),
            singularity_width=getattr(settings, "BRIDGE_SINGULARITY_WIDTH", QUADRATURE_CONFIG["singularity_width"]),
        )

    def decay_width(self, log_gap: float) -> float:
        """Scale 2/|ln(1−T)| over which the integrands drop by a factor e."""

        return 2.0 / abs(log_gap)

    def upper_limit(self, lower: float, log_gap: float) -> float:
        upper = lower + self.decay_width(log_gap) * math.log(1.0 / self.abs_tol) + self.truncation_safety
        return max(upper, lower + 1.0)


class BiasCurve(AppDomainModel):
    """Expectation and bias of the MLE over a range of α, for one observation end T."""

    observation_end: float = Field(..., gt=0.0, lt=1.0)
    alphas: tuple[float, ...]
    expectations: tuple[float, ...]

    @model_validator(mode="after")
    def check_lengths(self):
        if len(self.alphas) != len(self.expectations):
            raise ValueError("alphas and expectations must have the same length")
        return self

    @property
    def biases(self) -> tuple[float, ...]:
        return tuple(e - a for a, e in zip(self.alphas, self.expectations))

    def rows(self) -> list[dict]:
        return [
            {"alpha": a, "expectation": e, "bias": b} for a, e, b in zip(self.alphas, self.expectations, self.biases)
        ]


class InversionResult(AppDomainModel):
    """Bias-corrected estimate: the α whose expected MLE equals the observed one."""

    alpha_cmle: float = Field(..., ge=0.0)
    status: Literal["interior", "clamped_at_zero"]
    observed: float
    observation_end: float
    residual: float = 0.0

import logging
import math
from collections.abc import Iterable
from pathlib import Path

import pandas as pd

from apps.bias_analytics.domain import QuadratureSpec
from apps.bias_analytics.logic.expectation import expected_mle
from apps.common.config import CLI_CONFIG, EXPERIMENT_CONFIG
from apps.mc_harness.domain import ComparisonRow, SummaryRow

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ["alpha", "estimator", "bias", "mse", "mc_se_bias", "mc_se_mse", "n_effective"]


def discretization_allowance(n_grid: int) -> float:
    """Allowed deviation of the mean rectangle-rule MLE from its exact expectation, O(1/n_grid)."""

    return EXPERIMENT_CONFIG["discretization_constant"] / n_grid


def compare_to_analytic(
    rows: Iterable[SummaryRow], T: float, n_grid: int, spec: QuadratureSpec | None = None
) -> list[ComparisonRow]:
    """
    Joins the `mle` rows of a study with E_α[α̂]. A row is consistent when the
    empirical mean is within max(4 MC standard errors, discretization allowance)
    of the exact value. Rows of other estimators are ignored.
    """

    allowance = discretization_allowance(n_grid)
    comparisons = []

    for row in rows:
        if row.estimator != "mle":
            continue

        empirical = row.alpha_true + row.bias
        analytic = expected_mle(row.alpha_true, T, spec)
        difference = empirical - analytic
        z_score = difference / row.mc_se_bias if row.mc_se_bias > 0.0 else math.nan

        comparisons.append(
            ComparisonRow(
                alpha_true=row.alpha_true,
                empirical_mean=empirical,
                analytic_mean=analytic,
                difference=difference,
                mc_se=row.mc_se_bias,
                z_score=z_score,
                discretization_allowance=allowance,
                consistent=abs(difference) <= max(4.0 * row.mc_se_bias, allowance),
            )
        )

    return comparisons


def summary_frame(rows: Iterable[SummaryRow]) -> pd.DataFrame:
    return pd.DataFrame([row.as_csv_row() for row in rows], columns=SUMMARY_COLUMNS)


def write_summary(rows: Iterable[SummaryRow], target: str | Path):
    summary_frame(rows).to_csv(target, index=False, float_format=CLI_CONFIG["float_format"], lineterminator="\n")
    logger.info("Wrote summary to %s", target)


def write_records(records: pd.DataFrame, target: str | Path):
    """Per-path records as gzip CSV. The gzip header carries no timestamp, so reruns are byte-identical."""

    records.to_csv(
        target,
        index=False,
        float_format=CLI_CONFIG["float_format"],
        lineterminator="\n",
        compression={"method": "gzip", "mtime": 0},
    )
    logger.info("Wrote %d path records to %s", len(records), target)

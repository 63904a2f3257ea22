import logging

from django.db import models

from apps.common.exceptions import BridgeError
from apps.common.helpers import json_safe
from apps.common.models import COMMON_BLANK_AND_NULLABLE_FIELD_CONFIG, BaseModel
from apps.mc_harness.domain import ExperimentConfig

logger = logging.getLogger(__name__)


class ExperimentRun(BaseModel):
    """
    A stored Monte Carlo study. Created by the API with its config, executed
    by `apps.mc_harness.tasks.run_experiment_task`.

    ********************* Model Fields *********************
        JSON        - config, summary, comparison, degenerate_counts, tail_mass_counts, error
        Char        - status
    """

    class Status(models.TextChoices):
        PENDING = "pending"
        RUNNING = "running"
        FINISHED = "finished"
        FAILED = "failed"

    config = models.JSONField(default=dict)
    status = models.CharField(max_length=16, choices=Status.choices, default=Status.PENDING)
    summary = models.JSONField(default=list)
    comparison = models.JSONField(default=list)
    degenerate_counts = models.JSONField(default=list)
    tail_mass_counts = models.JSONField(default=list)
    error = models.JSONField(**COMMON_BLANK_AND_NULLABLE_FIELD_CONFIG)

    class Meta:
        ordering = ["-created"]

    def __str__(self):
        return f"ExperimentRun {self.uuid} ({self.status})"

    def experiment_config(self) -> ExperimentConfig:
        return ExperimentConfig.model_validate(self.config)

    def execute(self):
        """Runs the study and stores its summary, or the error it failed with."""

        from apps.bias_analytics.domain import QuadratureSpec
        from apps.mc_harness.logic.experiment import run_experiment
        from apps.mc_harness.logic.report import compare_to_analytic

        self.status = self.Status.RUNNING
        self.save(update_fields=["status", "modified"])

        try:
            config = self.experiment_config()
            spec = QuadratureSpec.from_settings()
            result, _ = run_experiment(config, spec)
            comparison = compare_to_analytic(result.rows, config.observation_end, config.n_grid, spec)
        except BridgeError as exc:
            logger.warning("Experiment %s failed: %s", self.uuid, exc.message)
            self.status = self.Status.FAILED
            self.error = exc.as_dict()
        except Exception as exc:
            logger.exception("Experiment %s crashed", self.uuid)
            self.status = self.Status.FAILED
            self.error = {"error": "internal_error", "detail": str(exc) or type(exc).__name__}
        else:
            self.status = self.Status.FINISHED
            self.summary = json_safe([row.as_csv_row() for row in result.rows])
            self.comparison = json_safe([row.model_dump() for row in comparison])
            self.degenerate_counts = list(result.degenerate_counts)
            self.tail_mass_counts = list(result.tail_mass_counts)
            self.error = None

        self.save()
        return self

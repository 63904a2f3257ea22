import logging

from celery import shared_task

from apps.mc_harness.models import ExperimentRun

logger = logging.getLogger(__name__)


@shared_task
def run_experiment_task(run_id: str):
    """Executes the stored `ExperimentRun` with uuid `run_id`."""

    run = ExperimentRun.objects.get_or_none(uuid=run_id)
    if run is None:
        logger.error("Experiment run %s does not exist", run_id)
        return None

    return run.execute().status

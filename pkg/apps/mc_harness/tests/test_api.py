from unittest import mock

from django.test import TestCase, override_settings
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APITestCase

from apps.mc_harness.domain import ExperimentConfig
from apps.mc_harness.models import ExperimentRun
from apps.mc_harness.tasks import run_experiment_task


def _run_inline(run_id):
    return run_experiment_task(run_id)


class ExperimentRunTests(TestCase):
    def _run(self, **fields) -> ExperimentRun:
        config = ExperimentConfig(alphas=(1.0,), n_paths=20, n_grid=40, estimators=("mle", "cmle"), **fields)
        return ExperimentRun.objects.create(config=config.model_dump(mode="json"))

    def test_execute(self):
        run = self._run().execute()

        run.refresh_from_db()
        self.assertEqual(run.status, ExperimentRun.Status.FINISHED)
        self.assertEqual([row["estimator"] for row in run.summary], ["mle", "cmle"])
        self.assertEqual(len(run.comparison), 1)
        self.assertEqual(run.degenerate_counts, [0])
        self.assertIsNone(run.error)
        self.assertEqual(run.experiment_config().n_paths, 20)
        self.assertEqual(list(ExperimentRun.objects.with_status("finished", "failed")), [run])

    def test_failure_is_stored(self):
        degenerate = ExperimentRun.objects.create(
            config=ExperimentConfig(alphas=(1.0,), n_paths=5, n_grid=2, estimators=("mle",)).model_dump(mode="json")
        ).execute()
        self.assertEqual(degenerate.status, ExperimentRun.Status.FAILED)
        self.assertEqual(degenerate.error["error"], "degenerate_fraction_exceeded")

    @mock.patch("apps.mc_harness.logic.experiment.run_experiment", side_effect=RuntimeError("worker died"))
    def test_unexpected_failure_is_stored(self, _):
        run = self._run().execute()

        run.refresh_from_db()
        self.assertEqual(run.status, ExperimentRun.Status.FAILED)
        self.assertEqual(run.error, {"error": "internal_error", "detail": "worker died"})
        self.assertEqual(run.summary, [])

    @override_settings(BRIDGE_QUADRATURE_REL_TOL=1e-9)
    def test_quadrature_settings_reach_the_run(self):
        from apps.mc_harness.logic import experiment

        with mock.patch.object(experiment, "run_experiment", wraps=experiment.run_experiment) as wrapped:
            run = self._run().execute()

        self.assertEqual(run.status, ExperimentRun.Status.FINISHED)
        config, spec = wrapped.call_args.args
        self.assertEqual(config.n_paths, 20)
        self.assertEqual(spec.rel_tol, 1e-9)
        self.assertEqual(run.tail_mass_counts, [0])

    def test_task_with_unknown_run(self):
        self.assertIsNone(run_experiment_task("00000000-0000-0000-0000-000000000000"))


@mock.patch("apps.mc_harness.views.run_experiment_task.delay", side_effect=_run_inline)
class ExperimentAPITests(APITestCase):
    def test_create_and_fetch(self, delay):
        response = self.client.post(
            reverse("mc_harness:create"),
            {"alphas": [0.5], "T": 0.8, "n_paths": 10, "n_grid": 30, "estimators": ["mle"], "seed": 7},
            format="json",
        )

        self.assertEqual(response.status_code, status.HTTP_201_CREATED)
        data = response.json()["data"]
        self.assertEqual(data["status"], "finished")
        self.assertEqual(data["config"]["observation_end"], 0.8)
        self.assertEqual(data["config"]["seed"], 7)
        delay.assert_called_once_with(data["uuid"])

        detail = self.client.get(reverse("mc_harness:detail", kwargs={"uuid": data["uuid"]}))
        self.assertEqual(detail.status_code, status.HTTP_200_OK)
        self.assertEqual(detail.json()["data"]["summary"], data["summary"])

    def test_invalid_config(self, delay):
        response = self.client.post(reverse("mc_harness:create"), {"T": 1.5, "n_paths": 10}, format="json")

        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(ExperimentRun.objects.count(), 0)
        self.assertEqual(response.json()["status"], "error")
        delay.assert_not_called()

    def test_unknown_run(self, delay):
        missing = "00000000-0000-0000-0000-000000000000"
        response = self.client.get(reverse("mc_harness:detail", kwargs={"uuid": missing}))
        self.assertEqual(response.status_code, status.HTTP_404_NOT_FOUND)
        delay.assert_not_called()

import io
import json
import tempfile
from pathlib import Path

import pandas as pd
from django.core.management import call_command
from django.test import SimpleTestCase, override_settings

from apps.bias_analytics.logic.expectation import expected_mle


def bridge(*args) -> tuple[str, str]:
    """Runs `manage.py bridge` and returns (stdout, stderr)."""

    stdout, stderr = io.StringIO(), io.StringIO()
    call_command("bridge", *args, stdout=stdout, stderr=stderr)
    return stdout.getvalue(), stderr.getvalue()


class AnalyticsCommandTests(SimpleTestCase):
    def test_expected_mle(self):
        stdout, stderr = bridge("expected-mle", "--alpha", "0.5", "--T", "0.8")
        frame = pd.read_csv(io.StringIO(stdout))

        self.assertEqual(list(frame.columns), ["alpha", "T", "expectation", "bias"])
        self.assertAlmostEqual(frame["expectation"].iloc[0], 1.60688, delta=1e-5)

        resolved = json.loads(stderr.splitlines()[0])
        self.assertEqual(resolved["command"], "expected-mle")
        self.assertEqual(resolved["config"]["T"], 0.8)
        self.assertEqual(resolved["config"]["quadrature"]["rel_tol"], 1e-10)

    def test_json_envelope(self):
        stdout, _ = bridge("expected-mle", "--alpha", "2", "--T", "0.8", "--format", "json", "--rel-tol", "1e-9")
        envelope = json.loads(stdout)

        self.assertEqual(envelope["schema"], "v1")
        self.assertEqual(envelope["command"], "expected-mle")
        self.assertEqual(envelope["config"]["quadrature"]["rel_tol"], 1e-9)
        self.assertAlmostEqual(envelope["rows"][0]["expectation"], expected_mle(2.0, 0.8), delta=1e-8)

    def test_bias_curve(self):
        stdout, _ = bridge("bias-curve", "--T", "0.8", "--alpha-max", "1", "--alpha-step", "0.25")
        frame = pd.read_csv(io.StringIO(stdout))

        self.assertEqual(frame["alpha"].tolist(), [0.0, 0.25, 0.5, 0.75, 1.0])
        self.assertAlmostEqual(frame["bias"].iloc[2], 1.10688, delta=1e-5)

    def test_correct(self):
        stdout, _ = bridge("correct", "--observed", "1.60688", "--T", "0.8", "--format", "json")
        row = json.loads(stdout)["rows"][0]

        self.assertEqual(row["status"], "interior")
        self.assertAlmostEqual(row["alpha_cmle"], 0.5, delta=1e-4)

    def test_errors_go_to_stderr_as_json(self):
        stdout, stderr = io.StringIO(), io.StringIO()
        with self.assertRaises(SystemExit) as caught:
            call_command("bridge", "expected-mle", "--alpha", "-1", "--T", "0.8", stdout=stdout, stderr=stderr)

        self.assertEqual(caught.exception.code, 1)
        self.assertEqual(stdout.getvalue(), "")
        error = json.loads(stderr.getvalue())
        self.assertEqual(error["error"], "domain_error")
        self.assertIn("detail", error)

    def test_bad_curve_bounds(self):
        with self.assertRaises(SystemExit):
            bridge("bias-curve", "--T", "0.8", "--alpha-min", "2", "--alpha-max", "1")


class PathCommandTests(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.path = Path(self.directory.name) / "path.csv"

    def test_simulate_is_reproducible(self):
        first, _ = bridge("simulate", "--alpha", "1", "--T", "0.8", "--n", "51", "--seed", "5")
        second, _ = bridge("simulate", "--alpha", "1", "--T", "0.8", "--n", "51", "--seed", "5")
        other, _ = bridge("simulate", "--alpha", "1", "--T", "0.8", "--n", "51", "--seed", "5", "--stream", "1")

        self.assertEqual(first, second)
        self.assertNotEqual(first, other)
        frame = pd.read_csv(io.StringIO(first))
        self.assertEqual(list(frame.columns), ["t", "x"])
        self.assertEqual(len(frame), 51)
        self.assertEqual(frame["t"].iloc[-1], 0.8)
        self.assertEqual(frame["x"].iloc[0], 0.0)

    def test_simulate_then_estimate(self):
        bridge("simulate", "--alpha", "2", "--n", "201", "--seed", "9", "--out", str(self.path))
        stdout, _ = bridge("estimate", "--path", str(self.path), "--format", "json")
        record = json.loads(stdout)["rows"][0]

        self.assertEqual(set(record), {"alpha_hat", "i_t", "x_T", "T", "n", "rule"})
        self.assertEqual(record["n"], 201)
        self.assertEqual(record["rule"], "rectangle")
        self.assertAlmostEqual(record["T"], 0.8, places=15)

    def test_estimate_on_a_scaled_horizon(self):
        bridge("simulate", "--alpha", "2", "--n", "101", "--seed", "9", "--out", str(self.path))
        unit, _ = bridge("estimate", "--path", str(self.path), "--format", "json")

        scaled = Path(self.directory.name) / "scaled.csv"
        scaled_args = ["--T", "1.6", "--horizon", "2", "--out", str(scaled)]
        bridge("simulate", "--alpha", "2", "--n", "101", "--seed", "9", *scaled_args)
        rescaled, _ = bridge("estimate", "--path", str(scaled), "--horizon", "2", "--format", "json")

        self.assertAlmostEqual(
            json.loads(unit)["rows"][0]["alpha_hat"], json.loads(rescaled)["rows"][0]["alpha_hat"], places=9
        )

    def test_posterior_defaults_to_json(self):
        density = Path(self.directory.name) / "density.csv"
        bridge("simulate", "--alpha", "1", "--n", "201", "--seed", "2", "--out", str(self.path))
        stdout, _ = bridge(
            "posterior",
            "--path",
            str(self.path),
            "--prior",
            "jeffreys",
            "--density-out",
            str(density),
            "--compare-printed",
        )

        envelope = json.loads(stdout)
        self.assertEqual(envelope["command"], "posterior")
        summary = envelope["rows"][0]
        self.assertEqual(summary["kind"], "jeffreys")
        self.assertEqual(summary["support_upper"], 1000.0)
        self.assertLess(summary["tail_mass_bound"], 1e-8)

        frame = pd.read_csv(density)
        self.assertEqual(list(frame.columns), ["alpha", "density", "printed_jeffreys"])

    def test_unreadable_path(self):
        self.path.write_text("time,value\n0,0\n")
        stderr = io.StringIO()
        with self.assertRaises(SystemExit):
            call_command("bridge", "estimate", "--path", str(self.path), stdout=io.StringIO(), stderr=stderr)

        self.assertEqual(json.loads(stderr.getvalue())["error"], "domain_error")


class StudyCommandTests(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.out = Path(self.directory.name)

    def test_experiment(self):
        config = self.out / "config.json"
        config.write_text(json.dumps({"alphas": [1.0], "T": 0.8, "estimators": ["mle", "uniform_mean"]}))

        stdout, stderr = bridge(
            "experiment",
            "--config",
            str(config),
            "--n-paths",
            "12",
            "--n-grid",
            "40",
            "--out",
            str(self.out),
            "--records",
            "--compare",
        )

        self.assertEqual(
            sorted(path.name for path in self.out.iterdir()),
            ["comparison.csv", "config.json", "records.csv.gz", "summary.csv"],
        )
        summary = pd.read_csv(self.out / "summary.csv")
        self.assertEqual(summary["estimator"].tolist(), ["mle", "uniform_mean"])
        self.assertEqual(stdout, (self.out / "summary.csv").read_text())

        resolved = json.loads(stderr.splitlines()[0])["config"]
        self.assertEqual(resolved["n_paths"], 12)
        self.assertEqual(resolved["observation_end"], 0.8)
        self.assertEqual(resolved["degenerate"], [0])
        self.assertEqual(resolved["tail_mass_exceeded"], [0])

    @override_settings(BRIDGE_N_PATHS=8)
    def test_experiment_takes_paths_from_settings(self):
        stdout, stderr = bridge("experiment", "--n-grid", "30", "--out", str(self.out), "--seed", "4")

        resolved = json.loads(stderr.splitlines()[0])["config"]
        self.assertEqual(resolved["n_paths"], 8)
        self.assertEqual(resolved["seed"], 4)
        self.assertTrue((self.out / "summary.csv").exists())

    def test_experiment_output_does_not_depend_on_workers(self):
        summaries = []
        for workers in ("1", "2"):
            out = self.out / f"workers-{workers}"
            bridge(
                "experiment",
                "--n-paths",
                "30",
                "--n-grid",
                "40",
                "--workers",
                workers,
                "--out",
                str(out),
                "--records",
            )
            summaries.append(((out / "summary.csv").read_bytes(), (out / "records.csv.gz").read_bytes()))

        self.assertEqual(summaries[0], summaries[1])

    def test_figure1(self):
        bridge("figures", "--which", "1", "--out", str(self.out), "--seed", "3")

        prefix = pd.read_csv(self.out / "fig1_prefix.csv")
        curves = pd.read_csv(self.out / "fig1.csv")
        for alpha, curve in curves.groupby("alpha"):
            with self.subTest(alpha=alpha):
                self.assertAlmostEqual(curve["u"].iloc[0], prefix["t"].iloc[-1], places=15)
                self.assertAlmostEqual(curve["expectation"].iloc[0], prefix["x"].iloc[-1], places=12)
                if alpha > 0.0:
                    self.assertLess(abs(curve["expectation"].iloc[-1]), abs(curve["expectation"].iloc[0]))

    def test_figure3(self):
        stdout, _ = bridge("figures", "--which", "3", "--out", str(self.out))

        self.assertEqual(pd.read_csv(io.StringIO(stdout))["file"].tolist(), [str(self.out / "fig3.csv")])
        frame = pd.read_csv(self.out / "fig3.csv")
        self.assertEqual(list(frame.columns), ["T", "expectation", "bias"])
        self.assertAlmostEqual(frame.loc[frame["T"] == 0.8, "expectation"].iloc[0], 1.60688, delta=1e-5)
        self.assertGreater(frame.loc[frame["T"] == 0.97, "expectation"].iloc[0], 1.0)
        self.assertLess(frame.loc[frame["T"] == 0.975, "expectation"].iloc[0], 1.0)

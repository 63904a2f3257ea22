import math

import numpy as np
from django.test import SimpleTestCase
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APISimpleTestCase
from scipy.integrate import quad, trapezoid
from scipy.stats import truncnorm

from apps.bayes.domain import PriorSpec
from apps.bayes.logic.posterior import posterior, posterior_density, posterior_from_statistics
from apps.bayes.logic.priors import log_prior
from apps.bridge_sim.domain import BridgeParams, RngSeed, TimeGrid
from apps.bridge_sim.logic.simulate import simulate_exact
from apps.common.exceptions import DegeneratePath, DomainError, TailMassTooLarge
from apps.path_statistics.domain import EnergyResult, SufficientStatistics
from apps.path_statistics.logic.mle import sufficient_statistics


def _statistics(i_t: float, terminal_value: float = 0.0, observation_end: float = 0.8) -> SufficientStatistics:
    return SufficientStatistics(
        energy=EnergyResult(i_t=i_t), terminal_value=terminal_value, observation_end=observation_end, n_points=301
    )


def _path(alpha: float = 1.0, stream_index: int = 0):
    return simulate_exact(
        BridgeParams(alpha=alpha), TimeGrid.uniform(0.8, 301), RngSeed(seed=11, stream_index=stream_index)
    )


class _ReferencePosterior:
    """The same posterior integrated piecewise with adaptive quadrature."""

    def __init__(self, spec: PriorSpec, stats: SufficientStatistics):
        self.spec = spec
        self.a, self.b = stats.quadratic_coefficients()
        center = min(max(self.b / stats.energy.i_t, 0.0), spec.support_upper)
        half_width = 12.0 / math.sqrt(stats.energy.i_t)
        upper = spec.support_upper
        self.breaks = sorted({0.0, max(0.0, center - half_width), center, min(upper, center + half_width), upper})
        self.shift = self.log_density(center)
        self.normalizer = self.integral(lambda alpha: 1.0, spec.support_upper)

    def log_density(self, alpha: float) -> float:
        return float(log_prior(self.spec, np.array([alpha]))[0]) + self.a * alpha * alpha + self.b * alpha

    def integral(self, weight, upper: float) -> float:
        total = 0.0
        for left, right in zip(self.breaks, self.breaks[1:]):
            if left >= upper:
                break
            value, _ = quad(
                lambda alpha: weight(alpha) * math.exp(self.log_density(alpha) - self.shift),
                left,
                min(right, upper),
                epsabs=1e-14,
                epsrel=1e-12,
                limit=200,
            )
            total += value
        return total

    @property
    def log_normalizer(self) -> float:
        return self.shift + math.log(self.normalizer)

    def mean(self) -> float:
        return self.integral(lambda alpha: alpha, self.spec.support_upper) / self.normalizer

    def cdf(self, alpha: float) -> float:
        return self.integral(lambda _: 1.0, alpha) / self.normalizer


class PosteriorTests(SimpleTestCase):
    def test_gaussian_likelihood_under_a_flat_prior(self):
        # ln(1−T) = −I_T and X_T = 0 put the likelihood mode at 1 with sd 1/√I_T
        i_t = -math.log(0.2)
        sd = 1.0 / math.sqrt(i_t)
        stats = _statistics(i_t)
        flat = PriorSpec(kind="uniform", observation_end=0.8, support_upper=1000.0)
        summary = posterior_from_statistics(flat, stats)

        reference = truncnorm((0.0 - 1.0) / sd, (1000.0 - 1.0) / sd, loc=1.0, scale=sd)
        self.assertAlmostEqual(summary.mean, reference.mean(), delta=1e-7)
        self.assertAlmostEqual(summary.median, reference.median(), delta=1e-5)
        self.assertEqual(summary.tail_mass_bound, 0.0)

    def test_uniform_prior_on_a_simulated_path(self):
        summary = posterior(PriorSpec(kind="uniform", observation_end=0.8), _path())

        self.assertEqual(summary.kind, "uniform")
        self.assertEqual(summary.support_upper, 10.0)
        self.assertTrue(0.0 < summary.mean < 10.0)
        self.assertTrue(0.0 < summary.median < 10.0)
        self.assertGreaterEqual(summary.grid_size, 1025)

    def test_jeffreys_default_truncation_is_harmless(self):
        summary = posterior(PriorSpec(kind="jeffreys", observation_end=0.8), _path(alpha=2.0))

        self.assertEqual(summary.support_upper, 1000.0)
        self.assertLess(summary.tail_mass_bound, 1e-8)
        self.assertTrue(math.isfinite(summary.log_normalizer))

    def test_path_and_statistics_agree(self):
        spec = PriorSpec(kind="jeffreys", observation_end=0.8)
        path = _path(alpha=0.5, stream_index=3)

        self.assertEqual(posterior(spec, path), posterior_from_statistics(spec, sufficient_statistics(path)))

    def test_density_is_normalized(self):
        spec = PriorSpec(kind="jeffreys", observation_end=0.8)
        path = _path()
        density = posterior_density(spec, path)
        alphas, values = np.asarray(density.alphas), np.asarray(density.density)

        self.assertTrue(np.all(np.diff(alphas) > 0.0))
        self.assertTrue(np.all(values >= 0.0))
        self.assertAlmostEqual(trapezoid(values, x=alphas), 1.0, delta=1e-3)
        self.assertEqual(set(density.rows()[0]), {"alpha", "density"})

        reference = _ReferencePosterior(spec, sufficient_statistics(path))
        for k in range(0, alphas.size, 97):
            expected = math.exp(reference.log_density(alphas[k]) - reference.log_normalizer)
            self.assertAlmostEqual(values[k], expected, delta=1e-8 * max(expected, 1.0))

    def test_summaries_match_adaptive_quadrature(self):
        for kind in ("jeffreys", "uniform"):
            spec = PriorSpec(kind=kind, observation_end=0.8)
            for alpha in (0.0, 0.5, 2.0, 8.0):
                for stream_index in range(10):
                    stats = sufficient_statistics(_path(alpha, stream_index))
                    with self.subTest(kind=kind, alpha=alpha, stream_index=stream_index):
                        summary = posterior_from_statistics(spec, stats)
                        reference = _ReferencePosterior(spec, stats)

                        self.assertAlmostEqual(summary.log_normalizer, reference.log_normalizer, delta=1e-8)
                        self.assertAlmostEqual(summary.mean, reference.mean(), delta=1e-7 * (1.0 + summary.mean))
                        self.assertAlmostEqual(reference.cdf(summary.median), 0.5, delta=1e-6)

    def test_uniform_prior_shrinks_towards_the_middle(self):
        spec = PriorSpec(kind="uniform", observation_end=0.8)
        for alpha in (0.0, 0.5, 2.0, 5.0, 8.0, 12.0):
            for stream_index in range(10):
                stats = sufficient_statistics(_path(alpha, stream_index))
                stationary = min(max(stats.quadratic_coefficients()[1] / stats.energy.i_t, 0.0), 10.0)
                mean = posterior_from_statistics(spec, stats).mean

                with self.subTest(alpha=alpha, stream_index=stream_index, stationary=stationary):
                    self.assertLessEqual(min(stationary, 5.0) - 1e-9, mean)
                    self.assertLessEqual(mean, max(stationary, 5.0) + 1e-9)
                    if abs(stationary - 5.0) > 1e-6:
                        self.assertGreater((mean - stationary) * (5.0 - stationary), 0.0)

    def test_tight_truncation_is_reported(self):
        spec = PriorSpec(kind="jeffreys", observation_end=0.8, support_upper=1.5)

        with self.assertRaises(TailMassTooLarge) as caught:
            posterior_from_statistics(spec, _statistics(1.0))

        self.assertGreaterEqual(caught.exception.details["tail_mass_bound"], 1e-8)
        self.assertEqual(caught.exception.details["support_upper"], 1.5)
        # a loose tolerance accepts the same truncation
        summary = posterior_from_statistics(spec, _statistics(1.0), tol=1.0 - 1e-12)
        self.assertLessEqual(summary.median, 1.5)

    def test_observation_end_mismatch(self):
        with self.assertRaises(DomainError):
            posterior_from_statistics(PriorSpec(kind="jeffreys", observation_end=0.9), _statistics(1.0))

    def test_degenerate_energy(self):
        with self.assertRaises(DegeneratePath):
            posterior_from_statistics(PriorSpec(kind="uniform", observation_end=0.8), _statistics(0.0))


class PosteriorAPITests(APISimpleTestCase):
    def setUp(self):
        self.url = reverse("bayes:posterior")
        self.values = list(_path().values)

    def test_summary(self):
        response = self.client.post(
            self.url, {"prior": "jeffreys", "T": 0.8, "values": self.values}, format="json"
        )

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        data = response.json()["data"]
        self.assertEqual(data["kind"], "jeffreys")
        self.assertEqual(data["support_upper"], 1000.0)
        self.assertNotIn("density", data)

        expected = posterior(PriorSpec(kind="jeffreys", observation_end=0.8), _path())
        self.assertAlmostEqual(data["mean"], expected.mean, places=12)

    def test_density_on_request(self):
        response = self.client.post(
            self.url,
            {"prior": "uniform", "T": 0.8, "values": self.values, "include_density": True},
            format="json",
        )

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertIn("density", response.json()["data"])

    def test_truncation_failure_is_a_client_error(self):
        response = self.client.post(
            self.url, {"prior": "jeffreys", "T": 0.8, "upper": 0.01, "values": self.values}, format="json"
        )

        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(response.json()["data"]["error"], "tail_mass_too_large")

    def test_times_must_end_at_T(self):
        response = self.client.post(
            self.url,
            {"prior": "uniform", "T": 0.8, "values": [0.0, 0.1, 0.2], "times": [0.0, 0.3, 0.7]},
            format="json",
        )

        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("times", response.json()["data"])

"""
Posterior of α given a path, on a truncated support [0, U].

The log-likelihood is the quadratic ℓ(α) = aα² + bα with a = −I_T/2, so
the posterior is a Gaussian with mean m = b/I_T and sd 1/√I_T reweighted by
the prior. It is integrated with Simpson's rule on a dense window of
±`window_sds` standard deviations around m (clamped to the support) plus
coarser outer segments covering the rest of [0, U].
"""

import logging
import math

import numpy as np
from scipy.integrate import cumulative_simpson, simpson
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq
from scipy.special import log_ndtr

from apps.bayes.domain import PosteriorDensity, PosteriorSummary, PriorSpec
from apps.bayes.logic.priors import log_prior
from apps.bridge_sim.domain import SamplePath
from apps.common.config import PRIOR_CONFIG
from apps.common.exceptions import DegeneratePath, DomainError, TailMassTooLarge
from apps.path_statistics.domain import SufficientStatistics
from apps.path_statistics.logic.mle import sufficient_statistics

logger = logging.getLogger(__name__)


def _segments(spec: PriorSpec, center: float, sd: float) -> list[np.ndarray]:
    upper = spec.support_upper
    half_width = PRIOR_CONFIG["window_sds"] * sd
    lower_edge = max(0.0, center - half_width)
    upper_edge = min(upper, center + half_width)

    segments = []
    if lower_edge > 0.0:
        segments.append(np.linspace(0.0, lower_edge, PRIOR_CONFIG["outer_grid_size"]))
    segments.append(np.linspace(lower_edge, upper_edge, PRIOR_CONFIG["grid_size"]))
    if upper_edge < upper:
        segments.append(np.linspace(upper_edge, upper, PRIOR_CONFIG["outer_grid_size"]))

    return segments


class _PosteriorGrid:
    """Unnormalized log posterior tabulated on the integration segments."""

    def __init__(self, spec: PriorSpec, stats: SufficientStatistics):
        if not math.isclose(stats.observation_end, spec.observation_end, rel_tol=1e-12):
            raise DomainError(
                f"prior built for T={spec.observation_end} applied to a path observed up to T={stats.observation_end}"
            )

        i_t = stats.energy.i_t
        if i_t <= 0.0:
            raise DegeneratePath("weighted energy is zero, the posterior is not concentrated")

        self.spec = spec
        self.a, self.b = stats.quadratic_coefficients()
        self.i_t = i_t
        self.mode_likelihood = self.b / i_t
        self.sd = 1.0 / math.sqrt(i_t)

        center = min(max(self.mode_likelihood, 0.0), spec.support_upper)
        self.segments = _segments(spec, center, self.sd)
        log_values = [log_prior(spec, nodes) + self.a * nodes * nodes + self.b * nodes for nodes in self.segments]

        self.shift = max(float(np.max(values)) for values in log_values)
        self.weights = [np.exp(values - self.shift) for values in log_values]
        self.normalizer = sum(simpson(w, x=nodes) for nodes, w in zip(self.segments, self.weights))
        if not self.normalizer > 0.0:
            raise DomainError("posterior has no mass on the support")

    @property
    def grid_size(self) -> int:
        return sum(nodes.size for nodes in self.segments)

    @property
    def log_normalizer(self) -> float:
        return self.shift + math.log(self.normalizer)

    def mean(self) -> float:
        moment = sum(simpson(nodes * w, x=nodes) for nodes, w in zip(self.segments, self.weights))
        return moment / self.normalizer

    def median(self) -> float:
        """Root of the monotone cubic interpolant of the CDF in the segment where it crosses 1/2."""

        reached = 0.0
        for nodes, w in zip(self.segments, self.weights):
            cdf = reached + cumulative_simpson(w, x=nodes, initial=0.0) / self.normalizer
            if cdf[-1] >= 0.5 or nodes is self.segments[-1]:
                cdf = np.maximum.accumulate(cdf)
                k = min(max(int(np.searchsorted(cdf, 0.5)), 1), nodes.size - 1)
                curve = PchipInterpolator(nodes, cdf)
                if cdf[k] <= 0.5:
                    return float(nodes[k])
                return brentq(lambda alpha: float(curve(alpha)) - 0.5, nodes[k - 1], nodes[k], xtol=1e-14)
            reached = cdf[-1]

    def tail_mass_bound(self) -> float:
        """
        Upper bound on the posterior mass beyond U under the untruncated
        prior, from the Gaussian envelope of the likelihood. The uniform prior
        is zero beyond U, so its bound is 0.
        """

        spec = self.spec
        if spec.kind == "uniform":
            return 0.0

        upper = spec.support_upper
        m = self.mode_likelihood
        # the Jeffreys density is decreasing on [U, ∞) for every U > 0
        log_bound = (
            float(log_prior(spec, np.array([upper]))[0])
            + self.b * self.b / (2.0 * self.i_t)
            + 0.5 * math.log(2.0 * math.pi / self.i_t)
            + float(log_ndtr(-(upper - m) * math.sqrt(self.i_t)))
            - self.log_normalizer
        )
        return math.exp(min(log_bound, 0.0))

    def density(self) -> tuple[np.ndarray, np.ndarray]:
        alphas = np.concatenate([self.segments[0]] + [nodes[1:] for nodes in self.segments[1:]])
        weights = np.concatenate([self.weights[0]] + [w[1:] for w in self.weights[1:]])
        return alphas, weights / self.normalizer


def _tolerance(tol: float | None) -> float:
    return tol if tol is not None else PRIOR_CONFIG["posterior_tol"]


def posterior_from_statistics(
    spec: PriorSpec, stats: SufficientStatistics, tol: float | None = None
) -> PosteriorSummary:
    """`posterior` for precomputed sufficient statistics."""

    grid = _PosteriorGrid(spec, stats)
    tail = grid.tail_mass_bound()
    tol = _tolerance(tol)
    if tail >= tol:
        raise TailMassTooLarge(
            f"posterior mass beyond alpha={spec.support_upper} may reach {tail:.3g}, above the tolerance {tol:.3g}",
            tail_mass_bound=tail,
            support_upper=spec.support_upper,
        )

    return PosteriorSummary(
        kind=spec.kind,
        support_upper=spec.support_upper,
        mean=grid.mean(),
        median=grid.median(),
        log_normalizer=grid.log_normalizer,
        tail_mass_bound=tail,
        grid_size=grid.grid_size,
    )


def posterior(
    spec: PriorSpec, path: SamplePath, tol: float | None = None, rule: str = "rectangle"
) -> PosteriorSummary:
    """Posterior mean and median of α for an observed path."""

    summary = posterior_from_statistics(spec, sufficient_statistics(path, rule), tol)
    logger.debug(
        "Posterior (%s, U=%g): mean=%.6g median=%.6g", spec.kind, spec.support_upper, summary.mean, summary.median
    )
    return summary


def posterior_density(spec: PriorSpec, path: SamplePath, rule: str = "rectangle") -> PosteriorDensity:
    """The normalized density behind `posterior`, as `alpha,density` rows."""

    alphas, density = _PosteriorGrid(spec, sufficient_statistics(path, rule)).density()
    return PosteriorDensity(alphas=tuple(alphas.tolist()), density=tuple(density.tolist()))

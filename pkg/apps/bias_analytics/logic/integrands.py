"""
Exp-scaled integrands of the expectation formula.

With L = ln(1−T) < 0, a = |L| and c = (1−2α)/2 the denominator of both
integrals is

    D(u) = 2cosh(uL) + ((1−2α)/u)·sinh(uL) = e^{|u|a}·B(u),
    B(u) = (1 + E) − c·(1 − E)/u,     E = e^{−2|u|a}.

D is even in u, so both numerators being odd lets the integration start at
|c| instead of c. The prefactor (1−T)^{c/2} is folded into the exponential,
which leaves every integrand bounded by O(u) on [|c|, ∞):

    J1 = ∫ −(1−E)·exp(−(c+u)a/2) / B^{3/2} du
    J2 = ∫  u·exp(−(c+u)a/2) / B^{1/2} du
"""

import logging
import math
from collections.abc import Callable

from scipy.integrate import quad

from apps.bias_analytics.domain import QuadratureSpec
from apps.common.exceptions import DomainError, QuadratureFailure

logger = logging.getLogger(__name__)


def check_observation_end(T: float) -> float:
    """Returns ln(1−T) after checking 0 < T < 1."""

    if not 0.0 < T < 1.0:
        raise DomainError(f"observation end must lie in (0, 1), got T={T}")

    return math.log1p(-T)


def one_minus_e_over_u(u: float, a: float, width: float) -> float:
    """(1 − e^{−2ua})/u, with its second-order Taylor expansion near u = 0."""

    if u < width:
        x = u * a
        return 2.0 * a * (1.0 - x + 2.0 * x * x / 3.0)

    return -math.expm1(-2.0 * u * a) / u


def bracket(u: float, c: float, a: float, width: float) -> float:
    """B(u) = e^{−ua}·D(u) for u ≥ 0."""

    e = math.exp(-2.0 * u * a)
    if u < width:
        return (1.0 + e) - c * one_minus_e_over_u(u, a, width)

    # no cancellation here: u >= |c| keeps both coefficients in [0, 2]
    return (u - c) / u + (u + c) / u * e


class ScaledIntegrands:
    """Integrands of J1 and J2 for a fixed (α, T)."""

    def __init__(self, alpha: float, T: float, spec: QuadratureSpec):
        if not alpha >= 0.0 or not math.isfinite(alpha):
            raise DomainError(f"alpha must be a finite nonnegative number, got {alpha}")

        self.alpha = alpha
        self.log_gap = check_observation_end(T)
        self.a = -self.log_gap
        self.c = 0.5 - alpha
        self.lower = abs(self.c)
        self.spec = spec

    def weight(self, u: float) -> float:
        return math.exp(-0.5 * (self.c + u) * self.a)

    def j1(self, u: float) -> float:
        b = bracket(u, self.c, self.a, self.spec.singularity_width)
        return math.expm1(-2.0 * u * self.a) * self.weight(u) / (b * math.sqrt(b))

    def j2(self, u: float) -> float:
        b = bracket(u, self.c, self.a, self.spec.singularity_width)
        return u * self.weight(u) / math.sqrt(b)

    def break_points(self, lower: float, upper: float, scale: float) -> list[float]:
        points = [lower + k * scale for k in (1.0, 4.0, 16.0, 64.0)]
        return [p for p in points if p < upper]

    def integrate(self, func: Callable[[float], float], label: str) -> float:
        upper = self.spec.upper_limit(self.lower, self.log_gap)
        points = self.break_points(self.lower, upper, self.spec.decay_width(self.log_gap))

        return integrate(func, self.lower, upper, self.spec, points=points, label=f"{label}(alpha={self.alpha})")


def integrate(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    spec: QuadratureSpec,
    points: list[float] | None = None,
    label: str = "integral",
) -> float:
    """Adaptive Gauss–Kronrod quadrature. Raises `QuadratureFailure` unless QUADPACK reports success."""

    result = quad(
        func,
        lower,
        upper,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.subdivision_limit,
        points=points or None,
        full_output=1,
    )

    value, abs_err = result[0], result[1]
    if len(result) > 3:
        raise QuadratureFailure(
            f"{label} on [{lower:.6g}, {upper:.6g}] did not converge: {result[3]}",
            value=value,
            abs_err=abs_err,
        )
    if not math.isfinite(value):
        raise QuadratureFailure(f"{label} on [{lower:.6g}, {upper:.6g}] is not finite")

    logger.debug("%s = %.17g (abs err %.3g, %d evaluations)", label, value, abs_err, result[2]["neval"])
    return value

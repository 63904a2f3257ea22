"""
Exact expectation of the MLE and its pieces.

    E_α[α̂]       = 1/2 + I₁ − I₂
    I₁            = J1/√2
    I₂            = ln(1−T)·J2/√2
    E_α[1/I_T]    = √2·J2
    E_α[X_T²/I_T] = −√2·(1−T)·J1

with J1, J2 from `apps.bias_analytics.logic.integrands`.
"""

import math
from collections.abc import Iterable
from functools import cache

from apps.bias_analytics.domain import BiasCurve, QuadratureSpec
from apps.bias_analytics.logic.integrands import ScaledIntegrands, check_observation_end, integrate

SQRT2 = math.sqrt(2.0)

# ∫_v^∞ √2·x·e^{−x/2} dx < 1e-10 for v = 60 (cosh(x) > e^x/2)
CONSTANT_A_CUTOFF = 60.0


def _spec(spec: QuadratureSpec | None) -> QuadratureSpec:
    return spec if spec is not None else QuadratureSpec()


def _log_cosh(v: float) -> float:
    return v + math.log1p(math.exp(-2.0 * v)) - math.log(2.0)


@cache
def constant_A() -> float:
    """A = ∫_0^∞ v/√cosh(v) dv ≈ 5.5629."""

    spec = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-13)
    return integrate(
        lambda v: v * math.exp(-0.5 * _log_cosh(v)),
        0.0,
        CONSTANT_A_CUTOFF,
        spec,
        points=[2.0, 8.0, 20.0],
        label="constant_A",
    )


def _j_integrals(alpha: float, T: float, spec: QuadratureSpec) -> tuple[float, float, float]:
    integrands = ScaledIntegrands(alpha, T, spec)
    j1 = integrands.integrate(integrands.j1, "J1")
    j2 = integrands.integrate(integrands.j2, "J2")

    return j1, j2, integrands.log_gap


def proof_integrals_I1_I2(alpha: float, T: float, spec: QuadratureSpec | None = None) -> tuple[float, float]:
    """The two integrals with E_α[α̂] − α = 1/2 − α + I₁ − I₂."""

    j1, j2, log_gap = _j_integrals(alpha, T, _spec(spec))
    return j1 / SQRT2, log_gap * j2 / SQRT2


def expected_mle(alpha: float, T: float, spec: QuadratureSpec | None = None) -> float:
    """E_α[α̂] for a path observed on [0, T]."""

    i1, i2 = proof_integrals_I1_I2(alpha, T, spec)
    return 0.5 + i1 - i2


def expected_inv_energy(alpha: float, T: float, spec: QuadratureSpec | None = None) -> float:
    """E_α[1/I_T]."""

    _, j2, _ = _j_integrals(alpha, T, _spec(spec))
    return SQRT2 * j2


def expected_ratio_xt2(alpha: float, T: float, spec: QuadratureSpec | None = None) -> float:
    """E_α[X_T²/I_T]."""

    j1, _, _ = _j_integrals(alpha, T, _spec(spec))
    return -SQRT2 * (1.0 - T) * j1


def expected_mle_from_moments(alpha: float, T: float, spec: QuadratureSpec | None = None) -> float:
    """E_α[α̂] rebuilt from E[X_T²/I_T] and E[1/I_T] through the simplified MLE."""

    log_gap = check_observation_end(T)
    ratio = expected_ratio_xt2(alpha, T, spec)
    inv_energy = expected_inv_energy(alpha, T, spec)

    return -ratio / (2.0 * (1.0 - T)) + 0.5 - 0.5 * log_gap * inv_energy


def expected_mle_half(T: float) -> float:
    """E_{1/2}[α̂] = 1/2 + (1 − A/2)/ln(1−T)."""

    return 0.5 + (1.0 - 0.5 * constant_A()) / check_observation_end(T)


def asymptotic_bias(T: float) -> float:
    """Large-α limit of E_α[α̂] − α, equal to −2/ln(1−T)."""

    return -2.0 / check_observation_end(T)


def bias_curve(T: float, alphas: Iterable[float], spec: QuadratureSpec | None = None) -> BiasCurve:
    alphas = tuple(float(alpha) for alpha in alphas)
    expectations = tuple(expected_mle(alpha, T, spec) for alpha in alphas)

    return BiasCurve(observation_end=T, alphas=alphas, expectations=expectations)

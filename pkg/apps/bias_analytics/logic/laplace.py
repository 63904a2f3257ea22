"""
Joint Laplace transform of (X_T², I_T) and the moment-ratio formula

    E[Y^j / Z] = ∫_0^∞ ∂^j/∂s^j M(s, −t)|_{s=0} dt,

used as an independent oracle for E[1/I_T] (j = 0) and E[X_T²/I_T] (j = 1):
the integration runs over t directly, without the substitution u = u(t) the
closed-form expectation relies on.
"""

import math

from apps.bias_analytics.domain import QuadratureSpec
from apps.bias_analytics.logic.integrands import bracket, check_observation_end, integrate, one_minus_e_over_u
from apps.common.exceptions import DomainError

SQRT2 = math.sqrt(2.0)

# below this |q|·ln(1−T)² the hyperbolic terms use their power series in q
_SERIES_SWITCH = 1e-8


def u_of(t: float, alpha: float) -> float:
    """u(t) = √(8t + (2α−1)²)/2, real for t ≥ −(2α−1)²/8."""

    return 0.5 * math.sqrt(8.0 * t + (2.0 * alpha - 1.0) ** 2)


def _cosh_and_sinhc(q: float, log_gap: float) -> tuple[float, float]:
    """
    cosh(uL) and sinh(uL)/u for u = √q/2, continued to q < 0 (u imaginary)
    as cos(|u|L) and sin(|u|L)/|u|.
    """

    z = q * log_gap * log_gap
    if abs(z) < _SERIES_SWITCH:
        return 1.0 + z / 8.0 + z * z / 384.0, log_gap * (1.0 + z / 24.0 + z * z / 1920.0)

    half_root = 0.5 * math.sqrt(abs(q))
    if q > 0.0:
        return math.cosh(half_root * log_gap), math.sinh(half_root * log_gap) / half_root

    return math.cos(half_root * log_gap), math.sin(half_root * log_gap) / half_root


def joint_laplace(s: float, t: float, alpha: float, T: float) -> float:
    """
    M(s, t) = E_α exp(s·X_T² + t·I_T)

            = (1−T)^{(1−2α)/4} / √(cosh(u(−t)L) + (1−2α+4s(1−T))/(2u(−t))·sinh(u(−t)L))

    Finite for s ≤ 0, t ≤ 0 and in a neighbourhood of the origin; raises
    `DomainError` where the expression under the root is not positive.
    """

    if not alpha >= 0.0:
        raise DomainError(f"alpha must be nonnegative, got {alpha}")

    log_gap = check_observation_end(T)
    a = -log_gap
    c = 0.5 - alpha
    c_s = c + 2.0 * s * (1.0 - T)
    q = (2.0 * alpha - 1.0) ** 2 - 8.0 * t

    if q > 0.0 and q * log_gap * log_gap >= _SERIES_SWITCH:
        # exp-scaled: cosh(uL) + (c_s/u)·sinh(uL) = e^{ua}·B_s/2
        u = 0.5 * math.sqrt(q)
        e = math.exp(-2.0 * u * a)
        b_s = (1.0 + e) - c_s * one_minus_e_over_u(u, a, 0.0)
        if b_s <= 0.0:
            raise DomainError(f"M(s={s}, t={t}) is infinite for alpha={alpha}, T={T}")
        return SQRT2 * math.exp(-0.5 * (c + u) * a) / math.sqrt(b_s)

    cosh_term, sinhc_term = _cosh_and_sinhc(q, log_gap)
    inner = cosh_term + c_s * sinhc_term
    if inner <= 0.0:
        raise DomainError(f"M(s={s}, t={t}) is infinite for alpha={alpha}, T={T}")

    return math.exp(0.5 * c * log_gap) / math.sqrt(inner)


def _oracle_integrand(j: int, alpha: float, T: float, spec: QuadratureSpec):
    log_gap = math.log1p(-T)
    a = -log_gap
    c = 0.5 - alpha
    width = spec.singularity_width

    def transform(t: float) -> float:
        u = u_of(t, alpha)
        b = bracket(u, c, a, width)
        weight = math.exp(-0.5 * (c + u) * a)
        return SQRT2 * weight / math.sqrt(b)

    def derivative(t: float) -> float:
        u = u_of(t, alpha)
        b = bracket(u, c, a, width)
        weight = math.exp(-0.5 * (c + u) * a)
        return SQRT2 * (1.0 - T) * one_minus_e_over_u(u, a, width) * weight / (b * math.sqrt(b))

    return transform if j == 0 else derivative


def moment_ratio_oracle(j: int, alpha: float, T: float, spec: QuadratureSpec | None = None) -> float:
    """E_α[1/I_T] for j = 0, E_α[X_T²/I_T] for j = 1, integrated over t ∈ [0, ∞)."""

    if j not in (0, 1):
        raise DomainError(f"moment order j must be 0 or 1, got {j}")
    if not alpha >= 0.0:
        raise DomainError(f"alpha must be nonnegative, got {alpha}")

    spec = spec if spec is not None else QuadratureSpec()
    log_gap = check_observation_end(T)
    c = 0.5 - alpha

    # map the u-truncation and break points of the closed form back to t = (u² − c²)/2
    lower_u = abs(c)
    upper_u = spec.upper_limit(lower_u, log_gap)
    scale = spec.decay_width(log_gap)
    t_of = lambda u: 0.5 * (u * u - c * c)  # noqa: E731
    points = [t_of(lower_u + k * scale) for k in (0.25, 1.0, 4.0, 16.0, 64.0) if lower_u + k * scale < upper_u]

    return integrate(
        _oracle_integrand(j, alpha, T, spec),
        0.0,
        t_of(upper_u),
        spec,
        points=points,
        label=f"moment_ratio_oracle(j={j}, alpha={alpha})",
    )

"""
Bias-corrected MLE: the α whose expected MLE equals the observed estimate.

The forward map α ↦ E_α[α̂] is memoized per (T, QuadratureSpec) in a
`ForwardMap`. Before the first inversion its values on a coarse grid are
computed and checked to be strictly increasing; a grid cell that receives
an observation is then replaced by a polynomial interpolant through
Chebyshev–Lobatto nodes, certified against two extra exact evaluations and
split in halves until the certificate holds. Observations above the coarse
grid are inverted with exact evaluations and a bracket grown from the
large-α asymptote.
"""

import logging
import math
import threading

import numpy as np
from scipy.interpolate import BarycentricInterpolator
from scipy.optimize import brentq

from apps.bias_analytics.domain import InversionResult, QuadratureSpec
from apps.bias_analytics.logic.expectation import asymptotic_bias, expected_mle
from apps.bias_analytics.logic.integrands import check_observation_end
from apps.common.config import INVERSION_CONFIG
from apps.common.exceptions import BracketFailure, DomainError

logger = logging.getLogger(__name__)

CELL_DEGREE = 8
MAX_REFINEMENTS = 6
_CHECK_FRACTIONS = (0.3, 0.7)
_MISSING = object()


def _lobatto_nodes(lower: float, upper: float, degree: int) -> np.ndarray:
    fractions = 0.5 * (1.0 - np.cos(np.pi * np.arange(degree + 1) / degree))
    nodes = lower + (upper - lower) * fractions
    nodes[0], nodes[-1] = lower, upper
    return nodes


class ForwardMap:
    """
    Memoized α ↦ E_α[α̂] for one observation end. Safe to share between
    threads: every insert is idempotent and done under a lock, reads are
    lock-free. Picklable, so a warmed map can be shipped to pool workers.
    """

    def __init__(self, T: float, spec: QuadratureSpec):
        check_observation_end(T)
        self.T = float(T)
        self.spec = spec
        self.root_tol = INVERSION_CONFIG["root_tol"]
        self.x_tol = INVERSION_CONFIG["x_tol"]
        self._lock = threading.Lock()
        self._values: dict[float, float] = {}
        self._cells: dict[tuple[float, float], BarycentricInterpolator | None] = {}
        self._table: tuple[np.ndarray, np.ndarray] | None = None

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def __repr__(self):
        return f"ForwardMap(T={self.T}, evaluations={len(self._values)}, cells={len(self._cells)})"

    def value(self, alpha: float) -> float:
        alpha = float(alpha)
        cached = self._values.get(alpha)
        if cached is not None:
            return cached

        value = expected_mle(alpha, self.T, self.spec)
        with self._lock:
            return self._values.setdefault(alpha, value)

    def verify_monotone(self) -> tuple[np.ndarray, np.ndarray]:
        """
        Evaluates the map on [0, monotone_upper] with the configured spacing
        and raises `BracketFailure` unless it is strictly increasing there.
        """

        if self._table is not None:
            return self._table

        upper = INVERSION_CONFIG["monotone_upper"]
        spacing = INVERSION_CONFIG["monotone_spacing"]
        grid = np.linspace(0.0, upper, int(round(upper / spacing)) + 1)
        values = np.array([self.value(alpha) for alpha in grid])

        steps = np.diff(values)
        if not np.all(steps > 0.0):
            k = int(np.argmin(steps))
            raise BracketFailure(
                f"expected MLE is not strictly increasing between alpha={grid[k]} and alpha={grid[k + 1]}",
                observation_end=self.T,
                alpha=float(grid[k]),
            )

        logger.debug("Forward map verified increasing on [0, %g] at T=%g (%d nodes)", upper, self.T, grid.size)
        with self._lock:
            if self._table is None:
                self._table = (grid, values)
        return self._table

    def _build_cell(self, lower: float, upper: float) -> BarycentricInterpolator | None:
        nodes = _lobatto_nodes(lower, upper, CELL_DEGREE)
        values = np.array([self.value(node) for node in nodes])
        if not np.all(np.diff(values) > 0.0):
            return None

        interpolant = BarycentricInterpolator(nodes, values)
        for fraction in _CHECK_FRACTIONS:
            probe = lower + fraction * (upper - lower)
            if abs(float(interpolant(probe)) - self.value(probe)) > 0.1 * self.root_tol:
                return None

        return interpolant

    def _cell(self, lower: float, upper: float) -> BarycentricInterpolator | None:
        key = (lower, upper)
        interpolant = self._cells.get(key, _MISSING)
        if interpolant is _MISSING:
            interpolant = self._build_cell(lower, upper)
            with self._lock:
                interpolant = self._cells.setdefault(key, interpolant)
        return interpolant

    def _exact_root(self, observed: float, lower: float, upper: float) -> float:
        return brentq(lambda alpha: self.value(alpha) - observed, lower, upper, xtol=self.x_tol)

    def _solve_in_cell(self, observed: float, lower: float, upper: float, depth: int = 0) -> tuple[float, float]:
        interpolant = self._cell(lower, upper)
        if interpolant is None:
            if depth >= MAX_REFINEMENTS:
                root = self._exact_root(observed, lower, upper)
                return root, self.value(root) - observed

            middle = 0.5 * (lower + upper)
            if observed <= self.value(middle):
                return self._solve_in_cell(observed, lower, middle, depth + 1)
            return self._solve_in_cell(observed, middle, upper, depth + 1)

        root = brentq(lambda alpha: float(interpolant(alpha)) - observed, lower, upper, xtol=self.x_tol)
        return root, float(interpolant(root)) - observed

    def _expand(self, observed: float, lower: float, e_lower: float) -> tuple[float, float]:
        """Grows [lower, upper] from the asymptotic guess until it brackets the observation."""

        guess = max(0.0, observed - asymptotic_bias(self.T))
        step = 1.0
        upper = max(guess, lower) + step

        for _ in range(INVERSION_CONFIG["max_expansions"]):
            e_upper = self.value(upper)
            if e_upper >= observed:
                logger.debug("Bracket [%g, %g] for observed=%g at T=%g", lower, upper, observed, self.T)
                root = self._exact_root(observed, lower, upper)
                return root, self.value(root) - observed
            if e_upper <= e_lower:
                raise BracketFailure(
                    f"expected MLE stopped increasing beyond alpha={lower}",
                    observation_end=self.T,
                    observed=observed,
                )
            lower, e_lower = upper, e_upper
            step *= 2.0
            upper = lower + step

        raise BracketFailure(
            f"no bracket for observed={observed} after {INVERSION_CONFIG['max_expansions']} expansions",
            observation_end=self.T,
            observed=observed,
        )

    def invert(self, observed: float) -> InversionResult:
        if not math.isfinite(observed):
            raise DomainError(f"observed estimate must be finite, got {observed}")

        grid, values = self.verify_monotone()
        if observed <= values[0]:
            return InversionResult(
                alpha_cmle=0.0,
                status="clamped_at_zero",
                observed=observed,
                observation_end=self.T,
                residual=float(values[0] - observed),
            )

        if observed > values[-1]:
            root, residual = self._expand(observed, float(grid[-1]), float(values[-1]))
        else:
            k = int(np.searchsorted(values, observed, side="left"))
            root, residual = self._solve_in_cell(observed, float(grid[k - 1]), float(grid[k]))

        return InversionResult(
            alpha_cmle=max(root, 0.0),
            status="interior",
            observed=observed,
            observation_end=self.T,
            residual=residual,
        )


_REGISTRY: dict[tuple[float, QuadratureSpec], ForwardMap] = {}
_REGISTRY_LOCK = threading.Lock()


def forward_map(T: float, spec: QuadratureSpec | None = None) -> ForwardMap:
    """The shared `ForwardMap` of (T, spec), created on first use."""

    spec = spec if spec is not None else QuadratureSpec()
    key = (float(T), spec)
    fmap = _REGISTRY.get(key)
    if fmap is None:
        with _REGISTRY_LOCK:
            fmap = _REGISTRY.setdefault(key, ForwardMap(T, spec))
    return fmap


def register_forward_map(fmap: ForwardMap) -> None:
    """Installs an already warmed map, e.g. one received by a worker process."""

    with _REGISTRY_LOCK:
        _REGISTRY[(fmap.T, fmap.spec)] = fmap


def correct_mle(observed: float, T: float, spec: QuadratureSpec | None = None) -> InversionResult:
    """
    α̂_CMLE = E^{−1}[α̂]. Observations at or below E_0[α̂] are clamped to 0 and
    flagged with status `clamped_at_zero`.
    """

    return forward_map(T, spec).invert(float(observed))

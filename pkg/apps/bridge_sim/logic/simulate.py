import logging
import math
from collections.abc import Sequence

import numpy as np

from apps.bridge_sim.domain import BridgeParams, PathOrigin, RngSeed, SamplePath, TimeGrid
from apps.bridge_sim.logic.transitions import transition_arrays
from apps.common.exceptions import DomainError

logger = logging.getLogger(__name__)

GENERATORS = ("exact", "euler")


def _check_horizons(params: BridgeParams, grid: TimeGrid):
    if not math.isclose(params.horizon, grid.horizon, rel_tol=1e-12):
        raise DomainError(f"grid horizon {grid.horizon} does not match the bridge horizon {params.horizon}")


def _standard_normals(seeds: Sequence[RngSeed], n_steps: int) -> np.ndarray:
    """One row of innovations per seed, each drawn from its own substream."""

    draws = np.empty((len(seeds), n_steps))
    for row, seed in enumerate(seeds):
        draws[row] = seed.generator().standard_normal(n_steps)

    return draws


def simulate_batch(
    alpha: float,
    unit_times: np.ndarray,
    seeds: Sequence[RngSeed],
    generator: str = "exact",
) -> np.ndarray:
    """
    Simulate one path per seed on a unit-horizon grid and return the values as
    an array of shape (len(seeds), len(unit_times)). Row i only depends on
    seeds[i], so batches can be split across workers freely.

    exact: X_{i+1} = decay_i·X_i + sd_i·Z_i (exact finite-dimensional law)
    euler: X_{i+1} = X_i − α·X_i/(1−t_i)·Δt_i + √Δt_i·Z_i
    """

    if generator not in GENERATORS:
        raise DomainError(f"unknown generator {generator!r}, expected one of {GENERATORS}")

    unit_times = np.asarray(unit_times, dtype=float)
    n_steps = unit_times.size - 1
    values = np.zeros((len(seeds), unit_times.size))
    if n_steps == 0 or not len(seeds):
        return values

    innovations = _standard_normals(seeds, n_steps)

    if generator == "exact":
        decay, sd = transition_arrays(alpha, unit_times)
        for i in range(n_steps):
            values[:, i + 1] = decay[i] * values[:, i] + sd[i] * innovations[:, i]
    else:
        steps = np.diff(unit_times)
        drift = 1.0 - alpha * steps / (1.0 - unit_times[:-1])
        root_steps = np.sqrt(steps)
        for i in range(n_steps):
            values[:, i + 1] = drift[i] * values[:, i] + root_steps[i] * innovations[:, i]

    return values


def _simulate(params: BridgeParams, grid: TimeGrid, seed: RngSeed, generator: str) -> SamplePath:
    _check_horizons(params, grid)

    scale = params.horizon
    values = simulate_batch(params.alpha, grid.as_array() / scale, [seed], generator=generator)[0]
    if scale != 1.0:
        # self-similarity: X^(S)_t = √S · X^(1)_{t/S}
        values = values * math.sqrt(scale)

    origin = PathOrigin(generator=generator, seed=seed.seed, stream_index=seed.stream_index, alpha=params.alpha)
    logger.debug("Simulated %s path with alpha=%s on %d points", generator, params.alpha, len(grid))

    return SamplePath(grid=grid, values=tuple(values.tolist()), origin=origin)


def simulate_exact(params: BridgeParams, grid: TimeGrid, seed: RngSeed) -> SamplePath:
    """Sample a path from the exact Gaussian transitions of the explicit solution."""

    return _simulate(params, grid, seed, "exact")


def simulate_euler(params: BridgeParams, grid: TimeGrid, seed: RngSeed) -> SamplePath:
    """Sample a path with the Euler–Maruyama scheme on the SDE. Independent cross-check of `simulate_exact`."""

    return _simulate(params, grid, seed, "euler")


def rescale_to_horizon(path: SamplePath, horizon: float) -> SamplePath:
    """Map a unit-horizon path to [0, S]: times scale by S, values by √S."""

    if not horizon > 0.0 or not math.isfinite(horizon):
        raise DomainError(f"horizon must be positive, got {horizon}")
    if not math.isclose(path.horizon, 1.0, rel_tol=1e-12):
        raise DomainError(f"rescaling expects a unit-horizon path, got horizon {path.horizon}")

    times, values = path.as_arrays()
    grid = TimeGrid(times=tuple((times * horizon).tolist()), horizon=horizon)

    return SamplePath(grid=grid, values=tuple((values * math.sqrt(horizon)).tolist()), origin=path.origin)


def to_unit_horizon(path: SamplePath) -> SamplePath:
    """Inverse of `rescale_to_horizon`. Unit-horizon paths are returned as they are."""

    if path.horizon == 1.0:
        return path

    times, values = path.as_arrays()
    grid = TimeGrid(times=tuple((times / path.horizon).tolist()), horizon=1.0)

    return SamplePath(grid=grid, values=tuple((values / math.sqrt(path.horizon)).tolist()), origin=path.origin)

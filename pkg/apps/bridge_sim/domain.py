import numpy as np
from pydantic import Field, model_validator

from apps.common.config import SIMULATION_CONFIG
from apps.common.domain import AppDomainModel

UINT64_MAX = 2**64 - 1


class BridgeParams(AppDomainModel):
    """The model under study: dX = dW − α X / (S − t) dt, X_0 = 0 on [0, S)."""

    alpha: float = Field(..., ge=0.0, allow_inf_nan=False, description="Scaling parameter α.")
    horizon: float = Field(
        SIMULATION_CONFIG["horizon"], gt=0.0, allow_inf_nan=False, description="Bridge end time S."
    )


class TimeGrid(AppDomainModel):
    """
    Observation times of a path. Starts at 0, strictly increasing, and ends at
    the observation end T which lies strictly before the horizon.
    """

    times: tuple[float, ...] = Field(..., min_length=1)
    horizon: float = Field(SIMULATION_CONFIG["horizon"], gt=0.0, allow_inf_nan=False)

    @model_validator(mode="after")
    def check_times(self):
        times = np.asarray(self.times, dtype=float)

        if times[0] != 0.0:
            raise ValueError("the grid must start at t=0")
        if not np.all(np.isfinite(times)):
            raise ValueError("grid times must be finite")
        if np.any(np.diff(times) <= 0.0):
            raise ValueError("grid times must be strictly increasing")
        if times[-1] >= self.horizon:
            raise ValueError(f"observation end {times[-1]} must lie before the horizon {self.horizon}")

        return self

    @classmethod
    def uniform(cls, observation_end: float, n_points: int, horizon: float = 1.0) -> "TimeGrid":
        """
        Uniform grid t_i = i·T/(n_points − 1), both endpoints included. A
        single point is the degenerate grid [0].
        """

        if n_points < 1:
            raise ValueError("a grid needs at least one point")
        if n_points == 1:
            return cls(times=(0.0,), horizon=horizon)

        times = np.linspace(0.0, observation_end, n_points)
        return cls(times=tuple(times.tolist()), horizon=horizon)

    @property
    def observation_end(self) -> float:
        return self.times[-1]

    def __len__(self):
        return len(self.times)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.times, dtype=float)


class PathOrigin(AppDomainModel):
    """Where a path came from. Synthetic paths record their generator, seed and true α."""

    generator: str = "observed"
    seed: int | None = None
    stream_index: int | None = None
    alpha: float | None = None


class SamplePath(AppDomainModel):
    """A discretized trajectory. Starts at X_0 = 0."""

    grid: TimeGrid
    values: tuple[float, ...]
    origin: PathOrigin = PathOrigin()

    @model_validator(mode="after")
    def check_values(self):
        if len(self.values) != len(self.grid.times):
            raise ValueError(f"{len(self.values)} values for {len(self.grid.times)} grid times")
        if self.values[0] != 0.0:
            raise ValueError("the process starts at 0")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("path values must be finite")

        return self

    @property
    def observation_end(self) -> float:
        return self.grid.observation_end

    @property
    def horizon(self) -> float:
        return self.grid.horizon

    @property
    def terminal_value(self) -> float:
        """X_T, the last observed value."""

        return self.values[-1]

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return self.grid.as_array(), np.asarray(self.values, dtype=float)


class RngSeed(AppDomainModel):
    """
    Seed of a per-path random stream. The pair (seed, stream_index) maps to a
    counter-based Philox generator; distinct stream indices give independent
    streams regardless of the order in which they are drawn.
    """

    seed: int = Field(..., ge=0, le=UINT64_MAX)
    stream_index: int = Field(0, ge=0)

    def generator(self) -> np.random.Generator:
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_index,))
        return np.random.Generator(np.random.Philox(sequence))

    def substream(self, stream_index: int) -> "RngSeed":
        return RngSeed(seed=self.seed, stream_index=stream_index)

from pathlib import Path
from typing import TextIO

import pandas as pd

from apps.bridge_sim.domain import PathOrigin, SamplePath, TimeGrid
from apps.common.config import CLI_CONFIG
from apps.common.exceptions import DomainError

PATH_COLUMNS = ["t", "x"]


def path_to_frame(path: SamplePath) -> pd.DataFrame:
    return pd.DataFrame({"t": path.grid.times, "x": path.values})


def write_path_csv(path: SamplePath, target: str | Path | TextIO):
    """Write a path as `t,x` rows with 17 significant digits."""

    path_to_frame(path).to_csv(target, index=False, float_format=CLI_CONFIG["float_format"], lineterminator="\n")


def read_path_csv(source: str | Path | TextIO, horizon: float = 1.0) -> SamplePath:
    """Read a `t,x` CSV back into a `SamplePath`. Parsing round-trips the written digits exactly."""

    frame = pd.read_csv(source, float_precision="round_trip")
    if list(frame.columns) != PATH_COLUMNS:
        raise DomainError(f"path CSV must have the header {','.join(PATH_COLUMNS)}, got {','.join(frame.columns)}")
    if frame.empty:
        raise DomainError("path CSV has no rows")

    grid = TimeGrid(times=tuple(frame["t"].astype(float).tolist()), horizon=horizon)
    return SamplePath(grid=grid, values=tuple(frame["x"].astype(float).tolist()), origin=PathOrigin())

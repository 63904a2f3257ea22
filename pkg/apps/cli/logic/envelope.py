"""Output of the `bridge` command: CSV tables or the versioned JSON envelope."""

import io
import json
from pathlib import Path
from typing import TextIO

import pandas as pd
from pydantic import Field

from apps.common.config import CLI_CONFIG
from apps.common.domain import AppDomainModel
from apps.common.helpers import json_safe


class CommandOutput(AppDomainModel):
    """What a subcommand produced: the resolved config and one table."""

    command: str
    config: dict
    rows: list[dict]
    columns: list[str] = Field(default_factory=list)
    default_format: str = "csv"

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=self.columns or None)

    def envelope(self) -> dict:
        return {
            "schema": CLI_CONFIG["schema"],
            "command": self.command,
            "config": json_safe(self.config),
            "rows": json_safe(self.rows),
        }


def render(output: CommandOutput, fmt: str | None = None) -> str:
    fmt = fmt or output.default_format
    if fmt == "json":
        return json.dumps(output.envelope(), indent=2, allow_nan=False) + "\n"

    buffer = io.StringIO()
    output.frame().to_csv(buffer, index=False, float_format=CLI_CONFIG["float_format"], lineterminator="\n")
    return buffer.getvalue()


def write_output(output: CommandOutput, fmt: str | None, out: str | Path | None, stdout: TextIO):
    """Writes the rendered table to `out`, or to `stdout` when no file is given."""

    text = render(output, fmt)
    if out is None:
        stdout.write(text)
        return

    Path(out).write_text(text)


def resolved_config_line(output: CommandOutput) -> str:
    """One JSON line with the fully resolved config, echoed on stderr."""

    return json.dumps({"command": output.command, "config": json_safe(output.config)}, sort_keys=True)


def error_line(exc) -> str:
    return json.dumps(json_safe(exc.as_dict()), sort_keys=True)

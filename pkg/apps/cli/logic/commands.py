"""
The subcommands of `manage.py bridge`. Each one resolves its options into a
config, calls the library and returns a `CommandOutput`; nothing here does
numerics of its own.
"""

import json
from pathlib import Path

import numpy as np

from apps.bayes.domain import PriorSpec
from apps.bayes.logic.posterior import posterior, posterior_density
from apps.bayes.logic.priors import printed_jeffreys_density
from apps.bias_analytics.domain import QuadratureSpec
from apps.bias_analytics.logic.expectation import asymptotic_bias, bias_curve, expected_mle
from apps.bias_analytics.logic.inversion import correct_mle
from apps.bridge_sim.domain import BridgeParams, RngSeed, TimeGrid
from apps.bridge_sim.logic.io import path_to_frame, read_path_csv
from apps.bridge_sim.logic.simulate import simulate_euler, simulate_exact
from apps.cli.logic.envelope import CommandOutput
from apps.cli.logic.figures import figures
from apps.common.config import CLI_CONFIG, EXPERIMENT_CONFIG
from apps.common.exceptions import DomainError
from apps.mc_harness.domain import ExperimentConfig
from apps.mc_harness.logic.experiment import run_experiment
from apps.mc_harness.logic.report import SUMMARY_COLUMNS, compare_to_analytic, summary_frame, write_records
from apps.path_statistics.logic.mle import mle


def quadrature_spec(options: dict) -> QuadratureSpec:
    spec = QuadratureSpec.from_settings()
    if options.get("rel_tol") is not None:
        spec = QuadratureSpec(**{**spec.model_dump(), "rel_tol": options["rel_tol"]})
    return spec


def simulate(options: dict) -> CommandOutput:
    horizon = options["horizon"]
    grid = TimeGrid.uniform(options["T"], options["n"], horizon=horizon)
    params = BridgeParams(alpha=options["alpha"], horizon=horizon)
    seed = RngSeed(seed=options["seed"], stream_index=options["stream"])

    generate = simulate_exact if options["generator"] == "exact" else simulate_euler
    path = generate(params, grid, seed)

    config = {
        "alpha": params.alpha,
        "T": options["T"],
        "n": options["n"],
        "horizon": horizon,
        "seed": seed.seed,
        "stream": seed.stream_index,
        "generator": options["generator"],
    }
    rows = path_to_frame(path).to_dict("records")
    return CommandOutput(command="simulate", config=config, rows=rows, columns=["t", "x"])


def estimate(options: dict) -> CommandOutput:
    path = read_path_csv(options["path"], horizon=options["horizon"])
    record = mle(path, options["rule"]).as_record()

    config = {"path": str(options["path"]), "horizon": options["horizon"], "rule": options["rule"]}
    return CommandOutput(command="estimate", config=config, rows=[record], columns=list(record))


def expected(options: dict) -> CommandOutput:
    spec = quadrature_spec(options)
    alpha, T = options["alpha"], options["T"]
    value = expected_mle(alpha, T, spec)

    config = {"alpha": alpha, "T": T, "quadrature": spec.model_dump()}
    rows = [{"alpha": alpha, "T": T, "expectation": value, "bias": value - alpha}]
    return CommandOutput(command="expected-mle", config=config, rows=rows, columns=list(rows[0]))


def curve(options: dict) -> CommandOutput:
    spec = quadrature_spec(options)
    lower, upper, step = options["alpha_min"], options["alpha_max"], options["alpha_step"]
    if not 0.0 <= lower <= upper or not step > 0.0:
        raise DomainError(f"need 0 <= alpha-min <= alpha-max and a positive step, got {lower}, {upper}, {step}")

    alphas = np.round(np.arange(lower, upper + 0.5 * step, step), 12)
    result = bias_curve(options["T"], alphas, spec)

    config = {
        "T": options["T"],
        "alpha_min": lower,
        "alpha_max": upper,
        "alpha_step": step,
        "asymptotic_bias": asymptotic_bias(options["T"]),
        "quadrature": spec.model_dump(),
    }
    columns = ["alpha", "expectation", "bias"]
    return CommandOutput(command="bias-curve", config=config, rows=result.rows(), columns=columns)


def correct(options: dict) -> CommandOutput:
    spec = quadrature_spec(options)
    result = correct_mle(options["observed"], options["T"], spec)

    config = {"observed": options["observed"], "T": options["T"], "quadrature": spec.model_dump()}
    row = result.model_dump()
    return CommandOutput(command="correct", config=config, rows=[row], columns=list(row))


def posterior_summary(options: dict) -> CommandOutput:
    path = read_path_csv(options["path"])
    spec = PriorSpec.from_settings(options["prior"], path.observation_end, options["upper"])
    summary = posterior(spec, path, options["tol"], rule=options["rule"])

    if options["density_out"]:
        frame = posterior_density(spec, path, rule=options["rule"]).rows()
        if options["compare_printed"]:
            for row in frame:
                row["printed_jeffreys"] = printed_jeffreys_density(row["alpha"], spec.observation_end)
        _write_rows(frame, options["density_out"])

    config = {
        "path": str(options["path"]),
        "prior": spec.kind,
        "upper": spec.support_upper,
        "T": spec.observation_end,
        "tol": options["tol"],
        "rule": options["rule"],
        "density_out": options["density_out"],
    }
    row = summary.model_dump()
    return CommandOutput(command="posterior", config=config, rows=[row], columns=list(row), default_format="json")


def _write_rows(rows: list[dict], target: str | Path):
    import pandas as pd

    pd.DataFrame(rows).to_csv(target, index=False, float_format=CLI_CONFIG["float_format"], lineterminator="\n")


def experiment_config(options: dict) -> ExperimentConfig:
    """The study config: JSON file first, then explicit flags, then the settings."""

    overrides = {}
    if options.get("config"):
        overrides = json.loads(Path(options["config"]).read_text())
        if "T" in overrides:
            overrides["observation_end"] = overrides.pop("T")

    for key in ("n_paths", "n_grid", "workers", "seed"):
        if options.get(key) is not None:
            overrides[key] = options[key]
    if options.get("full_scale"):
        overrides["n_paths"] = EXPERIMENT_CONFIG["full_scale_n_paths"]

    return ExperimentConfig.from_settings(**overrides)


def experiment(options: dict) -> CommandOutput:
    config = experiment_config(options)
    spec = quadrature_spec(options)
    result, records = run_experiment(config, spec)

    out_dir = Path(options["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    summary_frame(result.rows).to_csv(
        out_dir / "summary.csv", index=False, float_format=CLI_CONFIG["float_format"], lineterminator="\n"
    )
    if options["records"]:
        write_records(records, out_dir / "records.csv.gz")
    if options["compare"]:
        comparison = compare_to_analytic(result.rows, config.observation_end, config.n_grid, spec)
        _write_rows([row.model_dump() for row in comparison], out_dir / "comparison.csv")

    rows = [row.as_csv_row() for row in result.rows]
    resolved = {
        **config.model_dump(mode="json"),
        "out_dir": str(out_dir),
        "degenerate": list(result.degenerate_counts),
        "tail_mass_exceeded": list(result.tail_mass_counts),
    }
    return CommandOutput(command="experiment", config=resolved, rows=rows, columns=SUMMARY_COLUMNS)


def figure_bundle(options: dict) -> CommandOutput:
    config = experiment_config(options)
    written = figures(options["which"], options["out_dir"], options["seed"] or EXPERIMENT_CONFIG["seed"], config)

    resolved = {"which": sorted(set(options["which"])), "out_dir": str(options["out_dir"])}
    if 4 in options["which"]:
        resolved["experiment"] = config.model_dump(mode="json")
    rows = [{"file": str(path)} for path in written]
    return CommandOutput(command="figures", config=resolved, rows=rows, columns=["file"])


HANDLERS = {
    "simulate": simulate,
    "estimate": estimate,
    "expected-mle": expected,
    "bias-curve": curve,
    "correct": correct,
    "posterior": posterior_summary,
    "experiment": experiment,
    "figures": figure_bundle,
}

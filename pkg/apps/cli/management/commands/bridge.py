import argparse
import logging
import sys

from django.conf import settings
from django.core.management.base import BaseCommand

from apps.cli.logic.commands import HANDLERS
from apps.cli.logic.envelope import error_line, resolved_config_line, write_output
from apps.common.config import ENERGY_RULES, EXPERIMENT_CONFIG, SIMULATION_CONFIG
from apps.common.exceptions import BridgeError, DomainError

logger = logging.getLogger(__name__)

# subcommands whose --out names a directory, their table still goes to stdout
DIRECTORY_OUTPUT = ("experiment", "figures")


def _common_flags() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--seed", type=int, default=None, help="Root seed of the random streams.")
    parser.add_argument("--out", default=None, help="Output file (directory for experiment and figures).")
    parser.add_argument("--format", choices=["csv", "json"], default=None, dest="output_format")
    return parser


class Command(BaseCommand):
    help = "Simulate α-Brownian bridges, estimate α and run the Monte Carlo study."

    def add_arguments(self, parser):
        common = _common_flags()
        subcommands = parser.add_subparsers(dest="subcommand", required=True)

        simulate = subcommands.add_parser("simulate", parents=[common], help="Draw one path as a t,x CSV.")
        simulate.add_argument("--alpha", type=float, required=True)
        simulate.add_argument("--T", type=float, default=SIMULATION_CONFIG["observation_end"])
        simulate.add_argument(
            "--n", type=int, default=SIMULATION_CONFIG["n_grid"], help="Grid points, endpoints included."
        )
        simulate.add_argument("--generator", choices=SIMULATION_CONFIG["generators"], default="exact")
        simulate.add_argument("--horizon", type=float, default=SIMULATION_CONFIG["horizon"])
        simulate.add_argument("--stream", type=int, default=0, help="Substream index of the path.")

        estimate = subcommands.add_parser("estimate", parents=[common], help="MLE of α from a path CSV.")
        estimate.add_argument("--path", required=True)
        estimate.add_argument("--horizon", type=float, default=SIMULATION_CONFIG["horizon"])
        estimate.add_argument("--rule", choices=ENERGY_RULES, default="rectangle")

        expected = subcommands.add_parser("expected-mle", parents=[common], help="Exact E_α[α̂] at one α.")
        expected.add_argument("--alpha", type=float, required=True)
        expected.add_argument("--T", type=float, required=True)
        expected.add_argument("--rel-tol", type=float, default=None)

        curve = subcommands.add_parser("bias-curve", parents=[common], help="Expectation and bias of α̂ over α.")
        curve.add_argument("--T", type=float, required=True)
        curve.add_argument("--alpha-min", type=float, default=0.0)
        curve.add_argument("--alpha-max", type=float, default=10.0)
        curve.add_argument("--alpha-step", type=float, default=0.1)
        curve.add_argument("--rel-tol", type=float, default=None)

        correct = subcommands.add_parser("correct", parents=[common], help="Bias-corrected estimate of α.")
        correct.add_argument("--observed", type=float, required=True)
        correct.add_argument("--T", type=float, required=True)
        correct.add_argument("--rel-tol", type=float, default=None)

        posterior = subcommands.add_parser("posterior", parents=[common], help="Posterior mean and median of α.")
        posterior.add_argument("--path", required=True)
        posterior.add_argument("--prior", choices=["jeffreys", "uniform"], default="jeffreys")
        posterior.add_argument("--upper", type=float, default=None, help="Support bound U of the prior.")
        posterior.add_argument("--tol", type=float, default=None, help="Allowed posterior mass beyond U.")
        posterior.add_argument("--rule", choices=ENERGY_RULES, default="rectangle")
        posterior.add_argument("--density-out", default=None, help="Also write the alpha,density CSV here.")
        posterior.add_argument(
            "--compare-printed", action="store_true", help="Add the printed Jeffreys expression to the density CSV."
        )

        experiment = subcommands.add_parser("experiment", parents=[common], help="Monte Carlo bias and MSE study.")
        experiment.add_argument("--config", default=None, help="JSON file with ExperimentConfig fields.")
        experiment.add_argument("--n-paths", type=int, default=None)
        experiment.add_argument("--n-grid", type=int, default=None)
        experiment.add_argument("--workers", type=int, default=None)
        experiment.add_argument("--records", action="store_true", help="Also write records.csv.gz.")
        experiment.add_argument("--compare", action="store_true", help="Also write comparison.csv against E_α[α̂].")
        experiment.add_argument(
            "--full-scale", action="store_true", help=f"{EXPERIMENT_CONFIG['full_scale_n_paths']} paths per α."
        )

        figures = subcommands.add_parser("figures", parents=[common], help="CSV data behind the figures.")
        figures.add_argument("--which", type=int, nargs="+", choices=[1, 2, 3, 4], default=[1, 2, 3, 4])
        figures.add_argument("--config", default=None, help="Experiment config of the Monte Carlo figure.")
        figures.add_argument("--n-paths", type=int, default=None)
        figures.add_argument("--workers", type=int, default=None)

    def handle(self, *args, **options):
        name = options["subcommand"]
        if name in DIRECTORY_OUTPUT:
            options["out_dir"] = options["out"] or settings.BRIDGE_OUTPUT_DIR
            options["out"] = None
        if name == "simulate" and options["seed"] is None:
            options["seed"] = EXPERIMENT_CONFIG["seed"]
        if name == "posterior" and options["tol"] is None:
            options["tol"] = settings.BRIDGE_POSTERIOR_TOL

        try:
            output = HANDLERS[name](options)
        except BridgeError as exc:
            self.fail(exc)
        except (OSError, ValueError) as exc:
            # pydantic validation errors are ValueErrors too
            self.fail(DomainError(str(exc)))

        self.stderr.write(resolved_config_line(output))
        write_output(output, options["output_format"], options["out"], self.stdout)
        logger.debug("%s finished with %d rows", name, len(output.rows))

    def fail(self, exc: BridgeError):
        logger.debug("bridge %s failed", exc.code, exc_info=exc)
        self.stderr.write(error_line(exc))
        sys.exit(1)

from __future__ import annotations

import argparse
import logging

import numpy as np

from ..errors import ConfigError
from ..harness import bisect_threshold, reproduce_table_row, sweep
from ..harness.trials import TrialSpec
from ..report import render_table_row
from ..serialize import dumps, sweep_csv, write_text
from .base import EXIT_FLAGGED, Subcommand, add_host_arguments, float_list, host_spec, int_list

logger = logging.getLogger(__name__)


def _add_trial_arguments(arg_group: argparse.ArgumentParser) -> None:
    arg_group.add_argument("--r", type=int, required=True, help="Clique size of the factor")
    arg_group.add_argument("--s", type=int, default=None, help="Regime s, recorded in the summary")
    arg_group.add_argument("--trials", type=int, default=200, help="Trials per grid point or probe [200]")
    arg_group.add_argument("--budget", type=int, default=200_000, help="Solver node budget per trial [200000]")
    arg_group.add_argument(
        "--no-validate",
        dest="validate",
        action="store_false",
        default=True,
        help="Skip re-checking every solver answer",
    )


def _trial_spec(options: argparse.Namespace, grid: list[float], trials: int, budget: int, seed: int) -> TrialSpec:
    return TrialSpec(
        host_spec(options),
        options.r,
        tuple(grid),
        trials,
        seed,
        budget,
        s=options.s,
        validate=options.validate,
    )


class SweepSubcommand(Subcommand):
    name = "sweep"
    short_desc = "Success probability of a K_r-factor along a grid of edge probabilities"

    def add_arguments(self, arg_group: argparse.ArgumentParser) -> None:
        add_host_arguments(arg_group)
        _add_trial_arguments(arg_group)
        arg_group.add_argument("--p-grid", type=float_list, default=None, help="Explicit grid, e.g. 0.05,0.1,0.2")
        arg_group.add_argument(
            "--p-range",
            type=float,
            nargs=3,
            metavar=("LOW", "HIGH", "COUNT"),
            default=None,
            help="Geometric grid of COUNT points from LOW to HIGH",
        )
        arg_group.add_argument("--summary", metavar="FILE", default=None, help="Write the JSON summary here")

    def run(self, options: argparse.Namespace) -> int:
        state = self.experiment_state(options, trials=options.trials, budget=options.budget)
        if options.p_grid:
            grid = list(options.p_grid)
        elif options.p_range is not None:
            low, high, count = options.p_range
            if low <= 0 or count < 2:
                raise ConfigError("--p-range needs LOW > 0 and COUNT >= 2")
            grid = [float(x) for x in np.geomspace(low, high, int(count))]
        else:
            raise ConfigError("give either --p-grid or --p-range")
        spec = _trial_spec(options, grid, state.trials, state.budget, state.seed)
        result = sweep(spec, state.threads)
        logger.info("sweep finished in %.1f s", result.elapsed)
        self.emit(options, sweep_csv(result.rows()))
        if options.summary is not None:
            write_text(dumps(result.summary()), options.summary)
        for flag in result.flags:
            logger.warning("flag: %s", flag)
        return EXIT_FLAGGED if result.flags else 0


class BisectSubcommand(Subcommand):
    name = "bisect"
    short_desc = "Locate the edge probability where the factor appears half of the time"

    def add_arguments(self, arg_group: argparse.ArgumentParser) -> None:
        add_host_arguments(arg_group)
        _add_trial_arguments(arg_group)
        arg_group.add_argument("--low", type=float, required=True, help="Lower end of the bracket")
        arg_group.add_argument("--high", type=float, default=1.0, help="Upper end of the bracket [1]")
        arg_group.add_argument("--target", type=float, default=0.5, help="Success rate to locate [0.5]")
        arg_group.add_argument("--tolerance", type=float, default=0.05, help="Relative bracket width [0.05]")
        arg_group.add_argument("--max-probes", type=int, default=40)

    def run(self, options: argparse.Namespace) -> int:
        state = self.experiment_state(
            options, trials=options.trials, budget=options.budget, tolerance=options.tolerance
        )
        spec = _trial_spec(options, [options.low, options.high], state.trials, state.budget, state.seed)
        result = bisect_threshold(spec, options.target, state.tolerance, options.max_probes, threads=state.threads)
        self.emit_json(options, result.to_json())
        return EXIT_FLAGGED if result.flags else 0


class TableSubcommand(Subcommand):
    name = "table"
    short_desc = "Compare estimated thresholds with one row of the K_r-factor threshold table"

    def add_arguments(self, arg_group: argparse.ArgumentParser) -> None:
        arg_group.add_argument(
            "--case",
            required=True,
            help="Row name such as '(1/4,1/2)' or a host density alpha such as 1/3",
        )
        arg_group.add_argument("--n-list", type=int_list, required=True, help="Sizes, e.g. 16,24,32")
        arg_group.add_argument("--r", type=int, default=4, help="Clique size [4]")
        arg_group.add_argument("--trials", type=int, default=200, help="Trials per probe [200]")
        arg_group.add_argument("--budget", type=int, default=200_000, help="Solver node budget per trial [200000]")
        arg_group.add_argument("--tolerance", type=float, default=0.05, help="Relative bisection width [0.05]")
        arg_group.add_argument(
            "--slope-tolerance",
            type=float,
            default=0.25,
            help="Allowed gap between fitted and predicted slope, on top of two standard errors [0.25]",
        )
        arg_group.add_argument("--format", choices=("json", "text"), default="text")

    def run(self, options: argparse.Namespace) -> int:
        state = self.experiment_state(
            options, trials=options.trials, budget=options.budget, tolerance=options.tolerance
        )
        report = reproduce_table_row(
            options.case,
            options.n_list,
            seed=state.seed,
            trials=state.trials,
            r=options.r,
            budget=state.budget,
            tolerance=state.tolerance,
            slope_tolerance=options.slope_tolerance,
            threads=state.threads,
        )
        if options.format == "text":
            self.emit(options, render_table_row(report))
        else:
            self.emit_json(options, report.to_json())
        return 0 if report.verdict == "consistent" and not report.flags else EXIT_FLAGGED

from __future__ import annotations

import argparse
import logging

from ..absorber import absorber_clique_size, build_absorber
from ..params import RParams, Variant
from ..partitioner import find_partition
from ..regularity import check_eps_regular
from ..report import render_partition
from ..utils import format_fraction
from ..validate import validate_absorber
from .base import EXIT_FLAGGED, Subcommand, add_host_arguments, fraction_arg, fraction_list, host_spec, int_list

logger = logging.getLogger(__name__)


class PartitionSubcommand(Subcommand):
    name = "partition"
    short_desc = "Find an h-partition of the host and report its properties"

    def add_arguments(self, arg_group: argparse.ArgumentParser) -> None:
        add_host_arguments(arg_group)
        arg_group.add_argument("--r", type=int, required=True)
        arg_group.add_argument("--s", type=int, required=True)
        arg_group.add_argument("--beta", type=fraction_arg, default=None, help="Property constant beta [1/20]")
        arg_group.add_argument(
            "--gammas",
            type=fraction_list,
            default=None,
            help="gamma_1..gamma_m, comma separated [2^(h-m)/50]",
        )
        arg_group.add_argument(
            "--samples",
            type=int,
            default=32,
            help="Restarts of the sparse-set heuristic above the exact limit [32]",
        )
        arg_group.add_argument("--step-limit", type=int, default=None, help="Cleanup shift limit [n^2]")
        arg_group.add_argument(
            "--with-absorber",
            action="store_true",
            default=False,
            help="Also sample an absorber of K_k copies on the host",
        )
        arg_group.add_argument("--xi", type=fraction_arg, default="1/10", help="Absorber density xi [1/10]")
        arg_group.add_argument(
            "--keep-probability",
            type=fraction_arg,
            default=None,
            help="Keep probability of each candidate clique [(xi/10) n^(1-g)]",
        )
        arg_group.add_argument("--k", type=int, default=None, help="Absorbed set size [1 + g]")
        arg_group.add_argument("--format", choices=("json", "text"), default="json")

    def run(self, options: argparse.Namespace) -> int:
        overrides = {} if options.beta is None else {"beta": options.beta}
        state = self.experiment_state(options, gammas=options.gammas, step_limit=options.step_limit, **overrides)
        host = host_spec(options).build()
        params = RParams.from_r_s(options.r, options.s, Variant.ABSORBER)
        search = find_partition(
            host,
            params,
            state.partition_constants(params),
            seed=state.seed,
            samples=options.samples,
            step_limit=state.step_limit,
        )
        flagged = not search.certified
        doc: dict[str, object] = {
            "partition": search.partition.describe(),
            "report": search.report.to_json(),
            "certified": search.certified,
            "method": search.method,
            "trace": [{"action": s.action, "h": s.h, "detail": s.detail} for s in search.trace],
            "cleanup": {
                "shifts": len(search.cleanup.shifts),
                "step_limit_hit": search.cleanup.step_limit_hit,
            },
        }

        if options.with_absorber:
            k = options.k if options.k is not None else 1 + params.g
            absorber_clique_size(params, k)
            absorber = build_absorber(
                host, params, k, options.xi, seed=state.seed, probability=options.keep_probability
            )
            if absorber.cliques:
                validate_absorber(absorber)
            flagged = flagged or not absorber.certified
            doc["absorber"] = {
                "k": absorber.k,
                "cliques": [list(c) for c in absorber.cliques],
                "min_count": absorber.min_count,
                "target": absorber.target,
                "attempts": absorber.attempts,
                "probability": None if absorber.probability is None else format_fraction(absorber.probability),
                "certified": absorber.certified,
                "failure": absorber.failure,
                "delta2": None if absorber.delta2 is None else format_fraction(absorber.delta2),
            }

        if options.format == "text":
            self.emit(options, render_partition(search))
        else:
            self.emit_json(options, doc)
        return EXIT_FLAGGED if flagged else 0


class RegcheckSubcommand(Subcommand):
    name = "regcheck"
    short_desc = "Decide (eps, d)-regularity of a vertex-set pair"

    def add_arguments(self, arg_group: argparse.ArgumentParser) -> None:
        add_host_arguments(arg_group)
        arg_group.add_argument("--x", type=int_list, required=True, help="First side, e.g. 0,1,2")
        arg_group.add_argument("--y", type=int_list, required=True, help="Second side")
        arg_group.add_argument("--eps", type=fraction_arg, required=True)
        arg_group.add_argument("--d", type=fraction_arg, default=None, help="Reference density [the pair's own]")
        arg_group.add_argument("--mode", choices=("auto", "exact", "sampled"), default="auto")
        arg_group.add_argument("--samples", type=int, default=4096, help="Subsets drawn in sampled mode [4096]")

    def run(self, options: argparse.Namespace) -> int:
        state = self.experiment_state(options)
        host = host_spec(options).build()
        stats = check_eps_regular(
            host, options.x, options.y, options.eps, options.d, options.mode, state.seed, options.samples
        )
        self.emit_json(
            options,
            {
                "density": format_fraction(stats.density),
                "eps": format_fraction(stats.eps),
                "d": format_fraction(stats.d),
                "regular": stats.regular,
                "method": stats.method,
                "witness": None if stats.witness is None else [list(side) for side in stats.witness],
                "min_degree_share": [format_fraction(x) for x in stats.min_degree_share],
            },
        )
        return 0

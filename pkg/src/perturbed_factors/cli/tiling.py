from __future__ import annotations

import argparse
import logging

from ..balancing import (
    Lemma,
    PartSizes,
    apply_plan,
    plan_divisibility_r,
    plan_divisibility_s_singular,
    plan_equalize,
    plan_singular_partition,
    plan_transfers,
)
from ..gadgets.packing import PackingMode, verify_packing
from ..params import RParams, Variant
from ..report import render_dichotomy
from ..serialize import cert_to_json, dumps, read_cert, write_text
from ..tiling import Branch, pfactor_to_cert, run_dichotomy, trace_to_json
from .base import EXIT_FLAGGED, Subcommand, add_host_arguments, fraction_arg, host_spec, int_list

logger = logging.getLogger(__name__)


class TileSubcommand(Subcommand):
    name = "tile"
    short_desc = "Run the gadget local search, or verify a packing certificate"

    def add_arguments(self, arg_group: argparse.ArgumentParser) -> None:
        actions = arg_group.add_subparsers(dest="tile_action", metavar="ACTION", required=True)

        run = actions.add_parser("run", help="Improve the trivial P-factor until the dichotomy is decided")
        add_host_arguments(run)
        run.add_argument("--m", type=int, required=True)
        run.add_argument("--s", type=int, required=True)
        run.add_argument("--t", type=int, required=True)
        run.add_argument(
            "--gamma",
            type=fraction_arg,
            default=None,
            help="Slack of the independent-set branch, which needs (s/r - gamma) n vertices [1/20]",
        )
        run.add_argument("--c-cap", type=int, default=None, help="Leftover allowed in the cover branch")
        run.add_argument("--step-limit", type=int, default=None, help="Maximum number of moves [(2m+1) n^2]")
        run.add_argument("--trace", metavar="FILE", default=None, help="Write the move trace as JSON")
        run.add_argument(
            "--cert",
            metavar="FILE",
            default=None,
            help="Write the T-packing certificate of the final P-factor as JSON",
        )
        run.add_argument(
            "--validate-steps",
            action="store_true",
            default=False,
            help="Re-check the P-factor after every move",
        )
        run.add_argument("--format", choices=("json", "text"), default="json")

        verify = actions.add_parser("verify", help="Check a packing certificate")
        verify.add_argument("--cert", metavar="FILE", required=True)
        verify.add_argument(
            "--mode",
            choices=[m.value for m in PackingMode],
            default=PackingMode.FACTOR.value,
            help="'factor' needs weight exactly 1 on every vertex, 'packing' at most 1 [factor]",
        )

    def run(self, options: argparse.Namespace) -> int:
        if options.tile_action == "verify":
            return self._verify(options)
        return self._run(options)

    def _run(self, options: argparse.Namespace) -> int:
        overrides = {} if options.gamma is None else {"gamma": options.gamma}
        state = self.experiment_state(
            options,
            c_cap=options.c_cap,
            step_limit=options.step_limit,
            validate_steps=options.validate_steps,
            **overrides,
        )
        host = host_spec(options).build()
        params = RParams.gadget(options.m, options.s, options.t)
        result = run_dichotomy(
            host,
            params,
            state.gamma,
            state.c_cap,
            step_limit=state.step_limit,
            validate_steps=state.validate_steps,
        )
        if options.trace is not None:
            write_text(dumps(trace_to_json(result.trace)), options.trace)
        if options.cert is not None:
            write_text(dumps(cert_to_json(pfactor_to_cert(result.factor))), options.cert)

        if options.format == "text":
            self.emit(options, render_dichotomy(result))
        else:
            self.emit_json(
                options,
                {
                    "branch": result.branch.value,
                    "leftover": list(result.leftover),
                    "independent_set": list(result.independent_set),
                    "stage_report": result.stage_report,
                    "pieces": [p.describe() for p in result.factor.pieces],
                },
            )
        return EXIT_FLAGGED if result.branch is Branch.UNDECIDED else 0

    def _verify(self, options: argparse.Namespace) -> int:
        report = verify_packing(read_cert(options.cert), PackingMode(options.mode))
        self.emit_json(
            options,
            {
                "ok": report.ok,
                "mode": report.mode.value,
                "message": report.message,
                "vertex": report.vertex,
                "piece_index": report.piece_index,
                "edge": None if report.edge is None else list(report.edge),
            },
        )
        return 0 if report.ok else EXIT_FLAGGED


class BalanceSubcommand(Subcommand):
    name = "balance"
    short_desc = "Plan the clique removals that balance part sizes"

    def add_arguments(self, arg_group: argparse.ArgumentParser) -> None:
        arg_group.add_argument("--lemma", choices=[x.value for x in Lemma], required=True)
        arg_group.add_argument("--sizes", type=int_list, required=True, help="Part sizes, e.g. 39,40,21")
        arg_group.add_argument("--m", type=int, required=True)
        arg_group.add_argument("--s", type=int, required=True)
        arg_group.add_argument("--t", type=int, required=True)
        arg_group.add_argument(
            "--variant",
            choices=("gadget", "absorber"),
            default="absorber",
            help="Parameter variant; the singular planners need 'absorber' with t = s [absorber]",
        )
        arg_group.add_argument("--epsilon", type=fraction_arg, default=None, help="Balance window of the input")
        arg_group.add_argument(
            "--modular",
            action="store_true",
            help="Read transfer totals as residues mod r and plan modulo r",
        )

    def run(self, options: argparse.Namespace) -> int:
        overrides = {} if options.epsilon is None else {"epsilon": options.epsilon}
        state = self.experiment_state(options, **overrides)
        variant = Variant.ABSORBER if options.variant == "absorber" else Variant.GADGET
        params = RParams(options.m, options.s, options.t, variant)
        lemma = Lemma(options.lemma)
        sizes = PartSizes(tuple(options.sizes), params)
        epsilon = state.epsilon if options.epsilon is not None else None

        if lemma is Lemma.SINGULAR_PARTITION:
            table = plan_singular_partition(sizes, epsilon)
            self.emit_json(
                options,
                {
                    "lemma": lemma.value,
                    "feasible": table.feasible,
                    "reason": table.reason,
                    "failing_part": table.failing_part,
                    "x": list(table.x),
                    "rows": [list(row) for row in table.rows],
                },
            )
            return 0 if table.feasible else EXIT_FLAGGED

        if lemma is Lemma.TRANSFERS:
            plan = plan_transfers(sizes.sizes, params, modular=options.modular)
        elif lemma is Lemma.EQUALIZE:
            plan = plan_equalize(sizes, state.epsilon)
        elif lemma is Lemma.DIVISIBILITY_R:
            plan = plan_divisibility_r(sizes, epsilon)
        else:
            plan = plan_divisibility_s_singular(sizes, epsilon)
        doc: dict[str, object] = {
            "lemma": lemma.value,
            "feasible": plan.feasible,
            "reason": plan.reason,
            "failing_part": plan.failing_part,
            "moves": [{"move": str(mv), "removals": list(mv.removals)} for mv in plan.moves],
            "remainder_ledger": list(plan.remainder_ledger),
        }
        if plan.feasible:
            doc["final_sizes"] = list(apply_plan(sizes, plan).sizes)
        self.emit_json(options, doc)
        return 0 if plan.feasible else EXIT_FLAGGED

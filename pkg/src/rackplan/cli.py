"""Command-line entry points.

Subcommands: plan, enumerate, simulate, resolve, report.  Exit codes:
0 on success, 1 when no solution exists or a goal was not reached,
2 on input errors.  RACKPLAN_SEED overrides the scenario seed unless
--seed is given.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from .designator import (
    Designator,
    OBJECT,
    LOCATION,
    parse_designator,
    print_designator,
    resolve_location,
    resolve_object,
)
from .errors import NoSolutionError, RackPlanError
from .planner import plan_astar
from .report import render_figures, render_report
from .scenario import Scenario, load_scenario
from .simulator import EpisodeLog, execute, summarize


def _effective_seed(args, scenario: Scenario) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("RACKPLAN_SEED")
    if env is not None:
        return int(env)
    return scenario.policy.seed


def _print_plan(index: int, plan) -> None:
    print(f"plan {index}: cost {plan.cost:.1f}  "
          f"({len(plan.actions)} actions, {plan.plan_time:.2f}s)")
    for action in plan.actions:
        print(f"  {action.describe()}")


def _cmd_plan(args) -> int:
    scenario = load_scenario(args.scenario)
    goal = scenario.resolved_goal()
    limits = scenario.limits
    if args.k is not None:
        limits = replace(limits, max_solutions=args.k)
    try:
        result = plan_astar(scenario.initial, goal, scenario.model,
                            scenario.weights, limits)
    except NoSolutionError as exc:
        print(f"no solution: {exc}", file=sys.stderr)
        return 1
    for index, plan in enumerate(result.plans):
        _print_plan(index, plan)
    if result.truncated:
        print("note: enumeration truncated by search limits")
    return 0


def _cmd_simulate(args) -> int:
    scenario = load_scenario(args.scenario)
    base_seed = _effective_seed(args, scenario)
    rows = []
    failures = 0
    for run in range(args.runs):
        policy = replace(scenario.policy, seed=base_seed + run)
        name = scenario.name if args.runs == 1 else f"{scenario.name}#{run}"
        log = execute(scenario.initial, scenario.goal, scenario.model,
                      scenario.weights, policy, scenario.noise, scenario.limits,
                      replan_budget=scenario.replan_budget, name=name)
        rows.append(summarize(log))
        if not log.goal_reached:
            failures += 1
        if args.log_dir:
            outdir = Path(args.log_dir)
            outdir.mkdir(parents=True, exist_ok=True)
            (outdir / f"{name.replace('#', '-run')}.jsonl").write_text(
                log.to_jsonl(), encoding="utf-8")
    print(render_report(rows, format=args.format), end="")
    if args.figures:
        for path in render_figures(rows, args.figures):
            print(f"wrote {path}", file=sys.stderr)
    return 1 if failures else 0


def _resolve_one(d: Designator, scenario: Scenario) -> None:
    if d.kind == OBJECT:
        resolution = resolve_object(d, scenario.initial)
        print(f"{print_designator(d)}")
        print(f"  -> objects: {', '.join(resolution.candidates)}")
    elif d.kind == LOCATION:
        resolution = resolve_location(d, scenario.initial, scenario.model)
        cells = " ".join(f"({c.shelf} {c.column} {c.depth})"
                         for c in resolution.candidates)
        print(f"{print_designator(d)}")
        print(f"  -> cells: {cells}")
    else:
        _resolve_one(d.get("object"), scenario)
        _resolve_one(d.get("location"), scenario)


def _cmd_resolve(args) -> int:
    scenario = load_scenario(args.scenario)
    text = Path(args.designator).read_text(encoding="utf-8")
    _resolve_one(parse_designator(text), scenario)
    return 0


def _cmd_report(args) -> int:
    rows = []
    for path in args.episodes:
        log = EpisodeLog.from_jsonl(Path(path).read_text(encoding="utf-8"))
        rows.append(summarize(log))
    text = render_report(rows, format=args.format)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        figure_dir = Path(args.figures) if args.figures else out.parent
        for path in render_figures(rows, figure_dir):
            print(f"wrote {path}", file=sys.stderr)
    else:
        print(text, end="")
        if args.figures:
            for path in render_figures(rows, args.figures):
                print(f"wrote {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rackplan",
        description="Shelf rearrangement planning, designator resolution, "
                    "and simulated execution.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_plan = sub.add_parser("plan", help="plan action sequences for a scenario")
    p_plan.add_argument("scenario")
    p_plan.add_argument("--k", type=int, default=None,
                        help="number of distinct plans to enumerate")
    p_plan.set_defaults(func=_cmd_plan)

    p_enum = sub.add_parser("enumerate", help="alias for plan --k")
    p_enum.add_argument("scenario")
    p_enum.add_argument("--k", type=int, default=5)
    p_enum.set_defaults(func=_cmd_plan)

    p_sim = sub.add_parser("simulate", help="execute episodes and print a report")
    p_sim.add_argument("scenario")
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--runs", type=int, default=1)
    p_sim.add_argument("--format", choices=("table", "delimited"), default="table")
    p_sim.add_argument("--log-dir", default=None,
                       help="write one episode log file per run")
    p_sim.add_argument("--figures", default=None,
                       help="directory for summary figures")
    p_sim.set_defaults(func=_cmd_simulate)

    p_res = sub.add_parser("resolve", help="resolve a designator against a scenario")
    p_res.add_argument("scenario")
    p_res.add_argument("--designator", required=True,
                       help="file containing one designator expression")
    p_res.set_defaults(func=_cmd_resolve)

    p_rep = sub.add_parser("report", help="re-summarize episode log files")
    p_rep.add_argument("episodes", nargs="+")
    p_rep.add_argument("--format", choices=("table", "delimited"), default="delimited")
    p_rep.add_argument("--out", default=None, help="write the report to a file "
                       "(figures are rendered alongside it)")
    p_rep.add_argument("--figures", default=None,
                       help="directory for summary figures")
    p_rep.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoSolutionError as exc:
        print(f"no solution: {exc}", file=sys.stderr)
        return 1
    except (RackPlanError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line interface.

Subcommands::

    kclfront run CONFIG [--output-dir DIR] [--t-end T] [--grid N1xN2]
                        [--model srt|wnlrt] [--no-ct] [--quiet]
    kclfront validate CONFIG
    kclfront print-scenarios

``run`` executes a configured simulation, ``validate`` parses a
configuration and echoes the resolved settings without running, and
``print-scenarios`` lists the bundled initial-condition families with
their defaults.  Exit codes: 0 success, 2 bad configuration or
parameters, 3 run aborted by a numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import RunConfig, load_config
from .errors import BadParameter, KclError
from .runner import run
from .scenarios import ScenarioConfig, ScenarioKind, resolved_parameters
from .state import ModelKind


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise BadParameter(f"grid must look like N1xN2, got {text!r}")
    try:
        n1, n2 = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise BadParameter(f"grid must look like N1xN2, got {text!r}") from exc
    return n1, n2


def _apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    scenario = cfg.scenario
    if args.grid is not None:
        n1, n2 = _parse_grid(args.grid)
        scenario = replace(scenario, n1=n1, n2=n2)
    if args.model is not None:
        scenario = replace(scenario, model=ModelKind(args.model))
    run_kwargs: dict[str, object] = {"scenario": scenario}
    if args.output_dir is not None:
        run_kwargs["output_dir"] = args.output_dir
    if args.t_end is not None:
        run_kwargs["t_end"] = args.t_end
    if args.no_ct:
        run_kwargs["ct_enabled"] = False
    return replace(cfg, **run_kwargs)


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    log = None if args.quiet else print
    result = run(cfg, log=log)
    last = result.records[-1]
    print(
        f"completed {result.steps} steps to t = {last.t:g}; "
        f"M in [{last.m_min:.6f}, {last.m_max:.6f}]; "
        f"outputs in {result.output_dir}"
    )
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    print("configuration OK")
    for key, value in resolved_parameters(cfg.scenario).items():
        print(f"{key} = {value}")
    print(f"limiter = {cfg.scheme.limiter}")
    print(f"cfl_nu = {cfg.scheme.cfl_nu}")
    print(f"t_end = {cfg.t_end}")
    print(f"snapshot_every = {cfg.snapshot_every}")
    print(f"output_dir = {cfg.output_dir}")
    print(f"ct = {'on' if cfg.ct_enabled else 'off'}")
    print(f"kink_threshold_deg = {cfg.kink_threshold_deg}")
    return 0


def _cmd_print_scenarios(_args: argparse.Namespace) -> int:
    for kind in ScenarioKind:
        params = resolved_parameters(ScenarioConfig(kind=kind))
        detail = ", ".join(
            f"{key}={value}" for key, value in params.items() if key != "scenario"
        )
        print(f"{kind.value}: {detail}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kclfront",
        description="Finite-volume propagation of weakly nonlinear and weak-shock fronts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a configured simulation")
    p_run.add_argument("config", help="path to an INI run configuration")
    p_run.add_argument("--output-dir", help="override the output directory")
    p_run.add_argument("--t-end", type=float, help="override the final time")
    p_run.add_argument("--grid", help="override the grid size, e.g. 128x128")
    p_run.add_argument(
        "--model", choices=[m.value for m in ModelKind], help="override the model"
    )
    p_run.add_argument(
        "--no-ct",
        action="store_true",
        help="disable the staggered constraint transport",
    )
    p_run.add_argument("--quiet", action="store_true", help="suppress progress lines")
    p_run.set_defaults(func=_cmd_run)

    p_val = sub.add_parser("validate", help="parse a configuration and echo it")
    p_val.add_argument("config", help="path to an INI run configuration")
    p_val.set_defaults(func=_cmd_validate)

    p_ps = sub.add_parser(
        "print-scenarios", help="list bundled scenarios and their defaults"
    )
    p_ps.set_defaults(func=_cmd_print_scenarios)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BadParameter as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KclError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands::

    plotkit front   --run DIR [--times LIST] [--out DIR]
    plotkit series  --run DIR [--quantities LIST] [--out DIR]
    plotkit compare --run DIR --run-b DIR --plane xK=V [--times LIST] [--out DIR]

``front`` renders one surface image per selected snapshot, ``series``
plots diagnostics columns against time, and ``compare`` overlays front
cross-sections of two runs at matching times.  Images land in the
``--out`` directory (default ``figures``); run directories are never
written to.  Exit codes: 0 success, 2 on any artifact, selection, or
section error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .artifacts import load_run
from .errors import PlotkitError
from .figures import parse_plane, plot_comparison, plot_front, plot_timeseries


def _parse_times(text: str | None) -> list[float] | None:
    if text is None:
        return None
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise PlotkitError(
            f"--times must be a comma-separated list of numbers, got {text!r}"
        ) from exc


def _slug(value: float) -> str:
    return f"{value:g}".replace("-", "m").replace(".", "p")


def _cmd_front(args: argparse.Namespace) -> int:
    run = load_run(args.run)
    times = _parse_times(args.times)
    snaps = run.snapshots if times is None else [
        run.nearest_snapshot(t) for t in times
    ]
    if not snaps:
        raise PlotkitError(f"{run.path}: run has no snapshots")
    out_dir = Path(args.out)
    written = []
    seen: set[str] = set()
    for snap in snaps:
        if snap.path.name in seen:
            continue
        seen.add(snap.path.name)
        out = out_dir / f"front_{snap.path.name}.png"
        written.append(plot_front(snap, out))
    for path in written:
        print(path)
    return 0


def _cmd_series(args: argparse.Namespace) -> int:
    run = load_run(args.run)
    quantities = [q.strip() for q in args.quantities.split(",") if q.strip()]
    name = "series_" + "_".join(quantities) + ".png"
    out = plot_timeseries(run, quantities, Path(args.out) / name)
    print(out)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    run_a = load_run(args.run)
    run_b = load_run(args.run_b)
    axis, value = parse_plane(args.plane)
    times = _parse_times(args.times)
    name = f"compare_x{axis + 1}_{_slug(value)}.png"
    out = plot_comparison(
        run_a, run_b, (axis, value), Path(args.out) / name, times=times
    )
    print(out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotkit",
        description="Regenerate figures from kclfront run outputs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_front = sub.add_parser("front", help="surface plots of the front")
    p_front.add_argument("--run", required=True, help="run output directory")
    p_front.add_argument(
        "--times", help="comma-separated times (default: every snapshot)"
    )
    p_front.add_argument("--out", default="figures", help="figures directory")
    p_front.set_defaults(func=_cmd_front)

    p_series = sub.add_parser("series", help="diagnostics time series")
    p_series.add_argument("--run", required=True, help="run output directory")
    p_series.add_argument(
        "--quantities",
        default="m_max,m_min",
        help="comma-separated diagnostics columns (default: m_max,m_min)",
    )
    p_series.add_argument("--out", default="figures", help="figures directory")
    p_series.set_defaults(func=_cmd_series)

    p_cmp = sub.add_parser("compare", help="overlay sections of two runs")
    p_cmp.add_argument("--run", required=True, help="first run (solid lines)")
    p_cmp.add_argument("--run-b", required=True, help="second run (dotted lines)")
    p_cmp.add_argument(
        "--plane", required=True, help="section plane, e.g. x2=0 or x3=0.5"
    )
    p_cmp.add_argument(
        "--times", help="comma-separated times (default: first run's snapshots)"
    )
    p_cmp.add_argument("--out", default="figures", help="figures directory")
    p_cmp.set_defaults(func=_cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PlotkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Figure generation: front surfaces, time series, and run comparisons.

All figures render through the Agg backend at a fixed dpi with the PNG
``Software`` tag stripped, so re-running a command on the same inputs
reproduces the output byte for byte.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib import cm
from matplotlib.colors import Normalize

from .artifacts import RunArtifacts, Snapshot
from .errors import EmptySection, SelectionError, TimeMismatch

_DPI = 100
_SAVE_KWARGS = {"dpi": _DPI, "metadata": {"Software": None}}
_AXIS_NAMES = ("x1", "x2", "x3")


def _save(fig, out_image: str | Path) -> Path:
    out = Path(out_image)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, **_SAVE_KWARGS)
    plt.close(fig)
    return out


def parse_plane(text: str) -> tuple[int, float]:
    """Parse a plane spec like ``x2=0`` into (axis index, value)."""
    name, sep, value = text.partition("=")
    name = name.strip().lower()
    if not sep or name not in _AXIS_NAMES:
        raise SelectionError(
            f"plane must look like x1=VALUE, x2=VALUE or x3=VALUE, got {text!r}"
        )
    try:
        return _AXIS_NAMES.index(name), float(value)
    except ValueError as exc:
        raise SelectionError(f"plane value is not a number: {text!r}") from exc


def section_polyline(positions: np.ndarray, axis: int, value: float) -> np.ndarray:
    """Lattice row or column of front points nearest the plane x[axis]=value.

    Whole rows (fixed first index) and columns (fixed second index)
    compete by mean distance to the plane; the winner must lie within
    half its local transverse spacing of the plane, otherwise
    :class:`EmptySection` is raised.  Returns an ordered (k, 3) polyline.
    """
    coord = positions[..., axis]
    row_dist = np.mean(np.abs(coord - value), axis=1)
    col_dist = np.mean(np.abs(coord - value), axis=0)
    i = int(np.argmin(row_dist))
    j = int(np.argmin(col_dist))

    def spacing(values: np.ndarray, k: int) -> float:
        lo, hi = max(k - 1, 0), min(k + 1, len(values) - 1)
        return abs(values[hi] - values[lo]) / max(hi - lo, 1)

    row_gap = spacing(np.mean(coord, axis=1), i)
    col_gap = spacing(np.mean(coord, axis=0), j)
    slack = 1e-12
    row_ok = row_dist[i] <= 0.5 * row_gap + slack
    col_ok = col_dist[j] <= 0.5 * col_gap + slack
    if row_ok and (not col_ok or row_dist[i] <= col_dist[j]):
        return positions[i, :, :]
    if col_ok:
        return positions[:, j, :]
    raise EmptySection(
        f"no lattice line lies within half a cell of x{axis + 1} = {value:g} "
        f"(best row {row_dist[i]:.3e}, best column {col_dist[j]:.3e})"
    )


def plot_front(snapshot: Snapshot, out_image: str | Path) -> Path:
    """Render the front surface at one snapshot, colored by the speed M."""
    x1, x2, x3 = (snapshot.load(c) for c in ("x1", "x2", "x3"))
    m = snapshot.load("m")
    vmin, vmax = float(np.min(m)), float(np.max(m))
    if vmax <= vmin:  # uniform speed: pick a non-degenerate color window
        vmin, vmax = vmin - 0.5, vmax + 0.5
    norm = Normalize(vmin=vmin, vmax=vmax)
    cmap = matplotlib.colormaps["gray"]

    fig = plt.figure(figsize=(7.2, 6.0))
    ax = fig.add_subplot(projection="3d")
    ax.plot_surface(
        x1, x2, x3,
        facecolors=cmap(norm(m)),
        rcount=min(x1.shape[0], 128),
        ccount=min(x1.shape[1], 128),
        linewidth=0.0,
        antialiased=False,
        shade=False,
    )
    mappable = cm.ScalarMappable(norm=norm, cmap=cmap)
    fig.colorbar(mappable, ax=ax, shrink=0.7, pad=0.1, label="M")
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    ax.set_zlabel("x3")
    ax.set_title(f"front at t = {snapshot.t:g}")
    return _save(fig, out_image)


def _as_table(diagnostics) -> dict[str, np.ndarray]:
    if isinstance(diagnostics, RunArtifacts):
        return diagnostics.diagnostics
    return diagnostics


def plot_timeseries(diagnostics, quantities, out_image: str | Path) -> Path:
    """Plot selected diagnostics columns against time."""
    table = _as_table(diagnostics)
    names = [q for q in quantities]
    if not names:
        raise SelectionError("no quantities selected")
    available = [k for k in table if k != "t"]
    unknown = [q for q in names if q not in table or q == "t"]
    if unknown:
        raise SelectionError(
            f"unknown quantity(s) {', '.join(unknown)}; available: "
            f"{', '.join(available)}"
        )
    t = table["t"]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for q in names:
        ax.plot(t, table[q], label=q)
    ax.set_xlabel("t")
    ax.grid(True, alpha=0.3)
    ax.legend()
    ax.set_title(", ".join(names) + " vs t")
    fig.tight_layout()
    return _save(fig, out_image)


def _match_snapshots(
    run_a: RunArtifacts, run_b: RunArtifacts, times
) -> list[tuple[float, Snapshot, Snapshot]]:
    tol = 0.5 * min(run_a.snapshot_interval(), run_b.snapshot_interval())
    if times is None:
        times = [s.t for s in run_a.snapshots]
    matched = []
    for t in times:
        sa = run_a.nearest_snapshot(t)
        sb = run_b.nearest_snapshot(t)
        off = max(abs(sa.t - t), abs(sb.t - t))
        if off > tol:
            raise TimeMismatch(
                f"no snapshot pair within half a snapshot interval "
                f"({tol:g}) of t = {t:g}: nearest are {sa.t:g} and {sb.t:g}"
            )
        matched.append((t, sa, sb))
    if not matched:
        raise TimeMismatch("no times requested and the first run has no snapshots")
    return matched


def plot_comparison(
    run_a: RunArtifacts,
    run_b: RunArtifacts,
    plane: str | tuple[int, float],
    out_image: str | Path,
    times=None,
) -> Path:
    """Overlay front cross-sections of two runs at matching times.

    The first run draws solid lines, the second dotted, one section per
    requested time (defaulting to the first run's snapshot times).
    """
    axis, value = parse_plane(plane) if isinstance(plane, str) else plane
    pairs = _match_snapshots(run_a, run_b, times)
    h_ax, v_ax = [k for k in range(3) if k != axis]

    fig, ax = plt.subplots(figsize=(6.4, 5.4))
    for k, (t, sa, sb) in enumerate(pairs):
        line_a = section_polyline(sa.positions(), axis, value)
        line_b = section_polyline(sb.positions(), axis, value)
        ax.plot(
            line_a[:, h_ax], line_a[:, v_ax], "-", color="C0", linewidth=1.2,
            label=run_a.label if k == 0 else None,
        )
        ax.plot(
            line_b[:, h_ax], line_b[:, v_ax], ":", color="C3", linewidth=1.6,
            label=run_b.label if k == 0 else None,
        )
    ax.set_xlabel(_AXIS_NAMES[h_ax])
    ax.set_ylabel(_AXIS_NAMES[v_ax])
    ax.set_title(
        f"sections at {_AXIS_NAMES[axis]} = {value:g}, "
        f"t = {', '.join(f'{t:g}' for t, _, _ in pairs)}"
    )
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return _save(fig, out_image)

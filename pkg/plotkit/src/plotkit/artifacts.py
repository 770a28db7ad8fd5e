"""Read-only access to the text artifacts a kclfront run writes.

A run directory contains ``run_manifest.txt`` (``key = value`` lines),
``diagnostics.csv`` (a delimited table with a ``t`` column first), and
``snapshots/t*/`` directories, each holding ``header.txt`` plus one
whitespace-delimited matrix per field component where every line is one
fixed-xi2 row.  Everything is parsed eagerly except the per-component
matrices, which :meth:`Snapshot.load` reads on demand.  Parsing never
writes into the run directory, and every parse failure raises
:class:`~plotkit.errors.ArtifactError` naming the offending file (and
line, where one exists).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ArtifactError

MANIFEST_NAME = "run_manifest.txt"
DIAGNOSTICS_NAME = "diagnostics.csv"
SNAPSHOT_DIR_NAME = "snapshots"
_FORMAT_PREFIX = "kclfront-run/"


def _parse_kv_lines(path: Path) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        if not line.strip():
            continue
        if "=" not in line:
            raise ArtifactError(
                f"{path}:{lineno}: expected 'key = value', got {line!r}"
            )
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


@dataclass(frozen=True)
class Snapshot:
    """One snapshot directory: its time, header echo, and lazy components."""

    t: float
    path: Path
    header: dict[str, str]

    @property
    def components(self) -> list[str]:
        names = self.header.get("components", "").split()
        names += self.header.get("corner_components", "").split()
        return names

    def has(self, component: str) -> bool:
        return (self.path / f"{component}.txt").is_file()

    def load(self, component: str) -> np.ndarray:
        """Read one component as an (n1, n2) array (xi1 along rows)."""
        f = self.path / f"{component}.txt"
        if not f.is_file():
            raise ArtifactError(f"{f}: snapshot component not found")
        try:
            data = np.loadtxt(f, ndmin=2)
        except ValueError as exc:
            raise ArtifactError(f"{f}: not a numeric matrix: {exc}") from exc
        # Files store one line per xi2 row, so transpose back to (n1, n2).
        arr = data.T
        n1 = self.header.get("n1")
        n2 = self.header.get("n2")
        if n1 is not None and n2 is not None and component in (
            self.header.get("components", "").split()
        ):
            expect = (int(n1), int(n2))
            if arr.shape != expect:
                raise ArtifactError(
                    f"{f}: shape {arr.shape} does not match the header grid "
                    f"{expect}"
                )
        return arr

    def positions(self) -> np.ndarray:
        """Front positions as an (n1, n2, 3) array from x1, x2, x3."""
        return np.stack([self.load(c) for c in ("x1", "x2", "x3")], axis=-1)


@dataclass(frozen=True)
class RunArtifacts:
    """Parsed handles on one run directory; never mutates it."""

    path: Path
    manifest: dict[str, str]
    diagnostics: dict[str, np.ndarray]
    snapshots: list[Snapshot] = field(default_factory=list)

    @property
    def label(self) -> str:
        scenario = self.manifest.get("scenario", self.path.name)
        model = self.manifest.get("model", "")
        return f"{scenario} ({model})" if model else scenario

    def nearest_snapshot(self, t: float) -> Snapshot:
        if not self.snapshots:
            raise ArtifactError(f"{self.path}: run has no snapshots")
        return min(self.snapshots, key=lambda s: abs(s.t - t))

    def snapshot_interval(self) -> float:
        """Median spacing of the snapshot times (inf when fewer than two)."""
        times = sorted(s.t for s in self.snapshots)
        if len(times) < 2:
            return float("inf")
        return float(np.median(np.diff(times)))


def _load_manifest(run_dir: Path) -> dict[str, str]:
    path = run_dir / MANIFEST_NAME
    if not path.is_file():
        raise ArtifactError(f"{path}: manifest not found")
    manifest = _parse_kv_lines(path)
    fmt = manifest.get("format", "")
    if not fmt.startswith(_FORMAT_PREFIX):
        raise ArtifactError(
            f"{path}: unrecognized format {fmt!r}; expected "
            f"'{_FORMAT_PREFIX}<n>'"
        )
    return manifest


def _load_diagnostics(run_dir: Path) -> dict[str, np.ndarray]:
    path = run_dir / DIAGNOSTICS_NAME
    if not path.is_file():
        raise ArtifactError(f"{path}: diagnostics table not found")
    lines = path.read_text().splitlines()
    if not lines:
        raise ArtifactError(f"{path}:1: empty diagnostics table")
    names = [c.strip() for c in lines[0].split(",")]
    if not names or names[0] != "t":
        raise ArtifactError(
            f"{path}:1: first column must be 't', got header {lines[0]!r}"
        )
    rows: list[list[float]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(names):
            raise ArtifactError(
                f"{path}:{lineno}: expected {len(names)} columns, got "
                f"{len(parts)}"
            )
        try:
            rows.append([float(p) for p in parts])
        except ValueError as exc:
            raise ArtifactError(f"{path}:{lineno}: {exc}") from exc
    table = np.array(rows) if rows else np.empty((0, len(names)))
    return {name: table[:, k] for k, name in enumerate(names)}


def _load_snapshot(snap_dir: Path) -> Snapshot:
    header_path = snap_dir / "header.txt"
    if not header_path.is_file():
        raise ArtifactError(f"{header_path}: snapshot header not found")
    header = _parse_kv_lines(header_path)
    if "time" not in header:
        raise ArtifactError(f"{header_path}: missing 'time' entry")
    try:
        t = float(header["time"])
    except ValueError as exc:
        raise ArtifactError(
            f"{header_path}: time is not a number: {header['time']!r}"
        ) from exc
    return Snapshot(t=t, path=snap_dir, header=header)


def load_run(path: str | Path) -> RunArtifacts:
    """Parse a run directory into a :class:`RunArtifacts` bundle."""
    run_dir = Path(path)
    if not run_dir.is_dir():
        raise ArtifactError(f"{run_dir}: run directory not found")
    manifest = _load_manifest(run_dir)
    diagnostics = _load_diagnostics(run_dir)
    snapshots: list[Snapshot] = []
    snap_root = run_dir / SNAPSHOT_DIR_NAME
    if snap_root.is_dir():
        for snap_dir in sorted(p for p in snap_root.iterdir() if p.is_dir()):
            snapshots.append(_load_snapshot(snap_dir))
    snapshots.sort(key=lambda s: s.t)
    return RunArtifacts(
        path=run_dir, manifest=manifest, diagnostics=diagnostics,
        snapshots=snapshots,
    )

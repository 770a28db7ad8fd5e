"""Error taxonomy for artifact parsing and figure generation."""

from __future__ import annotations


class PlotkitError(Exception):
    """Base class for every error plotkit raises on purpose."""


class ArtifactError(PlotkitError):
    """A run artifact is missing or malformed; message carries file context."""


class SelectionError(PlotkitError):
    """An empty or unknown quantity selection for a time-series plot."""


class TimeMismatch(PlotkitError):
    """Two runs have no snapshots close enough to a requested time."""


class EmptySection(PlotkitError):
    """No lattice line of the front lies near the requested plane."""

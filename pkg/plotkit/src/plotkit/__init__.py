"""Figure regeneration for kclfront run outputs.

plotkit reads the delimited-text artifacts a run writes (manifest,
diagnostics table, snapshot directories) and regenerates the standard
figure types: 3-D front surfaces colored by speed, diagnostics time
series, and cross-section overlays comparing two runs.  It depends only
on those text files, never on the solver package itself.
"""

from .artifacts import RunArtifacts, Snapshot, load_run
from .errors import (
    ArtifactError,
    EmptySection,
    PlotkitError,
    SelectionError,
    TimeMismatch,
)
from .figures import (
    parse_plane,
    plot_comparison,
    plot_front,
    plot_timeseries,
    section_polyline,
)

__version__ = "0.1.0"

__all__ = [
    "ArtifactError",
    "EmptySection",
    "PlotkitError",
    "RunArtifacts",
    "SelectionError",
    "Snapshot",
    "TimeMismatch",
    "__version__",
    "load_run",
    "parse_plane",
    "plot_comparison",
    "plot_front",
    "plot_timeseries",
    "section_polyline",
]

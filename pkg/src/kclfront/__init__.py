"""Finite-volume propagation of 3-D weak-shock and weakly nonlinear wavefronts.

The package integrates a system of kinematical conservation laws posed
in ray coordinates on the moving front: six geometric components (the
metric-weighted tangent vectors), one front-speed energy slot, and one
rear-gradient energy slot.  A staggered constraint transport keeps the
discrete curl compatibility of the tangent fields exact, so kinks
(shock-shocks on the front) propagate without spurious constraint
drift.  Two closures are provided: a weak-shock ray theory with a
rear-gradient variable driving decay, and a weakly nonlinear ray theory
without it.

Typical use::

    from kclfront import RunConfig, ScenarioConfig, ScenarioKind, run

    cfg = RunConfig(
        scenario=ScenarioConfig(kind=ScenarioKind.PERIODIC_PULSE),
        t_end=10.0,
        output_dir="out/pulse",
    )
    result = run(cfg)

or, from the shell, ``kclfront run config.ini``.
"""

from ._version import __version__
from .config import RunConfig, load_config, parse_config
from .errors import (
    BadParameter,
    DegenerateTangents,
    EmptySection,
    ImaginarySpeed,
    KclError,
    NoConvergence,
    NonPositiveEnergy,
    PathInconsistency,
    SingularFrame,
    ZeroSpeed,
)
from .front import (
    DiagnosticsRecord,
    FrontMesh,
    KinkReport,
    advance_front,
    centered_divergence,
    cross_section,
    detect_kinks,
    diagnostics,
)
from .grid import BoundaryKind, GridSpec, fill_ghosts
from .physics import (
    PencilMatrix,
    assemble_pencil,
    char_speed,
    flux_xi1,
    flux_xi2,
    max_char_speed,
    source,
)
from .runner import RunResult, run, snapshot_dirname
from .scheme import Field, SchemeConfig, cfl_dt, reconstruct, rhs, rk2_step
from .scenarios import (
    PlanarSolution,
    ScenarioConfig,
    ScenarioKind,
    analytic_planar_solution,
    build,
    resolved_parameters,
)
from .state import (
    GU,
    GV,
    NCOMP,
    W7,
    W8,
    ModelKind,
    PrimitiveState,
    conserved_from_primitives,
    mach_from_amplitude,
    recover_primitives,
    solve_mach,
)
from .transport import (
    CtState,
    apply_centers,
    center_interp,
    collocate_edges,
    divergence_field,
    init_potentials,
    potential_rate,
    update_potentials,
)

__all__ = [
    "__version__",
    "BadParameter",
    "BoundaryKind",
    "CtState",
    "DegenerateTangents",
    "DiagnosticsRecord",
    "EmptySection",
    "Field",
    "FrontMesh",
    "GridSpec",
    "GU",
    "GV",
    "ImaginarySpeed",
    "KclError",
    "KinkReport",
    "ModelKind",
    "NCOMP",
    "NoConvergence",
    "NonPositiveEnergy",
    "PathInconsistency",
    "PencilMatrix",
    "PlanarSolution",
    "PrimitiveState",
    "RunConfig",
    "RunResult",
    "ScenarioConfig",
    "ScenarioKind",
    "SchemeConfig",
    "SingularFrame",
    "W7",
    "W8",
    "ZeroSpeed",
    "advance_front",
    "analytic_planar_solution",
    "apply_centers",
    "assemble_pencil",
    "build",
    "center_interp",
    "centered_divergence",
    "cfl_dt",
    "char_speed",
    "collocate_edges",
    "conserved_from_primitives",
    "cross_section",
    "detect_kinks",
    "diagnostics",
    "divergence_field",
    "fill_ghosts",
    "flux_xi1",
    "flux_xi2",
    "init_potentials",
    "load_config",
    "mach_from_amplitude",
    "max_char_speed",
    "parse_config",
    "potential_rate",
    "recover_primitives",
    "reconstruct",
    "resolved_parameters",
    "rhs",
    "rk2_step",
    "run",
    "snapshot_dirname",
    "solve_mach",
    "source",
    "update_potentials",
]

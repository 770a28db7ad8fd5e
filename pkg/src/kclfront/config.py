"""INI run configuration: scenario selection, scheme knobs, run control.

A run file has up to three sections::

    [scenario]
    kind = periodic-pulse        ; required
    model = srt                  ; srt | wnlrt
    n1 = 128                     ; optional overrides
    n2 = 128
    m0 = 1.2
    v0 = 0.2
    amplitude = 0.1
    alpha = 2.0
    beta = 2.0

    [scheme]
    cfl_nu = 0.45
    limiter = cweno              ; cweno | minmod
    cweno_eps = 1e-6
    cweno_power = 2
    newton_max_iter = 100
    newton_residual_tol = 1e-14

    [run]
    t_end = 10.0                 ; required
    snapshot_every = 1.0         ; 0 = snapshots only at t = 0 and t_end
    output_dir = out
    ct = true                    ; staggered constraint transport on/off
    kink_threshold_deg = 5.0

Unknown sections or keys raise BadParameter so that typos never pass
silently.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BadParameter
from .scheme import SchemeConfig
from .scenarios import ScenarioConfig, ScenarioKind
from .state import ModelKind

_SCENARIO_KEYS = {"kind", "model", "n1", "n2", "m0", "v0", "amplitude", "alpha", "beta"}
_SCHEME_KEYS = {
    "cfl_nu",
    "limiter",
    "cweno_eps",
    "cweno_power",
    "newton_max_iter",
    "newton_residual_tol",
}
_RUN_KEYS = {"t_end", "snapshot_every", "output_dir", "ct", "kink_threshold_deg"}


@dataclass(frozen=True)
class RunConfig:
    """Everything a simulation run needs."""

    scenario: ScenarioConfig
    scheme: SchemeConfig = field(default_factory=SchemeConfig)
    t_end: float = 1.0
    snapshot_every: float = 0.0
    output_dir: str = "out"
    ct_enabled: bool = True
    kink_threshold_deg: float = 5.0

    def __post_init__(self) -> None:
        if self.t_end <= 0.0:
            raise BadParameter(f"t_end must be positive, got {self.t_end}")
        if self.snapshot_every < 0.0:
            raise BadParameter(
                f"snapshot_every must be non-negative, got {self.snapshot_every}"
            )
        if not 0.0 < self.kink_threshold_deg < 90.0:
            raise BadParameter(
                "kink_threshold_deg must be in (0, 90), got"
                f" {self.kink_threshold_deg}"
            )


def _check_keys(section: str, present: set[str], allowed: set[str]) -> None:
    unknown = present - allowed
    if unknown:
        names = ", ".join(sorted(unknown))
        raise BadParameter(f"unknown key(s) in [{section}]: {names}")


def _get_float(cp: configparser.ConfigParser, section: str, key: str) -> float:
    raw = cp.get(section, key)
    try:
        return float(raw)
    except ValueError as exc:
        raise BadParameter(f"[{section}] {key} must be a number, got {raw!r}") from exc


def _get_int(cp: configparser.ConfigParser, section: str, key: str) -> int:
    raw = cp.get(section, key)
    try:
        return int(raw)
    except ValueError as exc:
        raise BadParameter(
            f"[{section}] {key} must be an integer, got {raw!r}"
        ) from exc


def _get_bool(cp: configparser.ConfigParser, section: str, key: str) -> bool:
    try:
        return cp.getboolean(section, key)
    except ValueError as exc:
        raise BadParameter(
            f"[{section}] {key} must be a boolean, got {cp.get(section, key)!r}"
        ) from exc


def parse_config(text: str) -> RunConfig:
    """Parse an INI document into a RunConfig."""
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise BadParameter(f"malformed configuration: {exc}") from exc

    known_sections = {"scenario", "scheme", "run"}
    unknown = set(cp.sections()) - known_sections
    if unknown:
        raise BadParameter(f"unknown section(s): {', '.join(sorted(unknown))}")
    if not cp.has_section("scenario"):
        raise BadParameter("missing required section [scenario]")
    if not cp.has_option("scenario", "kind"):
        raise BadParameter("missing required key [scenario] kind")

    _check_keys("scenario", set(cp.options("scenario")), _SCENARIO_KEYS)
    kind_raw = cp.get("scenario", "kind")
    try:
        kind = ScenarioKind(kind_raw)
    except ValueError as exc:
        valid = ", ".join(k.value for k in ScenarioKind)
        raise BadParameter(
            f"unknown scenario kind {kind_raw!r}; valid kinds: {valid}"
        ) from exc
    model_raw = cp.get("scenario", "model", fallback=ModelKind.SRT.value)
    try:
        model = ModelKind(model_raw)
    except ValueError as exc:
        valid = ", ".join(m.value for m in ModelKind)
        raise BadParameter(
            f"unknown model {model_raw!r}; valid models: {valid}"
        ) from exc
    scenario = ScenarioConfig(
        kind=kind,
        model=model,
        n1=_get_int(cp, "scenario", "n1") if cp.has_option("scenario", "n1") else None,
        n2=_get_int(cp, "scenario", "n2") if cp.has_option("scenario", "n2") else None,
        m0=_get_float(cp, "scenario", "m0") if cp.has_option("scenario", "m0") else None,
        v0=_get_float(cp, "scenario", "v0") if cp.has_option("scenario", "v0") else None,
        amplitude=(
            _get_float(cp, "scenario", "amplitude")
            if cp.has_option("scenario", "amplitude")
            else None
        ),
        alpha=(
            _get_float(cp, "scenario", "alpha")
            if cp.has_option("scenario", "alpha")
            else None
        ),
        beta=(
            _get_float(cp, "scenario", "beta")
            if cp.has_option("scenario", "beta")
            else None
        ),
    )

    scheme_kwargs: dict[str, object] = {}
    if cp.has_section("scheme"):
        _check_keys("scheme", set(cp.options("scheme")), _SCHEME_KEYS)
        if cp.has_option("scheme", "cfl_nu"):
            scheme_kwargs["cfl_nu"] = _get_float(cp, "scheme", "cfl_nu")
        if cp.has_option("scheme", "limiter"):
            scheme_kwargs["limiter"] = cp.get("scheme", "limiter")
        if cp.has_option("scheme", "cweno_eps"):
            scheme_kwargs["cweno_eps"] = _get_float(cp, "scheme", "cweno_eps")
        if cp.has_option("scheme", "cweno_power"):
            scheme_kwargs["cweno_power"] = _get_int(cp, "scheme", "cweno_power")
        if cp.has_option("scheme", "newton_max_iter"):
            scheme_kwargs["newton_max_iter"] = _get_int(cp, "scheme", "newton_max_iter")
        if cp.has_option("scheme", "newton_residual_tol"):
            scheme_kwargs["newton_residual_tol"] = _get_float(
                cp, "scheme", "newton_residual_tol"
            )
    scheme = SchemeConfig(**scheme_kwargs)

    run_kwargs: dict[str, object] = {}
    if cp.has_section("run"):
        _check_keys("run", set(cp.options("run")), _RUN_KEYS)
        if cp.has_option("run", "t_end"):
            run_kwargs["t_end"] = _get_float(cp, "run", "t_end")
        if cp.has_option("run", "snapshot_every"):
            run_kwargs["snapshot_every"] = _get_float(cp, "run", "snapshot_every")
        if cp.has_option("run", "output_dir"):
            run_kwargs["output_dir"] = cp.get("run", "output_dir")
        if cp.has_option("run", "ct"):
            run_kwargs["ct_enabled"] = _get_bool(cp, "run", "ct")
        if cp.has_option("run", "kink_threshold_deg"):
            run_kwargs["kink_threshold_deg"] = _get_float(cp, "run", "kink_threshold_deg")
    return RunConfig(scenario=scenario, scheme=scheme, **run_kwargs)


def load_config(path: str | Path) -> RunConfig:
    """Read and parse a configuration file."""
    p = Path(path)
    if not p.is_file():
        raise BadParameter(f"configuration file not found: {p}")
    return parse_config(p.read_text())

"""Declarative parameter sweeps with CSV output and run manifests.

A sweep evaluates one observable over a 1-D or 2-D grid, row-major with
axis1 outermost, and writes full-precision CSV plus a JSON manifest with
provenance (config hash, tool version, timing) and a truncation-convergence
check.  Grid evaluation is sequential and deterministic: rerunning a spec
produces a byte-identical CSV.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import find_optimal_pairs, g2_analytic
from .config import (
    AXIS_KEYS,
    OBSERVABLES,
    PARAM_KEYS,
    RATE_KEYS,
    SWEEP_KEYS,
    config_hash,
    hilbert_from_dict,
    params_from_dict,
    params_reduced_dict,
    params_to_dict,
)
from .errors import ConfigError, SolverError
from .lindblad import build_liouvillian, g2_tau, g2_zero, mandel_q, steady_state
from .model import SystemParams
from .operators import HilbertConfig

CONVERGENCE_BOUND = 1e-4   # relative change allowed from one extra Fock level


def _format(value: float) -> str:
    """Full-precision, byte-stable CSV float formatting."""
    return format(value, ".17g")


@dataclass(frozen=True)
class AxisSpec:
    """One scan axis: a parameter name and a linear or log grid."""

    parameter: str
    min: float
    max: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        allowed = set(PARAM_KEYS) | {k + s for k in RATE_KEYS
                                     for s in ("_over_gamma", "_over_omega_b")}
        allowed.add("tau")
        if self.parameter not in allowed:
            raise ConfigError(f"unknown axis parameter '{self.parameter}'")
        if self.points < 2:
            raise ConfigError("axis needs at least 2 points")
        if self.min >= self.max:
            raise ConfigError("axis must have min < max")
        if self.scale not in ("linear", "log"):
            raise ConfigError(f"axis scale must be linear|log, got '{self.scale}'")
        if self.scale == "log" and self.min <= 0:
            raise ConfigError("log axis requires min > 0")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.logspace(np.log10(self.min), np.log10(self.max), self.points)
        return np.linspace(self.min, self.max, self.points)


@dataclass(frozen=True)
class SweepSpec:
    """Declarative description of a scan plus its output destination."""

    axis1: AxisSpec
    observable: str
    base: SystemParams
    output_path: str
    axis2: AxisSpec | None = None
    cfg: HilbertConfig = field(default_factory=HilbertConfig)

    def __post_init__(self):
        if self.observable not in OBSERVABLES:
            raise ConfigError(f"unknown observable '{self.observable}'")
        tau_axes = [ax for ax in (self.axis1, self.axis2)
                    if ax is not None and ax.parameter == "tau"]
        if self.observable == "g2_tau":
            if len(tau_axes) != 1:
                raise ConfigError("observable g2_tau needs exactly one tau axis")
        elif tau_axes:
            raise ConfigError("a tau axis requires observable g2_tau")
        if self.axis2 is not None and self.axis1.parameter == self.axis2.parameter:
            raise ConfigError("axis1 and axis2 scan the same parameter")


@dataclass
class RunManifest:
    """Provenance written alongside every CSV."""

    config_hash: str
    tool_version: str
    timestamp: str
    duration_s: float
    truncation_convergence_delta: float | None
    converged: bool
    observable: str
    params_rad_per_s: dict
    params_reduced: dict
    cfg: dict
    failures: list
    rows: int
    notes: list

    def write(self, path: Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.__dict__, fh, indent=2)
            fh.write("\n")


def _apply_axis(params: SystemParams, name: str, value: float) -> SystemParams:
    if name.endswith("_over_gamma"):
        return params.replace(**{name[:-len("_over_gamma")]: value * params.gamma})
    if name.endswith("_over_omega_b"):
        return params.replace(**{name[:-len("_over_omega_b")]: value * params.omega_b})
    return params.replace(**{name: value})


def _eval_point(observable: str, params: SystemParams, cfg: HilbertConfig) -> float:
    if observable == "g2_analytic":
        return g2_analytic(params)
    rho = steady_state(build_liouvillian(params, cfg))
    if observable == "g2_numeric":
        return g2_zero(rho, cfg)
    return mandel_q(rho, cfg)


def _grid_results(spec: SweepSpec) -> tuple[list, list]:
    """Evaluate the grid row-major; returns (rows, failures).

    Each row is (axis1_value, [axis2_value,] observable_value); failed points
    carry NaN and a failure record.
    """
    values1 = spec.axis1.values()
    values2 = spec.axis2.values() if spec.axis2 is not None else None
    failures: list[dict] = []
    results: dict[tuple[int, int], float] = {}

    def record_failure(i1: int, i2: int, exc: Exception) -> None:
        coord = {"axis1_index": i1, spec.axis1.parameter: float(values1[i1])}
        if values2 is not None:
            coord["axis2_index"] = i2
            coord[spec.axis2.parameter] = float(values2[i2])
        failures.append({**coord, "error": f"{type(exc).__name__}: {exc}"})

    if spec.observable == "g2_tau":
        tau_on_axis1 = spec.axis1.parameter == "tau"
        taus = values1 if tau_on_axis1 else values2
        others = ([None] if values2 is None
                  else (values2 if tau_on_axis1 else values1))
        other_axis = None if values2 is None else (
            spec.axis2 if tau_on_axis1 else spec.axis1)
        for j, other_value in enumerate(others):
            point = spec.base
            if other_axis is not None:
                point = _apply_axis(point, other_axis.parameter, other_value)
            try:
                trace = g2_tau(point, spec.cfg, taus)
                g2_by_tau = [g for _t, g in trace]
            except (SolverError, np.linalg.LinAlgError, ValueError) as exc:
                g2_by_tau = [float("nan")] * len(taus)
                record = {"error": f"{type(exc).__name__}: {exc}"}
                if other_axis is not None:
                    record[other_axis.parameter] = float(other_value)
                failures.append(record)
            for k, g in enumerate(g2_by_tau):
                key = (k, j) if tau_on_axis1 else (j, k)
                results[key] = g
    else:
        for i1, v1 in enumerate(values1):
            point1 = _apply_axis(spec.base, spec.axis1.parameter, v1)
            if values2 is None:
                try:
                    results[(i1, 0)] = _eval_point(spec.observable, point1, spec.cfg)
                except (SolverError, np.linalg.LinAlgError) as exc:
                    results[(i1, 0)] = float("nan")
                    record_failure(i1, 0, exc)
                continue
            for i2, v2 in enumerate(values2):
                point = _apply_axis(point1, spec.axis2.parameter, v2)
                try:
                    results[(i1, i2)] = _eval_point(spec.observable, point, spec.cfg)
                except (SolverError, np.linalg.LinAlgError) as exc:
                    results[(i1, i2)] = float("nan")
                    record_failure(i1, i2, exc)

    rows = []
    for i1, v1 in enumerate(values1):
        if values2 is None:
            rows.append((float(v1), results[(i1, 0)]))
        else:
            for i2, v2 in enumerate(values2):
                rows.append((float(v1), float(v2), results[(i1, i2)]))
    return rows, failures


def _convergence_check(spec: SweepSpec, rows: list) -> tuple[float | None, bool, list]:
    """Re-evaluate the most sensitive grid point with one extra Fock level.

    The analytic observable has no truncation, so its delta is 0 by
    construction.  For numeric observables the point with the smallest
    observable value (the deepest dip / most nonclassical point) is redone
    at (n_magnon + 1, n_photon + 1) and the relative change recorded.
    """
    notes: list[str] = []
    if spec.observable == "g2_analytic":
        notes.append("analytic observable: truncation-free, delta is 0")
        return 0.0, True, notes
    finite = [r for r in rows if np.isfinite(r[-1])]
    if not finite:
        notes.append("no finite grid point; convergence not checkable")
        return None, False, notes
    probe = min(finite, key=lambda r: r[-1])
    cfg_hi = HilbertConfig(spec.cfg.n_magnon + 1, spec.cfg.n_photon + 1)
    point = _apply_axis(spec.base, spec.axis1.parameter, probe[0]) \
        if spec.axis1.parameter != "tau" else spec.base
    taus = None
    if spec.axis1.parameter == "tau":
        taus = [probe[0]]
    if spec.axis2 is not None:
        if spec.axis2.parameter == "tau":
            taus = [probe[1]]
        else:
            point = _apply_axis(point, spec.axis2.parameter, probe[1])
    try:
        if spec.observable == "g2_tau":
            low = g2_tau(point, spec.cfg, taus)[0][1]
            high = g2_tau(point, cfg_hi, taus)[0][1]
        else:
            low = probe[-1]
            high = _eval_point(spec.observable, point, cfg_hi)
    except (SolverError, np.linalg.LinAlgError) as exc:
        notes.append(f"convergence probe failed: {exc}")
        return None, False, notes
    delta = abs(high - low) / max(abs(low), 1e-300)
    return delta, delta < CONVERGENCE_BOUND, notes


def _write_csv(path: Path, header: list[str], rows: list) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_format(v) for v in row) + "\n")


def _manifest_for(spec_dict: dict, spec: SweepSpec, t0: float,
                  delta: float | None, converged: bool,
                  failures: list, rows: int, notes: list) -> RunManifest:
    if spec.base.weak_drive_warning:
        notes = notes + ["weak-drive flag: E > 0.1 gamma, the excitation "
                         "hierarchy may not hold"]
    return RunManifest(
        config_hash=config_hash(spec_dict),
        tool_version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
        duration_s=time.monotonic() - t0,
        truncation_convergence_delta=delta,
        converged=converged,
        observable=spec.observable,
        params_rad_per_s=params_to_dict(spec.base),
        params_reduced=params_reduced_dict(spec.base),
        cfg={"n_magnon": spec.cfg.n_magnon, "n_photon": spec.cfg.n_photon},
        failures=failures,
        rows=rows,
        notes=notes,
    )


def manifest_path_for(csv_path) -> Path:
    return Path(str(csv_path) + ".manifest.json")


def run_sweep(spec: SweepSpec, spec_dict: dict | None = None) -> RunManifest:
    """Execute a sweep: evaluate the grid, write CSV and manifest."""
    t0 = time.monotonic()
    rows, failures = _grid_results(spec)
    delta, converged, notes = _convergence_check(spec, rows)
    header = ["axis1_value", "observable_value"]
    if spec.axis2 is not None:
        header = ["axis1_value", "axis2_value", "observable_value"]
    out = Path(spec.output_path)
    _write_csv(out, header, rows)
    manifest = _manifest_for(spec_dict if spec_dict is not None else {},
                             spec, t0, delta, converged, failures, len(rows), notes)
    manifest.write(manifest_path_for(out))
    return manifest


def run_optimal(params: SystemParams, directions: list[str], output_path,
                delta_range: tuple[float, float] = (-1.0, 1.0),
                lambda_range: tuple[float, float] = (0.0, 1.0e-5),
                spec_dict: dict | None = None) -> RunManifest:
    """Root-search per drive direction; CSV of the located optimal pairs.

    Directions are 'cw' (delta_F = +|delta_F|) or 'ccw' (delta_F =
    -|delta_F|).  A direction with no root in the box emits one warning row
    of NaNs rather than failing.
    """
    t0 = time.monotonic()
    rows = []
    failures = []
    notes = ["pair search is analytic: truncation-free, delta is 0"]
    for direction in directions:
        if direction not in ("cw", "ccw"):
            raise ConfigError(f"unknown direction '{direction}'")
        shift = abs(params.delta_F) if direction == "cw" else -abs(params.delta_F)
        point = params.replace(delta_F=shift)
        pairs = find_optimal_pairs(point, delta_range, lambda_range)
        if not pairs:
            rows.append((shift / params.gamma, float("nan"), float("nan"),
                         float("nan")))
            failures.append({"direction": direction,
                             "error": "no optimal pair in search box"})
            continue
        for pair in pairs:
            rows.append((shift / params.gamma, pair.delta_opt_over_omega_b,
                         pair.lambda_opt_over_omega_b, pair.residual))
    out = Path(output_path)
    _write_csv(out, ["delta_F_over_gamma", "delta_opt_over_omega_b",
                     "lambda_opt_over_omega_b", "residual"], rows)
    manifest = RunManifest(
        config_hash=config_hash(spec_dict if spec_dict is not None else {}),
        tool_version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
        duration_s=time.monotonic() - t0,
        truncation_convergence_delta=0.0,
        converged=True,
        observable="optimal_pairs",
        params_rad_per_s=params_to_dict(params),
        params_reduced=params_reduced_dict(params),
        cfg={},
        failures=failures,
        rows=len(rows),
        notes=notes,
    )
    manifest.write(manifest_path_for(out))
    return manifest


def run_g2tau(params: SystemParams, cfg: HilbertConfig, tau_max: float,
              points: int, output_path,
              spec_dict: dict | None = None) -> RunManifest:
    """Linear delay grid from 0 to tau_max; CSV of (tau, g2(tau))."""
    if tau_max <= 0:
        raise ConfigError("tau_max must be positive")
    if points < 1:
        raise ConfigError("points must be >= 1")
    t0 = time.monotonic()
    taus = [0.0] if points == 1 else list(np.linspace(0.0, tau_max, points))
    trace = g2_tau(params, cfg, taus)
    rows = [(t, g) for t, g in trace]

    cfg_hi = HilbertConfig(cfg.n_magnon + 1, cfg.n_photon + 1)
    probe_tau, low = min(rows, key=lambda r: r[1])
    high = g2_tau(params, cfg_hi, [probe_tau])[0][1]
    delta = abs(high - low) / max(abs(low), 1e-300)

    out = Path(output_path)
    _write_csv(out, ["tau", "g2"], rows)
    manifest = RunManifest(
        config_hash=config_hash(spec_dict if spec_dict is not None else {}),
        tool_version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
        duration_s=time.monotonic() - t0,
        truncation_convergence_delta=delta,
        converged=delta < CONVERGENCE_BOUND,
        observable="g2_tau",
        params_rad_per_s=params_to_dict(params),
        params_reduced=params_reduced_dict(params),
        cfg={"n_magnon": cfg.n_magnon, "n_photon": cfg.n_photon},
        failures=[],
        rows=len(rows),
        notes=[],
    )
    manifest.write(manifest_path_for(out))
    return manifest


def sweep_spec_from_dict(raw: dict) -> SweepSpec:
    """Parse and validate a sweep spec JSON object."""
    if not isinstance(raw, dict):
        raise ConfigError("sweep spec must be a JSON object")
    unknown = set(raw) - SWEEP_KEYS
    if unknown:
        raise ConfigError(f"unknown sweep key(s): {sorted(unknown)}")
    for key in ("axis1", "observable", "base", "output_path"):
        if key not in raw:
            raise ConfigError(f"sweep spec missing required key '{key}'")
    return SweepSpec(
        axis1=_axis_from_dict(raw["axis1"]),
        axis2=_axis_from_dict(raw["axis2"]) if raw.get("axis2") else None,
        observable=raw["observable"],
        base=params_from_dict(raw["base"]),
        cfg=hilbert_from_dict(raw.get("cfg")),
        output_path=raw["output_path"],
    )


def _axis_from_dict(raw: dict) -> AxisSpec:
    if not isinstance(raw, dict):
        raise ConfigError("axis must be a JSON object")
    unknown = set(raw) - AXIS_KEYS
    if unknown:
        raise ConfigError(f"unknown axis key(s): {sorted(unknown)}")
    for key in ("parameter", "min", "max", "points"):
        if key not in raw:
            raise ConfigError(f"axis missing required key '{key}'")
    points = raw["points"]
    if isinstance(points, bool) or not isinstance(points, int):
        raise ConfigError("axis 'points' must be an integer")
    return AxisSpec(parameter=raw["parameter"], min=float(raw["min"]),
                    max=float(raw["max"]), points=points,
                    scale=raw.get("scale", "linear"))

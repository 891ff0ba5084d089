"""Sweep orchestration and CSV output.

A sweep runs one simulation per axis value, extracts the requested
observables, and writes one summary CSV plus optional per-point series and
momentum-distribution files.  Output is deterministic: the same configuration
and seed produce byte-identical files apart from the timestamp line, whether
points run serially or in a process pool.
"""

from __future__ import annotations

import datetime
import hashlib
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .config import ExperimentConfig
from .diagnostics import diffusion_constant, fit_power_law, localization_fit
from .model import KickParams, effective_kick_strength, phase_sequence
from .pseudoclassical import default_seed_grid, poincare_section
from .quantum import GaussianEnsemble, GridAdequacyError, PlaneWave, evolve
from .spectral import resonance_energy_profile

__all__ = ["SweepResult", "run", "run_preset", "write_poincare_preset", "OUT_DIR_ENV"]

OUT_DIR_ENV = "KICKEDROTOR_OUT_DIR"

_FLOAT_FORMAT = "%.17g"


@dataclass
class SweepResult:
    """Tabular observables over one sweep, plus provenance metadata."""

    axis: str
    values: tuple[float, ...]
    columns: dict[str, np.ndarray]
    metadata: dict[str, str]
    failures: list[tuple[float, str]] = field(default_factory=list)
    files: list[Path] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def config_hash(config: ExperimentConfig) -> str:
    return hashlib.sha256(config.to_text().encode()).hexdigest()[:12]


def _kick_params(config: ExperimentConfig, axis_value: float | None) -> KickParams:
    values = dict(
        kick_strength=config.kick_strength,
        ell=config.ell,
        epsilon=config.epsilon,
        alpha=config.alpha,
        ratio=config.ratio,
        phi0=config.phi0,
        kicks=config.kicks,
    )
    if config.sweep_axis != "none":
        key = {"alpha": "alpha", "ratio": "ratio", "epsilon": "epsilon",
               "phi0": "phi0", "kicks": "kicks"}[config.sweep_axis]
        values[key] = int(axis_value) if key == "kicks" else axis_value
    return KickParams(**values)


def _initial_condition(config: ExperimentConfig):
    if config.initial_kind == "plane_wave":
        return PlaneWave(config.initial_beta)
    seed = config.ensemble_seed if config.sampling == "random" else None
    return GaussianEnsemble(sigma_pr=config.sigma_pr, members=config.members, seed=seed)


def _clamp_window(window: tuple[int, int] | None, kicks: int) -> tuple[int, int] | None:
    if window is None:
        return None
    first = max(1, min(window[0], kicks))
    last = min(window[1], kicks)
    if last - first + 1 < 5:
        return None
    return first, last


def _evaluate_point(config: ExperimentConfig, axis_value: float | None) -> dict:
    """Simulate one sweep point and extract its observables.

    Module-level so a process pool can pickle the call.  Returns everything
    the writer needs; on a grid-adequacy failure the observables are NaN and
    ``error`` carries the message.
    """
    params = _kick_params(config, axis_value)
    out: dict = {"axis_value": axis_value, "error": None, "series": None, "snapshots": {}}
    columns: dict[str, float] = {}
    out["columns"] = columns

    if config.effective_kick_column:
        columns["effective_kick"] = params.kick_strength * effective_kick_strength(
            phase_sequence(params))
    if config.profile_order is not None:
        columns["analytic_profile"] = resonance_energy_profile(
            params.alpha, config.profile_order)

    try:
        wanted = tuple(t for t in config.snapshot_kicks if t <= params.kicks)
        if config.localization_kick is not None and config.localization_kick <= params.kicks:
            wanted = tuple(sorted(set(wanted) | {config.localization_kick}))
        traj = evolve(_initial_condition(config), params, n_max=config.n_max,
                      snapshot_kicks=wanted)
    except GridAdequacyError as exc:
        out["error"] = str(exc)
        columns["energy"] = math.nan
        columns["p0_fraction"] = math.nan
        for name, enabled in (
            ("exponent_q", config.power_window is not None),
            ("fit_r2", config.power_window is not None),
            ("diffusion_D", config.diffusion_window is not None),
            ("loc_length_xi", config.localization_kick is not None),
            ("loc_r2", config.localization_kick is not None),
        ):
            if enabled:
                columns[name] = math.nan
        return out

    columns["energy"] = float(traj.energies[-1])
    columns["p0_fraction"] = float(traj.p0_fractions[-1])

    window = _clamp_window(config.power_window, params.kicks)
    if config.power_window is not None:
        if window is None:
            columns["exponent_q"] = math.nan
            columns["fit_r2"] = math.nan
        else:
            fit = fit_power_law(traj.energies, window)
            columns["exponent_q"] = fit.value
            columns["fit_r2"] = fit.r_squared
    window = _clamp_window(config.diffusion_window, params.kicks)
    if config.diffusion_window is not None:
        columns["diffusion_D"] = (math.nan if window is None
                                  else diffusion_constant(traj.energies, window))
    if config.localization_kick is not None:
        dist = traj.snapshots.get(config.localization_kick)
        try:
            fit = localization_fit(dist) if dist is not None else None
        except ValueError:
            fit = None
        columns["loc_length_xi"] = math.nan if fit is None else fit.value
        columns["loc_r2"] = math.nan if fit is None else fit.r_squared

    if config.write_series:
        out["series"] = (np.arange(params.kicks + 1), traj.energies, traj.p0_fractions)
    for t in config.snapshot_kicks:
        if t in traj.snapshots:
            out["snapshots"][t] = traj.snapshots[t]
    return out


_COLUMN_ORDER = [
    "energy", "p0_fraction", "effective_kick", "analytic_profile",
    "exponent_q", "fit_r2", "diffusion_D", "loc_length_xi", "loc_r2",
]


def _fmt(value: float) -> str:
    return _FLOAT_FORMAT % value


def _value_token(value: float) -> str:
    return ("%.6g" % value).replace(".", "p").replace("-", "m")


def _metadata_lines(meta: dict[str, str]) -> list[str]:
    return [f"# {key}={value}" for key, value in meta.items()]


def _write_csv(path: Path, meta: dict[str, str], header: list[str],
               rows: list[list[float]]) -> None:
    lines = _metadata_lines(meta)
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def run(
    config: ExperimentConfig,
    out_dir: str | Path | None = None,
    preset: str = "custom",
    jobs: int = 1,
) -> SweepResult:
    """Execute a sweep and write its CSV files under ``out_dir``.

    Grid-adequacy failures at individual sweep points are recorded (NaN row,
    entry in ``result.failures``) without aborting the remaining points.
    ``out_dir`` falls back to the config's ``output.dir``, then to the
    environment default.
    """
    config.validate()
    if out_dir is not None:
        out_path = Path(out_dir)
    elif config.out_dir:
        out_path = Path(config.out_dir)
    else:
        out_path = default_out_dir()
    out_path.mkdir(parents=True, exist_ok=True)

    values: list[float | None]
    if config.sweep_axis == "none":
        values = [None]
    else:
        values = list(config.sweep_values)

    if jobs > 1 and len(values) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            points = list(pool.map(_evaluate_point, [config] * len(values), values))
    else:
        points = [_evaluate_point(config, v) for v in values]

    meta = {
        "preset": preset,
        "label": config.label,
        "axis": config.sweep_axis,
        "config_hash": config_hash(config),
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc)
                             .replace(microsecond=0).isoformat(),
    }

    header = ["axis_value"]
    for name in _COLUMN_ORDER:
        if name in points[0]["columns"]:
            header.append(name)
    rows = []
    for point in points:
        axis_value = 0.0 if point["axis_value"] is None else point["axis_value"]
        rows.append([axis_value] + [point["columns"][name] for name in header[1:]])

    stem = f"{preset}__{config.label}"
    result = SweepResult(
        axis=config.sweep_axis,
        values=tuple(0.0 if v is None else v for v in values),
        columns={name: np.array([row[i] for row in rows])
                 for i, name in enumerate(header)},
        metadata=meta,
        failures=[(0.0 if p["axis_value"] is None else p["axis_value"], p["error"])
                  for p in points if p["error"] is not None],
    )

    sweep_path = out_path / f"{stem}__sweep.csv"
    _write_csv(sweep_path, meta, header, rows)
    result.files.append(sweep_path)

    for point in points:
        token = _value_token(0.0 if point["axis_value"] is None else point["axis_value"])
        if point["series"] is not None:
            kicks, energies, p0 = point["series"]
            series_path = out_path / f"{stem}__series__{token}.csv"
            series_meta = dict(meta, axis_value=_fmt(0.0 if point["axis_value"] is None
                                                     else point["axis_value"]))
            _write_csv(series_path, series_meta, ["kick", "energy", "p0_fraction"],
                       [[float(k), float(e), float(z)]
                        for k, e, z in zip(kicks, energies, p0)])
            result.files.append(series_path)
        for t, dist in sorted(point["snapshots"].items()):
            dist_path = out_path / f"{stem}__dist__{token}__kick{t}.csv"
            dist_meta = dict(meta, axis_value=_fmt(0.0 if point["axis_value"] is None
                                                   else point["axis_value"]), kick=str(t))
            _write_csv(dist_path, dist_meta, ["p", "probability"],
                       [[float(p), float(w)] for p, w in zip(dist.momenta, dist.probs)])
            result.files.append(dist_path)
    return result


def run_preset(
    name: str,
    out_dir: str | Path | None = None,
    jobs: int = 1,
    seed: int | None = None,
    grid: int | None = None,
    kicks: int | None = None,
) -> list[SweepResult]:
    """Run every labelled configuration of a preset, with optional overrides."""
    from .presets import build_preset

    results = []
    for config in build_preset(name):
        if seed is not None:
            config = config.with_(seed=seed, ensemble_seed=seed)
        if grid is not None:
            config = config.with_(n_max=grid)
        if kicks is not None:
            config = config.with_(
                kicks=kicks,
                snapshot_kicks=tuple(t for t in config.snapshot_kicks if t <= kicks),
                localization_kick=(config.localization_kick
                                   if config.localization_kick is not None
                                   and config.localization_kick <= kicks else None),
            )
        results.append(run(config, out_dir=out_dir, preset=name, jobs=jobs))
    return results


def write_poincare_preset(
    name: str,
    out_dir: str | Path | None = None,
    seeds_per_axis: int = 40,
    steps: int = 500,
) -> list[Path]:
    """Write phase-space section CSVs (seed, step, theta, J) for a section preset."""
    from .presets import POINCARE_PRESETS

    try:
        k_eps, alphas, ratio, phi0 = POINCARE_PRESETS[name]
    except KeyError:
        known = ", ".join(POINCARE_PRESETS)
        raise KeyError(f"unknown section preset {name!r}; known: {known}") from None
    out_path = Path(out_dir) if out_dir is not None else default_out_dir()
    out_path.mkdir(parents=True, exist_ok=True)

    grid = default_seed_grid(seeds_per_axis)
    paths = []
    for alpha in alphas:
        js, thetas = poincare_section(k_eps, alpha, ratio, phi0, grid, steps=steps)
        meta = {
            "preset": name,
            "kind": "poincare",
            "k_eps": _fmt(k_eps),
            "alpha": _fmt(alpha),
            "ratio": _fmt(ratio),
            "phi0": _fmt(phi0),
            "version": __version__,
            "timestamp": datetime.datetime.now(datetime.timezone.utc)
                                 .replace(microsecond=0).isoformat(),
        }
        rows = []
        for i in range(js.shape[0]):
            for t in range(js.shape[1]):
                rows.append([float(i), float(t), float(thetas[i, t]), float(js[i, t])])
        path = out_path / f"{name}__section__alpha{_value_token(alpha)}.csv"
        _write_csv(path, meta, ["seed", "step", "theta", "J"], rows)
        paths.append(path)
    return paths


def default_out_dir() -> Path:
    return Path(os.environ.get(OUT_DIR_ENV, "out"))

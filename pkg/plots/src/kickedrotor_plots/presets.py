"""Multi-panel figure analogs assembled from the simulation CSV files.

Each preset knows which files the corresponding sweep writes (by the
producer's naming convention) and how to arrange them.  Missing files and
schema violations surface as :class:`SchemaError`.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .csvio import SchemaError, Table, read_table

__all__ = ["PLOT_PRESETS", "render_preset"]


def _normalized(values: np.ndarray) -> np.ndarray:
    peak = np.nanmax(np.abs(values))
    return values / peak if peak > 0 else values


def _footer(fig: plt.Figure, table: Table) -> None:
    meta = table.metadata
    parts = [f"preset {meta['preset']}"] if "preset" in meta else []
    if "config_hash" in meta:
        parts.append(f"config {meta['config_hash']}")
    if "version" in meta:
        parts.append(f"v{meta['version']}")
    if parts:
        fig.text(0.01, 0.005, " | ".join(parts), fontsize=6, color="0.4")


def _sorted_series(in_dir: Path, stem: str) -> list[Table]:
    paths = sorted(in_dir.glob(f"{stem}__series__*.csv"))
    if not paths:
        raise SchemaError(in_dir / f"{stem}__series__*.csv", "no series files found")
    tables = [read_table(p) for p in paths]
    for table in tables:
        table.require("kick", "energy")
    return sorted(tables, key=lambda t: float(t.metadata.get("axis_value", "nan")))


def render_fig2(in_dir: Path, out_dir: Path) -> Path:
    fig, axes = plt.subplots(1, 2, figsize=(9.0, 3.6), sharey=True)
    tables = []
    for ax, label in zip(axes, ("r14", "r12")):
        table = read_table(in_dir / f"fig2__{label}__sweep.csv")
        table.require("axis_value", "energy", "analytic_profile")
        tables.append(table)
        x = table.column("axis_value")
        ax.plot(x, _normalized(table.column("energy")), "o", markersize=3,
                label="simulation")
        ax.plot(x, _normalized(table.column("analytic_profile")), "-",
                label="harmonic sum")
        ax.set_xlabel("modulation amplitude (rad)")
        ax.set_title(f"ratio {'1/4' if label == 'r14' else '1/2'}")
        ax.legend(fontsize=8)
    axes[0].set_ylabel("energy (scaled to max 1)")
    _footer(fig, tables[0])
    out = out_dir / "fig2.png"
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def render_fig9(in_dir: Path, out_dir: Path) -> Path:
    sweep = read_table(in_dir / "fig9__main__sweep.csv")
    sweep.require("axis_value", "energy", "diffusion_D")
    series = _sorted_series(in_dir, "fig9__main")

    fig, (ax_t, ax_d) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    for table in series:
        alpha = float(table.metadata.get("axis_value", "nan"))
        ax_t.plot(table.column("kick"), table.column("energy"),
                  label=f"alpha = {alpha:.3g}")
    ax_t.set_xlabel("kick number")
    ax_t.set_ylabel("energy (recoil units)")
    if len(series) <= 7:
        ax_t.legend(fontsize=7)
    ax_d.plot(sweep.column("axis_value"), sweep.column("diffusion_D"), "o-")
    ax_d.set_xlabel("modulation amplitude (rad)")
    ax_d.set_ylabel("diffusion constant (recoils per kick)")
    _footer(fig, sweep)
    out = out_dir / "fig9.png"
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def render_fig10(in_dir: Path, out_dir: Path) -> Path:
    series = _sorted_series(in_dir, "fig10__main")
    dist_paths = sorted(in_dir.glob("fig10__main__dist__*__kick70.csv"))
    if not dist_paths:
        raise SchemaError(in_dir / "fig10__main__dist__*__kick70.csv",
                          "no kick-70 distribution files found")
    dists = [read_table(p) for p in dist_paths]
    for table in dists:
        table.require("p", "probability")
    dists.sort(key=lambda t: float(t.metadata.get("axis_value", "nan")))

    fig, axes = plt.subplots(1, 3, figsize=(12.0, 3.6))
    for table in series:
        alpha = float(table.metadata.get("axis_value", "nan"))
        axes[0].plot(table.column("kick"), table.column("energy"),
                     label=f"alpha = {alpha:.3g}")
    axes[0].set_xlabel("kick number")
    axes[0].set_ylabel("energy (recoil units)")
    axes[0].legend(fontsize=7)
    for ax, table in zip(axes[1:], (dists[0], dists[-1])):
        probs = table.column("probability")
        visible = probs > 0
        ax.semilogy(table.column("p")[visible], probs[visible],
                    ".", markersize=1.5, color="black")
        alpha = float(table.metadata.get("axis_value", "nan"))
        ax.set_title(f"kick 70, alpha = {alpha:.3g}")
        ax.set_xlabel("momentum (two-recoil units)")
    axes[1].set_ylabel("probability")
    _footer(fig, series[0])
    out = out_dir / "fig10.png"
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def render_fig7_sections(in_dir: Path, out_dir: Path) -> Path:
    paths = sorted(in_dir.glob("fig7__section__alpha*.csv"))
    if not paths:
        raise SchemaError(in_dir / "fig7__section__alpha*.csv", "no section files found")
    tables = [read_table(p) for p in paths]
    for table in tables:
        table.require("theta", "J")
    tables.sort(key=lambda t: float(t.metadata.get("alpha", "nan")))
    fig, axes = plt.subplots(1, len(tables), figsize=(3.0 * len(tables), 3.2),
                             squeeze=False)
    for ax, table in zip(axes[0], tables):
        ax.plot(table.column("theta"), table.column("J"), ".", markersize=0.3,
                color="black")
        ax.set_title(f"alpha = {float(table.metadata.get('alpha', 'nan')):.3g}",
                     fontsize=9)
        ax.set_xlabel("theta")
    axes[0][0].set_ylabel("J")
    _footer(fig, tables[0])
    out = out_dir / "fig7_sections.png"
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


PLOT_PRESETS = {
    "fig2": render_fig2,
    "fig9": render_fig9,
    "fig10": render_fig10,
    "fig7-sections": render_fig7_sections,
}


def render_preset(name: str, in_dir: str | Path, out_dir: str | Path) -> Path:
    try:
        renderer = PLOT_PRESETS[name]
    except KeyError:
        known = ", ".join(PLOT_PRESETS)
        raise KeyError(f"unknown plot preset {name!r}; known: {known}") from None
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return renderer(Path(in_dir), out_dir)

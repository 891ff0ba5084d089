"""Render plot specifications to image files.

A :class:`PlotSpec` names input CSVs, a plot kind, axis labels and an output
path.  Rendering never recomputes physics; the only data transformation on
offer is max-normalization of curves so analogs of normalized published
figures can be overlaid.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .csvio import SchemaError, Table, read_table

__all__ = ["PlotSpec", "load_spec", "render"]

KINDS = ("line", "semilogy", "section")


@dataclass
class PlotSpec:
    """One figure: ``kind`` drawn from every input CSV onto a single axes."""

    kind: str
    inputs: list[str]
    out: str
    x: str = "axis_value"
    y: list[str] = field(default_factory=lambda: ["energy"])
    normalize: bool = False
    xlabel: str = ""
    ylabel: str = ""
    title: str = ""
    labels: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.inputs:
            raise ValueError("spec needs at least one input CSV")
        if not self.out:
            raise ValueError("spec needs an output path")
        if self.labels and len(self.labels) != len(self.inputs):
            raise ValueError("labels, when given, must match inputs one to one")


def load_spec(path: str | Path) -> PlotSpec:
    """Load a spec from JSON; unknown keys are rejected."""
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: spec must be a JSON object")
    known = {"kind", "inputs", "out", "x", "y", "normalize",
             "xlabel", "ylabel", "title", "labels"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"{path}: unknown spec keys {sorted(unknown)}")
    for required in ("kind", "inputs", "out"):
        if required not in raw:
            raise ValueError(f"{path}: missing spec key {required!r}")
    return PlotSpec(**raw)


def _maybe_normalize(values: np.ndarray, enabled: bool) -> np.ndarray:
    if not enabled:
        return values
    peak = np.nanmax(np.abs(values))
    return values / peak if peak > 0 else values


def _footer(fig: plt.Figure, tables: list[Table]) -> None:
    meta = tables[0].metadata
    parts = []
    if "preset" in meta:
        parts.append(f"preset {meta['preset']}")
    if "config_hash" in meta:
        parts.append(f"config {meta['config_hash']}")
    if "version" in meta:
        parts.append(f"v{meta['version']}")
    if parts:
        fig.text(0.01, 0.005, " | ".join(parts), fontsize=6, color="0.4")


def _curve_label(spec: PlotSpec, index: int, table: Table, column: str) -> str:
    if spec.labels:
        return spec.labels[index]
    meta = table.metadata
    if "axis_value" in meta:
        return f"{meta.get('axis', 'value')} = {float(meta['axis_value']):.4g}"
    if "alpha" in meta:
        return f"alpha = {float(meta['alpha']):.4g}"
    if len(spec.inputs) > 1:
        return f"{meta.get('label', table.path.stem)}"
    return column


def render(spec: PlotSpec) -> Path:
    """Draw the spec and write the image; returns the output path.

    Raises :class:`SchemaError` if any input violates the CSV schema, naming
    the offending column.
    """
    tables = [read_table(path) for path in spec.inputs]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    try:
        if spec.kind == "section":
            for table in tables:
                table.require("theta", "J")
                ax.plot(table.column("theta"), table.column("J"),
                        ".", markersize=0.5, color="black")
            ax.set_xlabel(spec.xlabel or "theta")
            ax.set_ylabel(spec.ylabel or "J")
        else:
            for index, table in enumerate(tables):
                table.require(spec.x, *spec.y)
                x = table.column(spec.x)
                for column in spec.y:
                    y = _maybe_normalize(table.column(column), spec.normalize)
                    label = _curve_label(spec, index, table, column)
                    if len(spec.y) > 1:
                        label = f"{label}: {column}" if spec.labels else column
                    ax.plot(x, y, label=label)
            if spec.kind == "semilogy":
                ax.set_yscale("log")
            ax.set_xlabel(spec.xlabel or spec.x)
            ax.set_ylabel(spec.ylabel or ", ".join(spec.y))
            if len(tables) > 1 or len(spec.y) > 1:
                ax.legend(fontsize=8)
        if spec.title:
            ax.set_title(spec.title)
        _footer(fig, tables)
        out = Path(spec.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.tight_layout()
        fig.savefig(out, dpi=150)
    finally:
        plt.close(fig)
    return Path(spec.out)

"""Reader for the simulation package's CSV files.

The schema is fixed by the producer: leading ``# key=value`` metadata lines,
one header row of column names, then numeric rows.  Violations are reported
with the offending column (and row) so broken pipelines are easy to trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["SchemaError", "Table", "read_table"]


class SchemaError(ValueError):
    """The file does not match the documented CSV schema."""

    def __init__(self, path, message: str, column: str | None = None):
        super().__init__(f"{path}: {message}")
        self.path = Path(path)
        self.column = column


@dataclass
class Table:
    path: Path
    metadata: dict[str, str]
    columns: dict[str, np.ndarray]

    @property
    def names(self) -> list[str]:
        return list(self.columns)

    def __len__(self) -> int:
        first = next(iter(self.columns.values()))
        return first.size

    def require(self, *names: str) -> None:
        for name in names:
            if name not in self.columns:
                raise SchemaError(
                    self.path,
                    f"missing required column {name!r} (found: {', '.join(self.columns)})",
                    column=name,
                )

    def column(self, name: str) -> np.ndarray:
        self.require(name)
        return self.columns[name]


def read_table(path: str | Path) -> Table:
    path = Path(path)
    if not path.exists():
        raise SchemaError(path, "file does not exist")
    metadata: dict[str, str] = {}
    header: list[str] | None = None
    rows: list[list[float]] = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if header is not None:
                raise SchemaError(path, f"metadata line {lineno} after the header")
            body = line[1:].strip()
            if "=" in body:
                key, value = body.split("=", 1)
                metadata[key.strip()] = value.strip()
            continue
        cells = line.split(",")
        if header is None:
            header = [cell.strip() for cell in cells]
            if any(not name for name in header):
                raise SchemaError(path, f"empty column name in header at line {lineno}")
            continue
        if len(cells) != len(header):
            raise SchemaError(
                path, f"row at line {lineno} has {len(cells)} cells, expected {len(header)}")
        parsed = []
        for name, cell in zip(header, cells):
            try:
                parsed.append(float(cell))
            except ValueError:
                raise SchemaError(
                    path,
                    f"non-numeric cell {cell.strip()!r} in column {name!r} at line {lineno}",
                    column=name,
                ) from None
        rows.append(parsed)
    if header is None:
        raise SchemaError(path, "no header row")
    if not rows:
        raise SchemaError(path, "no data rows")
    data = np.array(rows)
    return Table(path=path, metadata=metadata,
                 columns={name: data[:, i] for i, name in enumerate(header)})

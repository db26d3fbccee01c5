"""Deterministic table output: CSV datasets, manifests, gnuplot scripts.

Numbers are written with 9 significant digits in fixed-or-scientific
hybrid form ('%.9g'), '.' decimal separator, LF line endings, so files
are byte-stable across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path


def fmt_number(x) -> str:
    """Format a value with 9 significant digits."""
    return format(float(x), ".9g")


@dataclass(frozen=True)
class SweepTable:
    """Rectangular named dataset plus its fully resolved parameter snapshot."""

    name: str
    columns: tuple
    rows: tuple
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        width = len(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(
                    f"table {self.name!r} is ragged: row {i} has {len(row)} cells, "
                    f"expected {width}"
                )

    def column(self, name: str) -> tuple:
        idx = self.columns.index(name)
        return tuple(row[idx] for row in self.rows)


def render_csv(table: SweepTable) -> str:
    lines = [f"# {key} = {table.metadata[key]}" for key in sorted(table.metadata)]
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(fmt_number(v) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(path: Path, table: SweepTable) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_csv(table))


def render_manifest(entries) -> str:
    """entries: iterable of (dataset_name, file_name, metadata dict)."""
    lines = []
    for name, file_name, metadata in entries:
        lines.append(f"{name}.file = {file_name}")
        for key in sorted(metadata):
            lines.append(f"{name}.{key} = {metadata[key]}")
    return "\n".join(lines) + "\n"


def write_manifest(path: Path, entries) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_manifest(entries))


def render_gnuplot(table: SweepTable, csv_name: str) -> str:
    """A minimal plotting script for one dataset; data columns are plotted
    against the first column."""
    plots = ", ".join(
        f"'{csv_name}' using 1:{i + 2} with lines title '{col}'"
        for i, col in enumerate(table.columns[1:])
    )
    lines = [
        "set datafile separator ','",
        f"set title '{table.name}'",
        f"set xlabel '{table.columns[0]}'",
        "set grid",
        f"plot {plots}",
    ]
    return "\n".join(lines) + "\n"


def write_gnuplot(path: Path, table: SweepTable, csv_name: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_gnuplot(table, csv_name))


def grid(start: float, stop: float, step: float) -> tuple:
    """Inclusive, deterministic arithmetic grid built by index so repeated
    construction is bit-identical."""
    if step <= 0.0:
        raise ValueError(f"grid step must be positive, got {step!r}")
    if stop < start:
        raise ValueError(f"grid stop {stop!r} precedes start {start!r}")
    count = int(round((stop - start) / step)) + 1
    values = [start + i * step for i in range(count)]
    while values and values[-1] > stop + step * 1e-9:
        values.pop()
    return tuple(values)

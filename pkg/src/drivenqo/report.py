"""Deterministic CSV emission: byte-identical output for identical configs."""

from __future__ import annotations

import hashlib
import math

from . import __version__
from .errors import DomainError

SCHEMA_VERSION = 1


def format_float(x: float) -> str:
    """17 significant digits, canonical nan, no negative zero."""
    if isinstance(x, str):
        return x
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    if x == 0.0:
        x = 0.0
    return f"{x:.17g}"


def config_hash(pairs: dict) -> str:
    blob = "\n".join(f"{k}={format_float(v) if isinstance(v, float) else v}"
                     for k, v in sorted(pairs.items()))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


class CsvReport:
    """A '#'-headed CSV: schema line, config echo, metadata, columns, rows."""

    def __init__(self, command: str, config_pairs: dict, columns: list[str]):
        self.command = command
        self.config_pairs = dict(config_pairs)
        self.columns = list(columns)
        self.meta_lines: list[str] = []
        self.rows: list[list] = []

    def add_meta(self, line: str):
        self.meta_lines.append(line)

    def add_row(self, values: dict):
        row = []
        for col in self.columns:
            if col not in values:
                raise DomainError(f"row missing column {col!r}")
            row.append(values[col])
        self.rows.append(row)

    def render(self) -> str:
        out = [f"# drivenqo csv schema={SCHEMA_VERSION}"]
        out.append(f"# command={self.command}")
        out.append(f"# build=drivenqo-{__version__} config-sha256={config_hash(self.config_pairs)}")
        for k in sorted(self.config_pairs):
            v = self.config_pairs[k]
            out.append(f"# config {k}={format_float(v) if isinstance(v, float) else v}")
        out.extend(f"# {line}" for line in self.meta_lines)
        out.append("# columns=" + ",".join(self.columns))
        out.append(",".join(self.columns))
        for row in self.rows:
            out.append(",".join(format_float(v) for v in row))
        return "\n".join(out) + "\n"

    def write(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.render())


def read_report(path) -> tuple[dict, list[str], dict]:
    """Parse a CsvReport file into (meta dict, columns, column -> float array)."""
    meta = {}
    columns = None
    data: dict[str, list[float]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("columns="):
                    columns = body[len("columns="):].split(",")
                elif "=" in body:
                    key, _, val = body.partition("=")
                    meta[key.strip()] = val.strip()
                else:
                    meta.setdefault("notes", []) if False else None
                continue
            cells = line.split(",")
            if columns is None:
                raise DomainError(f"{path}: data before '# columns=' header")
            if cells == columns:
                continue  # human-readable column row
            for col, cell in zip(columns, cells):
                data.setdefault(col, []).append(float("nan") if cell == "nan" else float(cell))
    if columns is None:
        raise DomainError(f"{path}: no columns header found")
    return meta, columns, data

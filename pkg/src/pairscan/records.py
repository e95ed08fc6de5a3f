"""Machine-readable output records for the CLI.

One schema serves every subcommand. CSV output carries the metadata
(schema version, command, parameters, fits, provenance) as leading '#'
comment lines; the payload is the header row plus data rows. JSON mirrors
the same content as one object. Floats are rendered with repr(), the
shortest representation that round-trips exactly, so parsing a file and
recomputing derived columns reproduces them.

Payload bytes are deterministic for fixed inputs; only the provenance
fields wall_time_s and threads may vary between otherwise identical runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = "1"


def format_value(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def coerce(text: str):
    """Parse a CSV cell back to int, float, or str."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


@dataclass
class OutputRecord:
    command: str
    columns: tuple[str, ...]
    rows: list[tuple]
    parameters: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_csv(self) -> str:
        lines = [
            f"# schema_version={self.schema_version}",
            f"# command={self.command}",
        ]
        for k, v in self.parameters.items():
            lines.append(f"# parameter {k}={format_value(v)}")
        for k, v in self.extras.items():
            lines.append(f"# extra {k}={format_value(v)}")
        for k, v in self.provenance.items():
            lines.append(f"# provenance {k}={format_value(v)}")
        lines.append(",".join(self.columns))
        for row in self.rows:
            cells = [format_value(v) for v in row]
            for cell in cells:
                if "," in cell or "\n" in cell:
                    raise ValueError(f"cell not CSV-safe: {cell!r}")
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "schema_version": self.schema_version,
            "command": self.command,
            "parameters": self.parameters,
            "extras": self.extras,
            "provenance": self.provenance,
            "columns": list(self.columns),
            "rows": [dict(zip(self.columns, row)) for row in self.rows],
        }
        return json.dumps(doc, indent=2) + "\n"

    def render(self, output_format: str) -> str:
        if output_format == "csv":
            return self.to_csv()
        if output_format == "json":
            return self.to_json()
        raise ValueError(f"unknown output format {output_format!r}")


def csv_payload(text: str) -> str:
    """The non-comment section of a CSV record (header plus data rows)."""
    return "\n".join(ln for ln in text.splitlines() if not ln.startswith("#")) + "\n"


def parse_csv(text: str) -> OutputRecord:
    """Reconstruct a record from its CSV rendering (cells typed via coerce)."""
    schema_version = ""
    command = ""
    parameters: dict = {}
    provenance: dict = {}
    extras: dict = {}
    columns: tuple[str, ...] | None = None
    rows: list[tuple] = []
    for line in text.splitlines():
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("schema_version="):
                schema_version = body.split("=", 1)[1]
            elif body.startswith("command="):
                command = body.split("=", 1)[1]
            else:
                kind, _, kv = body.partition(" ")
                key, _, val = kv.partition("=")
                target = {
                    "parameter": parameters,
                    "provenance": provenance,
                    "extra": extras,
                }[kind]
                target[key] = coerce(val)
        elif columns is None:
            columns = tuple(line.split(","))
        elif line:
            rows.append(tuple(coerce(c) for c in line.split(",")))
    if columns is None:
        raise ValueError("no header row found")
    return OutputRecord(
        command=command,
        columns=columns,
        rows=rows,
        parameters=parameters,
        provenance=provenance,
        extras=extras,
        schema_version=schema_version,
    )

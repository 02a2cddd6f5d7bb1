"""Structured verification reports and their serialization.

Reports are deterministic given config and seed; wall-clock data lives only
in the runtime_ms field (and the sidecar metadata emitted by the CLI), so
stripping runtime_ms yields byte-identical JSON across runs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any

from .errors import ArgumentError, ParseError

STATUSES = ("pass", "fail", "measured", "skipped")
PROVENANCES = ("PAPER", "TRIVIAL", "DERIVED")


@dataclass
class Report:
    """One verified claim: inputs, computed values, expectation, status."""

    claim_id: str
    inputs: dict[str, Any] = field(default_factory=dict)
    computed: Any = None
    expected: dict[str, Any] | None = None  # {"value": ..., "provenance": ...}
    status: str = "measured"
    runtime_ms: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ArgumentError(f"status {self.status!r} not in {STATUSES}")
        if self.expected is not None:
            prov = self.expected.get("provenance")
            if prov not in PROVENANCES:
                raise ArgumentError(
                    f"expected value needs a provenance tag from {PROVENANCES}"
                )

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class ExperimentConfig:
    """Suite selection plus numeric conventions and tolerances."""

    suite: str = "all"
    signature: tuple[int, int] = (3, 3)
    diag: tuple[int, ...] | None = None
    n_list: tuple[int, ...] = (1, 2, 3, 4)
    half: bool = True
    seed: int = 0
    tol_eig: float = 1e-9
    tol_rep: float = 1e-12
    tol_exp: float = 1e-10
    out: str | None = None
    fmt: str = "text"

    def __post_init__(self):
        for name in ("tol_eig", "tol_rep", "tol_exp"):
            if getattr(self, name) <= 0:
                raise ArgumentError(f"{name} must be positive")
        if self.suite.startswith(("contraction", "spectra", "quantify")) and not self.n_list:
            raise ArgumentError("N list must be nonempty for quantification suites")


def parse_config_text(text: str) -> dict[str, Any]:
    """Flat key-value config: `key = value` lines with '#' comments."""
    out: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected `key = value`, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key] = value
    return out


def config_from_mapping(raw: dict[str, Any]) -> ExperimentConfig:
    kwargs: dict[str, Any] = {}
    if "suite" in raw:
        kwargs["suite"] = str(raw["suite"])
    if "signature" in raw:
        p, q = (int(x) for x in str(raw["signature"]).split(","))
        kwargs["signature"] = (p, q)
    if "diag" in raw:
        kwargs["diag"] = tuple(int(x) for x in str(raw["diag"]).split(","))
    if "cells" in raw:
        kwargs["n_list"] = tuple(int(x) for x in str(raw["cells"]).split(","))
    if "half" in raw:
        kwargs["half"] = str(raw["half"]).lower() in ("1", "true", "yes", "on")
    if "seed" in raw:
        kwargs["seed"] = int(raw["seed"])
    for tol in ("tol_eig", "tol_rep", "tol_exp"):
        if tol in raw:
            kwargs[tol] = float(raw[tol])
    if "out" in raw:
        kwargs["out"] = str(raw["out"])
    if "format" in raw:
        kwargs["fmt"] = str(raw["format"])
    return ExperimentConfig(**kwargs)


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

def reports_to_json(reports: list[Report], strip_runtime: bool = False) -> str:
    payload = []
    for r in reports:
        d = r.to_dict()
        if strip_runtime:
            d.pop("runtime_ms")
        payload.append(d)
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def reports_from_json(text: str) -> list[Report]:
    data = json.loads(text)
    return [Report(**item) for item in data]


def _flatten_computed(r: Report) -> list[dict[str, Any]]:
    """Rows for CSV: a table-valued computed field becomes one row per entry,
    with the table columns leading."""
    base = {"claim_id": r.claim_id, "status": r.status}
    if isinstance(r.computed, list) and all(isinstance(x, dict) for x in r.computed):
        return [{**row, **base} for row in r.computed]
    if isinstance(r.computed, dict):
        return [{**r.computed, **base}]
    return [{"computed": r.computed, **base}]


def reports_to_csv(reports: list[Report]) -> str:
    rows: list[dict[str, Any]] = []
    for r in reports:
        rows.extend(_flatten_computed(r))
    if not rows:
        return ""
    fields: list[str] = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields)
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def reports_to_text(reports: list[Report]) -> str:
    lines = []
    counts = {s: 0 for s in STATUSES}
    for r in reports:
        counts[r.status] += 1
        detail = ""
        if r.expected is not None:
            detail = f" expected={r.expected.get('value')!r} [{r.expected.get('provenance')}]"
        elif not isinstance(r.computed, list):
            detail = f" -> {r.computed!r}"
        lines.append(f"{r.status.upper():8s} {r.claim_id}{detail}")
    lines.append(
        "summary: "
        + ", ".join(f"{counts[s]} {s}" for s in STATUSES if counts[s])
    )
    return "\n".join(lines) + "\n"


def emit_report(reports: list[Report], fmt: str = "json", path: str | None = None) -> str:
    """Render reports; write to path when given.  Returns the rendered text."""
    if fmt == "json":
        text = reports_to_json(reports)
    elif fmt == "csv":
        text = reports_to_csv(reports)
    elif fmt == "text":
        text = reports_to_text(reports)
    else:
        raise ArgumentError(f"unknown format {fmt!r}")
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text

"""CSV and JSON serialization of verification results."""

from __future__ import annotations

import csv
import io
import json
import subprocess
from dataclasses import asdict
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .verify import TrialRecord, VerificationReport, margin_class

SCHEMA_VERSION = "1.0"

VERIFY_COLUMNS = ("check", "trial_index", "n", "q", "blocks", "mode", "margin_name", "class", "kind", "lhs", "rhs", "margin", "satisfied")
EXAMPLE_COLUMNS = (
    "theta",
    "eig_hi",
    "eig_lo",
    "L_rhoQ",
    "d_classical",
    "d_quantum",
    "bound_quarter_sin2",
    "corollary_a_margin",
    "corollary_b_cross_term_residual",
    "corollary_c_margin",
    "corollary_d_margin",
    "holevo_chi",
    "shannon_mutual",
)
COMPARE_COLUMNS = (
    "trial_index",
    "n",
    "q",
    "blocks",
    "mode",
    "hs_lhs",
    "hs_rhs",
    "hs_margin",
    "shannon_mutual",
    "holevo_chi",
    "holevo_margin",
)


def fmt(value) -> str:
    """17 significant digits for floats: exact round-trip for float64."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value + 0.0, ".17g")  # + 0.0 folds -0.0 into 0.0
    return str(value)


def write_csv(rows: Iterable[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row[c]) for c in columns])
    return buf.getvalue()


def read_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text, newline="")))


def version_string() -> str:
    """``git describe`` output when run from a checkout, else v<version>."""
    try:
        out = subprocess.run(
            ["git", "describe", "--tags", "--always", "--dirty"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=5,
            check=True,
        )
        desc = out.stdout.strip()
        if desc:
            return f"v{__version__}-g{desc}" if not desc.startswith("v") else desc
    except (OSError, subprocess.SubprocessError):
        pass
    return f"v{__version__}"


def verify_rows(report: VerificationReport) -> list[dict]:
    rows = []
    for rec in report.records:
        for name, m in rec.margins.items():
            rows.append(
                {
                    "check": rec.check_name,
                    "trial_index": rec.trial_index,
                    "n": rec.dims["n"],
                    "q": rec.dims["q"],
                    "blocks": rec.dims["blocks"],
                    "mode": rec.mode,
                    "margin_name": name,
                    "class": margin_class(name),
                    "kind": m.kind,
                    "lhs": m.lhs,
                    "rhs": m.rhs,
                    "margin": m.margin,
                    "satisfied": m.satisfied,
                }
            )
    return rows


def example_rows(records: Sequence[TrialRecord]) -> list[dict]:
    rows = []
    for rec in records:
        m = rec.margins
        row = {k: float(v) for k, v in rec.values.items()}
        row.update(
            corollary_a_margin=m["corollary_final"].margin,
            corollary_b_cross_term_residual=m["cross_term_identity"].residual,
            corollary_c_margin=m["quantum_logical_bound"].margin,
            corollary_d_margin=m["binary_mixed_remark"].margin,
        )
        rows.append(row)
    return rows


def report_dict(report: VerificationReport, command: str = "verify") -> dict:
    summaries = report.summaries()
    return {
        "schema_version": SCHEMA_VERSION,
        "version": version_string(),
        "command": command,
        "config": report.config,
        "proven": {k: v for k, v in summaries.items() if v["class"] == "proven"},
        "empirical": {k: v for k, v in summaries.items() if v["class"] == "empirical"},
        "proven_violations": report.proven_violations,
        "empirical_violations": report.empirical_violations,
        "counterexamples": report.counterexamples(),
        "timing": {"wall_clock_seconds": report.duration_seconds},
    }


def example_dict(records: Sequence[TrialRecord]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "version": version_string(),
        "command": "example",
        "rows": example_rows(records),
        "margins": [{k: asdict(m) for k, m in r.margins.items()} for r in records],
    }


def dumps(obj: dict) -> str:
    # repr() of floats is already shortest round-trip; sort for stable bytes
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def load_schema() -> dict:
    text = resources.files("hs_holevo").joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)

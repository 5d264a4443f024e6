"""Report documents: JSON-shaped dicts plus deterministic text and JSON renderings."""

from __future__ import annotations

import enum
import json
from fractions import Fraction

from . import __version__
from .classifier import (
    CandidateResult,
    ClassificationReport,
    classify_cp4,
    classify_general,
)
from .cpn import infer_hodge, standard_pontrjagin
from .genus import builtin_genus, k_polynomials, k_polynomials_pontrjagin
from .series import ParamPolynomial

SCHEMA = 1
MAX_TABLE_DEGREE = 8
GENUS_NAMES = ("todd", "ahat", "L", "chi-y")


def to_jsonable(value):
    """Numbers become strings (rationals as ``p/q``); containers are recursed."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, ParamPolynomial):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    if isinstance(value, str):
        return value
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _document(command: list[str], inputs: dict, body: dict) -> dict:
    doc = {"engine_version": __version__, "command": command, "inputs": inputs}
    doc.update(body)
    doc = to_jsonable(doc)
    doc["schema"] = SCHEMA  # the one plain JSON number
    return doc


def _candidate_record(c: CandidateResult) -> dict:
    return {
        "k": c.k,
        "status": c.status,
        "reasons": [r.value for r in c.reasons],
        "c2": c.c2,
        "details": c.details,
    }


def _report_body(report: ClassificationReport) -> dict:
    return {
        "trace": report.trace,
        "candidates": [_candidate_record(c) for c in report.candidates],
        "excluded": [_candidate_record(c) for c in report.excluded],
        "survivors": report.survivors,
        "verdict": {"status": report.verdict.value, "k": report.verdict_k},
    }


def verify_document(n: int, simply_connected: bool, command: list[str]) -> dict:
    report = classify_general(n, simply_connected)
    body = _report_body(report)
    body["hodge"] = [list(row) for row in infer_hodge(n).h]
    body["pontrjagin"] = list(standard_pontrjagin(n))
    return _document(command, {"n": n, "simply_connected": simply_connected}, body)


def classify_cp4_document(simply_connected: bool, mode, command: list[str]) -> dict:
    report = classify_cp4(simply_connected, mode)
    body = _report_body(report)
    body["c2_formula"] = "c2 = (-2*c1^2 +/- sqrt(7*c1^4 + 2025)) / 3"
    return _document(
        command,
        {"simply_connected": simply_connected, "mode": report.mode.value},
        body,
    )


def genus_table_document(name: str, max_degree: int, command: list[str]) -> dict:
    if name not in GENUS_NAMES:
        raise ValueError(f"unknown genus {name!r}; choose from {', '.join(GENUS_NAMES)}")
    if not 0 <= max_degree <= MAX_TABLE_DEGREE:
        raise ValueError(f"max degree must be between 0 and {MAX_TABLE_DEGREE}")
    if name in ("ahat", "L"):
        genus = builtin_genus(name, max(2 * max_degree, 2))
        polys = k_polynomials_pontrjagin(genus, max_degree)
    else:
        genus = builtin_genus(name, max(max_degree, 1))
        polys = k_polynomials(genus, max_degree)
    rows = []
    for j, poly in enumerate(polys):
        rows.append(
            {
                "degree": j,
                "text": poly.to_str(),
                "terms": [
                    {"exponents": list(e), "coefficient": c} for e, c in poly.sorted_terms()
                ],
            }
        )
    return _document(
        command,
        {"genus": name, "max_degree": max_degree},
        {"variables": polys[0].kind, "polynomials": rows},
    )


# --- text rendering --------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _candidate_line(c: dict) -> str:
    d = c["details"]
    parts = [f"k={c['k']:>4}"]
    if "discriminant" in d:
        parts.append(f"7k^4+2025={d['discriminant']:>9}")
        parts.append(f"square={'yes' if d['is_square'] else 'no ':<3}")
    parts.append(f"c2={c['c2'] if c['c2'] is not None else '-':>3}")
    yau = d.get("yau", {}).get("status", "not_applicable")
    parts.append(f"yau={yau:<14}")
    if "fano" in d:
        parts.append(f"fano={d['fano']}")
    parts.append(f"{c['status']}")
    if c["reasons"]:
        parts.append("(" + ", ".join(c["reasons"]) + ")")
    return "  " + "  ".join(parts)


def render_text(doc: dict) -> str:
    lines = [
        f"hirzebruch {doc['engine_version']} :: {' '.join(doc['command'])}",
        "inputs: " + ", ".join(f"{k}={_fmt(v)}" for k, v in sorted(doc["inputs"].items())),
    ]
    if "polynomials" in doc:
        lines.append(f"variables: {doc['variables']}")
        for row in doc["polynomials"]:
            lines.append(f"K_{row['degree']} = {row['text']}")
        return "\n".join(lines) + "\n"
    for step in doc["trace"]:
        rest = ", ".join(f"{k}={_fmt(v)}" for k, v in sorted(step.items()) if k != "stage")
        lines.append(f"[{step['stage']}] {rest}")
    if "c2_formula" in doc:
        lines.append(f"formula: {doc['c2_formula']}")
    lines.append("candidates:")
    lines.extend(_candidate_line(c) for c in doc["candidates"])
    if doc["excluded"]:
        lines.append(
            "excluded before analysis: "
            + ", ".join(f"k={c['k']} ({', '.join(c['reasons'])})" for c in doc["excluded"])
        )
    lines.append("survivors: " + ", ".join(doc["survivors"]))
    verdict = doc["verdict"]
    if verdict["k"] is None:
        lines.append(f"verdict: {verdict['status']}")
    else:
        lines.append(f"verdict: {verdict['status']} (k={verdict['k']})")
    return "\n".join(lines) + "\n"

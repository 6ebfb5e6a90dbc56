"""Machine-readable renderings of triangles, sequences and polynomials.

Rationals are always written as strings in ``[-]int[/int]`` form.
"""

from __future__ import annotations

import csv
import io
import json

from .poweroids import CoefficientTriangle, PoweroidSequence
from .series import Polynomial, PowerSeries, format_rational, parse_rational

_RATIONAL = {"type": "string", "pattern": r"^[+-]?[0-9]+(/[0-9]+)?$"}

TRIANGLE_SCHEMA = {
    "type": "object",
    "required": ["operator", "kind", "order", "rows"],
    "properties": {
        "operator": {"type": ["string", "null"]},
        "kind": {"enum": ["g", "gbar"]},
        "order": {"type": "integer", "minimum": 0},
        "rows": {"type": "array", "items": {"type": "array", "items": _RATIONAL, "minItems": 1}},
    },
}

SEQUENCE_SCHEMA = {
    "type": "object",
    "required": ["operator", "order", "polynomials"],
    "properties": {
        "operator": {"type": ["string", "null"]},
        "order": {"type": "integer", "minimum": 0},
        "polynomials": {"type": "array", "items": {"type": "array", "items": _RATIONAL, "minItems": 1}},
    },
}

POLYNOMIAL_SCHEMA = {"type": "array", "items": _RATIONAL, "minItems": 1}

EXPANSION_SCHEMA = {
    "type": "object",
    "required": ["operator", "coeffs"],
    "properties": {
        "operator": {"type": ["string", "null"]},
        "coeffs": {"type": "array", "items": _RATIONAL},
    },
}


def rationals(values) -> list[str]:
    return [format_rational(v) for v in values]


def dumps(doc) -> str:
    return json.dumps(doc) + "\n"


def triangle_document(tri: CoefficientTriangle, operator: str | None = None, **extra) -> dict:
    doc = {
        "operator": operator if operator is not None else tri.operator,
        "kind": tri.kind,
        "order": tri.N,
        "rows": [rationals(row) for row in tri.rows],
    }
    doc.update(extra)
    return doc


def triangle_to_json(tri: CoefficientTriangle, operator: str | None = None, **extra) -> str:
    return dumps(triangle_document(tri, operator, **extra))


def triangle_from_json(text: str) -> CoefficientTriangle:
    doc = json.loads(text)
    rows = tuple(tuple(parse_rational(c) for c in row) for row in doc["rows"])
    return CoefficientTriangle(rows, doc["kind"], doc["operator"])


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def triangle_to_csv(tri: CoefficientTriangle) -> str:
    """One line per row; cells above the diagonal are left empty."""
    width = tri.N + 1
    return _csv(rationals(row) + [""] * (width - len(row)) for row in tri.rows)


def _aligned(rows: list[list[str]]) -> list[str]:
    if not rows:
        return []
    width = max(len(r) for r in rows)
    cols = [max((len(r[j]) for r in rows if j < len(r)), default=0) for j in range(width)]
    return ["  ".join(cell.rjust(cols[j]) for j, cell in enumerate(r)).rstrip() for r in rows]


def series_header(phi: PowerSeries | None) -> str:
    if phi is None:
        return ""
    return "# phi = [" + ", ".join(rationals(phi.coeffs)) + "]\n"


def triangle_to_pretty(tri: CoefficientTriangle, operator: str | None = None, phi: PowerSeries | None = None) -> str:
    label = operator if operator is not None else tri.operator
    head = f"# {tri.kind} triangle for {label}, N = {tri.N}\n" + series_header(phi)
    body = [["n\\nu"] + [str(j) for j in range(tri.N + 1)]]
    body += [[str(n)] + rationals(row) for n, row in enumerate(tri.rows)]
    return head + "\n".join(_aligned(body)) + "\n"


def sequence_document(seq: PoweroidSequence, operator: str | None = None, **extra) -> dict:
    doc = {
        "operator": operator if operator is not None else seq.op.name,
        "order": seq.N,
        "polynomials": [rationals(p.coeffs) for p in seq.polys],
    }
    doc.update(extra)
    return doc


def sequence_to_csv(seq: PoweroidSequence) -> str:
    return _csv(rationals(p.coeffs) for p in seq.polys)


def sequence_to_pretty(seq: PoweroidSequence, operator: str | None = None) -> str:
    label = operator if operator is not None else seq.op.name
    lines = [f"# poweroids of {label}, N = {seq.N}", series_header(seq.op.phi).rstrip("\n")]
    lines += [f"b_{n}(x) = {p}" for n, p in enumerate(seq.polys)]
    return "\n".join(lines) + "\n"


def polynomial_to_json(p: Polynomial) -> str:
    return dumps(rationals(p.coeffs))


def polynomial_from_json(text: str) -> Polynomial:
    return Polynomial([parse_rational(c) for c in json.loads(text)])


def polynomial_to_csv(p: Polynomial) -> str:
    return _csv([rationals(p.coeffs)])

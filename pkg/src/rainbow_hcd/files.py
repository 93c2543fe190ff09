"""Flat file formats.

Instances: first a line holding the edge count, then exactly that many
"u v" lines with non-negative integer labels.  '#' starts a comment, end
of line ends it; blank lines are skipped.

Certificates: one JSON document with the keys n, order, label_map,
classes, h_edges, assignment, seed, pipeline_trace, in that order, byte
stable for a fixed certificate.  Class indices are 0 based everywhere.
"""

from __future__ import annotations

import json

from .errors import ParseError
from .graph_core import Decomposition, Edge, RainbowCertificate


def parse_instance(text: str) -> list[Edge]:
    """Read an instance document into its edge list, order preserved.

    Loops and repeated edges are left in: those are input validation,
    handled by the solver, not parsing."""
    rows: list[list[str]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise ParseError("empty instance file")
    if len(rows[0]) != 1:
        raise ParseError(f"first line must hold one number: {rows[0]!r}")
    n = _int(rows[0][0], "edge count")
    if n < 1:
        raise ParseError("empty instance rejected: edge count must be >= 1")
    if len(rows) - 1 != n:
        raise ParseError(f"expected {n} edge lines, found {len(rows) - 1}")
    edges: list[Edge] = []
    for row in rows[1:]:
        if len(row) != 2:
            raise ParseError(f"edge line needs two labels: {' '.join(row)!r}")
        u = _int(row[0], "vertex label")
        v = _int(row[1], "vertex label")
        if u < 0 or v < 0:
            raise ParseError(f"negative vertex label in {' '.join(row)!r}")
        edges.append((u, v))
    return edges


def format_instance(edges: list[Edge]) -> str:
    lines = [str(len(edges))]
    lines += [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} is not an integer: {tok!r}") from None


def certificate_to_text(cert: RainbowCertificate) -> str:
    doc = {
        "n": cert.n,
        "order": cert.order,
        "label_map": {
            str(lab): cert.label_map[lab] for lab in sorted(cert.label_map)
        },
        "classes": [
            [list(e) for e in sorted(cls)] for cls in cert.decomposition.classes
        ],
        "h_edges": [list(e) for e in cert.h_edges],
        "assignment": list(cert.assignment),
        "seed": cert.seed,
        "pipeline_trace": list(cert.trace),
    }
    return json.dumps(doc, indent=1) + "\n"


def certificate_from_text(text: str) -> RainbowCertificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"certificate is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("certificate must be a JSON object")
    missing = [
        k
        for k in (
            "n", "order", "label_map", "classes",
            "h_edges", "assignment", "seed", "pipeline_trace",
        )
        if k not in doc
    ]
    if missing:
        raise ParseError(f"certificate lacks keys: {', '.join(missing)}")
    try:
        n = int(doc["n"])
        order = int(doc["order"])
        seed = int(doc["seed"])
        label_map = {int(k): int(v) for k, v in doc["label_map"].items()}
        h_edges = [_pair(e) for e in doc["h_edges"]]
        assignment = [int(c) for c in doc["assignment"]]
        classes = [{_pair(e) for e in cls} for cls in doc["classes"]]
        trace = [str(line) for line in doc["pipeline_trace"]]
    except (TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"malformed certificate field: {exc}") from None
    if order != 2 * n + 1:
        raise ParseError(f"order {order} does not match n={n}")
    dec = Decomposition(order, classes)
    return RainbowCertificate(n, seed, h_edges, label_map, assignment, dec, trace)


def _pair(e) -> Edge:
    u, v = e
    return (int(u), int(v))

"""Plain-text instances and canonical JSON output.

Instance format::

    D n
    a_1 ... a_D b        (n lines, meaning a.x >= b)
    objective c_1 ... c_D
    threshold p/q        (or: threshold inf)

Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

import json
from typing import Optional

from .geometry import INF, Complex, Halfspace, PolyhedronSpec
from .linalg import format_rational, parse_rational
from .subcomplex import euler_characteristic


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokens(text: str):
    """Non-empty lines as lists of ``(token, column)`` with 1-based positions."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((part, col + 1))
            col += len(part)
        if toks:
            yield lineno, toks, len(line) + 1


def _rational(tok, lineno):
    text, col = tok
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational, got {text!r}", lineno, col) from None


def _int(tok, lineno, what):
    text, col = tok
    try:
        value = int(text)
    except ValueError:
        raise ParseError(f"expected an integer {what}, got {text!r}", lineno, col) from None
    if value < 0 or (what == "n" and value < 1):
        raise ParseError(f"{what} out of range: {value}", lineno, col)
    return value


def _expect_count(toks, k, lineno, end, what):
    if len(toks) < k:
        raise ParseError(f"{what}: expected {k} fields, got {len(toks)}", lineno, end)
    if len(toks) > k:
        raise ParseError(f"{what}: unexpected extra field {toks[k][0]!r}", lineno, toks[k][1])


def parse_instance(text: str) -> PolyhedronSpec:
    lines = list(_tokens(text))
    last = lines[-1][0] if lines else 1
    if not lines:
        raise ParseError("empty instance", 1, 1)
    lineno, toks, end = lines[0]
    _expect_count(toks, 2, lineno, end, "header")
    D = _int(toks[0], lineno, "D")
    n = _int(toks[1], lineno, "n")
    if len(lines) < n + 3:
        raise ParseError(f"expected {n} halfspace lines, objective and threshold", last + 1, 1)
    hs = []
    for lineno, toks, end in lines[1:n + 1]:
        _expect_count(toks, D + 1, lineno, end, "halfspace")
        vals = [_rational(t, lineno) for t in toks]
        if not any(vals[:D]):
            raise ParseError("halfspace normal is zero", lineno, toks[0][1])
        hs.append(Halfspace(tuple(vals[:D]), vals[D]))
    lineno, toks, end = lines[n + 1]
    if toks[0][0] != "objective":
        raise ParseError(f"expected 'objective', got {toks[0][0]!r}", lineno, toks[0][1])
    _expect_count(toks, D + 1, lineno, end, "objective")
    objective = tuple(_rational(t, lineno) for t in toks[1:])
    lineno, toks, end = lines[n + 2]
    if toks[0][0] != "threshold":
        raise ParseError(f"expected 'threshold', got {toks[0][0]!r}", lineno, toks[0][1])
    _expect_count(toks, 2, lineno, end, "threshold")
    threshold = INF if toks[1][0] in ("inf", "+inf") else _rational(toks[1], lineno)
    if len(lines) > n + 3:
        lineno, toks, _ = lines[n + 3]
        raise ParseError("unexpected content after threshold", lineno, toks[0][1])
    return PolyhedronSpec(D, tuple(hs), objective, threshold)


def format_instance(spec: PolyhedronSpec) -> str:
    out = [f"{spec.dimension} {spec.n}"]
    for h in spec.halfspaces:
        out.append(" ".join(format_rational(v) for v in h.normal + (h.rhs,)))
    out.append("objective " + " ".join(format_rational(v) for v in spec.objective))
    B = spec.threshold
    out.append("threshold " + ("inf" if B == INF else format_rational(B)))
    return "\n".join(out) + "\n"


def read_instance(path: str) -> PolyhedronSpec:
    with open(path) as fh:
        return parse_instance(fh.read())


def parse_metric(text: str) -> list:
    """Distance matrix file: ``n`` followed by ``n`` rows of ``n`` rationals."""
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty matrix", 1, 1)
    lineno, toks, end = lines[0]
    _expect_count(toks, 1, lineno, end, "header")
    n = _int(toks[0], lineno, "n")
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} matrix rows, got {len(lines) - 1}", lines[-1][0], 1)
    rows = []
    for lineno, toks, end in lines[1:]:
        _expect_count(toks, n, lineno, end, "row")
        rows.append(tuple(_rational(t, lineno) for t in toks))
    return rows


def complex_to_dict(F: Complex, approx: bool = False) -> dict:
    """Canonical JSON-ready form: vertices by point, faces by (dim, active)."""
    vertices = []
    for k, v in enumerate(F.vertices):
        entry = {"id": k, "point": [format_rational(c) for c in v.point],
                 "active": sorted(v.active)}
        if approx:
            entry["point_approx"] = [float(c) for c in v.point]
        vertices.append(entry)
    faces = []
    for f in F.sorted_faces():
        entry = {"active": sorted(f.active), "dim": f.dim, "vertex_ids": list(f.vertex_ids),
                 "ell_max": None if f.ell_max is None else format_rational(f.ell_max)}
        if approx and f.ell_max is not None:
            entry["ell_max_approx"] = float(f.ell_max)
        faces.append(entry)
    out = {"vertices": vertices, "faces": faces, "d_max": F.d_max,
           "euler_characteristic": euler_characteristic(F)}
    if approx:
        out["approx_note"] = "*_approx fields are decimal approximations, not authoritative"
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def complex_to_json(F: Complex, approx: bool = False, extra: Optional[dict] = None) -> str:
    d = complex_to_dict(F, approx)
    if extra:
        d.update(extra)
    return dumps(d)

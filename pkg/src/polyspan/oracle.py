"""Exhaustive reference computation for small instances.

Vertices are found by solving every square system of tight halfspaces, with no
simplex involved, so the oracle stays independent of the vertex search it is
used to check.  Faces are all intersections of vertex active sets, filtered by
the membership predicate.
"""
from __future__ import annotations

import os
from itertools import combinations
from math import comb

from .geometry import (Complex, NormalizedSpec, Vertex, face_dimension, face_passes_threshold,
                       is_bounded_face, make_complex, minimal_face)
from .linalg import solve_system
from .vertices import VertexSet

DEFAULT_GUARD = 10 ** 6


class TooLarge(RuntimeError):
    """The instance exceeds the oracle's enumeration guard."""


def _guard() -> int:
    return int(os.environ.get("POLYSPAN_GUARD", DEFAULT_GUARD))


def brute_force_vertices(spec: NormalizedSpec) -> VertexSet:
    """Every vertex of ``P`` (unfiltered), sorted by point.

    Empty when the complex has no vertices for the reasons recorded by
    preprocessing (see :attr:`NormalizedSpec.has_vertices`).
    """
    if not spec.has_vertices:
        return VertexSet()
    Dp = spec.reduced_dim
    kept = spec.kept
    if comb(len(kept), Dp) > _guard():
        raise TooLarge(f"C({len(kept)}, {Dp}) systems exceed the guard {_guard()}")
    hs = spec.halfspaces
    implicit = sorted(spec.implicit_equalities)
    found = {}
    for S in combinations(kept, Dp):
        idx = implicit + list(S)
        if not idx:
            flat = spec.restriction
        else:
            flat = solve_system([hs[i].normal for i in idx], tuple(hs[i].rhs for i in idx),
                                spec.dimension)
        if flat is None or flat.dim != 0:
            continue
        x = flat.basepoint
        if x in found or not spec.contains(x):
            continue
        found[x] = S
    vs = VertexSet()
    for x in sorted(found):
        vs.vertices.append(Vertex(x, spec.active_at(x), spec.ell(x)))
        vs.source_subsets[len(vs.vertices) - 1] = found[x]
    return vs


def brute_force_complex(spec: NormalizedSpec) -> Complex:
    """The thresholded complex, from all intersections of vertex active sets."""
    vs = brute_force_vertices(spec)
    actives = {v.active for v in vs.vertices}
    candidates = set(actives)
    frontier = set(actives)
    while frontier:
        new = set()
        for J in frontier:
            for a in actives:
                K = J & a
                if K not in candidates:
                    new.add(K)
        candidates |= new
        frontier = new
    faces = {}
    for J in candidates:
        if not is_bounded_face(spec, J):
            continue
        passes, ell_max = face_passes_threshold(spec, J)
        if passes:
            faces[J] = (face_dimension(spec, J), True, ell_max)
    verts = [v for v in vs.vertices if v.active in faces]
    return make_complex(spec, verts, faces)


def brute_force_face_lattice(spec: NormalizedSpec) -> dict:
    """Every face of ``P``, bounded or not, as ``{active set: dim}``.

    Each nonempty face is the minimal face containing ``P & A_S`` for some set
    ``S`` of kept halfspaces, so closing all ``2^n`` subsets finds them all.  The
    empty face is included under the key ``None``.
    """
    kept = spec.kept
    if 2 ** len(kept) > _guard():
        raise TooLarge(f"2^{len(kept)} subsets exceed the guard {_guard()}")
    lattice = {None: -1}
    seen = set()
    for k in range(len(kept) + 1):
        for S in combinations(kept, k):
            flat = spec.face_flat(S)
            if flat is None:
                continue
            active = minimal_face(spec, flat)
            if active is None or active in seen:
                continue
            seen.add(active)
            lattice[active] = face_dimension(spec, active)
    return lattice


def diff_complexes(a: Complex, b: Complex) -> list[str]:
    """Human-readable discrepancies between two complexes of the same spec."""
    out = []
    pa = [v.point for v in a.vertices]
    pb = [v.point for v in b.vertices]
    if pa != pb:
        for x in sorted(set(pa) - set(pb)):
            out.append(f"vertex {x} only in first")
        for x in sorted(set(pb) - set(pa)):
            out.append(f"vertex {x} only in second")
    for key in sorted(set(a.faces) | set(b.faces), key=lambda k: (k is not None, sorted(k or ()))):
        fa, fb = a.faces.get(key), b.faces.get(key)
        label = "empty face" if key is None else f"face {sorted(key)}"
        if fa is None:
            out.append(f"missing face: {label} only in second")
        elif fb is None:
            out.append(f"missing face: {label} only in first")
        else:
            for name in ("dim", "ell_max"):
                if getattr(fa, name) != getattr(fb, name):
                    out.append(f"field mismatch: {label} {name} {getattr(fa, name)} != "
                               f"{getattr(fb, name)}")
            va = [a.vertices[k].point for k in fa.vertex_ids]
            vb = [b.vertices[k].point for k in fb.vertex_ids]
            if va != vb:
                out.append(f"field mismatch: {label} vertex_ids")
    return out

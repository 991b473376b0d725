"""Building and certifying the thresholded bounded-face complex.

``build_known_d`` grows faces from the vertex set: the smallest face of ``P``
containing the affine hull of a face ``f`` and a vertex ``v`` is the face whose
active set is ``active(f) & active(v)``.  ``verify_nogap`` checks the gap
conditions that certify a candidate complex as complete, and
``build_unknown_d`` raises the dimension guess until they hold.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .geometry import (INF, Complex, NormalizedSpec, face_dimension, face_passes_threshold,
                       is_bounded_face, make_complex)
from .linalg import Flat, Rational, affine_hull, dot, rref
from .lp import Optimal, Unbounded, LPInstance, lex_max
from .vertices import (VertexSet, enumerate_vertices, min_on_subset, passes_vertex_threshold,
                       subsets)

logger = logging.getLogger(__name__)


class DimensionExceeded(RuntimeError):
    """A face of dimension larger than the supplied ``d`` was discovered."""

    def __init__(self, active, dim, d):
        super().__init__(f"face {sorted(active)} has dimension {dim} > d = {d}")
        self.active = active
        self.dim = dim
        self.d = d


class _Membership:
    """Memoised face predicate: bounded, and below the threshold."""

    def __init__(self, spec: NormalizedSpec):
        self.spec = spec
        self.cache: dict = {}

    def __call__(self, active: frozenset):
        hit = self.cache.get(active)
        if hit is None:
            spec = self.spec
            dim = face_dimension(spec, active)
            bounded = is_bounded_face(spec, active)
            passes, ell_max = bounded, None
            if bounded and spec.threshold != INF:
                passes, ell_max = face_passes_threshold(spec, active)
            elif spec.threshold == INF and spec.ell_min is not None:
                ell_ok, ell_max = face_passes_threshold(spec, active)
                if ell_ok != bounded:
                    logger.warning("boundedness and l-boundedness disagree on %s",
                                   sorted(active))
            hit = (passes, dim, bounded, ell_max)
            self.cache[active] = hit
        return hit


def _grow(spec, vertices, faces, member, d, limit_dim=True):
    """Close ``faces`` under the face/vertex join; returns the new faces."""
    queue = sorted(faces, key=lambda a: (faces[a][0], sorted(a)))
    head = 0
    while head < len(queue):
        f = queue[head]
        head += 1
        for v in vertices:
            if f <= v.active:
                continue
            J = f & v.active
            if J in faces:
                continue
            passes, dim, bounded, ell_max = member(J)
            if not passes:
                continue
            if limit_dim and dim > d:
                raise DimensionExceeded(J, dim, d)
            faces[J] = (dim, bounded, ell_max)
            queue.append(J)


def _closure_sweep(spec, vertices, faces, member, d):
    """Insert every missing subface reachable by cutting with one more hyperplane."""
    changed = True
    while changed:
        changed = False
        for J in sorted(faces, key=lambda a: (faces[a][0], sorted(a))):
            members = [v for v in vertices if J <= v.active]
            for i in spec.kept:
                if i in J:
                    continue
                on = [v.active for v in members if i in v.active]
                if not on:
                    continue
                K = frozenset.intersection(*on)
                if K in faces:
                    continue
                passes, dim, bounded, ell_max = member(K)
                if passes:
                    if dim > d:
                        raise DimensionExceeded(K, dim, d)
                    faces[K] = (dim, bounded, ell_max)
                    changed = True


def build_known_d(spec: NormalizedSpec, d: int, vertices: Optional[VertexSet] = None,
                  closure_sweep: bool = True, workers: int = 1) -> Complex:
    """Bounded complex for a known dimension bound ``d``.

    Raises :class:`DimensionExceeded` if a face of dimension above ``d`` turns
    up, meaning ``d`` was too small.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    vs = vertices if vertices is not None else enumerate_vertices(spec, d, workers)
    member = _Membership(spec)
    faces = {v.active: (0, True, v.ell) for v in vs.vertices}
    _grow(spec, vs.vertices, faces, member, d)
    if closure_sweep:
        _closure_sweep(spec, vs.vertices, faces, member, d)
    return make_complex(spec, vs.vertices, faces)


@dataclass
class NogapReport:
    condition1_ok: bool
    condition2_ok: bool
    condition3_ok: bool
    first_violation: Optional[str] = None
    accepted_by: Counter = field(default_factory=Counter)
    diagnostics: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.condition1_ok and self.condition2_ok and self.condition3_ok


def _flat_key(A: Flat):
    dirs, piv = rref(list(A.directions)) if A.directions else ([], [])
    base = list(A.basepoint)
    for row, c in zip(dirs, piv):
        f = base[c]
        if f:
            base = [x - f * y for x, y in zip(base, row)]
    return tuple(tuple(r) for r in dirs), tuple(base)


def _interior_test(spec: NormalizedSpec, A: Flat) -> bool:
    """Does ``A`` meet the relative interior of ``P``?  Maximise a common slack."""
    D = spec.dimension
    hs = spec.halfspaces
    normals, rhs = A.equations()
    # variables (x, t): a_i . x - t >= b_i
    ineq = tuple((tuple(hs[i].normal) + (Rational(-1),), hs[i].rhs) for i in spec.kept)
    eqs = [(tuple(hs[i].normal) + (Rational(0),), hs[i].rhs)
           for i in sorted(spec.implicit_equalities)]
    eqs += [(tuple(a) + (Rational(0),), r) for a, r in zip(normals, rhs)]
    if not ineq:
        return True
    t = tuple(Rational(int(j == D)) for j in range(D + 1))
    out = lex_max(LPInstance(D + 1, ineq, tuple(eqs), (t,)))
    if isinstance(out, Unbounded):
        return True
    return isinstance(out, Optimal) and out.point[D] > 0


def _crosses(spec: NormalizedSpec, A: Flat) -> bool:
    """Is the completed objective unbounded (or at least the threshold) on ``A & P``?"""
    normals, rhs = A.equations()
    inst, _ = spec.lp(spec.search_levels, extra_equalities=tuple(zip(normals, rhs)))
    out = lex_max(inst)
    if isinstance(out, Unbounded):
        return True
    return isinstance(out, Optimal) and spec.ell(out.point) >= spec.threshold


def _spans(A: Flat, face_active, spec) -> bool:
    hs = spec.halfspaces
    for i in face_active:
        a = hs[i].normal
        if hs[i].slack(A.basepoint) != 0 or any(dot(a, w) for w in A.directions):
            return False
    return True


def verify_nogap(spec: NormalizedSpec, d: int, V: VertexSet, F: Complex) -> NogapReport:
    """Check the three completeness conditions for a candidate ``(V, F)``.

    For each pair ``(f, v)`` with ``A = aff(f + v)`` condition 3 accepts when
    (b) a face of ``F`` has affine hull ``A``, (c) the objective is unbounded
    on ``A & P`` or reaches the threshold there, (a) ``d < D' - 1`` and ``A``
    meets the interior of ``P``, or, failing those, when the smallest face of
    ``P`` containing ``A & P`` is in ``F`` or is not a member of the complex.
    The last clause is what the true complex needs when ``A`` cuts through
    the relative interior of a face without spanning it.
    """
    report = NogapReport(True, True, True)
    vpoints = V.points()

    # condition 1; without vertices by definition only the empty V is right
    solved = V.solved
    if not spec.has_vertices:
        if V.vertices:
            report.condition1_ok = False
            report.first_violation = "condition 1: the complex has no vertices, V is not empty"
    else:
        for S in subsets(spec, d + 1):
            x = solved[S] if S in solved else min_on_subset(spec, S)
            if x is None or not passes_vertex_threshold(spec, x) or x in vpoints:
                continue
            report.condition1_ok = False
            report.first_violation = (f"condition 1: min over P_S for S={list(S)} is {_fmt(x)}, "
                                      f"not in V")
            break

    # condition 2
    if F.d_max > d:
        report.condition2_ok = False
        if report.first_violation is None:
            top = max(F.faces.values(), key=lambda f: f.dim)
            report.first_violation = (f"condition 2: face {sorted(top.active)} has "
                                      f"dimension {top.dim} > {d}")

    # condition 3
    if None not in F.faces:
        report.condition3_ok = False
        report.first_violation = report.first_violation or "condition 3: the empty face is missing"
        return report
    member = _Membership(spec)
    lp_cache: dict = {}
    Dp = spec.reduced_dim
    for f in F.sorted_faces():
        fpoints = [F.vertices[k].point for k in f.vertex_ids]
        for v in V.vertices:
            if not f.is_empty and f.active <= v.active:
                report.accepted_by["b"] += 1
                continue
            J = v.active if f.is_empty else f.active & v.active
            A = affine_hull(fpoints + [v.point])
            cand = F.faces.get(J)
            if cand is not None and cand.dim == A.dim and _spans(A, J, spec):
                report.accepted_by["b"] += 1
                continue
            if cand is not None:
                report.accepted_by["face-in-F"] += 1
                continue
            key = _flat_key(A)
            if key not in lp_cache:
                lp_cache[key] = (_crosses(spec, A), None)
            crosses, interior = lp_cache[key]
            if crosses:
                report.accepted_by["c"] += 1
                continue
            if interior is None:
                interior = _interior_test(spec, A)
                lp_cache[key] = (crosses, interior)
            if interior and d < Dp - 1:
                report.accepted_by["a"] += 1
                continue
            passes = member(J)[0]
            if not passes:
                report.accepted_by["face-not-member"] += 1
                if interior:
                    report.diagnostics.append(
                        f"pair face={sorted(f.active)} vertex={_fmt(v.point)}: interior "
                        f"test holds but d={d} >= D'-1={Dp - 1}")
                continue
            report.condition3_ok = False
            if report.first_violation is None:
                report.first_violation = (f"condition 3: face {_face_str(f)} and vertex "
                                          f"{_fmt(v.point)} span a missing face {sorted(J)}")
            return report
    return report


def _fmt(x) -> str:
    return "(" + ", ".join(str(c) for c in x) + ")"


def _face_str(f) -> str:
    return "empty" if f.is_empty else str(sorted(f.active))


def build_unknown_d(spec: NormalizedSpec, workers: int = 1) -> tuple[int, Complex]:
    """Raise ``d`` from 0 until the gap conditions certify the complex."""
    for d in range(spec.reduced_dim + 1):
        vs = enumerate_vertices(spec, d, workers)
        try:
            F = build_known_d(spec, d, vs, closure_sweep=False)
        except DimensionExceeded as exc:
            logger.debug("d=%d rejected: %s", d, exc)
            continue
        report = verify_nogap(spec, d, vs, F)
        logger.debug("d=%d nogap=%s %s", d, report.ok, report.first_violation or "")
        if report.ok:
            return d, F
    raise AssertionError("gap conditions never held up to d = D'")


def euler_characteristic(F: Complex) -> int:
    """Alternating face count, the empty face contributing -1."""
    return sum(-1 if f.dim % 2 else 1 for f in F.faces.values())


def is_general_position(F: Complex) -> bool:
    """Every vertex has exactly D' tight halfspaces (implicit equalities aside)."""
    spec = F.spec
    return all(len(v.active - spec.implicit_equalities) == spec.reduced_dim
               for v in F.vertices)


@dataclass
class FaceBoundReport:
    counts: dict
    per_dim_bounds: dict
    total: int
    total_bound: int
    general_position: bool
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def check_face_bounds(F: Complex, n: int, D: int, d: int, general_position: bool,
                      N: int) -> FaceBoundReport:
    """Per-dimension and total face counts against the general-position bounds.

    Bounds are asserted only for general-position input with ``d < D``.
    """
    counts = {k: c for k, c in F.face_counts().items() if k >= 0}
    per_dim = {i: N * comb(d, i) for i in range(d + 1)}
    total = sum(counts.values())
    total_bound = comb(n, d) * 2 ** d if d >= 0 else 0
    violations = []
    if general_position and 0 <= d < D:
        for i, c in sorted(counts.items()):
            if c > per_dim.get(i, 0):
                violations.append(f"{c} faces of dimension {i} exceed N*C(d,i) = {per_dim.get(i, 0)}")
        # The sum of the per-dimension bounds meets C(n,d)*2^d exactly when d = 0.
        if total > total_bound or (d > 0 and total == total_bound):
            violations.append(f"{total} faces, not less than C(n,d)*2^d = {total_bound}")
    return FaceBoundReport(counts, per_dim, total, total_bound, general_position, violations)

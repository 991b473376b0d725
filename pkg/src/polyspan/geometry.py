"""Polyhedra given by halfspaces, their faces, and thresholded face complexes.

A polyhedron is ``P = {x : a_i . x >= b_i}``.  Faces are identified by their
closed active set, the indices of all halfspaces whose boundary contains the
face.  Computations stay in the original coordinates; halfspaces that are tight
on all of ``P`` are passed to the LP solver as equalities, which keeps every
solve in the affine hull of ``P``.

Whenever a minimum or maximum "of the objective" is taken, the objective is
completed lexicographically by the sum of the kept constraint normals and then
by the coordinate functionals.  This simulates a generic perturbation of the
objective without choosing an epsilon.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .linalg import Flat, Rational, Vector, dot, rank, solve_system, vec
from .lp import Infeasible, LPInstance, Optimal, Unbounded, lex_max, lex_min

logger = logging.getLogger(__name__)

INF = math.inf
Threshold = Union[Rational, float]  # a Rational, or math.inf for "+infinity"


class EmptyPolyhedron(ValueError):
    """The halfspaces have no common point."""


@dataclass(frozen=True)
class Halfspace:
    """``normal . x >= rhs``."""

    normal: Vector
    rhs: Rational

    def __post_init__(self):
        object.__setattr__(self, "normal", vec(self.normal))
        object.__setattr__(self, "rhs", Rational(self.rhs))
        if not any(self.normal):
            raise ValueError("halfspace normal must be nonzero")

    def slack(self, x: Sequence[Rational]) -> Rational:
        return dot(self.normal, x) - self.rhs


@dataclass(frozen=True)
class PolyhedronSpec:
    dimension: int
    halfspaces: tuple
    objective: Vector
    threshold: Threshold = INF

    def __post_init__(self):
        hs = tuple(h if isinstance(h, Halfspace) else Halfspace(*h) for h in self.halfspaces)
        object.__setattr__(self, "halfspaces", hs)
        object.__setattr__(self, "objective", vec(self.objective))
        if self.threshold != INF:
            object.__setattr__(self, "threshold", Rational(self.threshold))
        if not hs:
            raise ValueError("at least one halfspace is required")
        for h in hs:
            if len(h.normal) != self.dimension:
                raise ValueError("halfspace normal has the wrong length")
        if len(self.objective) != self.dimension:
            raise ValueError("objective has the wrong length")

    @property
    def n(self) -> int:
        return len(self.halfspaces)


@dataclass(frozen=True)
class NormalizedSpec:
    """A :class:`PolyhedronSpec` together with what preprocessing learned.

    ``restriction`` is the affine hull of ``P``.  ``eliminated`` holds every
    halfspace that contains that whole affine hull (the implicit equalities
    plus halfspaces that are strictly satisfied on all of it); ``kept`` is the
    rest, in index order.
    """

    original: PolyhedronSpec
    implicit_equalities: frozenset
    eliminated: frozenset
    kept: tuple
    restriction: Flat
    pointed: bool
    ell_min: Optional[Rational]
    levels: tuple

    @property
    def dimension(self) -> int:
        return self.original.dimension

    @property
    def reduced_dim(self) -> int:
        return self.restriction.dim

    @property
    def halfspaces(self) -> tuple:
        return self.original.halfspaces

    @property
    def objective(self) -> Vector:
        return self.original.objective

    @property
    def threshold(self) -> Threshold:
        return self.original.threshold

    @property
    def n_kept(self) -> int:
        return len(self.kept)

    @property
    def has_vertices(self) -> bool:
        """False when the complex has no vertices for trivial reasons.

        That is the case when ``P`` is not pointed, when the threshold does
        not exceed the minimum of l, and when l is unbounded below under a
        finite threshold.  With ``B = inf`` an unbounded-below l still leaves
        the bounded faces, on which l is bounded.
        """
        if not self.pointed:
            return False
        if self.ell_min is None:
            return self.threshold == INF
        return self.ell_min < self.threshold

    @property
    def search_levels(self) -> tuple:
        """Objective used to reach vertices as subset minima.

        When l is unbounded below (only possible here with ``B = inf``) the
        minima are taken without it.
        """
        return self.levels if self.ell_min is not None else self.levels[1:]

    def ell(self, x: Sequence[Rational]) -> Rational:
        return dot(self.objective, x)

    def active_at(self, x: Sequence[Rational]) -> frozenset:
        return frozenset(i for i, h in enumerate(self.halfspaces) if h.slack(x) == 0)

    def contains(self, x: Sequence[Rational]) -> bool:
        return all(h.slack(x) >= 0 for h in self.halfspaces)

    def lp(self, objective, equal: Iterable[int] = (), extra_equalities=()) -> tuple[LPInstance, list]:
        """LP over ``P`` with the halfspaces in ``equal`` forced tight.

        Returns the instance and the original index of each LP inequality.
        """
        equal = set(equal) | self.implicit_equalities
        rows = [i for i in self.kept if i not in equal]
        hs = self.halfspaces
        inst = LPInstance(
            self.dimension,
            tuple((hs[i].normal, hs[i].rhs) for i in rows),
            tuple((hs[i].normal, hs[i].rhs) for i in sorted(equal)) + tuple(extra_equalities),
            tuple(objective),
        )
        return inst, rows

    def face_flat(self, active: Iterable[int]) -> Optional[Flat]:
        """Intersection of the boundary hyperplanes of ``active`` (within aff P)."""
        idx = sorted(set(active) | self.implicit_equalities)
        hs = self.halfspaces
        if not idx:
            return Flat.whole(self.dimension)
        return solve_system([hs[i].normal for i in idx], tuple(hs[i].rhs for i in idx),
                            self.dimension)


def completion_levels(objective: Vector, normals: Sequence[Vector], D: int) -> tuple:
    """``(l, sum of normals, x_1, ..., x_D)``: a generic refinement of ``l``.

    The normal sum is bounded below on ``P`` and vanishes on a recession
    direction only if that direction is in the lineality space, so on a pointed
    polyhedron the completed objective is bounded below exactly when ``l`` is.
    """
    s = [Rational(0)] * D
    for a in normals:
        for j in range(D):
            s[j] += a[j]
    levels = [tuple(objective), tuple(s)]
    for j in range(D):
        levels.append(tuple(Rational(int(i == j)) for i in range(D)))
    return tuple(levels)


def preprocess(spec: PolyhedronSpec) -> NormalizedSpec:
    """Detect emptiness, implicit equalities, pointedness and the minimum of l."""
    D = spec.dimension
    hs = spec.halfspaces
    base = LPInstance(D, tuple((h.normal, h.rhs) for h in hs), (), ((Rational(0),) * D,))
    implicit = set()
    slack_seen = set()
    for i, h in enumerate(hs):
        if i in slack_seen:
            continue
        out = lex_max(LPInstance(D, base.inequalities, (), (h.normal,)))
        if isinstance(out, Infeasible):
            raise EmptyPolyhedron("the halfspaces have an empty intersection")
        x = out.feasible_point if isinstance(out, Unbounded) else out.point
        slack_seen.update(j for j, hj in enumerate(hs) if hj.slack(x) > 0)
        if isinstance(out, Optimal) and h.slack(out.point) == 0:
            implicit.add(i)
    implicit = frozenset(implicit)
    if implicit:
        aff = solve_system([hs[i].normal for i in sorted(implicit)],
                           tuple(hs[i].rhs for i in sorted(implicit)), D)
    else:
        aff = Flat.whole(D)
    eliminated = set(implicit)
    for i, h in enumerate(hs):
        if i not in implicit and all(dot(h.normal, w) == 0 for w in aff.directions):
            eliminated.add(i)
    kept = tuple(i for i in range(len(hs)) if i not in eliminated)
    pointed = rank([h.normal for h in hs]) == D
    levels = completion_levels(spec.objective, [hs[i].normal for i in kept], D)
    norm = NormalizedSpec(spec, implicit, frozenset(eliminated), kept, aff, pointed, None, levels)
    ell_min = None
    if pointed:
        inst, _ = norm.lp(levels)
        out = lex_min(inst)
        if isinstance(out, Optimal):
            ell_min = dot(spec.objective, out.point)
    logger.debug("preprocess: n=%d D=%d D'=%d implicit=%s pointed=%s ell_min=%s",
                 len(hs), D, aff.dim, sorted(implicit), pointed, ell_min)
    return NormalizedSpec(spec, implicit, frozenset(eliminated), kept, aff, pointed,
                          ell_min, levels)


def minimal_face(spec: NormalizedSpec, seed: Flat) -> Optional[frozenset]:
    """Active set of the smallest face of ``P`` containing ``P & seed``.

    Returns ``None`` when ``P & seed`` is empty.  Halfspaces whose normal is
    constant on the seed are decided directly; each remaining one is settled by
    maximising its slack over ``P & seed``, skipping those already seen slack
    at an earlier solution.
    """
    normals, rhs = seed.equations()
    extra = tuple(zip(normals, rhs))
    hs = spec.halfspaces
    active = set()
    undecided = []
    for i, h in enumerate(hs):
        if all(dot(h.normal, w) == 0 for w in seed.directions):
            s = h.slack(seed.basepoint)
            if s < 0:
                return None
            if s == 0:
                active.add(i)
        else:
            undecided.append(i)
    if not undecided:
        return frozenset(active)
    # implicit equalities are enforced as LP equalities, so feasibility is
    # settled by the first solve
    inst0, _ = spec.lp([(Rational(0),) * spec.dimension], extra_equalities=extra)
    out = lex_min(inst0)
    if isinstance(out, Infeasible):
        return None
    active |= {i for i in spec.implicit_equalities}
    slack = {i for i in undecided if hs[i].slack(out.point) > 0}
    for i in undecided:
        if i in slack or i in spec.implicit_equalities:
            continue
        inst, _ = spec.lp([hs[i].normal], extra_equalities=extra)
        res = lex_max(inst)
        x = res.feasible_point if isinstance(res, Unbounded) else res.point
        slack.update(j for j in undecided if hs[j].slack(x) > 0)
        if isinstance(res, Optimal) and hs[i].slack(res.point) == 0:
            active.add(i)
    return frozenset(active)


def face_dimension(spec: NormalizedSpec, active: Iterable[int]) -> int:
    idx = set(active) | spec.implicit_equalities
    if not idx:
        return spec.dimension
    return spec.dimension - rank([spec.halfspaces[i].normal for i in sorted(idx)])


def is_bounded_face(spec: NormalizedSpec, active: Iterable[int]) -> bool:
    """True iff the recession cone of the face is ``{0}``.

    The cone is trivial exactly when the lexicographic max and min of the
    coordinate functionals over it are both attained (at the origin).
    """
    active = frozenset(active)
    if face_dimension(spec, active) <= 0:
        return True
    D = spec.dimension
    equal = active | spec.implicit_equalities
    hs = spec.halfspaces
    rows = [i for i in spec.kept if i not in equal]
    coords = tuple(tuple(Rational(int(i == j)) for i in range(D)) for j in range(D))
    cone = LPInstance(D, tuple((hs[i].normal, 0) for i in rows),
                      tuple((hs[i].normal, 0) for i in sorted(equal)), coords)
    if not isinstance(lex_max(cone), Optimal):
        return False
    return isinstance(lex_min(cone), Optimal)


def face_passes_threshold(spec: NormalizedSpec, active: Iterable[int]) -> tuple[bool, Optional[Rational]]:
    """Whether the face lies in the thresholded complex, and its max of l.

    The second element is ``None`` when the completed objective is unbounded
    above on the face.
    """
    inst, _ = spec.lp(spec.levels, equal=active)
    hi = lex_max(inst)
    if not isinstance(hi, Optimal):
        return False, None
    ell_max = spec.ell(hi.point)
    if ell_max >= spec.threshold:
        return False, ell_max
    lo = lex_min(inst)
    return isinstance(lo, Optimal), ell_max


@dataclass(frozen=True)
class Vertex:
    point: Vector
    active: frozenset
    ell: Rational


@dataclass(frozen=True)
class Face:
    """One cell of a complex.  The empty face has ``dim == -1``; by convention
    its active set is every halfspace index."""

    active: frozenset
    dim: int
    vertex_ids: tuple
    bounded: bool
    ell_max: Optional[Rational]

    @property
    def is_empty(self) -> bool:
        return self.dim == -1

    @property
    def key(self):
        return None if self.is_empty else self.active


@dataclass
class Complex:
    """A face complex keyed by active set (the empty face under key ``None``)."""

    spec: NormalizedSpec
    vertices: tuple
    faces: dict = field(default_factory=dict)

    @property
    def d_max(self) -> int:
        return max(f.dim for f in self.faces.values())

    @property
    def empty_face(self) -> Face:
        return self.faces[None]

    def sorted_faces(self) -> list:
        return sorted(self.faces.values(), key=lambda f: (f.dim, sorted(f.active)))

    def face_counts(self) -> dict:
        counts: dict = {}
        for f in self.faces.values():
            counts[f.dim] = counts.get(f.dim, 0) + 1
        return counts

    def without(self, key) -> "Complex":
        faces = {k: f for k, f in self.faces.items() if k != key}
        return Complex(self.spec, self.vertices, faces)


def make_complex(spec: NormalizedSpec, vertices: Iterable[Vertex], faces: dict) -> Complex:
    """Assemble a canonical complex.

    ``faces`` maps nonempty active sets to ``(dim, bounded, ell_max)``.
    Vertices are sorted by point and face vertex lists are recomputed from
    active-set containment.
    """
    verts = tuple(sorted(vertices, key=lambda v: v.point))
    out = {None: Face(frozenset(range(spec.original.n)), -1, (), True, None)}
    for active, (dim, bounded, ell_max) in faces.items():
        ids = tuple(k for k, v in enumerate(verts) if active <= v.active)
        if bounded and ids:
            # a bounded face is the hull of its vertices
            ell_max = max(verts[k].ell for k in ids)
        out[active] = Face(active, dim, ids, bounded, ell_max)
    return Complex(spec, verts, out)


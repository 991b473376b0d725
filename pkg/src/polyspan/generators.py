"""Instance families with known face counts.

Each constructor returns a :class:`PolyhedronSpec`; the counts quoted in the
docstrings are what the pipeline should report for it.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from .geometry import INF, Halfspace, PolyhedronSpec
from .linalg import Rational, vec
from .lp import LPInstance, Optimal, lex_max, lex_min

logger = logging.getLogger(__name__)


class BaseUnbounded(ValueError):
    """The base of a cone construction is not a polytope."""


@dataclass(frozen=True)
class MetricInput:
    """A finite metric as a symmetric matrix with zero diagonal.

    A failed triangle inequality is logged, not rejected; ``violations`` lists
    the offending triples ``(i, j, k)`` with ``d(i,k) > d(i,j) + d(j,k)``.
    """

    dist: tuple

    def __post_init__(self):
        rows = tuple(vec(r) for r in self.dist)
        object.__setattr__(self, "dist", rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError("distance matrix must be square")
            if r[i] != 0:
                raise ValueError(f"nonzero diagonal entry at {i}")
            for j in range(n):
                if r[j] < 0:
                    raise ValueError(f"negative distance at ({i}, {j})")
                if r[j] != rows[j][i]:
                    raise ValueError(f"asymmetric entries at ({i}, {j})")
        if self.violations:
            logger.warning("triangle inequality fails for %d triples, e.g. %s",
                           len(self.violations), self.violations[0])

    @property
    def n(self) -> int:
        return len(self.dist)

    @property
    def violations(self) -> list:
        d, n = self.dist, len(self.dist)
        return [(i, j, k) for i in range(n) for j in range(n) for k in range(n)
                if d[i][k] > d[i][j] + d[j][k]]

    @classmethod
    def uniform(cls, n: int, value) -> "MetricInput":
        v = Rational(value)
        return cls(tuple(tuple(v if i != j else 0 for j in range(n)) for i in range(n)))


def _unit(D: int, i: int, sign: int = 1) -> tuple:
    return tuple(Rational(sign if k == i else 0) for k in range(D))


def gen_hypercube(D: int, d: int) -> PolyhedronSpec:
    """Unit cube cut to the corner where ``sum(x) > D - d - 1/2``.

    Its complex has ``sum(C(D, i) for i <= d)`` vertices and dimension ``d``.
    """
    if not 0 <= d <= D:
        raise ValueError("need 0 <= d <= D")
    hs = []
    for i in range(D):
        hs.append(Halfspace(_unit(D, i), 0))
        hs.append(Halfspace(_unit(D, i, -1), -1))
    objective = (Rational(-1),) * D
    return PolyhedronSpec(D, tuple(hs), objective, -(D - d - Rational(1, 2)))


def gen_cone(base: PolyhedronSpec) -> PolyhedronSpec:
    """Cone ``a.x - b y >= 0`` over a polytope given by ``a.x >= b``.

    Whatever the base, the only bounded face is the apex at the origin.
    """
    D = base.dimension
    rows = tuple((h.normal, h.rhs) for h in base.halfspaces)
    for j in range(D):
        inst_j = LPInstance(D, rows, (), (_unit(D, j),))
        lo, hi = lex_min(inst_j), lex_max(inst_j)
        if not (isinstance(lo, Optimal) and isinstance(hi, Optimal)):
            raise BaseUnbounded(f"base is empty or unbounded in coordinate {j}")
    hs = tuple(Halfspace(h.normal + (-h.rhs,), 0) for h in base.halfspaces)
    return PolyhedronSpec(D + 1, hs, _unit(D + 1, D), INF)


def square_base(lo=1, hi=2) -> PolyhedronSpec:
    """The square ``lo <= x, y <= hi``, a convenient cone base."""
    return box_base(2, lo, hi)


def box_base(D: int, lo=1, hi=2) -> PolyhedronSpec:
    hs = []
    for i in range(D):
        hs.append(Halfspace(_unit(D, i), lo))
        hs.append(Halfspace(_unit(D, i, -1), -Rational(hi)))
    return PolyhedronSpec(D, tuple(hs), (Rational(0),) * D, INF)


def gen_fan2d(slopes: Sequence) -> PolyhedronSpec:
    """Region above the tangents ``y >= s x - s^2`` of the parabola ``y = x^2/4``.

    ``n`` tangents bound an unbounded region with ``n - 1`` vertices.
    """
    s = [Rational(t) for t in slopes]
    if len(s) < 2 or len(set(s)) != len(s):
        raise ValueError("need at least two distinct slopes")
    hs = tuple(Halfspace((-t, Rational(1)), -t * t) for t in s)
    return PolyhedronSpec(2, hs, (Rational(0), Rational(1)), INF)


def gen_tight_span(m: MetricInput, include_nonneg: bool = True) -> PolyhedronSpec:
    """``x_i + x_j >= d(i, j)`` for ``i < j``, optionally with ``x_i >= 0``."""
    n = m.n
    if n < 2:
        raise ValueError("need at least two points")
    hs = []
    for i in range(n):
        for j in range(i + 1, n):
            a = tuple(Rational(int(k in (i, j))) for k in range(n))
            hs.append(Halfspace(a, m.dist[i][j]))
    if include_nonneg:
        hs.extend(Halfspace(_unit(n, i), 0) for i in range(n))
    return PolyhedronSpec(n, tuple(hs), (Rational(1),) * n, INF)


def gen_moment_voronoi(ts: Sequence) -> PolyhedronSpec:
    """Lifted Voronoi diagram of points on the curve ``(t, t^2, t^3)``.

    In variables ``(x1, x2, x3, w)`` each site ``p`` gives ``w - 2p.x >= -|p|^2``.
    The bounded part has ``C(n - 2, 2)`` vertices.
    """
    t = [Rational(v) for v in ts]
    if len(t) < 4 or len(set(t)) != len(t):
        raise ValueError("need at least four distinct parameters")
    hs = []
    for v in t:
        p = (v, v * v, v * v * v)
        hs.append(Halfspace(tuple(-2 * c for c in p) + (Rational(1),), -sum(c * c for c in p)))
    return PolyhedronSpec(4, tuple(hs), (Rational(0),) * 3 + (Rational(1),), INF)


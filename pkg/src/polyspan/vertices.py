"""Vertices of the thresholded complex from small sets of tight halfspaces.

Every vertex ``v`` of a complex of dimension ``d`` is the minimum of the
(completed) objective over ``P & A``, where ``A`` is the intersection of the
boundary hyperplanes of at most ``d`` halfspaces.  Enumerating all such sets
therefore costs ``O(n^d)`` linear programs.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator, Optional

from .geometry import NormalizedSpec, Vertex, face_dimension
from .lp import Optimal, lex_min

logger = logging.getLogger(__name__)


@dataclass
class VertexSet:
    """Deduplicated vertices sorted by point, with one witnessing subset each.

    ``solved`` memoises the subset minima computed along the way (``None`` for
    subsets without a minimum) so later checks need not re-solve them.
    """

    vertices: list = field(default_factory=list)
    source_subsets: dict = field(default_factory=dict)
    solved: dict = field(default_factory=dict, compare=False, repr=False)

    def __len__(self):
        return len(self.vertices)

    def points(self) -> set:
        return {v.point for v in self.vertices}

    def index(self, point) -> Optional[int]:
        for k, v in enumerate(self.vertices):
            if v.point == point:
                return k
        return None


def subsets(spec: NormalizedSpec, size: int) -> Iterator[tuple]:
    """All subsets of the kept halfspaces with at most ``size`` members."""
    for k in range(min(size, spec.n_kept) + 1):
        yield from combinations(spec.kept, k)


def min_on_subset(spec: NormalizedSpec, S: tuple):
    """Lexicographic minimum over ``P & A_S``, or ``None`` when there is none."""
    inst, _ = spec.lp(spec.search_levels, equal=S)
    out = lex_min(inst)
    if isinstance(out, Optimal):
        return out.point
    return None


def passes_vertex_threshold(spec: NormalizedSpec, point) -> bool:
    return spec.ell(point) < spec.threshold


def _solve_chunk(args):
    spec, chunk = args
    return [(S, min_on_subset(spec, S)) for S in chunk]


def _merge(spec, results, vs_points, solved):
    for S, x in results:
        solved[S] = x
        if x is None or not passes_vertex_threshold(spec, x):
            continue
        if x not in vs_points:
            vs_points[x] = S


def enumerate_vertices(spec: NormalizedSpec, d: int, workers: int = 1) -> VertexSet:
    """All vertices reachable as ``min(P & A_S)`` for ``|S| <= d``.

    With ``d >= dim`` of the complex this is its complete vertex set.  The
    result does not depend on ``workers``.
    """
    if not spec.has_vertices:
        return VertexSet()
    found: dict = {}
    solved: dict = {}
    all_subsets = list(subsets(spec, d))
    if workers > 1 and len(all_subsets) > 64:
        step = max(1, len(all_subsets) // (4 * workers))
        chunks = [(spec, all_subsets[i:i + step]) for i in range(0, len(all_subsets), step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map() yields in submission order, so the first witness per point
            # is the same as in a sequential run
            for res in pool.map(_solve_chunk, chunks):
                _merge(spec, res, found, solved)
    else:
        _merge(spec, _solve_chunk((spec, all_subsets)), found, solved)
    vs = VertexSet(solved=solved)
    for x in sorted(found):
        active = spec.active_at(x)
        if face_dimension(spec, active) != 0:
            raise AssertionError(f"lexicographic minimum {x} is not a vertex")
        vs.vertices.append(Vertex(x, active, spec.ell(x)))
        vs.source_subsets[len(vs.vertices) - 1] = found[x]
    logger.debug("enumerate_vertices(d=%d): %d subsets, %d vertices",
                 d, len(all_subsets), len(vs))
    return vs


def vertex_bound(n: int, D: int, d: int) -> int:
    return comb(n, d) - comb(D, d) + 1


def check_vertex_bound(n: int, D: int, d: int, count: int) -> bool:
    """``count <= C(n, d) - C(D, d) + 1``."""
    return count <= vertex_bound(n, D, d)

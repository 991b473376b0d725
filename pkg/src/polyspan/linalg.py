"""Exact rational linear algebra.

Vectors are tuples of exact rationals; matrices are sequences of such tuples.
The scalar type is gmpy2's ``mpq`` when available, otherwise
:class:`fractions.Fraction`.  Both hash and compare alike, so values of either
type can be mixed freely.  Everything here is exact: elimination pivots on the first
nonzero entry and never rounds.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rational

Vector = tuple  # tuple of Rational

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Rational:
    """Parse ``"p/q"`` or ``"p"``; the sign may only sit on the numerator."""
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational: {text!r}")
    return Rational(text.lstrip("+"))


def format_rational(value: Rational) -> str:
    value = Rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def vec(values: Iterable) -> Vector:
    """Coerce an iterable of ints/strings/Fractions into an exact vector."""
    return tuple(v if isinstance(v, Rational) else Rational(v) for v in values)


def dot(a: Sequence[Rational], b: Sequence[Rational]) -> Rational:
    return sum((x * y for x, y in zip(a, b)), Rational(0))


def add(a: Sequence[Rational], b: Sequence[Rational]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[Rational], b: Sequence[Rational]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale(c: Rational, a: Sequence[Rational]) -> Vector:
    return tuple(c * x for x in a)


def identity(n: int) -> list[Vector]:
    return [tuple(Rational(int(i == j)) for j in range(n)) for i in range(n)]


def transpose(rows: Sequence[Sequence[Rational]]) -> list[Vector]:
    if not rows:
        return []
    return [tuple(col) for col in zip(*rows)]


def rref(rows: Sequence[Sequence[Rational]]) -> tuple[list[list[Rational]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Zero rows are dropped from the returned matrix, so ``len(pivots)`` is the
    rank.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        row = m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Rational]]) -> int:
    """Exact rank over the rationals."""
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Rational]], ncols: Optional[int] = None) -> list[Vector]:
    """Basis of ``{x : M x = 0}``; one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Rational(0)] * ncols
        x[fc] = Rational(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[fc]
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class Flat:
    """Affine subspace ``basepoint + span(directions)``.

    Directions are kept linearly independent.  The empty flat is represented by
    ``None`` wherever a flat may fail to exist.
    """

    basepoint: Vector
    directions: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.directions)

    @property
    def ambient(self) -> int:
        return len(self.basepoint)

    @classmethod
    def whole(cls, n: int) -> "Flat":
        return cls(tuple(Rational(0) for _ in range(n)), tuple(identity(n)))

    def contains(self, point: Sequence[Rational]) -> bool:
        diff = sub(point, self.basepoint)
        if not any(diff):
            return True
        return rank(list(self.directions) + [diff]) == self.dim

    def equations(self) -> tuple[list[Vector], Vector]:
        """Hyperplane form ``N x = r`` of the flat."""
        n = self.ambient
        normals = nullspace(list(self.directions), n) if self.directions else identity(n)
        return list(normals), tuple(dot(a, self.basepoint) for a in normals)

    def point(self, coords: Sequence[Rational]) -> Vector:
        """Map flat coordinates to an ambient point."""
        x = list(self.basepoint)
        for c, d in zip(coords, self.directions):
            if c:
                for j, dj in enumerate(d):
                    x[j] += c * dj
        return tuple(x)


def solve_system(M: Sequence[Sequence[Rational]], rhs: Sequence[Rational],
                 ncols: Optional[int] = None) -> Optional[Flat]:
    """Full solution set of ``M x = rhs`` as a :class:`Flat`, or ``None``.

    ``ncols`` is only needed when ``M`` has no rows.
    """
    if len(M) != len(rhs):
        raise ValueError("row count of M and length of rhs differ")
    if ncols is None:
        if not M:
            raise ValueError("ncols is required for an empty system")
        ncols = len(M[0])
    if not M:
        return Flat.whole(ncols)
    aug = [list(row) + [b] for row, b in zip(M, rhs)]
    red, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    base = [Rational(0)] * ncols
    for row, pc in zip(red, pivots):
        base[pc] = row[ncols]
    free = [c for c in range(ncols) if c not in pivots]
    dirs = []
    for fc in free:
        x = [Rational(0)] * ncols
        x[fc] = Rational(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[fc]
        dirs.append(tuple(x))
    return Flat(tuple(base), tuple(dirs))


def affine_hull(points: Sequence[Sequence[Rational]]) -> Optional[Flat]:
    """Smallest flat containing ``points``; ``None`` for no points."""
    if not points:
        return None
    base = tuple(points[0])
    diffs = [sub(p, base) for p in points[1:]]
    diffs = [d for d in diffs if any(d)]
    if not diffs:
        return Flat(base)
    red, _ = rref(diffs)
    return Flat(base, tuple(tuple(r) for r in red))


def flat_intersection(f1: Optional[Flat], f2: Optional[Flat]) -> Optional[Flat]:
    """Exact intersection of two flats (``None`` when disjoint)."""
    if f1 is None or f2 is None:
        return None
    if f1.ambient != f2.ambient:
        raise ValueError("flats live in different ambient spaces")
    N1, r1 = f1.equations()
    N2, r2 = f2.equations()
    return solve_system(N1 + N2, r1 + r2, f1.ambient)

"""Exact lexicographic simplex.

Problems are posed over free variables ``x`` in ``Q^D``::

    lex-minimize (c_1 . x, c_2 . x, ...)
    subject to   a_i . x >= b_i      (inequalities)
                 e_j . x  = f_j      (equalities)

Equalities are eliminated first by substituting the solution flat
``x = p + W z``.  The remaining inequality system is solved by a two-phase
tableau simplex over ``z = z+ - z-`` and slacks.  The objective is carried as a
stack of reduced-cost rows and compared lexicographically, which is the same as
optimising ``c_1 + eps c_2 + eps^2 c_3 + ...`` for an infinitesimal ``eps``.
Bland's least-index rule is used for both entering and leaving variables, so
the method terminates on degenerate input.

Every outcome carries a certificate that :func:`verify_outcome` checks with
exact arithmetic.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .linalg import Rational, Vector, dot, nullspace, solve_system, transpose, vec

logger = logging.getLogger(__name__)

# when set, every solve is checked against its own certificate
CHECK_OUTCOMES = os.environ.get("POLYSPAN_CHECK_LP") == "1"

ZERO = Rational(0)
ONE = Rational(1)


@dataclass(frozen=True)
class LPInstance:
    """A linear program in ``>=`` / ``=`` form with a lexicographic objective."""

    dimension: int
    inequalities: tuple
    equalities: tuple = ()
    objective: tuple = ()

    def __post_init__(self):
        ineq = tuple((vec(a), Rational(b)) for a, b in self.inequalities)
        eq = tuple((vec(a), Rational(b)) for a, b in self.equalities)
        obj = tuple(vec(c) for c in self.objective)
        object.__setattr__(self, "inequalities", ineq)
        object.__setattr__(self, "equalities", eq)
        object.__setattr__(self, "objective", obj)
        if not obj:
            raise ValueError("objective list must be nonempty")
        for a, _ in ineq + eq:
            if len(a) != self.dimension:
                raise ValueError("constraint normal has the wrong length")
        for c in obj:
            if len(c) != self.dimension:
                raise ValueError("objective has the wrong length")

    def negated(self) -> "LPInstance":
        return LPInstance(self.dimension, self.inequalities, self.equalities,
                          tuple(tuple(-x for x in c) for c in self.objective))


@dataclass(frozen=True)
class Optimal:
    """Lexicographic minimiser.

    ``multipliers[k][i]`` is the dual weight of inequality ``i`` at objective
    level ``k`` and ``eq_multipliers[k][j]`` that of equality ``j``.  For every
    inequality the column ``(multipliers[0][i], multipliers[1][i], ...)`` is
    lexicographically nonnegative and vanishes off the tight set.
    """

    point: Vector
    tight: frozenset
    multipliers: Optional[tuple] = None
    eq_multipliers: Optional[tuple] = None

    def value(self, c: Sequence[Rational]) -> Rational:
        return dot(c, self.point)


@dataclass(frozen=True)
class Infeasible:
    """Farkas certificate: ``sum y_i a_i + sum u_j e_j = 0`` while
    ``sum y_i b_i + sum u_j f_j > 0`` with ``y >= 0``."""

    multipliers: tuple
    eq_multipliers: tuple = ()


@dataclass(frozen=True)
class Unbounded:
    feasible_point: Vector
    ray: Vector


LPOutcome = Union[Optimal, Infeasible, Unbounded]


def _lex_sign(values: Sequence[Rational]) -> int:
    for v in values:
        if v > 0:
            return 1
        if v < 0:
            return -1
    return 0


def _tight_set(inst: LPInstance, x: Sequence[Rational]) -> frozenset:
    return frozenset(i for i, (a, b) in enumerate(inst.inequalities) if dot(a, x) == b)


def _eq_combination(inst: LPInstance, target: Sequence[Rational]) -> Optional[Vector]:
    """Solve ``sum u_j e_j = target`` for ``u``; ``None`` if impossible."""
    q = len(inst.equalities)
    if q == 0:
        return () if not any(target) else None
    et = transpose([e for e, _ in inst.equalities])
    flat = solve_system(et, tuple(target), q)
    return None if flat is None else flat.basepoint


class _Tableau:
    """Dense simplex tableau with lexicographic cost rows."""

    def __init__(self, rows, rhs, basis):
        self.T = [list(r) + [b] for r, b in zip(rows, rhs)]
        self.basis = list(basis)
        self.ncols = len(rows[0]) if rows else 0
        self.cost = []  # list of reduced-cost rows (length ncols + 1; last = -value)

    def set_costs(self, costs):
        """Install cost vectors and canonicalise them against the basis."""
        self.cost = []
        for c in costs:
            r = list(c) + [ZERO]
            for i, bcol in enumerate(self.basis):
                cb = r[bcol]
                if cb:
                    row = self.T[i]
                    r = [x - cb * y for x, y in zip(r, row)]
            self.cost.append(r)

    def pivot(self, r, c):
        T = self.T
        row = T[r]
        piv = row[c]
        if piv != 1:
            row = [x / piv for x in row]
            T[r] = row
        nz = [(j, x) for j, x in enumerate(row) if x]
        for i in range(len(T)):
            if i == r:
                continue
            f = T[i][c]
            if f:
                ti = T[i]
                for j, x in nz:
                    ti[j] -= f * x
        for cr in self.cost:
            f = cr[c]
            if f:
                for j, x in nz:
                    cr[j] -= f * x
        self.basis[r] = c

    def entering(self, allowed):
        """Least-index column with lexicographically negative reduced cost."""
        basic = set(self.basis)
        for j in range(self.ncols):
            if j in basic or not allowed[j]:
                continue
            for cr in self.cost:
                v = cr[j]
                if v < 0:
                    return j
                if v > 0:
                    break
        return None

    def leaving(self, c):
        best = None
        best_ratio = None
        for i, row in enumerate(self.T):
            a = row[c]
            if a > 0:
                ratio = row[-1] / a
                if (best is None or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[best])):
                    best, best_ratio = i, ratio
        return best

    def run(self, allowed):
        """Iterate to optimality; returns the unbounded column or ``None``."""
        while True:
            c = self.entering(allowed)
            if c is None:
                return None
            r = self.leaving(c)
            if r is None:
                return c
            self.pivot(r, c)

    def values(self):
        x = [ZERO] * self.ncols
        for i, bcol in enumerate(self.basis):
            x[bcol] = self.T[i][-1]
        return x


def lex_min(inst: LPInstance) -> LPOutcome:
    """Lexicographic minimum of ``inst.objective`` over the feasible region."""
    out = _lex_min(inst)
    if CHECK_OUTCOMES and not verify_outcome(inst, out):
        raise AssertionError(f"LP certificate failed to verify: {out!r}")
    return out


def _lex_min(inst: LPInstance) -> LPOutcome:
    D = inst.dimension
    A = [a for a, _ in inst.inequalities]
    b = [bb for _, bb in inst.inequalities]
    m = len(A)

    if inst.equalities:
        flat = solve_system([e for e, _ in inst.equalities],
                            tuple(f for _, f in inst.equalities), D)
        if flat is None:
            return _equality_infeasibility(inst)
    else:
        flat = None

    if flat is None:
        base = tuple(ZERO for _ in range(D))
        W = None
        k = D
        G = [list(a) for a in A]
        h = list(b)
        objs = [list(c) for c in inst.objective]
    else:
        base = flat.basepoint
        W = flat.directions
        k = len(W)
        G = [[dot(a, w) for w in W] for a in A]
        h = [bb - dot(a, base) for a, bb in zip(A, b)]
        objs = [[dot(c, w) for w in W] for c in inst.objective]

    # column layout: z+ (k) | z- (k) | s (m) | artificials
    nz = 2 * k
    art_rows = [i for i in range(m) if h[i] > 0]
    ncols = nz + m + len(art_rows)
    rows, rhs, basis = [], [], []
    art_col = {}
    for idx, i in enumerate(art_rows):
        art_col[i] = nz + m + idx
    for i in range(m):
        row = [ZERO] * ncols
        if h[i] > 0:
            for j in range(k):
                row[j] = G[i][j]
                row[k + j] = -G[i][j]
            row[nz + i] = -ONE
            row[art_col[i]] = ONE
            rows.append(row)
            rhs.append(h[i])
            basis.append(art_col[i])
        else:
            for j in range(k):
                row[j] = -G[i][j]
                row[k + j] = G[i][j]
            row[nz + i] = ONE
            rows.append(row)
            rhs.append(-h[i])
            basis.append(nz + i)

    if m == 0:
        return _solve_free(inst, base, W, k, objs)

    tab = _Tableau(rows, rhs, basis)
    allowed = [True] * ncols

    if art_rows:
        phase1 = [ZERO] * ncols
        for i in art_rows:
            phase1[art_col[i]] = ONE
        tab.set_costs([phase1])
        col = tab.run(allowed)
        assert col is None, "phase I cannot be unbounded"
        value = -tab.cost[0][-1]
        if value > 0:
            y = tuple(tab.cost[0][nz + i] for i in range(m))
            return _map_infeasibility(inst, y)
        # drive remaining artificials out of the basis, dropping redundant rows
        art_set = set(art_col.values())
        r = 0
        while r < len(tab.T):
            if tab.basis[r] in art_set:
                row = tab.T[r]
                c = next((j for j in range(nz + m) if row[j] != 0), None)
                if c is None:
                    del tab.T[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, c)
            r += 1
        for c in art_set:
            allowed[c] = False

    costs = []
    for c in objs:
        full = [ZERO] * ncols
        for j in range(k):
            full[j] = c[j]
            full[k + j] = -c[j]
        costs.append(full)
    tab.set_costs(costs)
    col = tab.run(allowed)
    w = tab.values()
    x = _to_x(base, W, k, [w[j] - w[k + j] for j in range(k)])
    if col is not None:
        dw = [ZERO] * ncols
        dw[col] = ONE
        for i, bcol in enumerate(tab.basis):
            dw[bcol] = -tab.T[i][col]
        ray = _to_dir(W, k, D, [dw[j] - dw[k + j] for j in range(k)])
        return Unbounded(x, ray)

    lam = tuple(tuple(cr[nz + i] for i in range(m)) for cr in tab.cost)
    mu = []
    for level, c in enumerate(inst.objective):
        resid = list(c)
        for i, a in enumerate(A):
            yi = lam[level][i]
            if yi:
                for j in range(D):
                    resid[j] -= yi * a[j]
        u = _eq_combination(inst, resid)
        assert u is not None, "dual residual outside the equality row space"
        mu.append(tuple(u))
    return Optimal(x, _tight_set(inst, x), lam, tuple(mu))


def _to_x(base, W, k, z):
    if W is None:
        return tuple(z)
    x = list(base)
    for zj, wj in zip(z, W):
        if zj:
            for t in range(len(x)):
                x[t] += zj * wj[t]
    return tuple(x)


def _to_dir(W, k, D, z):
    if W is None:
        return tuple(z)
    x = [ZERO] * D
    for zj, wj in zip(z, W):
        if zj:
            for t in range(D):
                x[t] += zj * wj[t]
    return tuple(x)


def _solve_free(inst, base, W, k, objs):
    """No inequalities: optimal iff every objective is constant on the flat."""
    for level, c in enumerate(objs):
        j = next((j for j in range(k) if c[j] != 0), None)
        if j is not None:
            z = [ZERO] * k
            z[j] = -ONE if c[j] > 0 else ONE
            # earlier levels are zero on every direction, so this ray is lex-decreasing
            return Unbounded(tuple(base), _to_dir(W, k, inst.dimension, z))
    mu = []
    for c in inst.objective:
        u = _eq_combination(inst, c)
        assert u is not None
        mu.append(tuple(u))
    return Optimal(tuple(base), frozenset(), tuple(() for _ in inst.objective), tuple(mu))


def _equality_infeasibility(inst: LPInstance) -> Infeasible:
    E = [e for e, _ in inst.equalities]
    f = [ff for _, ff in inst.equalities]
    for u in nullspace(transpose(E), len(E)):
        s = dot(u, f)
        if s != 0:
            if s < 0:
                u = tuple(-x for x in u)
            return Infeasible(tuple(ZERO for _ in inst.inequalities), tuple(u))
    raise AssertionError("inconsistent equalities without a left-null certificate")


def _map_infeasibility(inst: LPInstance, y) -> Infeasible:
    """Lift reduced-space Farkas weights to the original constraint system."""
    D = inst.dimension
    combo = [ZERO] * D
    for yi, (a, _) in zip(y, inst.inequalities):
        if yi:
            for j in range(D):
                combo[j] += yi * a[j]
    u = _eq_combination(inst, [-x for x in combo])
    assert u is not None, "Farkas combination outside the equality row space"
    return Infeasible(tuple(y), tuple(u))


def lex_max(inst: LPInstance) -> LPOutcome:
    """Lexicographic maximum; certificates refer to ``inst.negated()``."""
    return lex_min(inst.negated())


def verify_outcome(inst: LPInstance, out: LPOutcome) -> bool:
    """Check an outcome's certificate exactly (as a minimisation of ``inst``)."""
    if isinstance(out, Infeasible):
        return _verify_infeasible(inst, out)
    if isinstance(out, Unbounded):
        return _verify_unbounded(inst, out)
    if isinstance(out, Optimal):
        return _verify_optimal(inst, out)
    return False


def _feasible(inst, x):
    if len(x) != inst.dimension:
        return False
    return (all(dot(a, x) >= b for a, b in inst.inequalities)
            and all(dot(e, x) == f for e, f in inst.equalities))


def _verify_infeasible(inst, out):
    y, u = out.multipliers, out.eq_multipliers
    if len(y) != len(inst.inequalities) or len(u) != len(inst.equalities):
        return False
    if any(Rational(v) < 0 for v in y):
        return False
    D = inst.dimension
    combo = [ZERO] * D
    total = ZERO
    for yi, (a, b) in zip(y, inst.inequalities):
        for j in range(D):
            combo[j] += yi * a[j]
        total += yi * b
    for uj, (e, f) in zip(u, inst.equalities):
        for j in range(D):
            combo[j] += uj * e[j]
        total += uj * f
    return not any(combo) and total > 0


def _verify_unbounded(inst, out):
    x, r = out.feasible_point, out.ray
    if not _feasible(inst, x) or len(r) != inst.dimension:
        return False
    if any(dot(a, r) < 0 for a, _ in inst.inequalities):
        return False
    if any(dot(e, r) != 0 for e, _ in inst.equalities):
        return False
    return _lex_sign([dot(c, r) for c in inst.objective]) < 0


def _verify_optimal(inst, out):
    x = out.point
    if not _feasible(inst, x):
        return False
    tight = _tight_set(inst, x)
    if frozenset(out.tight) != tight:
        return False
    lam, mu = out.multipliers, out.eq_multipliers
    if lam is None:
        cert = _local_certificate(inst, tight)
        if cert is None:
            return False
        lam, mu = cert
    m, q, D = len(inst.inequalities), len(inst.equalities), inst.dimension
    if len(lam) != len(inst.objective) or len(mu) != len(inst.objective):
        return False
    for level, c in enumerate(inst.objective):
        if len(lam[level]) != m or len(mu[level]) != q:
            return False
        resid = list(c)
        for yi, (a, _) in zip(lam[level], inst.inequalities):
            if yi:
                for j in range(D):
                    resid[j] -= yi * a[j]
        for uj, (e, _) in zip(mu[level], inst.equalities):
            if uj:
                for j in range(D):
                    resid[j] -= uj * e[j]
        if any(resid):
            return False
    for i in range(m):
        column = [lam[level][i] for level in range(len(inst.objective))]
        if i not in tight and any(column):
            return False
        if _lex_sign(column) < 0:
            return False
    return True


def _local_certificate(inst, tight):
    """Derive multipliers from the tangent cone at a point with this tight set.

    The returned weights are checked independently by the caller, so a wrong
    answer here can only make verification fail, never pass spuriously.
    """
    order = sorted(tight)
    cone = LPInstance(inst.dimension,
                      tuple((inst.inequalities[i][0], 0) for i in order),
                      tuple((e, 0) for e, _ in inst.equalities),
                      inst.objective)
    out = lex_min(cone)
    if not isinstance(out, Optimal):
        return None
    m = len(inst.inequalities)
    lam = []
    for level in range(len(inst.objective)):
        full = [ZERO] * m
        for pos, i in enumerate(order):
            full[i] = out.multipliers[level][pos]
        lam.append(tuple(full))
    return tuple(lam), out.eq_multipliers

"""Exact rational simplex for small linear programs.

Solves max c.x subject to A x <= b, x >= 0 with b >= 0 (so the slack basis
is feasible and no phase-1 is needed).  Bland's rule guarantees termination.
All arithmetic is fractions.Fraction; results are exact.
"""
from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def simplex_max(c, rows, rhs):
    """Maximize c.x, rows[i].x <= rhs[i], x >= 0.

    c: list of Fraction (length nv); rows: list of lists; rhs: list of
    Fraction, all >= 0.  Returns (value, x list).
    """
    m = len(rows)
    nv = len(c)
    # tableau: m constraint rows + objective row; columns: nv vars, m slacks, rhs
    width = nv + m + 1
    tab = []
    for i, row in enumerate(rows):
        if rhs[i] < 0:
            raise ValueError("simplex_max requires rhs >= 0")
        t = [Fraction(x) for x in row] + [ZERO] * m + [Fraction(rhs[i])]
        t[nv + i] = ONE
        tab.append(t)
    obj = [-Fraction(x) for x in c] + [ZERO] * (m + 1)
    basis = [nv + i for i in range(m)]

    while True:
        enter = -1
        for j in range(nv + m):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise ValueError("unbounded linear program")
        piv = tab[leave][enter]
        prow = tab[leave]
        if piv != ONE:
            for j in range(width):
                if prow[j]:
                    prow[j] /= piv
        for i in range(m):
            if i == leave:
                continue
            f = tab[i][enter]
            if f:
                row = tab[i]
                for j in range(width):
                    if prow[j]:
                        row[j] -= f * prow[j]
        f = obj[enter]
        if f:
            for j in range(width):
                if prow[j]:
                    obj[j] -= f * prow[j]
        basis[leave] = enter

    x = [ZERO] * nv
    for i, b in enumerate(basis):
        if b < nv:
            x[b] = tab[i][-1]
    return obj[-1], x


def matching_lp(edge_list, vertex_caps=None, lower=None, upper=None, excluded=None):
    """Max total weight over edges with per-vertex load caps.

    edge_list: canonical sorted list of edges.  vertex_caps maps vertex ->
    Fraction cap (default 1).  lower / upper map edge -> Fraction bounds on
    that edge's weight (lower bounds are substituted out, upper bounds add a
    row).  excluded is a set of edges forced to 0.  Returns
    (value, {edge: weight}) including the lower-bounded mass, or
    (None, None) when the bounds alone are infeasible.
    """
    excluded = excluded or frozenset()
    lower = lower or {}
    upper = upper or {}
    active = [e for e in edge_list if e not in excluded]
    vertices = sorted({v for e in active for v in e})
    vindex = {v: i for i, v in enumerate(vertices)}
    base = [Fraction(1)] * len(vertices) if vertex_caps is None else [
        Fraction(vertex_caps[v]) for v in vertices]
    # substitute fixed lower mass
    for e in active:
        lb = lower.get(e)
        if lb:
            for v in e:
                base[vindex[v]] -= lb
    if any(b < 0 for b in base):
        return None, None
    rows = []
    rhs = list(base)
    for v in vertices:
        rows.append([ONE if v in e else ZERO for e in active])
    for j, e in enumerate(active):
        if e in upper:
            residual = Fraction(upper[e]) - lower.get(e, ZERO)
            if residual < 0:
                return None, None
            rows.append([ONE if jj == j else ZERO for jj in range(len(active))])
            rhs.append(residual)
    c = [ONE] * len(active)
    value, x = simplex_max(c, rows, rhs)
    weights = {}
    total = ZERO
    for e, w in zip(active, x):
        w = w + lower.get(e, ZERO)
        if w:
            weights[e] = w
            total += w
    return total, weights

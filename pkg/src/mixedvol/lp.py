"""A small exact simplex solver over Fractions.

The geometry kernel needs only tiny LPs (point/cone membership, separation,
relative-interior certificates), but they must be decided exactly.  This is
a dense two-phase simplex with Bland's rule; exact arithmetic plus Bland
guarantees termination.  Variables are free unless marked nonnegative via
``nonneg`` (free variables are split internally).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None
    value: Fraction | None


def _pivot(tab: list[list[Fraction]], zrow: list[Fraction], basis: list[int], r: int, c: int):
    piv = tab[r][c]
    if piv != 1:
        tab[r] = [v / piv for v in tab[r]]
    row = tab[r]
    for i in range(len(tab)):
        if i != r:
            f = tab[i][c]
            if f != 0:
                tab[i] = [a - f * b for a, b in zip(tab[i], row)]
    f = zrow[c]
    if f != 0:
        for j in range(len(zrow)):
            zrow[j] -= f * row[j]
    basis[r] = c


def _run_simplex(tab, zrow, basis) -> str:
    ncols = len(tab[0]) - 1
    while True:
        enter = next((j for j in range(ncols) if zrow[j] > 0), None)
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for i in range(len(tab)):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(tab, zrow, basis, leave, enter)


def lp_maximize(
    c: Sequence,
    a_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nonneg: Sequence[bool] | None = None,
) -> LPResult:
    """Maximize c.x subject to a_ub.x <= b_ub and a_eq.x = b_eq.

    nonneg[i] marks x_i >= 0; unmarked variables are free.
    """
    nvar = len(c)
    c = [Fraction(v) for v in c]
    if nonneg is None:
        nonneg = [False] * nvar

    # column layout: one column per nonnegative variable, two per free variable
    cols: list[tuple[int, int]] = []  # (var index, sign)
    for j in range(nvar):
        cols.append((j, +1))
        if not nonneg[j]:
            cols.append((j, -1))
    width0 = len(cols)

    def expand(row: Sequence) -> list[Fraction]:
        return [Fraction(row[j]) if s > 0 else -Fraction(row[j]) for j, s in cols]

    rows: list[tuple[list[Fraction], Fraction, bool]] = []
    for a, b in zip(a_ub, b_ub, strict=True):
        rows.append((expand(a), Fraction(b), True))
    for a, b in zip(a_eq, b_eq, strict=True):
        rows.append((expand(a), Fraction(b), False))

    nslack = sum(1 for _, _, is_ub in rows if is_ub)
    width = width0 + nslack
    tab: list[list[Fraction]] = []
    needs_art: list[bool] = []
    slack_cols: list[int | None] = []
    si = 0
    for a, b, is_ub in rows:
        row = a + [_ZERO] * nslack + [b]
        col = None
        if is_ub:
            col = width0 + si
            row[col] = _ONE
            si += 1
        if b < 0:
            row = [-v for v in row]
        tab.append(row)
        slack_cols.append(col)
        needs_art.append(not (col is not None and row[col] == 1))

    basis: list[int] = []
    art_cols: list[int] = []
    for i in range(len(tab)):
        if needs_art[i]:
            col = width + len(art_cols)
            art_cols.append(col)
            basis.append(col)
        else:
            basis.append(slack_cols[i])  # type: ignore[arg-type]
    total = width + len(art_cols)
    for i in range(len(tab)):
        tab[i][-1:-1] = [_ZERO] * len(art_cols)
        if needs_art[i]:
            tab[i][basis[i]] = _ONE

    if art_cols:
        zrow = [_ZERO] * (total + 1)
        for col in art_cols:
            zrow[col] = Fraction(-1)
        for i, b in enumerate(basis):
            if zrow[b] != 0:
                f = zrow[b]
                for j in range(total + 1):
                    zrow[j] -= f * tab[i][j]
        _run_simplex(tab, zrow, basis)
        if zrow[-1] != 0:  # phase-1 optimum below zero
            return LPResult(INFEASIBLE, None, None)
        for i in range(len(tab)):
            if basis[i] in art_cols:
                piv = next((j for j in range(width) if tab[i][j] != 0), None)
                if piv is not None:
                    _pivot(tab, zrow, basis, i, piv)
        keep = [i for i in range(len(tab)) if basis[i] not in art_cols]
        tab = [[tab[i][j] for j in range(width)] + [tab[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]
        total = width

    zrow = [_ZERO] * (total + 1)
    for k, (j, s) in enumerate(cols):
        zrow[k] = c[j] if s > 0 else -c[j]
    for i, b in enumerate(basis):
        if zrow[b] != 0:
            f = zrow[b]
            for j in range(total + 1):
                zrow[j] -= f * tab[i][j]
    status = _run_simplex(tab, zrow, basis)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, None)

    full = [_ZERO] * total
    for i, b in enumerate(basis):
        full[b] = tab[i][-1]
    x = [_ZERO] * nvar
    for k, (j, s) in enumerate(cols):
        x[j] += full[k] if s > 0 else -full[k]
    value = sum((ci * xi for ci, xi in zip(c, x)), _ZERO)
    return LPResult(OPTIMAL, x, value)


def lp_feasible(
    a_ub=(), b_ub=(), a_eq=(), b_eq=(), nvar: int | None = None, nonneg=None
) -> bool:
    if nvar is None:
        source = list(a_ub) + list(a_eq)
        nvar = len(source[0]) if source else 0
    res = lp_maximize([_ZERO] * nvar, a_ub, b_ub, a_eq, b_eq, nonneg=nonneg)
    return res.status == OPTIMAL


def point_in_hull(points: Sequence[Sequence], x: Sequence) -> bool:
    """Exact test x in conv(points) via the convex-combination LP."""
    pts = list(points)
    if not pts:
        return False
    n = len(x)
    k = len(pts)
    a_eq = [[Fraction(p[j]) for p in pts] for j in range(n)]
    a_eq.append([_ONE] * k)
    b_eq = [Fraction(v) for v in x] + [_ONE]
    return lp_feasible((), (), a_eq, b_eq, nvar=k, nonneg=[True] * k)


def point_in_relative_interior_of_hull(points: Sequence[Sequence], x: Sequence) -> bool:
    """Exact test x in relint conv(points): a combination with all weights > 0."""
    pts = list(points)
    if not pts:
        return False
    n = len(x)
    k = len(pts)
    # variables: lambda_1..lambda_k (nonneg), t (free); maximize t, lambda_i - t >= 0
    c = [_ZERO] * k + [_ONE]
    a_eq = [[Fraction(p[j]) for p in pts] + [_ZERO] for j in range(n)]
    a_eq.append([_ONE] * k + [_ZERO])
    b_eq = [Fraction(v) for v in x] + [_ONE]
    a_ub = []
    b_ub = []
    for i in range(k):
        row = [_ZERO] * (k + 1)
        row[i] = Fraction(-1)
        row[k] = _ONE
        a_ub.append(row)
        b_ub.append(_ZERO)
    a_ub.append([_ZERO] * k + [_ONE])
    b_ub.append(_ONE)
    res = lp_maximize(c, a_ub, b_ub, a_eq, b_eq, nonneg=[True] * k + [False])
    return res.status == OPTIMAL and res.value is not None and res.value > 0

"""Exact linear algebra over the integers and rationals.

Provides the lattice-aware primitives the geometry kernel is built on:
rational rank/solve, saturated integer kernel bases (computed by unimodular
column reduction, so the result is a basis of the full kernel lattice, not a
finite-index sublattice), Hermite-normal-form canonicalization of lattice
bases, and Gram determinants.  Everything is deterministic, so derived
objects compare syntactically.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

IntVec = tuple[int, ...]


def vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g


def primitive(v: Sequence) -> IntVec:
    """Scale a nonzero rational vector to a primitive integer vector.

    The orientation of the input is preserved (no sign normalization); two
    opposite rays stay distinct.
    """
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no primitive representative")
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = vec_gcd(ints)
    return tuple(x // g for x in ints)


def rational_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a matrix with rational entries, by exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows if any(Fraction(x) != 0 for x in row)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    col = 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        for i in range(rank + 1, len(m)):
            if m[i][col] != 0:
                f = m[i][col] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def solve_linear(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One exact solution of A x = b, or None if inconsistent.

    A need not be square; when the system is underdetermined, free variables
    are set to zero (deterministically, in column order).
    """
    a = [[Fraction(x) for x in row] for row in rows]
    b = [Fraction(x) for x in rhs]
    if not a:
        return []
    nrow, ncol = len(a), len(a[0])
    aug = [a[i] + [b[i]] for i in range(nrow)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, nrow) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(nrow):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == nrow:
            break
    for i in range(r, nrow):
        if aug[i][ncol] != 0:
            return None
    x = [Fraction(0)] * ncol
    for i, c in pivots:
        x[c] = aug[i][ncol]
    return x


def _col_euclid(m: list[list[int]], u: list[list[int]], row: int, lo: int) -> int | None:
    """Clear row `row` of m on columns >= lo down to one nonzero entry.

    Column operations are mirrored on u, keeping the transform unimodular.
    Returns the column holding the surviving entry, or None if the row is
    already zero on columns >= lo.
    """
    ncols = len(m[0])
    while True:
        nz = [j for j in range(lo, ncols) if m[row][j] != 0]
        if not nz:
            return None
        if len(nz) == 1:
            return nz[0]
        j0 = min(nz, key=lambda j: abs(m[row][j]))
        for j in nz:
            if j == j0:
                continue
            q = m[row][j] // m[row][j0]
            if q:
                for i in range(len(m)):
                    m[i][j] -= q * m[i][j0]
                for i in range(len(u)):
                    u[i][j] -= q * u[i][j0]


def integer_kernel_basis(rows: Sequence[Sequence[int]]) -> list[IntVec]:
    """Basis of the saturated kernel lattice {x in Z^n : A x = 0}.

    Rational rows are admitted; each row is scaled to integers first (which
    does not change the kernel).
    """
    scaled = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        if all(x == 0 for x in fr):
            continue
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        scaled.append([int(x * den) for x in fr])
    if not scaled:
        # Kernel is everything; caller supplies n through the first row, so
        # this case must be handled by the caller.  Guarded here for safety.
        raise ValueError("integer_kernel_basis needs at least one nonzero row")
    n = len(scaled[0])
    m = [list(r) for r in scaled]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    lo = 0
    for row in range(len(m)):
        j = _col_euclid(m, u, row, lo)
        if j is None:
            continue
        if j != lo:
            for mat in (m, u):
                for i in range(len(mat)):
                    mat[i][lo], mat[i][j] = mat[i][j], mat[i][lo]
        lo += 1
        if lo == n:
            break
    basis = [tuple(u[i][j] for i in range(n)) for j in range(lo, n)]
    return hnf_rows(basis)


def hnf_rows(rows: Sequence[Sequence[int]]) -> list[IntVec]:
    """Canonical (row-style Hermite normal form) basis of a row lattice.

    Pivots positive, entries above each pivot reduced into [0, pivot).  The
    result is the deterministic representative used for all lattice-basis
    comparisons.
    """
    m = [list(map(int, r)) for r in rows if any(x != 0 for x in r)]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            if len(nz) == 1:
                i0 = nz[0]
                m[r], m[i0] = m[i0], m[r]
                break
            i0 = min(nz, key=lambda i: abs(m[i][c]))
            for i in nz:
                if i != i0:
                    q = m[i][c] // m[i0][c]
                    if q:
                        m[i] = [a - q * b for a, b in zip(m[i], m[i0])]
        if r < len(m) and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            piv = m[r][c]
            for i in range(r):
                q = m[i][c] // piv
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    return [tuple(row) for row in m[:r]]


def saturated_span_basis(rows: Sequence[Sequence], n: int) -> list[IntVec]:
    """Canonical basis of span_Q(rows) ∩ Z^n (the saturation of the row span)."""
    nonzero = [r for r in rows if any(Fraction(x) != 0 for x in r)]
    if not nonzero:
        return []
    ker = integer_kernel_basis(nonzero)
    if not ker:
        return hnf_rows([tuple(1 if i == j else 0 for j in range(n)) for i in range(n)])
    return integer_kernel_basis(ker)


def gram_matrix(basis: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[sum(int(x) * int(y) for x, y in zip(a, b)) for b in basis] for a in basis]


def det_int(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def gram_det(basis: Sequence[Sequence[int]]) -> int:
    """det(B B^T) for an integer basis; the squared covolume of its lattice."""
    if not basis:
        return 1
    d = det_int(gram_matrix(basis))
    assert d.denominator == 1 and d > 0
    return int(d)


def coords_in_basis(basis: Sequence[Sequence[int]], x: Sequence) -> list[Fraction]:
    """Coefficients y with  x = sum_i y_i basis_i;  raises if x is outside the span."""
    g = gram_matrix(basis)
    rhs = [sum(Fraction(c) * int(b) for c, b in zip(x, brow)) for brow in basis]
    y = solve_linear(g, rhs)
    assert y is not None
    # Verify exactly: membership in the span is not guaranteed by the Gram solve.
    recon = [sum(yi * b[j] for yi, b in zip(y, basis)) for j in range(len(x))]
    if any(Fraction(a) != b for a, b in zip(x, recon)):
        raise ValueError("vector lies outside the span of the basis")
    return y


def from_coords(basis: Sequence[Sequence[int]], y: Sequence) -> tuple[Fraction, ...]:
    n = len(basis[0]) if basis else 0
    return tuple(
        sum((Fraction(yi) * b[j] for yi, b in zip(y, basis)), Fraction(0)) for j in range(n)
    )


def perp_basis(vectors: Sequence[Sequence], n: int) -> list[IntVec]:
    """Canonical integer basis of the orthogonal complement of span(vectors)."""
    nonzero = [v for v in vectors if any(Fraction(x) != 0 for x in v)]
    if not nonzero:
        return hnf_rows([tuple(1 if i == j else 0 for j in range(n)) for i in range(n)])
    return integer_kernel_basis(nonzero)


def span_dim(vectors: Sequence[Sequence]) -> int:
    return rational_rank(list(vectors))

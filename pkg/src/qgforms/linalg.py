"""Exact linear algebra over the rationals.

Everything here works on dense matrices given as sequences of rows of
``Fraction`` entries.  Elimination is fraction-free: rows are scaled to
integer vectors and pivoting uses cross-multiplication with per-row content
reduction, so intermediate entries stay integral and bounded.  The final
reduced row-echelon form is normalized (pivots equal to 1), which makes it
a canonical representative of the row space; span comparisons and golden
files rely on that.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def _as_int_row(row: Sequence[Fraction]) -> list[int]:
    denom = 1
    for x in row:
        f = Fraction(x)
        denom = denom * f.denominator // gcd(denom, f.denominator)
    out = [int(Fraction(x) * denom) for x in row]
    return _reduce_content(out)


def _reduce_content(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        row = [x // g for x in row]
    return row


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[Mat, tuple[int, ...]]:
    """Canonical reduced row-echelon form.

    Returns the nonzero rows (pivot entries 1, leftmost-pivot selection)
    together with the pivot column indices.
    """
    work = [_as_int_row(r) for r in rows]
    work = [r for r in work if any(r)]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots: list[int] = []
    prow = 0
    for col in range(ncols):
        sel = None
        for i in range(prow, len(work)):
            if work[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        work[prow], work[sel] = work[sel], work[prow]
        pv = work[prow][col]
        for i in range(len(work)):
            if i == prow or work[i][col] == 0:
                continue
            ci = work[i][col]
            work[i] = _reduce_content(
                [pv * a - ci * b for a, b in zip(work[i], work[prow])]
            )
        pivots.append(col)
        prow += 1
        if prow == len(work):
            break
    out = []
    for i, col in enumerate(pivots):
        pv = Fraction(work[i][col])
        out.append(tuple(Fraction(x) / pv for x in work[i]))
    return tuple(out), tuple(pivots)


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vec]:
    """Canonical kernel basis: one vector per free column, unit at the free
    column, pivot coordinates filled from the RREF."""
    red, pivots = rref(rows)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, pc in zip(red, pivots):
            v[pc] = -r[free]
        basis.append(tuple(v))
    return basis


def solve_matrix(a: Sequence[Sequence[Fraction]],
                 b: Sequence[Sequence[Fraction]]) -> Optional[Mat]:
    """Solve ``a @ x = b`` exactly; ``None`` if inconsistent.

    Free variables are set to zero, so the solution is the canonical one
    supported on the pivot columns of ``a``.
    """
    nrows = len(a)
    if nrows == 0:
        return ()
    na = len(a[0])
    nb = len(b[0]) if b else 0
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    red, pivots = rref(aug)
    for row, pc in zip(red, pivots):
        if pc >= na:
            return None
    x = [[Fraction(0)] * nb for _ in range(na)]
    for row, pc in zip(red, pivots):
        for j in range(nb):
            x[pc][j] = row[na + j]
    return tuple(tuple(r) for r in x)


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Optional[Vec]:
    x = solve_matrix(a, [[v] for v in b])
    if x is None:
        return None
    return tuple(row[0] for row in x)


def identity(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Mat:
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_transpose(a: Sequence[Sequence[Fraction]]) -> Mat:
    return tuple(tuple(Fraction(x) for x in col) for col in zip(*a))


def mat_inv(a: Sequence[Sequence[Fraction]]) -> Optional[Mat]:
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    x = solve_matrix(a, identity(n))
    if x is None:
        return None
    if mat_mul(a, x) != identity(n):
        return None
    return x


def mat_scale(a: Sequence[Sequence[Fraction]], c: Fraction) -> Mat:
    return tuple(tuple(c * x for x in row) for row in a)


def is_scalar_matrix(a: Sequence[Sequence[Fraction]]) -> Optional[Fraction]:
    """The scalar c with a == c*I, or None."""
    n = len(a)
    c = Fraction(a[0][0])
    for i in range(n):
        for j in range(n):
            if Fraction(a[i][j]) != (c if i == j else 0):
                return None
    return c

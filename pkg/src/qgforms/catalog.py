"""Constructors for the example forms used throughout the verification suite.

Parameter constraints are hard errors: the excluded parameter loci are the
ones under which the associated algebras stop being regular, and silently
accepting them would poison every downstream identity check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import forms
from .forms import FormError, MultilinearForm


class CatalogError(FormError):
    """Invalid catalog parameters."""


def _inversions(perm) -> int:
    return sum(
        1
        for a in range(len(perm))
        for b in range(a + 1, len(perm))
        if perm[a] > perm[b]
    )


def _sign(perm) -> int:
    return -1 if _inversions(perm) % 2 else 1


def signature_form(n: int) -> MultilinearForm:
    """Arity-n form with sgn(sigma) on permutation tuples, 0 elsewhere."""
    if n < 2:
        raise CatalogError("signature form needs n >= 2")
    entries = {
        perm: Fraction(_sign(perm))
        for perm in itertools.permutations(range(n))
    }
    return MultilinearForm(n, n, entries)


def _complete_antisymmetric(n: int, upper: dict[tuple[int, int], Fraction],
                            what: str) -> list[list[Fraction]]:
    """Full multiplicatively antisymmetric matrix from its above-diagonal part."""
    mat = [[Fraction(1)] * n for _ in range(n)]
    for (i, j), v in upper.items():
        if not 0 <= i < j < n:
            raise CatalogError(f"{what} parameter index ({i},{j}) must have i < j")
        v = Fraction(v)
        if v == 0:
            raise CatalogError(f"{what} parameters must be nonzero")
        mat[i][j] = v
        mat[j][i] = 1 / v
    return mat


def _validate_mult_antisymmetric(mat, what: str):
    n = len(mat)
    for i in range(n):
        if mat[i][i] != 1:
            raise CatalogError(f"{what} must have unit diagonal")
        for j in range(n):
            if mat[i][j] == 0 or mat[i][j] * mat[j][i] != 1:
                raise CatalogError(f"{what} must be multiplicatively antisymmetric")


def _skew_permutation_form(n: int, coeff) -> MultilinearForm:
    """Permutation-supported form with value prod over inversions of coeff(small, large)."""
    entries = {}
    for perm in itertools.permutations(range(n)):
        val = Fraction(1)
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    val *= coeff(perm[b], perm[a])
        entries[perm] = val
    return MultilinearForm(n, n, entries)


def ast_forms(p, lam) -> tuple[MultilinearForm, MultilinearForm]:
    """The pair of skew forms of the multiparameter quantum-GL family.

    ``p`` is an n x n multiplicatively antisymmetric rational matrix (or a
    map from above-diagonal pairs to values) and the second deformation
    matrix is tied to it by ``q[j][i] = lam * p[j][i]`` for j > i.  Each
    inversion of a permutation tuple contributes the factor
    ``-q[small][large]`` to the first form and ``-p[large][small]`` to the
    second.
    """
    lam = Fraction(lam)
    if lam == 0 or lam == -1:
        raise CatalogError("the ratio parameter must avoid 0 and -1")
    if isinstance(p, dict):
        n = 1 + max(max(i, j) for i, j in p) if p else 2
        pmat = _complete_antisymmetric(n, p, "p")
    else:
        pmat = [[Fraction(x) for x in row] for row in p]
        n = len(pmat)
    _validate_mult_antisymmetric(pmat, "p")
    qmat = [[Fraction(1)] * n for _ in range(n)]
    for j in range(n):
        for i in range(j):
            qmat[j][i] = lam * pmat[j][i]
            qmat[i][j] = 1 / qmat[j][i]
    e_q = _skew_permutation_form(n, lambda s, l: -qmat[s][l])
    f_p = _skew_permutation_form(n, lambda s, l: -pmat[l][s])
    return e_q, f_p


def takeuchi_forms(p, q, n: int = 2) -> tuple[MultilinearForm, MultilinearForm]:
    """Two-parameter specialization: values (-q)^(-inversions), (-p)^(-inversions)."""
    p, q = Fraction(p), Fraction(q)
    if p == 0 or q == 0:
        raise CatalogError("parameters must be nonzero")
    if p * q == -1:
        raise CatalogError("the product of the two parameters must not be -1")
    if n < 2:
        raise CatalogError("need n >= 2")
    e_q = MultilinearForm(n, n, {
        perm: (Fraction(-1) / q) ** _inversions(perm)
        for perm in itertools.permutations(range(n))
    })
    f_p = MultilinearForm(n, n, {
        perm: (Fraction(-1) / p) ** _inversions(perm)
        for perm in itertools.permutations(range(n))
    })
    return e_q, f_p


def sklyanin3(a, b, c) -> MultilinearForm:
    """Coefficient tensor of the three-dimensional Sklyanin potential."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a * b * c == 0:
        raise CatalogError("parameters must satisfy abc != 0")
    if (3 * a * b * c) ** 3 == (a ** 3 + b ** 3 + c ** 3) ** 3:
        raise CatalogError("parameters lie on the excluded degeneration locus")
    entries = {}
    for i in range(3):
        entries[(i, (i + 1) % 3, (i + 2) % 3)] = a
        entries[(i, (i + 2) % 3, (i + 1) % 3)] = b
        entries[(i, i, i)] = c
    return MultilinearForm(3, 3, entries)


def sklyanin4(alpha, beta, gamma) -> MultilinearForm:
    """Coefficient tensor of the four-dimensional Sklyanin potential.

    The 40-entry table is transcribed verbatim, sign-paired halves included;
    the constructor re-derives the rotation matrix as a self-test against
    transcription slips.
    """
    al, be, ga = Fraction(alpha), Fraction(beta), Fraction(gamma)
    if al + be + ga + al * be * ga != 0:
        raise CatalogError("parameters must satisfy a + b + g + a*b*g = 0")
    if (al, be) == (-1, 1) or (be, ga) == (-1, 1) or (al, ga) == (1, -1):
        raise CatalogError("parameters hit an excluded triple")
    if be == -1 or ga == 1:
        raise CatalogError("parameters make a table denominator vanish")
    half = Fraction(1, 2)
    table = {
        (0, 1, 0, 1): Fraction(1),
        (1, 0, 1, 0): Fraction(-1),
        (0, 2, 0, 2): (1 - al) / (1 + be),
        (2, 0, 2, 0): (al - 1) / (1 + be),
        (0, 3, 0, 3): (1 + al) / (1 - ga),
        (3, 0, 3, 0): (1 + al) / (ga - 1),
        (1, 2, 1, 2): ga * (1 + al) / (1 - ga),
        (2, 1, 2, 1): ga * (1 + al) / (ga - 1),
        (1, 3, 1, 3): be * (al - 1) / (1 + be),
        (3, 1, 3, 1): be * (1 - al) / (1 + be),
        (2, 3, 2, 3): al,
        (3, 2, 3, 2): -al,
    }
    paired = [
        (-(1 + al) * half, [(0, 1, 2, 3), (2, 3, 0, 1), (3, 2, 1, 0), (1, 0, 3, 2)]),
        ((1 + al) * half, [(1, 2, 3, 0), (3, 0, 1, 2), (0, 3, 2, 1), (2, 1, 0, 3)]),
        ((1 - al) * half, [(0, 1, 3, 2), (3, 2, 0, 1), (2, 3, 1, 0), (1, 0, 2, 3)]),
        ((al - 1) * half, [(1, 3, 2, 0), (2, 0, 1, 3), (0, 2, 3, 1), (3, 1, 0, 2)]),
        ((1 - be) * (1 - al) / (2 + 2 * be), [(0, 2, 1, 3), (1, 3, 0, 2)]),
        ((be - 1) * (1 - al) / (2 + 2 * be), [(2, 1, 3, 0), (3, 0, 2, 1)]),
        ((1 + ga) * (1 + al) / (2 * ga - 2), [(0, 3, 1, 2), (1, 2, 0, 3)]),
        ((1 + ga) * (1 + al) / (2 - 2 * ga), [(3, 1, 2, 0), (2, 0, 3, 1)]),
    ]
    for val, idxs in paired:
        for idx in idxs:
            if idx in table:
                raise CatalogError("duplicate table index")
            table[idx] = val
    tensor = MultilinearForm(4, 4, table)
    if forms.find_twist(tensor) is None:
        raise CatalogError("table self-test failed: no rotation matrix")
    return tensor


def yang_mills(g) -> MultilinearForm:
    """Arity-4 tensor ``g_ij g_kl + g_il g_jk - 2 g_ik g_jl`` of a metric g."""
    mat = [[Fraction(x) for x in row] for row in g]
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise CatalogError("metric must be square")
    if any(mat[i][j] != mat[j][i] for i in range(n) for j in range(n)):
        raise CatalogError("metric must be symmetric")
    from . import linalg
    if linalg.mat_inv(tuple(tuple(r) for r in mat)) is None:
        raise CatalogError("metric must be invertible")
    entries = {}
    for i, j, k, l in itertools.product(range(n), repeat=4):
        v = mat[i][j] * mat[k][l] + mat[i][l] * mat[j][k] - 2 * mat[i][k] * mat[j][l]
        if v:
            entries[(i, j, k, l)] = v
    return MultilinearForm(n, 4, entries)

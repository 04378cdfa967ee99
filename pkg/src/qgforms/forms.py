"""Sparse exact-rational multilinear forms and their preregularity data.

A form of arity m on an n-dimensional space is stored as a sparse map from
index tuples to nonzero rationals.  The same representation doubles as the
coefficient tensor of a (twisted) superpotential: the correspondence is
coefficientwise, which is why :func:`dualize` is the identity on the data.

Conventions:

* indices are 0-based everywhere;
* the rotation (twist) matrix P solves
  ``sum_k P[k][l] * t[(k,)+i] == t[i+(l,)]`` for all i in [n]^(m-1), l;
* a polar companion for ``slot="first"`` solves
  ``sum_K cand[(i,)+K] * t[K+(j,)] == delta_ij`` (candidate is the left
  factor of the contraction), and for ``slot="last"`` the mirrored
  ``sum_K t[(i,)+K] * cand[K+(j,)] == delta_ij``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from . import linalg
from .linalg import Mat

Index = tuple[int, ...]

FIRST = "first"
LAST = "last"


class FormError(ValueError):
    """Malformed or incompatible form data."""


class DegenerateFormError(FormError):
    """A solver needed a nondegenerate slot and did not get one."""


def all_tuples(dim: int, length: int) -> Iterable[Index]:
    return itertools.product(range(dim), repeat=length)


class MultilinearForm:
    """Sparse tensor of arity ``arity`` on a ``dim``-dimensional space."""

    __slots__ = ("dim", "arity", "_entries")

    def __init__(self, dim: int, arity: int,
                 entries: Mapping[Index, Fraction] | Iterable[tuple[Index, Fraction]]):
        if dim < 1 or arity < 1:
            raise FormError("dim and arity must be positive")
        self.dim = dim
        self.arity = arity
        items = entries.items() if isinstance(entries, Mapping) else entries
        store: dict[Index, Fraction] = {}
        for idx, val in items:
            idx = tuple(int(i) for i in idx)
            if len(idx) != arity:
                raise FormError(f"index tuple {idx} has length != arity {arity}")
            if any(i < 0 or i >= dim for i in idx):
                raise FormError(f"index tuple {idx} out of range for dim {dim}")
            if idx in store:
                raise FormError(f"duplicate index tuple {idx}")
            val = Fraction(val)
            if val != 0:
                store[idx] = val
        self._entries = store

    @property
    def entries(self) -> dict[Index, Fraction]:
        return dict(self._entries)

    def items(self):
        return sorted(self._entries.items())

    def coeff(self, idx: Index) -> Fraction:
        return self._entries.get(tuple(idx), Fraction(0))

    def is_zero(self) -> bool:
        return not self._entries

    def support(self) -> list[Index]:
        return sorted(self._entries)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultilinearForm)
                and self.dim == other.dim
                and self.arity == other.arity
                and self._entries == other._entries)

    def __hash__(self):
        return hash((self.dim, self.arity, tuple(self.items())))

    def __repr__(self) -> str:
        return (f"MultilinearForm(dim={self.dim}, arity={self.arity}, "
                f"nnz={len(self._entries)})")

    def scale(self, c: Fraction) -> "MultilinearForm":
        c = Fraction(c)
        return MultilinearForm(
            self.dim, self.arity, {k: c * v for k, v in self._entries.items()}
        )

    def flatten(self) -> tuple[Fraction, ...]:
        """Dense coefficient vector over lexicographically ordered tuples."""
        return tuple(
            self.coeff(t) for t in all_tuples(self.dim, self.arity)
        )

    @classmethod
    def from_flat(cls, dim: int, arity: int,
                  vec: Iterable[Fraction]) -> "MultilinearForm":
        entries = {}
        for t, v in zip(all_tuples(dim, arity), vec):
            if v != 0:
                entries[t] = Fraction(v)
        return cls(dim, arity, entries)


@dataclass(frozen=True)
class TwistMatrix:
    """Invertible rational matrix with its exact inverse cached."""

    dim: int
    entries: Mat
    inverse: Mat

    def __post_init__(self):
        if linalg.mat_mul(self.entries, self.inverse) != linalg.identity(self.dim):
            raise FormError("twist matrix inverse is not exact")

    @classmethod
    def from_entries(cls, entries) -> "TwistMatrix":
        ent = tuple(tuple(Fraction(x) for x in row) for row in entries)
        inv = linalg.mat_inv(ent)
        if inv is None:
            raise FormError("twist matrix is singular")
        return cls(len(ent), ent, inv)


@dataclass(frozen=True)
class PreregularityReport:
    nondegenerate_first_slot: bool
    nondegenerate_last_slot: bool
    twist: Optional[TwistMatrix]
    failure_witness: Optional[tuple[Fraction, ...]]

    @property
    def preregular(self) -> bool:
        return (self.nondegenerate_first_slot
                and self.nondegenerate_last_slot
                and self.twist is not None)


def _slot_matrix(form: MultilinearForm, slot: str) -> list[list[Fraction]]:
    """Rows indexed by the fixed slot, columns by the remaining tuple."""
    n, m = form.dim, form.arity
    rest = list(all_tuples(n, m - 1))
    pos = {t: k for k, t in enumerate(rest)}
    mat = [[Fraction(0)] * len(rest) for _ in range(n)]
    for idx, val in form._entries.items():
        if slot == FIRST:
            mat[idx[0]][pos[idx[1:]]] = val
        elif slot == LAST:
            mat[idx[-1]][pos[idx[:-1]]] = val
        else:
            raise FormError(f"unknown slot {slot!r}")
    return mat


def nondegeneracy(form: MultilinearForm, slot: str):
    """Rank test of the flattening that fixes the named slot.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness is a
    nonzero vector annihilating the form in that slot.
    """
    mat = _slot_matrix(form, slot)
    if linalg.rank(mat) == form.dim:
        return True, None
    kernel = linalg.nullspace(linalg.mat_transpose(mat), form.dim)
    return False, kernel[0]


def find_twist(form: MultilinearForm) -> Optional[TwistMatrix]:
    """Solve the rotation system for the cyclicity matrix P, exactly.

    Returns ``None`` when the linear system is inconsistent or the solution
    is singular.  When the form is nondegenerate in its first slot the
    solution, if any, is unique.
    """
    n, m = form.dim, form.arity
    rest = list(all_tuples(n, m - 1))
    pos = {t: k for k, t in enumerate(rest)}
    a = [[Fraction(0)] * n for _ in rest]
    b = [[Fraction(0)] * n for _ in rest]
    for idx, val in form._entries.items():
        a[pos[idx[1:]]][idx[0]] = val
        b[pos[idx[:-1]]][idx[-1]] = val
    sol = linalg.solve_matrix(a, b)
    if sol is None:
        return None
    inv = linalg.mat_inv(sol)
    if inv is None:
        return None
    # paranoid exact re-check of the rotation identity on all index tuples
    for i_rest in rest:
        for ell in range(n):
            lhs = sum(sol[k][ell] * form.coeff((k,) + i_rest) for k in range(n))
            if lhs != form.coeff(i_rest + (ell,)):
                return None
    return TwistMatrix(n, sol, inv)


def check_preregular(form: MultilinearForm) -> PreregularityReport:
    ok_first, wit_first = nondegeneracy(form, FIRST)
    ok_last, wit_last = nondegeneracy(form, LAST)
    twist = find_twist(form) if ok_first else None
    witness = wit_first if not ok_first else (wit_last if not ok_last else None)
    return PreregularityReport(ok_first, ok_last, twist, witness)


def is_twisted_superpotential(tensor: MultilinearForm, phi: TwistMatrix) -> bool:
    """Exact check that (phi x id^(m-1)) applied after the cyclic rotation
    reproduces the coefficient tensor."""
    if phi.dim != tensor.dim:
        raise FormError("dimension mismatch between tensor and twist")
    n = tensor.dim
    rotated: dict[Index, Fraction] = {}
    for idx, val in tensor._entries.items():
        head, last = idx[:-1], idx[-1]
        for k in range(n):
            c = phi.entries[k][last]
            if c:
                key = (k,) + head
                newv = rotated.get(key, Fraction(0)) + c * val
                if newv:
                    rotated[key] = newv
                else:
                    rotated.pop(key, None)
    return rotated == tensor._entries


def dualize(form: MultilinearForm) -> MultilinearForm:
    """Swap the form / superpotential reading of the same coefficients.

    The sparse representation is self-dual, so this is an involution that
    copies the data; it exists to make the intent explicit at call sites.
    """
    return MultilinearForm(form.dim, form.arity, form._entries)


def _polar_system(form: MultilinearForm, slot: str):
    """Coefficient matrix S (n x n^(m-1)) of the polar equations."""
    n, m = form.dim, form.arity
    rest = list(all_tuples(n, m - 1))
    pos = {t: k for k, t in enumerate(rest)}
    s = [[Fraction(0)] * len(rest) for _ in range(n)]
    for idx, val in form._entries.items():
        if slot == FIRST:
            # unknown X[(i,)+K]; equations sum_K X[i,K] t[K+(j,)] = d_ij
            s[idx[-1]][pos[idx[:-1]]] = val
        elif slot == LAST:
            # unknown X[K+(j,)]; equations sum_K t[(i,)+K] X[K,j] = d_ij
            s[idx[0]][pos[idx[1:]]] = val
        else:
            raise FormError(f"unknown slot {slot!r}")
    return s, rest


def _polar_from_solution(form: MultilinearForm, slot: str, y: Mat,
                         rest: list[Index]) -> MultilinearForm:
    n, m = form.dim, form.arity
    entries = {}
    for r, t in enumerate(rest):
        for i in range(n):
            v = y[r][i]
            if v:
                key = (i,) + t if slot == FIRST else t + (i,)
                entries[key] = v
    return MultilinearForm(n, m, entries)


def polar(form: MultilinearForm, slot: str) -> MultilinearForm:
    """Canonical companion form inverting the named-slot contraction.

    The solution of the underdetermined system is pinned down by exact RREF
    with leftmost pivots and zero free variables (the section supported on
    pivot columns), so repeated runs agree entrywise.  For arity 2 the
    companion is the unique one.
    """
    s, rest = _polar_system(form, slot)
    y = linalg.solve_matrix(s, linalg.identity(form.dim))
    if y is None:
        raise DegenerateFormError(
            f"form has no polar companion for slot {slot!r}")
    return _polar_from_solution(form, slot, y, rest)


def polar_variants(form: MultilinearForm, slot: str, count: int = 2) -> list[MultilinearForm]:
    """The canonical polar plus distinct alternatives (kernel shifts).

    For arity 2 the polar is unique and a single element is returned.
    """
    s, rest = _polar_system(form, slot)
    y = linalg.solve_matrix(s, linalg.identity(form.dim))
    if y is None:
        raise DegenerateFormError(
            f"form has no polar companion for slot {slot!r}")
    out = [_polar_from_solution(form, slot, y, rest)]
    kernel = linalg.nullspace(s, len(rest))
    for kv in kernel[: max(0, count - 1)]:
        shifted = tuple(
            tuple(y[r][i] + kv[r] for i in range(form.dim))
            for r in range(len(rest))
        )
        out.append(_polar_from_solution(form, slot, shifted, rest))
    return out


def verify_polar(form: MultilinearForm, candidate: MultilinearForm, slot: str) -> bool:
    """Exact check of the n^2 polar contraction identities."""
    if form.dim != candidate.dim or form.arity != candidate.arity:
        raise FormError("shape mismatch between form and candidate")
    n = form.dim
    acc = [[Fraction(0)] * n for _ in range(n)]
    by_rest: dict[Index, list[tuple[int, Fraction]]] = {}
    for idx, val in form._entries.items():
        if slot == FIRST:
            by_rest.setdefault(idx[:-1], []).append((idx[-1], val))
        else:
            by_rest.setdefault(idx[1:], []).append((idx[0], val))
    for idx, cval in candidate._entries.items():
        if slot == FIRST:
            i, key = idx[0], idx[1:]
        else:
            i, key = idx[-1], idx[:-1]
        for j, fval in by_rest.get(key, ()):
            if slot == FIRST:
                acc[i][j] += cval * fval
            else:
                acc[j][i] += fval * cval
    return all(
        acc[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
    )


def odot(e: MultilinearForm, f: MultilinearForm) -> Fraction:
    """Full contraction scalar; symmetric in its arguments."""
    if e.dim != f.dim or e.arity != f.arity:
        raise FormError("shape mismatch in full contraction")
    small, big = (e, f) if len(e._entries) <= len(f._entries) else (f, e)
    total = Fraction(0)
    for idx, val in small._entries.items():
        total += val * big.coeff(idx)
    return total


def star(e: MultilinearForm, f: MultilinearForm) -> Mat:
    """(m-1)-fold contraction matrix ``sum_K e[(i,)+K] f[K+(j,)]``."""
    if e.dim != f.dim or e.arity != f.arity:
        raise FormError("shape mismatch in star contraction")
    n = e.dim
    by_prefix: dict[Index, list[tuple[int, Fraction]]] = {}
    for idx, val in f._entries.items():
        by_prefix.setdefault(idx[:-1], []).append((idx[-1], val))
    acc = [[Fraction(0)] * n for _ in range(n)]
    for idx, val in e._entries.items():
        for j, fval in by_prefix.get(idx[1:], ()):
            acc[idx[0]][j] += val * fval
    return tuple(tuple(row) for row in acc)

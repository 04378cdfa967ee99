"""Relation spaces of superpotential algebras.

Given the coefficient tensor s of a twisted superpotential of arity m, the
degree-N relation space is spanned by the (m-N)-fold slot contractions of s
against coordinate covectors.  Contractions are taken at every split of the
m-N contracted slots between the front and the back; for genuine twisted
superpotentials the cyclicity makes all splits span the same space, and the
W-space identity ``wspace(s, m-N) == derive_relations(s, N)`` is a standing
self-check on that convention.

All bases are canonicalized by exact RREF over the monomial coordinates in
lexicographic tuple order, so equal spans have equal bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .forms import FormError, MultilinearForm, all_tuples


@dataclass(frozen=True)
class RelationSpace:
    """Independent basis of degree-``degree`` relation tensors."""

    dim: int
    degree: int
    basis: tuple[MultilinearForm, ...]

    def __post_init__(self):
        for t in self.basis:
            if t.dim != self.dim or t.arity != self.degree:
                raise FormError("basis tensor shape mismatch")
        rows = [t.flatten() for t in self.basis]
        if rows and linalg.rank(rows) != len(rows):
            raise FormError("relation basis is linearly dependent")

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class WSpace:
    r: int
    basis: tuple[MultilinearForm, ...] = field(default=())

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _canonical_basis(dim: int, arity: int,
                     tensors: Sequence[MultilinearForm]) -> tuple[MultilinearForm, ...]:
    rows = [t.flatten() for t in tensors if not t.is_zero()]
    red, _ = linalg.rref(rows)
    return tuple(MultilinearForm.from_flat(dim, arity, row) for row in red)


def derive_relations(s: MultilinearForm, n_deg: int) -> RelationSpace:
    """Degree-``n_deg`` relation space of the superpotential algebra of s.

    Contracts the first r and last m-N-r slots against all coordinate
    covectors, for every split r, and reduces the union to a canonical
    independent basis.
    """
    m, n = s.arity, s.dim
    if not 2 <= n_deg <= m:
        raise FormError(f"relation degree must satisfy 2 <= N <= arity, got {n_deg}")
    drop = m - n_deg
    tensors: list[MultilinearForm] = []
    seen: set[tuple] = set()
    for r in range(drop + 1):
        back = drop - r
        buckets: dict[tuple, dict] = {}
        for idx, val in s.entries.items():
            key = (idx[:r], idx[m - back:]) if back else (idx[:r], ())
            mid = idx[r:m - back] if back else idx[r:]
            buckets.setdefault(key, {})[mid] = \
                buckets.get(key, {}).get(mid, 0) + val
        for key in sorted(buckets):
            entries = {k: v for k, v in buckets[key].items() if v != 0}
            if not entries:
                continue
            sig = tuple(sorted(entries.items()))
            if sig in seen:
                continue
            seen.add(sig)
            tensors.append(MultilinearForm(n, n_deg, entries))
    return RelationSpace(n, n_deg, _canonical_basis(n, n_deg, tensors))


def wspace(s: MultilinearForm, r: int) -> WSpace:
    """Span of the front-contracted tensors with r slots fixed."""
    m, n = s.arity, s.dim
    if not 0 <= r <= m - 1:
        raise FormError(f"w-space index must satisfy 0 <= r <= arity-1, got {r}")
    buckets: dict[tuple, dict] = {}
    for idx, val in s.entries.items():
        buckets.setdefault(idx[:r], {})[idx[r:]] = val
    tensors = [
        MultilinearForm(n, m - r, buckets[key]) for key in sorted(buckets)
    ]
    return WSpace(r, _canonical_basis(n, m - r, tensors))


def koszul_dual_relations(s: MultilinearForm, n_deg: int) -> RelationSpace:
    """Annihilator of the relation space inside the arity-``n_deg`` tensors.

    Solves ``sum_I s[L+I] t[I] == 0`` for all front tuples L; the returned
    basis lives in the dual generators of the Koszul-dual presentation.
    """
    m, n = s.arity, s.dim
    if not 2 <= n_deg <= m:
        raise FormError(f"relation degree must satisfy 2 <= N <= arity, got {n_deg}")
    cols = list(all_tuples(n, n_deg))
    pos = {t: k for k, t in enumerate(cols)}
    rows: dict[tuple, list] = {}
    from fractions import Fraction
    for idx, val in s.entries.items():
        lam, tail = idx[: m - n_deg], idx[m - n_deg:]
        row = rows.setdefault(lam, [Fraction(0)] * len(cols))
        row[pos[tail]] += val
    mat = [rows[k] for k in sorted(rows)]
    kernel = linalg.nullspace(mat, len(cols))
    basis = tuple(MultilinearForm.from_flat(n, n_deg, v) for v in kernel)
    return RelationSpace(n, n_deg, basis)


def span_equal(a: Sequence[MultilinearForm], b: Sequence[MultilinearForm]) -> bool:
    """Exact row-space equality via canonical RREF comparison."""
    shapes = {(t.dim, t.arity) for t in list(a) + list(b)}
    if len(shapes) > 1:
        raise FormError("span comparison needs matching dim and arity")
    ra, _ = linalg.rref([t.flatten() for t in a])
    rb, _ = linalg.rref([t.flatten() for t in b])
    return ra == rb


def dual_algebra_dimension(s: MultilinearForm, n_deg: int, ell: int) -> int:
    """Dimension of the degree-``ell`` slice of the Koszul dual algebra.

    Computed by word-space elimination: the slice of the two-sided ideal
    generated by the annihilator relations in degree ``ell`` is spanned by
    ``w1 * rel * w2`` with ``len(w1) + n_deg + len(w2) == ell``.
    """
    from fractions import Fraction
    n = s.dim
    rels = koszul_dual_relations(s, n_deg).basis
    if ell < n_deg:
        return n ** ell
    cols = {t: k for k, t in enumerate(all_tuples(n, ell))}
    rows = []
    for a in range(ell - n_deg + 1):
        b = ell - n_deg - a
        for w1 in all_tuples(n, a):
            for w2 in all_tuples(n, b):
                for rel in rels:
                    row = [Fraction(0)] * len(cols)
                    for idx, val in rel.entries.items():
                        row[cols[w1 + idx + w2]] += val
                    rows.append(row)
    return n ** ell - linalg.rank(rows)

"""Presentations of the universal quantum groups of a pair of preregular
forms, and certificate-based verification of their structural identities.

Generator naming is fixed (``u_i_j``, ``a_i_j``, ``b_i_j``, ``z_i_j`` with
0-based indices; ``De``/``DeInv``/``Df``/``DfInv`` for the grouplike pair)
so serialized presentations and golden files are portable.

Verification semantics: a "proved" check carries explicit membership
certificates that re-expand to the checked polynomial; "refuted" is
reserved for checks decided by exact evaluation (counits, scalar
substitutions); everything a bounded search fails to settle is
"inconclusive".  Some deep identities are certified by composing shallow
certificates along the inverse-witness structure of the presentation; a
composed certificate can exceed the requested search bound, in which case
``bound_used`` records the true depth.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from . import spalg
from .forms import (FIRST, LAST, DegenerateFormError, FormError,
                    MultilinearForm, TwistMatrix, all_tuples, check_preregular,
                    find_twist, odot, polar, polar_variants, star)
from . import linalg
from .ncpoly import (Alphabet, AlgebraError, CertSummand, IdealSearcher,
                     MembershipCertificate, NCPoly, Word,
                     expand_certificate, verify_certificate)

PROVED = "proved"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

HE, HF, HEF = "he", "hf", "hef"
SE, SF, SEF, GEF, OM = "se", "sf", "sef", "gef", "om"
QUOTIENT_KINDS = (SE, SF, SEF, GEF)


class PresentationError(ValueError):
    """Inconsistent presentation data or an incompatible build request."""


SweedlerTerm = tuple[Fraction, tuple[str, ...], tuple[str, ...]]


@dataclass
class Presentation:
    """Generators, relations and coalgebra data of one built algebra."""

    kind: str
    n: int
    m: int
    alphabet: Alphabet
    relations: list[NCPoly]
    coproduct: dict[str, list[SweedlerTerm]]
    counit: dict[str, Fraction]
    antipode: Optional[dict[str, NCPoly]] = None
    antipode_alt: Optional[dict[str, NCPoly]] = None
    e: Optional[MultilinearForm] = None
    f: Optional[MultilinearForm] = None
    N: Optional[int] = None
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.validate:
            problems = self.counit_violations()
            if problems:
                raise PresentationError(
                    f"counit does not kill relations {problems}")
            if self.antipode is not None:
                missing = set(self.alphabet.symbols) - set(self.antipode)
                if missing:
                    raise PresentationError(
                        f"antipode undefined on {sorted(missing)}")

    def counit_values(self) -> list[Fraction]:
        try:
            return [Fraction(self.counit[s]) for s in self.alphabet.symbols]
        except KeyError as exc:
            raise PresentationError(f"counit undefined on {exc}") from exc

    def counit_violations(self) -> list[int]:
        values = self.counit_values()
        return [k for k, rel in enumerate(self.relations)
                if rel.eval_scalars(values) != 0]

    def delta_table(self) -> list[list[tuple[Fraction, Word, Word]]]:
        table = []
        for s in self.alphabet.symbols:
            if s not in self.coproduct:
                raise PresentationError(f"coproduct undefined on {s!r}")
            table.append([
                (Fraction(c), self.alphabet.word(l), self.alphabet.word(r))
                for c, l, r in self.coproduct[s]
            ])
        return table

    def antipode_images(self, alt: bool = False) -> list[NCPoly]:
        source = self.antipode_alt if alt else self.antipode
        if source is None:
            raise PresentationError("presentation has no antipode")
        return [source[s] for s in self.alphabet.symbols]

    def apply_antipode(self, poly: NCPoly, alt: bool = False) -> NCPoly:
        return poly.map_words(self.alphabet, self.antipode_images(alt),
                              reverse=True)

    def generator(self, name: str) -> NCPoly:
        return NCPoly.generator(self.alphabet, name)


def _sym(prefix: str, i: int, j: int) -> str:
    return f"{prefix}_{i}_{j}"


def matrix_symbols(prefix: str, n: int) -> list[str]:
    return [_sym(prefix, i, j) for i in range(n) for j in range(n)]


def _matrix_coproduct(out: dict, prefix: str, n: int, flipped: bool):
    """Delta(x_ij) = sum_k x_ik (x) x_kj, or the side-flipped variant used
    for the inverse-transpose family of generators."""
    one = Fraction(1)
    for i in range(n):
        for j in range(n):
            if flipped:
                terms = [(one, (_sym(prefix, k, j),), (_sym(prefix, i, k),))
                         for k in range(n)]
            else:
                terms = [(one, (_sym(prefix, i, k),), (_sym(prefix, k, j),))
                         for k in range(n)]
            out[_sym(prefix, i, j)] = terms


def _grouplike_coproduct(out: dict, name: str):
    out[name] = [(Fraction(1), (name,), (name,))]


def _contracted_relation(alphabet: Alphabet, form: MultilinearForm,
                         prefix: str, jvec: tuple[int, ...], *,
                         swap: bool, reverse: bool,
                         d_name: Optional[str]) -> NCPoly:
    """One instance of a coaction relation.

    The sum runs over the support of ``form``; factor k pairs the k-th
    contracted index with ``jvec[k]`` (swapped roles when ``swap``), the
    factor order is reversed when ``reverse``, and the grouplike term
    ``-form[jvec] * d_name`` closes the relation (a plain constant in the
    unimodular quotients, where ``d_name`` is None).
    """
    terms: dict[Word, Fraction] = {}
    for ivec, val in form.entries.items():
        letters = []
        for k in range(form.arity):
            row, col = (jvec[k], ivec[k]) if swap else (ivec[k], jvec[k])
            letters.append(alphabet.index[_sym(prefix, row, col)])
        if reverse:
            letters.reverse()
        word = tuple(letters)
        terms[word] = terms.get(word, Fraction(0)) + val
    dval = form.coeff(jvec)
    if dval:
        dword = () if d_name is None else (alphabet.index[d_name],)
        terms[dword] = terms.get(dword, Fraction(0)) - dval
    return NCPoly(alphabet, terms)


def _inverse_pair_relations(alphabet: Alphabet, d: str, dinv: str) -> list[NCPoly]:
    one = NCPoly.one(alphabet)
    dd = NCPoly.monomial(alphabet, alphabet.word([d, dinv]))
    dd_rev = NCPoly.monomial(alphabet, alphabet.word([dinv, d]))
    return [dd - one, dd_rev - one]


def _matrix_product_relations(alphabet: Alphabet, left: str, right: str,
                              n: int) -> list[NCPoly]:
    """Entries of (left matrix) * (right matrix) - identity."""
    rels = []
    for i in range(n):
        for j in range(n):
            terms: dict[Word, Fraction] = {}
            for k in range(n):
                word = alphabet.word([_sym(left, i, k), _sym(right, k, j)])
                terms[word] = terms.get(word, Fraction(0)) + 1
            if i == j:
                terms[()] = Fraction(-1)
            rels.append(NCPoly(alphabet, terms))
    return rels


def _require_preregular(form: MultilinearForm, label: str) -> TwistMatrix:
    report = check_preregular(form)
    if not report.preregular:
        raise DegenerateFormError(f"form {label} is not preregular")
    return report.twist


def build_He(e: MultilinearForm) -> Presentation:
    """Universal quantum group of a single form acting on the left side.

    Generators a_ij, b_ij and the grouplike pair De, DeInv; the antipode
    swaps the two matrix families, conjugating by the rotation matrix on
    the way back.
    """
    p_twist = _require_preregular(e, "e")
    n, m = e.dim, e.arity
    symbols = matrix_symbols("a", n) + matrix_symbols("b", n) + ["De", "DeInv"]
    alphabet = Alphabet(symbols)
    relations = [
        _contracted_relation(alphabet, e, "a", jvec,
                             swap=False, reverse=False, d_name="De")
        for jvec in all_tuples(n, m)
    ] + [
        _contracted_relation(alphabet, e, "b", jvec,
                             swap=False, reverse=True, d_name="DeInv")
        for jvec in all_tuples(n, m)
    ]
    relations += _inverse_pair_relations(alphabet, "De", "DeInv")
    relations += _matrix_product_relations(alphabet, "a", "b", n)
    coproduct: dict[str, list[SweedlerTerm]] = {}
    _matrix_coproduct(coproduct, "a", n, flipped=False)
    _matrix_coproduct(coproduct, "b", n, flipped=True)
    _grouplike_coproduct(coproduct, "De")
    _grouplike_coproduct(coproduct, "DeInv")
    counit = {s: Fraction(1) for s in ("De", "DeInv")}
    for i in range(n):
        for j in range(n):
            counit[_sym("a", i, j)] = Fraction(1 if i == j else 0)
            counit[_sym("b", i, j)] = Fraction(1 if i == j else 0)
    antipode: dict[str, NCPoly] = {
        "De": NCPoly.generator(alphabet, "DeInv"),
        "DeInv": NCPoly.generator(alphabet, "De"),
    }
    pinv = p_twist.inverse
    pmat = p_twist.entries
    for i in range(n):
        for j in range(n):
            antipode[_sym("a", i, j)] = NCPoly.generator(alphabet, _sym("b", i, j))
            terms = {}
            for k in range(n):
                for l in range(n):
                    c = pinv[i][k] * pmat[l][j]
                    if c:
                        word = alphabet.word(["DeInv", _sym("a", k, l), "De"])
                        terms[word] = terms.get(word, Fraction(0)) + c
            antipode[_sym("b", i, j)] = NCPoly(alphabet, terms)
    return Presentation(HE, n, m, alphabet, relations, coproduct, counit,
                        antipode=antipode, e=e)


def build_Hf(f: MultilinearForm) -> Presentation:
    """Mirror of :func:`build_He` for the dual-side form.

    Relations contract the form against row indices, the matrix inverse
    relation is taken on the other side, and the antipode conjugates by the
    transposed rotation matrix of the dual-side rotation identity.
    """
    q_twist = _require_preregular(f, "f")
    n, m = f.dim, f.arity
    symbols = matrix_symbols("a", n) + matrix_symbols("b", n) + ["Df", "DfInv"]
    alphabet = Alphabet(symbols)
    relations = [
        _contracted_relation(alphabet, f, "a", jvec,
                             swap=True, reverse=False, d_name="DfInv")
        for jvec in all_tuples(n, m)
    ] + [
        _contracted_relation(alphabet, f, "b", jvec,
                             swap=True, reverse=True, d_name="Df")
        for jvec in all_tuples(n, m)
    ]
    relations += _inverse_pair_relations(alphabet, "Df", "DfInv")
    relations += _matrix_product_relations(alphabet, "b", "a", n)
    coproduct: dict[str, list[SweedlerTerm]] = {}
    _matrix_coproduct(coproduct, "a", n, flipped=False)
    _matrix_coproduct(coproduct, "b", n, flipped=True)
    _grouplike_coproduct(coproduct, "Df")
    _grouplike_coproduct(coproduct, "DfInv")
    counit = {s: Fraction(1) for s in ("Df", "DfInv")}
    for i in range(n):
        for j in range(n):
            counit[_sym("a", i, j)] = Fraction(1 if i == j else 0)
            counit[_sym("b", i, j)] = Fraction(1 if i == j else 0)
    antipode: dict[str, NCPoly] = {
        "Df": NCPoly.generator(alphabet, "DfInv"),
        "DfInv": NCPoly.generator(alphabet, "Df"),
    }
    qinv = q_twist.inverse
    qmat = q_twist.entries
    for i in range(n):
        for j in range(n):
            antipode[_sym("a", i, j)] = NCPoly.generator(alphabet, _sym("b", i, j))
            terms = {}
            for k in range(n):
                for l in range(n):
                    # S(B) = DfInv * Q^{-T} A Q^T * Df entrywise
                    c = qinv[k][i] * qmat[j][l]
                    if c:
                        word = alphabet.word(["DfInv", _sym("a", k, l), "Df"])
                        terms[word] = terms.get(word, Fraction(0)) + c
            antipode[_sym("b", i, j)] = NCPoly(alphabet, terms)
    return Presentation(HF, n, m, alphabet, relations, coproduct, counit,
                        antipode=antipode, f=f)


def _hef_antipode_terms(alphabet: Alphabet, e: MultilinearForm,
                        companion: MultilinearForm, i: int, j: int,
                        head: bool) -> NCPoly:
    """One entry of the inverse-witness matrix built from a companion form.

    ``head=True`` gives the DeInv-headed witness from a left companion of
    ``e``; ``head=False`` the Df-tailed witness from a right companion of
    ``f`` (pass the form itself as ``e`` and its companion accordingly).
    """
    m = e.arity
    if head:
        lead = {k[1:]: v for k, v in companion.entries.items() if k[0] == i}
        tail = {k[:-1]: v for k, v in e.entries.items() if k[-1] == j}
        dword = ("DeInv",)
    else:
        lead = {k[1:]: v for k, v in e.entries.items() if k[0] == i}
        tail = {k[:-1]: v for k, v in companion.entries.items() if k[-1] == j}
        dword = ("Df",)
    terms: dict[Word, Fraction] = {}
    for ivec, cv in lead.items():
        for jvec, ev in tail.items():
            letters = [_sym("u", jvec[t], ivec[t]) for t in range(m - 1)]
            names = (list(dword) + letters) if head else (letters + list(dword))
            word = alphabet.word(names)
            terms[word] = terms.get(word, Fraction(0)) + cv * ev
    return NCPoly(alphabet, terms)


def build_Hef(e: MultilinearForm, f: MultilinearForm) -> Presentation:
    """Universal quantum group coacting on the pair of superpotential
    algebras, with one matrix of generators and two grouplikes.

    The antipode entries are computed from the canonical left companion of
    ``e``; the mirrored formula through the right companion of ``f`` is
    stored separately as a cross-check (the two agree only modulo the
    relation ideal).
    """
    if e.dim != f.dim or e.arity != f.arity:
        raise FormError("the two forms must share dim and arity")
    _require_preregular(e, "e")
    _require_preregular(f, "f")
    n, m = e.dim, e.arity
    e_comp = polar(e, FIRST)
    f_comp = polar(f, LAST)
    symbols = matrix_symbols("u", n) + ["De", "DeInv", "Df", "DfInv"]
    alphabet = Alphabet(symbols)
    relations = [
        _contracted_relation(alphabet, e, "u", jvec,
                             swap=False, reverse=False, d_name="De")
        for jvec in all_tuples(n, m)
    ] + [
        _contracted_relation(alphabet, f, "u", jvec,
                             swap=True, reverse=False, d_name="DfInv")
        for jvec in all_tuples(n, m)
    ]
    relations += _inverse_pair_relations(alphabet, "De", "DeInv")
    relations += _inverse_pair_relations(alphabet, "Df", "DfInv")
    coproduct: dict[str, list[SweedlerTerm]] = {}
    _matrix_coproduct(coproduct, "u", n, flipped=False)
    for name in ("De", "DeInv", "Df", "DfInv"):
        _grouplike_coproduct(coproduct, name)
    counit = {name: Fraction(1) for name in ("De", "DeInv", "Df", "DfInv")}
    for i in range(n):
        for j in range(n):
            counit[_sym("u", i, j)] = Fraction(1 if i == j else 0)
    antipode: dict[str, NCPoly] = {
        "De": NCPoly.generator(alphabet, "DeInv"),
        "DeInv": NCPoly.generator(alphabet, "De"),
        "Df": NCPoly.generator(alphabet, "DfInv"),
        "DfInv": NCPoly.generator(alphabet, "Df"),
    }
    antipode_alt: dict[str, NCPoly] = dict(antipode)
    for i in range(n):
        for j in range(n):
            antipode[_sym("u", i, j)] = _hef_antipode_terms(
                alphabet, e, e_comp, i, j, head=True)
            antipode_alt[_sym("u", i, j)] = _hef_antipode_terms(
                alphabet, f, f_comp, i, j, head=False)
    return Presentation(HEF, n, m, alphabet, relations, coproduct, counit,
                        antipode=antipode, antipode_alt=antipode_alt,
                        e=e, f=f)


_QUOTIENT_SOURCE = {SE: HE, SF: HF, SEF: HEF, GEF: HEF}


def build_quotients(pres: Presentation, kind: str) -> Presentation:
    """Quotient presentations: grouplikes set to 1 (se/sf/sef) or tied
    together by one extra relation (gef)."""
    if kind not in _QUOTIENT_SOURCE:
        raise PresentationError(f"unknown quotient kind {kind!r}")
    if pres.kind != _QUOTIENT_SOURCE[kind]:
        raise PresentationError(
            f"quotient {kind!r} must be built from {_QUOTIENT_SOURCE[kind]!r}")
    if kind == GEF:
        extra = NCPoly.monomial(pres.alphabet, pres.alphabet.word(["De", "Df"])) \
            - NCPoly.one(pres.alphabet)
        return Presentation(
            GEF, pres.n, pres.m, pres.alphabet,
            list(pres.relations) + [extra],
            dict(pres.coproduct), dict(pres.counit),
            antipode=dict(pres.antipode) if pres.antipode else None,
            antipode_alt=dict(pres.antipode_alt) if pres.antipode_alt else None,
            e=pres.e, f=pres.f, N=pres.N)
    d_names = {"De", "DeInv", "Df", "DfInv"}
    keep = [s for s in pres.alphabet.symbols if s not in d_names]
    alphabet = Alphabet(keep)
    images = []
    for s in pres.alphabet.symbols:
        if s in d_names:
            images.append(NCPoly.one(alphabet))
        else:
            images.append(NCPoly.generator(alphabet, s))

    def push(poly: NCPoly) -> NCPoly:
        return poly.map_words(alphabet, images)

    relations = []
    seen = set()
    for rel in pres.relations:
        q = push(rel)
        if q.is_zero():
            continue
        key = tuple(q.items())
        if key in seen:
            continue
        seen.add(key)
        relations.append(q)
    coproduct = {}
    for s, terms in pres.coproduct.items():
        if s in d_names:
            continue
        coproduct[s] = [
            (c, tuple(x for x in l if x not in d_names),
             tuple(x for x in r if x not in d_names))
            for c, l, r in terms
        ]
    counit = {s: v for s, v in pres.counit.items() if s not in d_names}
    antipode = None
    if pres.antipode is not None:
        antipode = {s: push(p) for s, p in pres.antipode.items()
                    if s not in d_names}
    antipode_alt = None
    if pres.antipode_alt is not None:
        antipode_alt = {s: push(p) for s, p in pres.antipode_alt.items()
                        if s not in d_names}
    return Presentation(kind, pres.n, pres.m, alphabet, relations,
                        coproduct, counit, antipode=antipode,
                        antipode_alt=antipode_alt, e=pres.e, f=pres.f,
                        N=pres.N)


def build_OM(e: MultilinearForm, f: MultilinearForm, n_deg: int) -> Presentation:
    """The bialgebra coacting compatibly on both superpotential algebras.

    Relations are indexed by (front tuple, annihilator basis element) pairs
    on each side; instances that collapse to zero are dropped.  No antipode.
    """
    if e.dim != f.dim or e.arity != f.arity:
        raise FormError("the two forms must share dim and arity")
    n, m = e.dim, e.arity
    ann_e = spalg.koszul_dual_relations(e, n_deg)
    ann_f = spalg.koszul_dual_relations(f, n_deg)
    alphabet = Alphabet(matrix_symbols("z", n))
    relations = []
    for form, ann, swap in ((e, ann_e, False), (f, ann_f, True)):
        buckets: dict[tuple, list] = {}
        for idx, val in form.entries.items():
            buckets.setdefault(idx[: m - n_deg], []).append((idx[m - n_deg:], val))
        for lam in all_tuples(n, m - n_deg):
            support = buckets.get(lam, [])
            for annih in ann.basis:
                terms: dict[Word, Fraction] = {}
                for tail, val in support:
                    for jvec, av in annih.entries.items():
                        pairs = zip(jvec, tail) if swap else zip(tail, jvec)
                        word = alphabet.word(
                            [_sym("z", r, c) for r, c in pairs])
                        terms[word] = terms.get(word, Fraction(0)) + val * av
                rel = NCPoly(alphabet, terms)
                if not rel.is_zero():
                    relations.append(rel)
    coproduct: dict[str, list[SweedlerTerm]] = {}
    _matrix_coproduct(coproduct, "z", n, flipped=False)
    counit = {
        _sym("z", i, j): Fraction(1 if i == j else 0)
        for i in range(n) for j in range(n)
    }
    return Presentation(OM, n, m, alphabet, relations, coproduct, counit,
                        e=e, f=f, N=n_deg)


# ---------------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    status: str
    certificates: tuple[MembershipCertificate, ...] = ()
    detail: str = ""
    bound_used: int = 0
    elapsed_ms: int = 0
    target: Optional[NCPoly] = None


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, check: CheckResult):
        self.checks.append(check)

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)

    @property
    def all_proved(self) -> bool:
        return all(c.status == PROVED for c in self.checks)

    @property
    def any_refuted(self) -> bool:
        return any(c.status == REFUTED for c in self.checks)

    @property
    def any_inconclusive(self) -> bool:
        return any(c.status == INCONCLUSIVE for c in self.checks)

    def by_name(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def summary(self) -> str:
        lines = [f"{c.status:12s} {c.name}"
                 + (f"  [{c.detail}]" if c.detail else "")
                 for c in self.checks]
        verdict = ("all proved" if self.all_proved else
                   "REFUTED" if self.any_refuted else "inconclusive")
        lines.append(f"-- {len(self.checks)} checks: {verdict}")
        return "\n".join(lines)


def _merge_certs(parts: Iterable[MembershipCertificate]) -> MembershipCertificate:
    summands: list[CertSummand] = []
    for c in parts:
        summands.extend(c.summands)
    return MembershipCertificate(tuple(summands)).merged()


def _dress_cert(cert: MembershipCertificate, left: Word, right: Word,
                coeff: Fraction = Fraction(1)) -> MembershipCertificate:
    return MembershipCertificate(tuple(
        CertSummand(coeff * s.coeff, tuple(left) + s.left, s.relation,
                    s.right + tuple(right))
        for s in cert.summands
    ))


# ---------------------------------------------------------------------------
# provers
# ---------------------------------------------------------------------------

Stage = tuple[Optional[int], Optional[Callable[[], Iterable[tuple[Word, int, Word]]]]]


class Prover:
    """Shared bounded searcher plus reporting helpers for one presentation."""

    def __init__(self, pres: Presentation, max_len: Optional[int] = None,
                 budget: Optional[int] = 300_000):
        self.pres = pres
        self.max_len = max_len if max_len is not None else 2 * pres.m + 2
        self.searcher = IdealSearcher(pres.alphabet, pres.relations,
                                      self.max_len, budget=budget)
        self._pushed: set[str] = set()

    # -- polynomial helpers --------------------------------------------------
    def gen(self, name: str) -> NCPoly:
        return NCPoly.generator(self.pres.alphabet, name)

    def word_poly(self, names: Sequence[str]) -> NCPoly:
        return NCPoly.monomial(self.pres.alphabet, self.pres.alphabet.word(names))

    # -- hint management -----------------------------------------------------
    def push_hints(self, tag: str,
                   hints: Iterable[tuple[Word, int, Word]]):
        if tag in self._pushed:
            return
        self._pushed.add(tag)
        for left, rel_idx, right in hints:
            self.searcher.hint(left, rel_idx, right)

    def shell_cap(self, word_limit: int = 25_000) -> int:
        """Deepest shell whose word table stays affordable."""
        cap = 2
        size = len(self.pres.alphabet)
        while cap < self.max_len - 2 and size ** (cap + 1) <= word_limit:
            cap += 1
        return cap

    def stages(self) -> list[Stage]:
        return [(1, None), (2, None), (self.shell_cap(), None)]

    # -- proving ---------------------------------------------------------------
    def prove(self, target: NCPoly,
              stages: Optional[list[Stage]] = None) -> Optional[MembershipCertificate]:
        if target.max_word_len() > self.max_len:
            return None
        for max_shell, hints in (stages if stages is not None else self.stages()):
            if hints is not None:
                tag, payload = hints()
                self.push_hints(tag, payload)
            cert = self.searcher.probe(target, max_shell=max_shell)
            if cert is not None:
                return cert
        return None

    def check(self, report: VerificationReport, name: str, target: NCPoly,
              stages: Optional[list[Stage]] = None,
              fallback: Optional[Callable[[], Optional[MembershipCertificate]]] = None,
              over_bound_detail: str = "") -> Optional[MembershipCertificate]:
        """Prove one membership target and record the outcome."""
        t0 = time.perf_counter()
        if target.max_word_len() > self.max_len and fallback is None:
            report.add(CheckResult(
                name, INCONCLUSIVE,
                detail=over_bound_detail or
                "statement words exceed the bound; not searchable",
                elapsed_ms=_ms(t0), target=target))
            return None
        cert = self.prove(target, stages)
        if cert is None and fallback is not None:
            cert = fallback()
            if cert is not None and not verify_certificate(
                    target, self.pres.relations, cert):
                cert = None
        if cert is None:
            report.add(CheckResult(
                name, INCONCLUSIVE,
                detail="no certificate within the bound",
                elapsed_ms=_ms(t0), target=target))
            return None
        depth = cert.depth(self.pres.relations)
        detail = "" if depth <= self.max_len else \
            f"composed certificate exceeds the search bound ({depth} > {self.max_len})"
        report.add(CheckResult(name, PROVED, (cert,), detail=detail,
                               bound_used=depth, elapsed_ms=_ms(t0),
                               target=target))
        return cert


def _ms(t0: float) -> int:
    return int(round(1000 * (time.perf_counter() - t0)))


class HefProver(Prover):
    """Prover for hef/gef-kind presentations with structural hint recipes.

    The hint families mirror the inverse-witness computations: prefixing
    the E-side relations by DeInv spans the left-inverse identities,
    suffixing the F-side relations by Df spans the right-inverse ones, and
    dressing those by witness words spans the agreement of the two
    antipode formulas.
    """

    def __init__(self, pres: Presentation, max_len: Optional[int] = None,
                 budget: Optional[int] = 300_000):
        if pres.kind not in (HEF, GEF):
            raise PresentationError("HefProver needs a hef/gef presentation")
        if pres.e is None or pres.f is None:
            raise PresentationError("presentation does not carry its forms")
        super().__init__(pres, max_len, budget)
        self.n, self.m = pres.n, pres.m
        self._cert_cache: dict = {}
        self._index_relations()

    def _index_relations(self):
        pres = self.pres
        n, m = self.n, self.m
        by_key = {tuple(rel.items()): k for k, rel in enumerate(pres.relations)}

        def locate(poly: NCPoly) -> int:
            key = tuple(poly.items())
            if key not in by_key:
                raise PresentationError(
                    "relations do not match the canonical construction")
            return by_key[key]

        self.re_idx = {}
        self.rf_idx = {}
        for jvec in all_tuples(n, m):
            self.re_idx[jvec] = locate(_contracted_relation(
                pres.alphabet, pres.e, "u", jvec,
                swap=False, reverse=False, d_name="De"))
            self.rf_idx[jvec] = locate(_contracted_relation(
                pres.alphabet, pres.f, "u", jvec,
                swap=True, reverse=False, d_name="DfInv"))
        pairs = _inverse_pair_relations(pres.alphabet, "De", "DeInv") + \
            _inverse_pair_relations(pres.alphabet, "Df", "DfInv")
        names = ("DeDeInv", "DeInvDe", "DfDfInv", "DfInvDf")
        self.d_idx = {nm: locate(p) for nm, p in zip(names, pairs)}

    # -- structural polys ------------------------------------------------------
    def u_poly(self, i: int, j: int) -> NCPoly:
        return self.gen(_sym("u", i, j))

    def c_poly(self, i: int, j: int) -> NCPoly:
        return self.pres.antipode[_sym("u", i, j)]

    def d_poly(self, i: int, j: int) -> NCPoly:
        return self.pres.antipode_alt[_sym("u", i, j)]

    def _u_words(self, length: int) -> list[Word]:
        letters = [self.pres.alphabet.index[_sym("u", i, j)]
                   for i in range(self.n) for j in range(self.n)]
        return [tuple(w) for w in itertools.product(letters, repeat=length)]

    def _dword(self, name: str) -> Word:
        return (self.pres.alphabet.index[name],)

    # -- hint families ----------------------------------------------------------
    def hints_cu(self):
        deinv = self._dword("DeInv")
        return "cu", [(deinv, k, ()) for k in self.re_idx.values()]

    def hints_ud(self):
        df = self._dword("Df")
        return "ud", [((), k, df) for k in self.rf_idx.values()]

    def _cmd_payload(self, prefix: Word = (), suffix: Word = ()):
        deinv, df = self._dword("DeInv"), self._dword("Df")
        words = self._u_words(self.m - 1)
        out = []
        for w in words:
            for k in self.rf_idx.values():
                out.append((prefix + deinv + w, k, df + suffix))
            out.append((prefix + deinv + w, self.d_idx["DfInvDf"], suffix))
            out.append((prefix, self.d_idx["DeInvDe"], w + df + suffix))
        for k in self.re_idx.values():
            for w in words:
                out.append((prefix + deinv, k, w + df + suffix))
        return out

    def hints_cmd(self):
        return "cmd", self._cmd_payload()

    def hints_uc(self):
        letters = [self.pres.alphabet.index[_sym("u", i, j)]
                   for i in range(self.n) for j in range(self.n)]
        payload = []
        for x in letters:
            payload.extend(self._cmd_payload(prefix=(x,)))
        return "uc", payload

    def hints_du(self):
        letters = [self.pres.alphabet.index[_sym("u", i, j)]
                   for i in range(self.n) for j in range(self.n)]
        payload = []
        for x in letters:
            payload.extend(self._cmd_payload(suffix=(x,)))
        return "du", payload

    # -- canonical targets -------------------------------------------------------
    def target_cu(self, i: int, j: int) -> NCPoly:
        acc = NCPoly(self.pres.alphabet)
        for k in range(self.n):
            acc = acc + self.c_poly(i, k) * self.u_poly(k, j)
        if i == j:
            acc = acc - NCPoly.one(self.pres.alphabet)
        return acc

    def target_ud(self, i: int, j: int) -> NCPoly:
        acc = NCPoly(self.pres.alphabet)
        for k in range(self.n):
            acc = acc + self.u_poly(i, k) * self.d_poly(k, j)
        if i == j:
            acc = acc - NCPoly.one(self.pres.alphabet)
        return acc

    def target_cmd(self, i: int, j: int) -> NCPoly:
        return self.c_poly(i, j) - self.d_poly(i, j)

    # -- cached composite certificates --------------------------------------------
    def cert_cu(self, i: int, j: int) -> Optional[MembershipCertificate]:
        return self._cached(("cu", i, j), self.target_cu(i, j),
                            [(1, self.hints_cu), (2, None), (self.shell_cap(), None)])

    def cert_ud(self, i: int, j: int) -> Optional[MembershipCertificate]:
        return self._cached(("ud", i, j), self.target_ud(i, j),
                            [(1, self.hints_ud), (2, None), (self.shell_cap(), None)])

    def cert_cmd(self, i: int, j: int) -> Optional[MembershipCertificate]:
        return self._cached(("cmd", i, j), self.target_cmd(i, j),
                            [(1, None), (2, self.hints_cmd), (self.shell_cap(), None)])

    def cert_uc(self, i: int, j: int) -> Optional[MembershipCertificate]:
        key = ("ucfull", i, j)
        if key in self._cert_cache:
            return self._cert_cache[key]
        target = NCPoly(self.pres.alphabet)
        for k in range(self.n):
            target = target + self.u_poly(i, k) * self.c_poly(k, j)
        if i == j:
            target = target - NCPoly.one(self.pres.alphabet)
        cert = self.prove(target, [(1, None), (2, self.hints_uc), (3, None)])
        if cert is None:
            cert = self._compose_uc(i, j, target)
        self._cert_cache[key] = cert
        return cert

    def cert_du(self, i: int, j: int) -> Optional[MembershipCertificate]:
        key = ("dufull", i, j)
        if key in self._cert_cache:
            return self._cert_cache[key]
        target = NCPoly(self.pres.alphabet)
        for k in range(self.n):
            target = target + self.d_poly(i, k) * self.u_poly(k, j)
        if i == j:
            target = target - NCPoly.one(self.pres.alphabet)
        cert = self.prove(target, [(1, None), (2, self.hints_du), (3, None)])
        if cert is None:
            cert = self._compose_du(i, j, target)
        self._cert_cache[key] = cert
        return cert

    def _cached(self, key, target, stages):
        if key in self._cert_cache:
            return self._cert_cache[key]
        cert = self.prove(target, stages)
        self._cert_cache[key] = cert
        return cert

    def _compose_uc(self, i: int, j: int,
                    target: NCPoly) -> Optional[MembershipCertificate]:
        """U*C - I from U*(C - D) plus U*D - I; may exceed the bound."""
        parts = []
        ud = self.cert_ud(i, j)
        if ud is None:
            return None
        parts.append(ud)
        for k in range(self.n):
            cmd = self.cert_cmd(k, j)
            if cmd is None:
                return None
            for word, coeff in self.u_poly(i, k).terms.items():
                parts.append(_dress_cert(cmd, word, (), coeff))
        cert = _merge_certs(parts)
        if not verify_certificate(target, self.pres.relations, cert):
            return None
        return cert

    def _compose_du(self, i: int, j: int,
                    target: NCPoly) -> Optional[MembershipCertificate]:
        """D*U - I from (D - C)*U plus C*U - I; may exceed the bound."""
        parts = []
        cu = self.cert_cu(i, j)
        if cu is None:
            return None
        parts.append(cu)
        for k in range(self.n):
            cmd = self.cert_cmd(i, k)
            if cmd is None:
                return None
            for word, coeff in self.u_poly(k, j).terms.items():
                parts.append(_dress_cert(cmd, (), word, -coeff))
        cert = _merge_certs(parts)
        if not verify_certificate(target, self.pres.relations, cert):
            return None
        return cert


class SideProver(Prover):
    """Prover for the one-sided presentations (he/hf and their unimodular
    quotients) with their inverse-witness hint families."""

    def __init__(self, pres: Presentation, max_len: Optional[int] = None,
                 budget: Optional[int] = 300_000):
        if pres.kind not in (HE, HF, SE, SF):
            raise PresentationError("SideProver needs a one-sided presentation")
        form = pres.e if pres.kind in (HE, SE) else pres.f
        if form is None:
            raise PresentationError("presentation does not carry its form")
        super().__init__(pres, max_len, budget)
        self.n, self.m = pres.n, pres.m
        self.form = form
        self.e_side = pres.kind in (HE, SE)
        self.unimodular = pres.kind in (SE, SF)
        self._index_relations()

    def _index_relations(self):
        pres = self.pres
        n, m = self.n, self.m
        by_key = {tuple(rel.items()): k for k, rel in enumerate(pres.relations)}

        def locate(poly: NCPoly) -> int:
            key = tuple(poly.items())
            if key not in by_key:
                raise PresentationError(
                    "relations do not match the canonical construction")
            return by_key[key]

        he = self.e_side
        swap = not he
        if self.unimodular:
            d_a = d_b = None
        else:
            d_a = "De" if he else "DfInv"
            d_b = "DeInv" if he else "Df"
        self.ra_idx = {}
        self.rb_idx = {}
        for jvec in all_tuples(n, m):
            self.ra_idx[jvec] = locate(_contracted_relation(
                pres.alphabet, self.form, "a", jvec,
                swap=swap, reverse=False, d_name=d_a))
            self.rb_idx[jvec] = locate(_contracted_relation(
                pres.alphabet, self.form, "b", jvec,
                swap=swap, reverse=True, d_name=d_b))
        self.d_idx = {}
        if not self.unimodular:
            dnames = ("De", "DeInv") if he else ("Df", "DfInv")
            pairs = _inverse_pair_relations(pres.alphabet, *dnames)
            self.d_idx = {f"{dnames[0]}{dnames[1]}": locate(pairs[0]),
                          f"{dnames[1]}{dnames[0]}": locate(pairs[1])}
        prod = _matrix_product_relations(
            pres.alphabet, "a" if he else "b", "b" if he else "a", n)
        self.prod_idx = {}
        k = 0
        for i in range(n):
            for j in range(n):
                self.prod_idx[(i, j)] = locate(prod[k])
                k += 1

    def _letters(self, prefix: str) -> list[int]:
        return [self.pres.alphabet.index[_sym(prefix, i, j)]
                for i in range(self.n) for j in range(self.n)]

    def _a_words(self, length: int) -> list[Word]:
        return [tuple(w) for w in
                itertools.product(self._letters("a"), repeat=length)]

    def _wit_dress(self) -> tuple[Word, Word]:
        """Left/right grouplike dressing of the witness products."""
        if self.unimodular:
            return (), ()
        if self.e_side:
            return ((self.pres.alphabet.index["DeInv"],), ())
        return ((), (self.pres.alphabet.index["Df"],))

    def hints_witness(self):
        l, r = self._wit_dress()
        return "witness", [(l, k, r) for k in self.ra_idx.values()]

    def hints_bswap(self):
        """Products spanning the agreement of the second generator family
        with its witness expression, plus single-letter dressings."""
        payload = []
        l, r = self._wit_dress()
        letters = self._letters("a") + self._letters("b")
        for k in self.ra_idx.values():
            for x in letters:
                payload.append((l, k, r + (x,)))
                payload.append(((x,) + l, k, r))
        for w in self._a_words(self.m - 1):
            for k in self.prod_idx.values():
                payload.append((l + w[:1], k, w[1:]))
                payload.append((l + w, k, ()))
                payload.append(((), k, w + r))
                for x in self._letters("b"):
                    payload.append((l + w, k, (x,)))
                    payload.append(((x,), k, w + r))
        return "bswap", payload

    def hints_rb_dress(self):
        payload = []
        letters = self._letters("a") + self._letters("b")
        if not self.unimodular:
            side = "De" if self.e_side else "Df"
            letters = letters + [self.pres.alphabet.index[side],
                                 self.pres.alphabet.index[side + "Inv"]]
        for k in self.rb_idx.values():
            for x in letters:
                payload.append(((x,), k, ()))
                payload.append(((), k, (x,)))
        if not self.unimodular:
            if self.e_side:
                l, r = (self.pres.alphabet.index["DeInv"],), \
                    (self.pres.alphabet.index["De"],)
            else:
                l, r = (self.pres.alphabet.index["DfInv"],), \
                    (self.pres.alphabet.index["Df"],)
            payload += [(l, k, r) for k in self.ra_idx.values()]
            payload += [(l, k, r) for k in self.rb_idx.values()]
        return "rbdress", payload

    def hints_all(self):
        payload = self.hints_witness()[1] + self.hints_bswap()[1] + \
            self.hints_rb_dress()[1]
        return "sideall", payload

    def stages(self) -> list[Stage]:
        return [(1, self.hints_witness), (2, self.hints_all),
                (3, None), (self.shell_cap(), None)]


def _make_prover(pres: Presentation, max_len: Optional[int],
                 budget: Optional[int]) -> Prover:
    try:
        if pres.kind in (HEF, GEF) and pres.e is not None and pres.f is not None:
            return HefProver(pres, max_len, budget)
        if pres.kind in (HE, HF, SE, SF):
            return SideProver(pres, max_len, budget)
    except PresentationError:
        pass
    return Prover(pres, max_len, budget)


# ---------------------------------------------------------------------------
# antipode image certificates via inverse-witness telescoping
# ---------------------------------------------------------------------------

def _cert_srel_e(prover: HefProver, jvec: tuple[int, ...]
                 ) -> Optional[MembershipCertificate]:
    """Certificate that the antipode image of an E-side relation instance
    lies in the ideal, built by peeling the reversed product against the
    right-convolution witnesses.  May exceed the search bound; the caller
    verifies the result by expansion.
    """
    pres = prover.pres
    alphabet = pres.alphabet
    e = pres.e
    n, m = prover.n, prover.m
    deinv = (alphabet.index["DeInv"],)
    parts: list[MembershipCertificate] = []
    # subtracted correction for rewriting each scalar e_ivec through the
    # E-side relation: -DeInv * R_E[ivec] * Sw(ivec)  and the inverse-pair
    # correction -(DeInvDe - 1) * e_ivec * Sw(ivec)
    for ivec in all_tuples(n, m):
        sw = pres.apply_antipode(NCPoly.monomial(
            alphabet, alphabet.word([_sym("u", i, j)
                                     for i, j in zip(ivec, jvec)])))
        summands = []
        for w, cw in sw.terms.items():
            summands.append(CertSummand(-cw, deinv, prover.re_idx[ivec], w))
            ev = e.coeff(ivec)
            if ev:
                summands.append(CertSummand(
                    -ev * cw, (), prover.d_idx["DeInvDe"], w))
        parts.append(MembershipCertificate(tuple(summands)))
    # telescoping of the remaining double contraction against the
    # right-convolution defects, dressed into place and headed by DeInv
    for t in range(1, m + 1):
        for rpre in all_tuples(n, t):
            coeff_e = e.coeff(rpre + jvec[t:])
            if not coeff_e:
                continue
            for ipre in all_tuples(n, t - 1):
                left_u = alphabet.word(
                    [_sym("u", rpre[s], ipre[s]) for s in range(t - 1)])
                sw = pres.apply_antipode(NCPoly.monomial(
                    alphabet, alphabet.word(
                        [_sym("u", ipre[s], jvec[s]) for s in range(t - 1)])))
                uc = prover.cert_uc(rpre[t - 1], jvec[t - 1])
                if uc is None:
                    return None
                for w, cw in sw.terms.items():
                    parts.append(_dress_cert(
                        uc, deinv + left_u, w, coeff_e * cw))
    return _merge_certs(parts)


def _cert_srel_f(prover: HefProver, jvec: tuple[int, ...]
                 ) -> Optional[MembershipCertificate]:
    """Mirror of :func:`_cert_srel_e` for an F-side relation instance,
    peeling against the left-convolution witnesses."""
    pres = prover.pres
    alphabet = pres.alphabet
    f = pres.f
    n, m = prover.n, prover.m
    df = (alphabet.index["Df"],)
    parts: list[MembershipCertificate] = []
    for ivec in all_tuples(n, m):
        sw = pres.apply_antipode(NCPoly.monomial(
            alphabet, alphabet.word([_sym("u", j, i)
                                     for j, i in zip(jvec, ivec)])))
        summands = []
        for w, cw in sw.terms.items():
            summands.append(CertSummand(-cw, w, prover.rf_idx[ivec], df))
            fv = f.coeff(ivec)
            if fv:
                summands.append(CertSummand(
                    -fv * cw, w, prover.d_idx["DfInvDf"], ()))
        parts.append(MembershipCertificate(tuple(summands)))
    for s in range(1, m + 1):
        for rsuf in all_tuples(n, m - s + 1):
            coeff_f = f.coeff(jvec[:s - 1] + rsuf)
            if not coeff_f:
                continue
            for isuf in all_tuples(n, m - s):
                right_u = alphabet.word(
                    [_sym("u", isuf[t], rsuf[t + 1]) for t in range(m - s)])
                sw = pres.apply_antipode(NCPoly.monomial(
                    alphabet, alphabet.word(
                        [_sym("u", jvec[s + t], isuf[t])
                         for t in range(m - s)])))
                cu = prover.cert_cu(jvec[s - 1], rsuf[0])
                if cu is None:
                    return None
                for w, cw in sw.terms.items():
                    parts.append(_dress_cert(
                        cu, w, right_u + df, coeff_f * cw))
    return _merge_certs(parts)


# ---------------------------------------------------------------------------
# verifier suite
# ---------------------------------------------------------------------------

def verify_inverse_lemma(pres: Presentation, max_len: Optional[int] = None,
                         budget: Optional[int] = 300_000) -> VerificationReport:
    """Certify that the two antipode witness matrices are one-sided
    inverses of the generator matrix, agree with each other, and do not
    depend on the companion-form choice (for arity above 2)."""
    prover = HefProver(pres, max_len, budget)
    report = VerificationReport()
    n = prover.n
    for i in range(n):
        for j in range(n):
            prover.check(report, f"left_inverse[{i},{j}]",
                         prover.target_cu(i, j),
                         [(1, prover.hints_cu), (2, None), (prover.shell_cap(), None)])
            prover.check(report, f"right_inverse[{i},{j}]",
                         prover.target_ud(i, j),
                         [(1, prover.hints_ud), (2, None), (prover.shell_cap(), None)])
            prover.check(report, f"witness_agreement[{i},{j}]",
                         prover.target_cmd(i, j),
                         [(1, None), (2, prover.hints_cmd), (prover.shell_cap(), None)])
    if prover.m > 2:
        e2 = polar_variants(pres.e, FIRST, 2)
        f2 = polar_variants(pres.f, LAST, 2)
        if len(e2) > 1:
            for i in range(n):
                for j in range(n):
                    alt = _hef_antipode_terms(pres.alphabet, pres.e, e2[1],
                                              i, j, head=True)
                    prover.check(
                        report, f"polar_independence_left[{i},{j}]",
                        alt - prover.c_poly(i, j),
                        [(1, None), (2, prover.hints_cmd), (prover.shell_cap(), None)])
        if len(f2) > 1:
            for i in range(n):
                for j in range(n):
                    alt = _hef_antipode_terms(pres.alphabet, pres.f, f2[1],
                                              i, j, head=False)
                    prover.check(
                        report, f"polar_independence_right[{i},{j}]",
                        alt - prover.d_poly(i, j),
                        [(1, None), (2, prover.hints_cmd), (prover.shell_cap(), None)])
    return report


def _convolution_targets(pres: Presentation, sym: str
                         ) -> tuple[NCPoly, NCPoly]:
    """(sum S(x_1) x_2 - eps(x), sum x_1 S(x_2) - eps(x)) for a generator."""
    alphabet = pres.alphabet
    idx = alphabet.index[sym]
    delta = pres.delta_table()[idx]
    eps = pres.counit_values()[idx]
    left = NCPoly(alphabet)
    right = NCPoly(alphabet)
    for c, w1, w2 in delta:
        m1 = NCPoly.monomial(alphabet, w1, c)
        m2 = NCPoly.monomial(alphabet, w2)
        left = left + pres.apply_antipode(m1) * m2
        right = right + m1 * pres.apply_antipode(m2)
    one = NCPoly.one(alphabet).scale(eps)
    return left - one, right - one


def verify_antipode(pres: Presentation, max_len: Optional[int] = None,
                    budget: Optional[int] = 300_000) -> VerificationReport:
    """Certify the antipode axioms on every generator and the stability of
    the relation ideal under the antipode's antihomomorphic extension.

    Relation images that are too long for the bound are certified through
    inverse-witness telescoping where the presentation supports it (the
    paired-form kinds); the composed certificates may exceed the bound, in
    which case ``bound_used`` says so.
    """
    if pres.antipode is None:
        raise PresentationError("presentation has no antipode")
    prover = _make_prover(pres, max_len, budget)
    report = VerificationReport()
    is_hef = isinstance(prover, HefProver)
    for sym in pres.alphabet.symbols:
        left, right = _convolution_targets(pres, sym)
        if is_hef:
            lstages = [(1, prover.hints_cu), (2, prover.hints_cmd), (prover.shell_cap(), None)]
            rstages = [(1, prover.hints_ud), (2, prover.hints_uc), (prover.shell_cap(), None)]
        else:
            lstages = rstages = None
        lfall = rfall = None
        if is_hef and sym.startswith("u_"):
            _, si, sj = sym.split("_")
            i, j = int(si), int(sj)
            lfall = lambda i=i, j=j: prover.cert_cu(i, j)
            rfall = lambda i=i, j=j: prover.cert_uc(i, j)
        prover.check(report, f"antipode_left[{sym}]", left, lstages,
                     fallback=lfall)
        prover.check(report, f"antipode_right[{sym}]", right, rstages,
                     fallback=rfall)
    re_of = {v: k for k, v in prover.re_idx.items()} if is_hef else {}
    rf_of = {v: k for k, v in prover.rf_idx.items()} if is_hef else {}
    for k, rel in enumerate(pres.relations):
        image = pres.apply_antipode(rel)
        fallback = None
        if is_hef and k in re_of:
            fallback = lambda jv=re_of[k]: _cert_srel_e(prover, jv)
        elif is_hef and k in rf_of:
            fallback = lambda jv=rf_of[k]: _cert_srel_f(prover, jv)
        elif image.max_word_len() > prover.max_len:
            fallback = lambda img=image: _prove_reduce_first(prover, img)
        prover.check(report, f"relation_image[{k}]", image,
                     fallback=fallback,
                     over_bound_detail="antipode image words exceed the bound")
    return report


def _prove_reduce_first(prover: Prover, target: NCPoly
                        ) -> Optional[MembershipCertificate]:
    """Top-reduce an over-long target, then search for the remainder.

    The reduction summands can exceed the bound (their depth equals the
    word lengths of the target itself); the remainder search stays within
    the bound.
    """
    from .ncpoly import top_reduce
    reduced, pre = top_reduce(target, prover.pres.relations)
    if reduced.max_word_len() > prover.max_len:
        return None
    cert = prover.prove(reduced)
    if cert is None:
        return None
    return _merge_certs([MembershipCertificate(tuple(pre)), cert])


def _twist_pair(pres: Presentation) -> tuple[Optional[TwistMatrix], Optional[TwistMatrix]]:
    p = find_twist(pres.e) if pres.e is not None else None
    q = find_twist(pres.f) if pres.f is not None else None
    return p, q


def _conjugated_generator(pres: Presentation, prefix: str, i: int, j: int,
                          mat: TwistMatrix, transpose: bool) -> NCPoly:
    """(M^-1 X M)_ij, or (M^-T X M^T)_ij when ``transpose``."""
    n = pres.n
    terms: dict[Word, Fraction] = {}
    for k in range(n):
        for l in range(n):
            if transpose:
                c = mat.inverse[k][i] * mat.entries[j][l]
            else:
                c = mat.inverse[i][k] * mat.entries[l][j]
            if c:
                w = pres.alphabet.word([_sym(prefix, k, l)])
                terms[w] = terms.get(w, Fraction(0)) + c
    return NCPoly(pres.alphabet, terms)


def verify_s2_twist(pres: Presentation, max_len: Optional[int] = None,
                    budget: Optional[int] = 300_000) -> VerificationReport:
    """Certify the square-of-antipode conjugation identities, and the
    involutory property when the rotation matrix is scalar and the
    grouplike is certified central."""
    if pres.antipode is None:
        raise PresentationError("presentation has no antipode")
    prover = _make_prover(pres, max_len, budget)
    report = VerificationReport()
    p_twist, q_twist = _twist_pair(pres)
    alphabet = pres.alphabet
    quotient = pres.kind in (SE, SF, SEF)

    def s2(sym: str) -> NCPoly:
        return pres.apply_antipode(pres.apply_antipode(pres.generator(sym)))

    jobs: list[tuple[str, str, str, TwistMatrix, bool]] = []
    if pres.kind in (HE, SE):
        if p_twist is None:
            raise DegenerateFormError("no rotation matrix for the e side")
        for prefix in ("a", "b"):
            jobs.append(("e", prefix, "De", p_twist, False))
    elif pres.kind in (HF, SF):
        if q_twist is None:
            raise DegenerateFormError("no rotation matrix for the f side")
        for prefix in ("a", "b"):
            jobs.append(("f", prefix, "Df", q_twist, True))
    elif pres.kind in (HEF, GEF, SEF):
        if p_twist is None or q_twist is None:
            raise DegenerateFormError("missing rotation matrices")
        jobs.append(("e", "u", "De", p_twist, False))
        jobs.append(("f", "u", "Df", q_twist, True))
    else:
        raise PresentationError(f"no antipode-square checks for kind {pres.kind!r}")

    scalar_side: Optional[tuple[str, str]] = None
    for side, prefix, dname, twist, transpose in jobs:
        dword = None if quotient else (alphabet.index[dname],)
        dinv = None if quotient else \
            (alphabet.index[dname + "Inv"],)
        for i in range(pres.n):
            for j in range(pres.n):
                sym = _sym(prefix, i, j)
                inner = s2(sym)
                if quotient:
                    target = inner
                else:
                    target = NCPoly(alphabet, {
                        dword + w + dinv: c for w, c in inner.terms.items()})
                target = target - _conjugated_generator(
                    pres, prefix, i, j, twist, transpose)
                prover.check(report, f"s2_conjugation_{side}[{prefix}_{i}_{j}]",
                             target,
                             over_bound_detail="antipode square exceeds the bound")
        if linalg.is_scalar_matrix(twist.entries) is not None and scalar_side is None:
            scalar_side = (side, dname)

    # Involutivity is claimed only when the rotation matrix is scalar AND
    # the grouplike is certified central; a pair failing the centrality
    # probe simply gets no involutory checks (nothing is claimed).
    if scalar_side is not None:
        side, dname = scalar_side
        matrix_prefix = "u" if pres.kind in (HEF, GEF, SEF) else "a"
        central_results = VerificationReport()
        if not quotient:
            dgen = pres.generator(dname)
            for i in range(pres.n):
                for j in range(pres.n):
                    x = pres.generator(_sym(matrix_prefix, i, j))
                    prover.check(central_results, f"d_central_{side}[{i},{j}]",
                                 dgen * x - x * dgen)
        if central_results.all_proved:
            report.extend(central_results)
            for i in range(pres.n):
                for j in range(pres.n):
                    sym = _sym(matrix_prefix, i, j)
                    prover.check(report, f"involutory[{sym}]",
                                 s2(sym) - pres.generator(sym),
                                 over_bound_detail="antipode square exceeds the bound")
    return report


def verify_central_codet(pres: Presentation, max_len: Optional[int] = None,
                         budget: Optional[int] = 300_000) -> VerificationReport:
    """Certify the grouplike-product and star-intertwining identities, and
    the centrality of the codeterminant when a star matrix is scalar."""
    if pres.kind not in (HEF, GEF):
        raise PresentationError("central-codeterminant checks need the paired kind")
    prover = HefProver(pres, max_len, budget)
    report = VerificationReport()
    e, f = pres.e, pres.f
    n = pres.n
    alphabet = pres.alphabet
    s = odot(e, f)
    de, dfinv = pres.generator("De"), pres.generator("DfInv")
    df, deinv = pres.generator("Df"), pres.generator("DeInv")
    if s != 0:
        target = de * df - NCPoly.one(alphabet)
        prover.check(report, "codet_product", target,
                     [(1, None), (2, None), (prover.shell_cap(), None)])
    else:
        report.add(CheckResult("codet_product", PROVED,
                               detail="skipped: full contraction is zero "
                                      "(no identity asserted)"))
    g_star = star(f, e)
    h_star = star(e, f)
    for i in range(n):
        for j in range(n):
            lhs = NCPoly(alphabet)
            for k in range(n):
                if g_star[k][j]:
                    lhs = lhs + prover.u_poly(i, k).scale(g_star[k][j]) * de
            rhs = NCPoly(alphabet)
            for k in range(n):
                if g_star[i][k]:
                    rhs = rhs + dfinv * prover.u_poly(k, j).scale(g_star[i][k])
            prover.check(report, f"star_intertwine_1[{i},{j}]", lhs - rhs,
                         [(1, None), (2, None), (3, None), (prover.shell_cap(), None)])
            lhs2 = NCPoly(alphabet)
            for k in range(n):
                c = h_star[j][k]  # transposed star matrix
                if c:
                    lhs2 = lhs2 + prover.u_poly(i, k).scale(c) * df
            rhs2 = NCPoly(alphabet)
            for k in range(n):
                c = h_star[k][i]
                if c:
                    rhs2 = rhs2 + deinv * prover.u_poly(k, j).scale(c)
            prover.check(report, f"star_intertwine_2[{i},{j}]", lhs2 - rhs2,
                         [(1, None), (2, None), (3, None), (prover.shell_cap(), None)])
    if s != 0 and (linalg.is_scalar_matrix(g_star) not in (None, 0)
                   or linalg.is_scalar_matrix(h_star) not in (None, 0)):
        for i in range(n):
            for j in range(n):
                x = prover.u_poly(i, j)
                prover.check(report, f"d_central[{i},{j}]",
                             de * x - x * de,
                             [(1, None), (2, None), (3, None), (prover.shell_cap(), None)])
    return report


def verify_pushout_maps(he: Presentation, hf: Presentation,
                        hef: Presentation, max_len: Optional[int] = None,
                        budget: Optional[int] = 300_000) -> VerificationReport:
    """Certify that the two one-sided presentations map into the paired one
    (generator matrix to generator matrix, second family to the antipode
    images, grouplikes to grouplikes)."""
    if he.kind != HE or hf.kind != HF or hef.kind not in (HEF, GEF):
        raise PresentationError("pushout checks need he, hf and hef presentations")
    if he.e != hef.e or hf.f != hef.f:
        raise PresentationError("pushout presentations disagree on the forms")
    prover = HefProver(hef, max_len, budget)
    report = VerificationReport()
    n, m = hef.n, hef.m
    re_of = {v: k for k, v in prover.re_idx.items()}
    rf_of = {v: k for k, v in prover.rf_idx.items()}

    def images_for(side: Presentation, d_old: str, d_new: str) -> list[NCPoly]:
        out = []
        for s in side.alphabet.symbols:
            if s.startswith("a_"):
                _, i, j = s.split("_")
                out.append(prover.u_poly(int(i), int(j)))
            elif s.startswith("b_"):
                _, i, j = s.split("_")
                out.append(hef.antipode[_sym("u", int(i), int(j))])
            elif s == d_old:
                out.append(hef.generator(d_new))
            elif s == d_old + "Inv":
                out.append(hef.generator(d_new + "Inv"))
            else:
                raise PresentationError(f"unexpected generator {s!r}")
        return out

    e_rb = {}
    f_rb = {}
    for jvec in all_tuples(n, m):
        e_rb[tuple(_contracted_relation(
            he.alphabet, he.e, "b", jvec, swap=False, reverse=True,
            d_name="DeInv").items())] = jvec
        f_rb[tuple(_contracted_relation(
            hf.alphabet, hf.f, "b", jvec, swap=True, reverse=True,
            d_name="Df").items())] = jvec

    for label, side, d_old, d_new, rb_map, srel in (
            ("e", he, "De", "De", e_rb, _cert_srel_e),
            ("f", hf, "Df", "Df", f_rb, _cert_srel_f)):
        images = images_for(side, d_old, d_new)
        for k, rel in enumerate(side.relations):
            target = rel.map_words(hef.alphabet, images)
            fallback = None
            key = tuple(rel.items())
            if key in rb_map:
                fallback = lambda jv=rb_map[key], fn=srel: fn(prover, jv)
            elif target.max_word_len() <= prover.max_len:
                # second-family product relations land on the convolution targets
                fallback = None
            if label == "e":
                stages = [(1, prover.hints_cu), (2, prover.hints_uc), (prover.shell_cap(), None)]
            else:
                stages = [(1, prover.hints_ud), (2, prover.hints_uc), (prover.shell_cap(), None)]
            prover.check(report, f"pushout_{label}[{k}]", target, stages,
                         fallback=fallback,
                         over_bound_detail="mapped relation exceeds the bound")
    return report


def sovereign_check(pres: Presentation, phi: Optional[dict[str, Fraction]] = None,
                    max_len: Optional[int] = None,
                    budget: Optional[int] = 300_000) -> VerificationReport:
    """Numerically verify the sovereign character and certify the
    convolution form of the antipode square against it."""
    if pres.kind not in (SE, SF, SEF):
        raise PresentationError("sovereign checks apply to the unimodular quotients")
    report = VerificationReport()
    p_twist, q_twist = _twist_pair(pres)
    if phi is None:
        phi = {}
        if pres.kind == SE:
            if p_twist is None:
                raise DegenerateFormError("no rotation matrix for the e side")
            for i in range(pres.n):
                for j in range(pres.n):
                    phi[_sym("a", i, j)] = p_twist.inverse[i][j]
                    phi[_sym("b", i, j)] = p_twist.entries[i][j]
        elif pres.kind == SF:
            if q_twist is None:
                raise DegenerateFormError("no rotation matrix for the f side")
            for i in range(pres.n):
                for j in range(pres.n):
                    phi[_sym("a", i, j)] = q_twist.inverse[j][i]
                    phi[_sym("b", i, j)] = q_twist.entries[j][i]
        else:
            if p_twist is None or q_twist is None:
                raise DegenerateFormError("missing rotation matrices")
            if p_twist.entries != linalg.mat_transpose(q_twist.entries):
                report.add(CheckResult(
                    "sovereign_hypothesis", REFUTED,
                    detail="rotation matrices violate P == Q^T; no claim made"))
                return report
            report.add(CheckResult(
                "sovereign_hypothesis", PROVED,
                detail="P == Q^T verified exactly"))
            for i in range(pres.n):
                for j in range(pres.n):
                    phi[_sym("u", i, j)] = p_twist.inverse[i][j]
    values = []
    for s in pres.alphabet.symbols:
        if s not in phi:
            raise PresentationError(f"sovereign character undefined on {s!r}")
        values.append(Fraction(phi[s]))
    for k, rel in enumerate(pres.relations):
        residual = rel.eval_scalars(values)
        if residual == 0:
            report.add(CheckResult(f"sovereign_relation[{k}]", PROVED,
                                   detail="exact substitution; residual 0"))
        else:
            report.add(CheckResult(f"sovereign_relation[{k}]", REFUTED,
                                   detail=f"residual {residual}"))
    if report.any_refuted:
        return report
    prover = _make_prover(pres, max_len, budget)
    delta = pres.delta_table()
    alphabet = pres.alphabet
    from .ncpoly import coproduct_extend
    for idx, sym in enumerate(alphabet.symbols):
        s2 = pres.apply_antipode(pres.apply_antipode(pres.generator(sym)))
        conv = NCPoly(alphabet)
        for c, w1, w2 in delta[idx]:
            left_tensor = coproduct_extend(
                NCPoly.monomial(alphabet, w1, c), delta)
            phi_s_w2 = pres.apply_antipode(
                NCPoly.monomial(alphabet, w2)).eval_scalars(values)
            if phi_s_w2 == 0:
                continue
            for (aw, bw), cc in left_tensor.terms.items():
                phi_aw = NCPoly.monomial(alphabet, aw).eval_scalars(values)
                if phi_aw == 0:
                    continue
                conv = conv + NCPoly.monomial(
                    alphabet, bw, cc * phi_aw * phi_s_w2)
        prover.check(report, f"sovereign_s2[{sym}]", s2 - conv)
    return report


def equivalence_check(pa: Presentation, pb: Presentation,
                      dictionary: dict[str, NCPoly],
                      max_len: Optional[int] = None,
                      budget: Optional[int] = 300_000) -> VerificationReport:
    """Certify that the dictionary maps every relation of the first
    presentation into the relation ideal of the second."""
    images = []
    for s in pa.alphabet.symbols:
        if s not in dictionary:
            raise PresentationError(f"dictionary undefined on {s!r}")
        img = dictionary[s]
        if img.alphabet != pb.alphabet:
            raise PresentationError(f"dictionary image of {s!r} over a foreign alphabet")
        images.append(img)
    prover = _make_prover(pb, max_len, budget)
    report = VerificationReport()
    stages = None
    if isinstance(prover, HefProver):
        stages = [(1, prover.hints_cu), (2, prover.hints_ud),
                  (3, prover.hints_cmd), (prover.shell_cap(), None)]
    for k, rel in enumerate(pa.relations):
        target = rel.map_words(pb.alphabet, images)
        prover.check(report, f"relation_map[{k}]", target, stages,
                     over_bound_detail="mapped relation exceeds the bound")
    return report


# ---------------------------------------------------------------------------
# codeterminants and grouplikes
# ---------------------------------------------------------------------------

def codeterminant_numeric(e: MultilinearForm, mat) -> tuple[Fraction, bool]:
    """Evaluate the codeterminant formula of a numeric matrix.

    Returns the value at the canonical (lexicographically least nonzero)
    column tuple, plus whether the value is independent of that choice,
    which holds exactly when the matrix satisfies the coaction relations.
    """
    support = e.support()
    if not support:
        raise DegenerateFormError("zero form has no codeterminant")
    rows = [[Fraction(x) for x in row] for row in mat]
    values = []
    for jvec in support:
        total = Fraction(0)
        for ivec, val in e.entries.items():
            prod = val
            for a, b in zip(ivec, jvec):
                prod *= rows[a][b]
                if prod == 0:
                    break
            total += prod
        values.append(total / e.coeff(jvec))
    return values[0], all(v == values[0] for v in values)


def _grouplike_poly(pres: Presentation, form: MultilinearForm,
                    jvec: tuple[int, ...], swap: bool) -> NCPoly:
    terms: dict[Word, Fraction] = {}
    scale = 1 / form.coeff(jvec)
    for ivec, val in form.entries.items():
        pairs = zip(jvec, ivec) if swap else zip(ivec, jvec)
        word = pres.alphabet.word([_sym("z", r, c) for r, c in pairs])
        terms[word] = terms.get(word, Fraction(0)) + scale * val
    return NCPoly(pres.alphabet, terms)


def grouplikes_OM(pres: Presentation, max_len: Optional[int] = None,
                  budget: Optional[int] = 200_000
                  ) -> tuple[NCPoly, NCPoly, VerificationReport]:
    """The two grouplike elements of the bialgebra, with a bounded-search
    certificate that the column choice does not matter."""
    if pres.kind != OM:
        raise PresentationError("grouplikes live in the om presentation")
    e, f = pres.e, pres.f
    if e is None or f is None or e.is_zero() or f.is_zero():
        raise DegenerateFormError("zero form has no grouplike")
    bound = max_len if max_len is not None else 2 * pres.m
    prover = Prover(pres, bound, budget)
    report = VerificationReport()
    g1 = _grouplike_poly(pres, e, e.support()[0], swap=False)
    g2 = _grouplike_poly(pres, f, f.support()[0], swap=True)
    for label, form, swap in (("e", e, False), ("f", f, True)):
        support = form.support()
        if len(support) < 2:
            report.add(CheckResult(
                f"grouplike_{label}_choice", PROVED,
                detail="single column choice; independence trivial"))
            continue
        first = _grouplike_poly(pres, form, support[0], swap)
        second = _grouplike_poly(pres, form, support[1], swap)
        prover.check(report, f"grouplike_{label}_choice", first - second,
                     [(1, None), (2, None), (prover.shell_cap(), None)])
    return g1, g2, report

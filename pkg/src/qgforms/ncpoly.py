"""Free-algebra arithmetic over Q and bounded-degree ideal membership.

Membership in a two-sided ideal is decided inside the truncated span of
products ``w1 * relation * w2`` whose fully expanded words have length at
most ``max_len``.  A hit is returned as an explicit
:class:`MembershipCertificate` that re-expands to the queried polynomial,
so soundness never depends on the search internals; a miss only means "not
found within the bound".

The search itself runs in two layers:

* certificate-tracked top reduction, rewriting occurrences of relation
  leading words (degree-lexicographic order induced by the alphabet) inside
  the query's words -- cheap and handles most of the mass;
* an incremental sparse echelon of the bounded products, grown shell by
  shell in ``len(w1) + len(w2)`` and filtered by every grading that makes
  the relation set homogeneous, probed after each shell.

Exhausting all shells makes the answer definitive for the truncated span,
which is what the brute-force oracle in the tests cross-checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg

Word = tuple[int, ...]
EMPTY: Word = ()


class AlgebraError(ValueError):
    """Incompatible alphabets, malformed words, or bad bounds."""


class Alphabet:
    """Ordered generator names; the order induces the deglex word order."""

    __slots__ = ("symbols", "index")

    def __init__(self, symbols: Iterable[str]):
        self.symbols = tuple(symbols)
        if len(set(self.symbols)) != len(self.symbols):
            raise AlgebraError("generator names must be unique")
        if not all(isinstance(s, str) and s for s in self.symbols):
            raise AlgebraError("generator names must be nonempty strings")
        self.index = {s: k for k, s in enumerate(self.symbols)}

    def __len__(self) -> int:
        return len(self.symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.symbols)!r})"

    def word(self, names: Iterable[str]) -> Word:
        return tuple(self.index[n] for n in names)

    def names(self, word: Word) -> tuple[str, ...]:
        return tuple(self.symbols[i] for i in word)


def deglex_key(word: Word):
    return (len(word), word)


class NCPoly:
    """Rational-linear combination of words over a fixed alphabet."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet,
                 terms: Mapping[Word, Fraction] | Iterable[tuple[Word, Fraction]] = ()):
        self.alphabet = alphabet
        items = terms.items() if isinstance(terms, Mapping) else terms
        store: dict[Word, Fraction] = {}
        nsym = len(alphabet)
        for word, coeff in items:
            word = tuple(word)
            if any(not (0 <= x < nsym) for x in word):
                raise AlgebraError(f"word {word} not over the alphabet")
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            acc = store.get(word, Fraction(0)) + coeff
            if acc:
                store[word] = acc
            else:
                store.pop(word, None)
        self.terms = store

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, alphabet: Alphabet) -> "NCPoly":
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet: Alphabet) -> "NCPoly":
        return cls(alphabet, {EMPTY: Fraction(1)})

    @classmethod
    def monomial(cls, alphabet: Alphabet, word: Word,
                 coeff: Fraction = Fraction(1)) -> "NCPoly":
        return cls(alphabet, {tuple(word): Fraction(coeff)})

    @classmethod
    def generator(cls, alphabet: Alphabet, name: str) -> "NCPoly":
        return cls(alphabet, {(alphabet.index[name],): Fraction(1)})

    # -- predicates / views ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: deglex_key(kv[0]))

    def max_word_len(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def lead(self) -> tuple[Word, Fraction]:
        if not self.terms:
            raise AlgebraError("zero polynomial has no leading word")
        w = max(self.terms, key=deglex_key)
        return w, self.terms[w]

    def __eq__(self, other) -> bool:
        return (isinstance(other, NCPoly)
                and self.alphabet == other.alphabet
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, tuple(self.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for word, coeff in self.items():
            mono = "*".join(self.alphabet.names(word)) if word else "1"
            bits.append(f"({coeff})*{mono}")
        return " + ".join(bits)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "NCPoly"):
        if self.alphabet != other.alphabet:
            raise AlgebraError("alphabet mismatch")

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w, Fraction(0)) + c
            if acc:
                out[w] = acc
            else:
                out.pop(w, None)
        return NCPoly._raw(self.alphabet, out)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> "NCPoly":
        return self.scale(Fraction(-1))

    def scale(self, c) -> "NCPoly":
        c = Fraction(c)
        if c == 0:
            return NCPoly(self.alphabet)
        return NCPoly._raw(self.alphabet,
                           {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        out: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                acc = out.get(w, Fraction(0)) + c1 * c2
                if acc:
                    out[w] = acc
                else:
                    out.pop(w, None)
        return NCPoly._raw(self.alphabet, out)

    @classmethod
    def _raw(cls, alphabet: Alphabet, terms: dict[Word, Fraction]) -> "NCPoly":
        p = cls.__new__(cls)
        p.alphabet = alphabet
        p.terms = terms
        return p

    # -- substitution -------------------------------------------------------
    def eval_scalars(self, values: Sequence[Fraction]) -> Fraction:
        """Substitute a scalar for every generator (multiplicatively)."""
        total = Fraction(0)
        for word, coeff in self.terms.items():
            prod = coeff
            for letter in word:
                prod *= values[letter]
                if prod == 0:
                    break
            total += prod
        return total

    def map_words(self, target: Alphabet, images: Sequence["NCPoly"],
                  reverse: bool = False) -> "NCPoly":
        """Extend a generator substitution multiplicatively.

        With ``reverse=True`` the extension is an antihomomorphism:
        letters are mapped in reversed order (used for antipode images).
        """
        out = NCPoly(target)
        for word, coeff in self.terms.items():
            prod = NCPoly.one(target).scale(coeff)
            letters = reversed(word) if reverse else word
            for letter in letters:
                prod = prod * images[letter]
                if prod.is_zero():
                    break
            out = out + prod
        return out


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertSummand:
    coeff: Fraction
    left: Word
    relation: int
    right: Word


@dataclass(frozen=True)
class MembershipCertificate:
    """Explicit expression sum_i c_i * left_i * relation_i * right_i."""

    summands: tuple[CertSummand, ...]

    def depth(self, relations: Sequence[NCPoly]) -> int:
        return max(
            (len(s.left) + relations[s.relation].max_word_len() + len(s.right)
             for s in self.summands),
            default=0,
        )

    def merged(self) -> "MembershipCertificate":
        acc: dict[tuple[Word, int, Word], Fraction] = {}
        for s in self.summands:
            key = (s.left, s.relation, s.right)
            acc[key] = acc.get(key, Fraction(0)) + s.coeff
        out = tuple(
            CertSummand(c, l, r, rt)
            for (l, r, rt), c in sorted(acc.items()) if c != 0
        )
        return MembershipCertificate(out)


def expand_certificate(cert: MembershipCertificate,
                       relations: Sequence[NCPoly],
                       alphabet: Alphabet) -> NCPoly:
    total = NCPoly(alphabet)
    for s in cert.summands:
        if not 0 <= s.relation < len(relations):
            raise AlgebraError(f"certificate relation index {s.relation} out of range")
        rel = relations[s.relation]
        contrib: dict[Word, Fraction] = {}
        for w, c in rel.terms.items():
            key = s.left + w + s.right
            contrib[key] = contrib.get(key, Fraction(0)) + s.coeff * c
        total = total + NCPoly(alphabet, contrib)
    return total


def verify_certificate(poly: NCPoly, relations: Sequence[NCPoly],
                       cert: MembershipCertificate) -> bool:
    """Re-expand and compare exactly."""
    try:
        return expand_certificate(cert, relations, poly.alphabet) == poly
    except AlgebraError:
        return False


# ---------------------------------------------------------------------------
# reduction and bounded search
# ---------------------------------------------------------------------------

def _find_factor(word: Word, factor: Word) -> Optional[int]:
    lf = len(factor)
    if lf == 0 or lf > len(word):
        return None
    for pos in range(len(word) - lf + 1):
        if word[pos:pos + lf] == factor:
            return pos
    return None


def top_reduce(poly: NCPoly, relations: Sequence[NCPoly]
               ) -> tuple[NCPoly, list[CertSummand]]:
    """Rewrite occurrences of relation leading words inside ``poly``.

    Returns the fully reduced remainder together with the certificate
    summands of what was subtracted; every summand expansion stays within
    the word lengths already present in ``poly``.
    """
    rules = []
    for k, rel in enumerate(relations):
        if rel.is_zero():
            continue
        lead, lc = rel.lead()
        if len(lead) == 0:
            continue  # constant relation: reduction by it never terminates
        rules.append((k, lead, lc))
    rules.sort(key=lambda t: (-len(t[1]), t[0]))
    used: list[CertSummand] = []
    vec = dict(poly.terms)
    while True:
        target = None
        for w in sorted(vec, key=deglex_key, reverse=True):
            for k, lead, lc in rules:
                pos = _find_factor(w, lead)
                if pos is not None:
                    target = (w, k, lead, lc, pos)
                    break
            if target:
                break
        if target is None:
            break
        w, k, lead, lc, pos = target
        c = vec[w]
        left, right = w[:pos], w[pos + len(lead):]
        factor = c / lc
        used.append(CertSummand(factor, left, k, right))
        for rw, rc in relations[k].terms.items():
            key = left + rw + right
            acc = vec.get(key, Fraction(0)) - factor * rc
            if acc:
                vec[key] = acc
            else:
                vec.pop(key, None)
    return NCPoly._raw(poly.alphabet, vec), used


def detect_gradings(alphabet: Alphabet, relations: Sequence[NCPoly]) -> list[tuple[Fraction, ...]]:
    """Basis of symbol gradings under which every relation is homogeneous."""
    nsym = len(alphabet)
    rows = []
    for rel in relations:
        words = list(rel.terms)
        if len(words) < 2:
            continue
        ref = words[0]
        refcount = [ref.count(i) for i in range(nsym)]
        for w in words[1:]:
            rows.append([Fraction(w.count(i) - refcount[i]) for i in range(nsym)])
    if not rows:
        return [tuple(Fraction(1) for _ in range(nsym))]
    return linalg.nullspace(rows, nsym)


def _grade(word: Word, gradings: Sequence[tuple[Fraction, ...]]) -> tuple:
    return tuple(sum((g[i] for i in word), Fraction(0)) for g in gradings)


class _Row:
    __slots__ = ("vec", "combo")

    def __init__(self, vec: dict[Word, Fraction], combo: dict[int, Fraction]):
        self.vec = vec
        self.combo = combo


class IdealSearcher:
    """Incremental bounded-span searcher shared across many probes.

    Generators ``w1 * rel * w2`` are inserted shell by shell in
    ``len(w1) + len(w2)``, restricted to the grades of the probed targets,
    and echelonized with full certificate bookkeeping.
    """

    def __init__(self, alphabet: Alphabet, relations: Sequence[NCPoly],
                 max_len: int, budget: Optional[int] = None,
                 use_grading: bool = True):
        if max_len < 2:
            raise AlgebraError("max_len must be at least 2")
        self.alphabet = alphabet
        self.relations = list(relations)
        self.max_len = max_len
        self.budget = budget
        self.generated = 0
        self.gens: list[tuple[Word, int, Word]] = []
        self.echelon: dict[Word, _Row] = {}
        self.gradings = detect_gradings(alphabet, relations) if use_grading else []
        self._active = [
            (k, rel.max_word_len(), _grade(rel.lead()[0], self.gradings))
            for k, rel in enumerate(self.relations) if not rel.is_zero()
        ]
        self._done: dict[tuple, int] = {}
        self._words_by_len: list[list[Word]] = [[EMPTY]]
        self._words_by_grade: list[dict[tuple, list[Word]]] = [
            {_grade(EMPTY, self.gradings): [EMPTY]}
        ]

    # -- word tables --------------------------------------------------------
    def _ensure_words(self, length: int):
        nsym = len(self.alphabet)
        while len(self._words_by_len) <= length:
            prev = self._words_by_len[-1]
            nxt = [w + (i,) for w in prev for i in range(nsym)]
            self._words_by_len.append(nxt)
            table: dict[tuple, list[Word]] = {}
            for w in nxt:
                table.setdefault(_grade(w, self.gradings), []).append(w)
            self._words_by_grade.append(table)

    # -- echelon ------------------------------------------------------------
    def _reduce(self, vec: dict[Word, Fraction]) -> tuple[dict[Word, Fraction], dict[int, Fraction]]:
        vec = dict(vec)
        combo: dict[int, Fraction] = {}
        while True:
            pivot_word = None
            for w in sorted(vec, key=deglex_key, reverse=True):
                if w in self.echelon:
                    pivot_word = w
                    break
            if pivot_word is None:
                return vec, combo
            c = vec[pivot_word]
            row = self.echelon[pivot_word]
            for w, v in row.vec.items():
                acc = vec.get(w, Fraction(0)) - c * v
                if acc:
                    vec[w] = acc
                else:
                    vec.pop(w, None)
            for g, v in row.combo.items():
                acc = combo.get(g, Fraction(0)) + c * v
                if acc:
                    combo[g] = acc
                else:
                    combo.pop(g, None)

    def _insert(self, left: Word, rel_idx: int, right: Word):
        rel = self.relations[rel_idx]
        vec: dict[Word, Fraction] = {}
        for w, c in rel.terms.items():
            key = left + w + right
            acc = vec.get(key, Fraction(0)) + c
            if acc:
                vec[key] = acc
            else:
                vec.pop(key, None)
        self.generated += 1
        gid = len(self.gens)
        self.gens.append((left, rel_idx, right))
        residual, combo = self._reduce(vec)
        if not residual:
            return
        lead = max(residual, key=deglex_key)
        lc = residual[lead]
        vec = {w: v / lc for w, v in residual.items()}
        comb = {g: -v / lc for g, v in combo.items()}
        comb[gid] = comb.get(gid, Fraction(0)) + 1 / lc
        self.echelon[lead] = _Row(vec, comb)

    def _ensure_shell(self, grade: tuple, level: int) -> bool:
        """Insert all generators of this grade with len(w1)+len(w2) <= level.

        Returns False when the generator budget ran out.
        """
        done = self._done.get(grade, -1)
        for s in range(done + 1, level + 1):
            self._ensure_words(s)
            for rel_idx, deg, rgrade in self._active:
                if s > self.max_len - deg:
                    continue
                need_total = tuple(a - b for a, b in zip(grade, rgrade))
                for a in range(s + 1):
                    b = s - a
                    for w1 in self._words_by_len[a]:
                        g1 = _grade(w1, self.gradings)
                        need = tuple(x - y for x, y in zip(need_total, g1))
                        for w2 in self._words_by_grade[b].get(need, ()):
                            if self.budget is not None and self.generated >= self.budget:
                                return False
                            self._insert(w1, rel_idx, w2)
            self._done[grade] = s
        return True

    def hint(self, left: Word, rel_idx: int, right: Word) -> bool:
        """Insert one product outside the shell schedule.

        Returns False (and inserts nothing) when the product would expand
        beyond the bound; certificates built on hints therefore always
        respect ``max_len``.
        """
        if not 0 <= rel_idx < len(self.relations):
            raise AlgebraError("hint relation index out of range")
        rel = self.relations[rel_idx]
        if rel.is_zero():
            return False
        if len(left) + rel.max_word_len() + len(right) > self.max_len:
            return False
        if self.budget is not None and self.generated >= self.budget:
            return False
        self._insert(tuple(left), rel_idx, tuple(right))
        return True

    def _target_grade(self, poly: NCPoly) -> Optional[tuple]:
        grades = {_grade(w, self.gradings) for w in poly.terms}
        if len(grades) == 1:
            return grades.pop()
        return None  # inhomogeneous target: cannot use the grade filter

    def probe(self, poly: NCPoly, max_shell: Optional[int] = None
              ) -> Optional[MembershipCertificate]:
        """Search for a certificate of ``poly`` within the bound."""
        if poly.is_zero():
            return MembershipCertificate(())
        if poly.max_word_len() > self.max_len:
            raise AlgebraError("bound smaller than the longest word of the query")
        reduced, pre = top_reduce(poly, self.relations)
        if reduced.is_zero():
            return MembershipCertificate(tuple(pre)).merged()
        grade = self._target_grade(reduced)
        if grade is None:
            # fall back to an ungraded search by probing every component grade
            parts: dict[tuple, dict[Word, Fraction]] = {}
            for w, c in reduced.terms.items():
                parts.setdefault(_grade(w, self.gradings), {})[w] = c
            summands: list[CertSummand] = list(pre)
            for g, vec in sorted(parts.items()):
                sub = self.probe(NCPoly._raw(self.alphabet, vec), max_shell)
                if sub is None:
                    return None
                summands.extend(sub.summands)
            cert = MembershipCertificate(tuple(summands)).merged()
            return cert
        top = self.max_len - min(deg for _, deg, _ in self._active) \
            if self._active else 0
        if max_shell is not None:
            top = min(top, max_shell)
        for level in range(0, top + 1):
            in_budget = self._ensure_shell(grade, level)
            residual, combo = self._reduce(dict(reduced.terms))
            if not residual:
                summands = list(pre)
                for gid, c in combo.items():
                    left, rel_idx, right = self.gens[gid]
                    summands.append(CertSummand(c, left, rel_idx, right))
                cert = MembershipCertificate(tuple(summands)).merged()
                return cert
            if not in_budget:
                break
        return None


def ideal_member(poly: NCPoly, relations: Sequence[NCPoly], max_len: int,
                 budget: Optional[int] = None) -> Optional[MembershipCertificate]:
    """Bounded two-sided ideal membership with a verifiable certificate.

    ``None`` means "no certificate within the truncated span", never a
    proof of non-membership.  Every returned certificate re-expands to
    ``poly`` exactly (checked before returning).
    """
    if max_len < poly.max_word_len():
        raise AlgebraError("bound smaller than the longest word of the query")
    searcher = IdealSearcher(poly.alphabet, relations, max_len, budget=budget)
    cert = searcher.probe(poly)
    if cert is not None and not verify_certificate(poly, relations, cert):
        raise AssertionError("internal error: search produced an invalid certificate")
    return cert


# ---------------------------------------------------------------------------
# coalgebra helpers
# ---------------------------------------------------------------------------

class TensorPoly:
    """Element of the tensor square, as a map (word, word) -> coefficient."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet,
                 terms: Mapping[tuple[Word, Word], Fraction] = ()):
        self.alphabet = alphabet
        items = terms.items() if isinstance(terms, Mapping) else terms
        store: dict[tuple[Word, Word], Fraction] = {}
        for key, c in items:
            c = Fraction(c)
            if c == 0:
                continue
            key = (tuple(key[0]), tuple(key[1]))
            acc = store.get(key, Fraction(0)) + c
            if acc:
                store[key] = acc
            else:
                store.pop(key, None)
        self.terms = store

    @classmethod
    def unit(cls, alphabet: Alphabet) -> "TensorPoly":
        return cls(alphabet, {(EMPTY, EMPTY): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, TensorPoly)
                and self.alphabet == other.alphabet
                and self.terms == other.terms)

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc = out.get(k, Fraction(0)) + c
            if acc:
                out[k] = acc
            else:
                out.pop(k, None)
        t = TensorPoly.__new__(TensorPoly)
        t.alphabet, t.terms = self.alphabet, out
        return t

    def scale(self, c) -> "TensorPoly":
        c = Fraction(c)
        t = TensorPoly.__new__(TensorPoly)
        t.alphabet = self.alphabet
        t.terms = {} if c == 0 else {k: c * v for k, v in self.terms.items()}
        return t

    def __mul__(self, other: "TensorPoly") -> "TensorPoly":
        out: dict[tuple[Word, Word], Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                acc = out.get(key, Fraction(0)) + c1 * c2
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        t = TensorPoly.__new__(TensorPoly)
        t.alphabet, t.terms = self.alphabet, out
        return t

    def items(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (deglex_key(kv[0][0]), deglex_key(kv[0][1])),
        )


Coproduct = Sequence[Sequence[tuple[Fraction, Word, Word]]]


def coproduct_extend(poly: NCPoly, delta: Coproduct) -> TensorPoly:
    """Multiplicative extension of a symbolwise coproduct to ``poly``.

    ``delta[k]`` lists the Sweedler terms ``(coeff, left word, right word)``
    of the image of generator ``k``.
    """
    out = TensorPoly(poly.alphabet)
    for word, coeff in poly.terms.items():
        prod = TensorPoly.unit(poly.alphabet).scale(coeff)
        for letter in word:
            if letter >= len(delta) or delta[letter] is None:
                raise AlgebraError(
                    f"coproduct undefined on generator "
                    f"{poly.alphabet.symbols[letter]!r}")
            step = TensorPoly(poly.alphabet,
                              {(l, r): c for c, l, r in delta[letter]})
            prod = prod * step
            if prod.is_zero():
                break
        out = out + prod
    return out


def _pair_echelon_insert(echelon: dict, vec: dict) -> bool:
    """Insert into a plain echelon over pair-words; True if rank grew."""
    def key(k):
        return (deglex_key(k[0]), deglex_key(k[1]))
    while True:
        pivot = None
        for k in sorted(vec, key=key, reverse=True):
            if k in echelon:
                pivot = k
                break
        if pivot is None:
            break
        c = vec[pivot]
        for k, v in echelon[pivot].items():
            acc = vec.get(k, Fraction(0)) - c * v
            if acc:
                vec[k] = acc
            else:
                vec.pop(k, None)
    if not vec:
        return False
    lead = max(vec, key=key)
    lc = vec[lead]
    echelon[lead] = {k: v / lc for k, v in vec.items()}
    return True


def biideal_check(relations: Sequence[NCPoly], delta: Coproduct,
                  epsilon: Sequence[Fraction], max_len: int,
                  alphabet: Alphabet) -> bool:
    """Truncated check that the relation ideal is a biideal.

    For every relation r this requires eps(r) == 0 exactly and
    Delta(r) in I (x) F + F (x) I inside the span of pairs whose combined
    word length stays within ``max_len``.  Intended for small instances:
    the pair space is quadratic in the word space.
    """
    for rel in relations:
        if rel.eval_scalars(list(epsilon)) != 0:
            return False
    searcher = IdealSearcher(alphabet, relations, max_len)
    searcher._ensure_words(max_len)
    # materialize the full truncated ideal slice (no grade filter)
    slice_polys: list[NCPoly] = []
    seen: set[Word] = set()
    for rel_idx, deg, _ in searcher._active:
        for s in range(0, max_len - deg + 1):
            for a in range(s + 1):
                for w1 in searcher._words_by_len[a]:
                    for w2 in searcher._words_by_len[s - a]:
                        searcher._insert(w1, rel_idx, w2)
    for lead, row in searcher.echelon.items():
        if lead not in seen:
            seen.add(lead)
            slice_polys.append(NCPoly._raw(alphabet, dict(row.vec)))
    echelon: dict = {}
    all_words = [w for ws in searcher._words_by_len for w in ws]
    for b in slice_polys:
        bdeg = b.max_word_len()
        for w in all_words:
            if len(w) + bdeg > max_len:
                continue
            _pair_echelon_insert(
                echelon, {(bw, w): c for bw, c in b.terms.items()})
            _pair_echelon_insert(
                echelon, {(w, bw): c for bw, c in b.terms.items()})
    for rel in relations:
        image = coproduct_extend(rel, delta)
        vec = dict(image.terms)
        if _pair_echelon_insert(echelon, vec):
            return False
    return True

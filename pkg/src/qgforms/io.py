"""Canonical JSON serialization for every artifact the CLI exchanges.

All rationals are canonical strings ("p/q" or "p"); entry lists are sorted
(index tuples lexicographically, words by the degree-lexicographic order of
their name sequences), so emitting and re-parsing a value is the identity
and files diff cleanly.  Unknown keys are rejected everywhere.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .forms import MultilinearForm
from .hopf import CheckResult, Presentation, VerificationReport
from .ncpoly import (Alphabet, CertSummand, MembershipCertificate, NCPoly)
from .spalg import RelationSpace


class SchemaError(ValueError):
    """Malformed JSON artifact."""


def _require_keys(obj: dict, required: set[str], optional: set[str] = frozenset(),
                  what: str = "object"):
    if not isinstance(obj, dict):
        raise SchemaError(f"{what} must be a JSON object")
    keys = set(obj)
    missing = required - keys
    unknown = keys - required - set(optional)
    if missing:
        raise SchemaError(f"{what} missing keys {sorted(missing)}")
    if unknown:
        raise SchemaError(f"{what} has unknown keys {sorted(unknown)}")


def rational_to_str(x: Fraction) -> str:
    return str(Fraction(x))


def rational_from_str(s: Any) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SchemaError(f"rational must be a canonical string, got {s!r}")
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {s!r}") from exc


# -- forms -------------------------------------------------------------------

def form_to_dict(form: MultilinearForm) -> dict:
    return {
        "dim": form.dim,
        "arity": form.arity,
        "entries": [
            {"idx": list(idx), "val": rational_to_str(val)}
            for idx, val in form.items()
        ],
    }


def form_from_dict(obj: dict) -> MultilinearForm:
    _require_keys(obj, {"dim", "arity", "entries"}, what="form")
    if not isinstance(obj["entries"], list):
        raise SchemaError("form entries must be a list")
    entries = []
    for ent in obj["entries"]:
        _require_keys(ent, {"idx", "val"}, what="form entry")
        entries.append((tuple(ent["idx"]), rational_from_str(ent["val"])))
    try:
        return MultilinearForm(obj["dim"], obj["arity"], entries)
    except (ValueError, TypeError) as exc:
        raise SchemaError(str(exc)) from exc


# -- relation spaces ----------------------------------------------------------

def relspace_to_dict(rs: RelationSpace) -> dict:
    return {
        "dim": rs.dim,
        "degree": rs.degree,
        "basis": [form_to_dict(t) for t in rs.basis],
    }


def relspace_from_dict(obj: dict) -> RelationSpace:
    _require_keys(obj, {"dim", "degree", "basis"}, what="relation space")
    return RelationSpace(obj["dim"], obj["degree"],
                         tuple(form_from_dict(t) for t in obj["basis"]))


# -- free-algebra elements -----------------------------------------------------

def ncpoly_terms_to_list(poly: NCPoly) -> list:
    return [
        {"word": list(poly.alphabet.names(word)), "val": rational_to_str(val)}
        for word, val in poly.items()
    ]


def ncpoly_to_dict(poly: NCPoly) -> dict:
    return {"alphabet": list(poly.alphabet.symbols),
            "terms": ncpoly_terms_to_list(poly)}


def ncpoly_terms_from_list(alphabet: Alphabet, items: Any) -> NCPoly:
    if not isinstance(items, list):
        raise SchemaError("terms must be a list")
    terms = []
    for ent in items:
        _require_keys(ent, {"word", "val"}, what="term")
        try:
            word = alphabet.word(ent["word"])
        except KeyError as exc:
            raise SchemaError(f"unknown generator {exc}") from exc
        terms.append((word, rational_from_str(ent["val"])))
    return NCPoly(alphabet, terms)


def ncpoly_from_dict(obj: dict) -> NCPoly:
    _require_keys(obj, {"alphabet", "terms"}, what="polynomial")
    return ncpoly_terms_from_list(Alphabet(obj["alphabet"]), obj["terms"])


# -- certificates ---------------------------------------------------------------

def certificate_to_dict(cert: MembershipCertificate, alphabet: Alphabet) -> dict:
    return {"summands": [
        {
            "coeff": rational_to_str(s.coeff),
            "left": list(alphabet.names(s.left)),
            "relation": s.relation,
            "right": list(alphabet.names(s.right)),
        }
        for s in cert.summands
    ]}


def certificate_from_dict(obj: dict, alphabet: Alphabet) -> MembershipCertificate:
    _require_keys(obj, {"summands"}, what="certificate")
    summands = []
    for ent in obj["summands"]:
        _require_keys(ent, {"coeff", "left", "relation", "right"},
                      what="certificate summand")
        summands.append(CertSummand(
            rational_from_str(ent["coeff"]),
            alphabet.word(ent["left"]),
            int(ent["relation"]),
            alphabet.word(ent["right"]),
        ))
    return MembershipCertificate(tuple(summands))


# -- presentations ----------------------------------------------------------------

def presentation_to_dict(pres: Presentation) -> dict:
    alphabet = pres.alphabet
    out = {
        "kind": pres.kind,
        "n": pres.n,
        "m": pres.m,
        "alphabet": list(alphabet.symbols),
        "relations": [ncpoly_terms_to_list(rel) for rel in pres.relations],
        "coproduct": {
            s: [{"val": rational_to_str(c), "left": list(l), "right": list(r)}
                for c, l, r in pres.coproduct[s]]
            for s in alphabet.symbols
        },
        "counit": {s: rational_to_str(pres.counit[s]) for s in alphabet.symbols},
        "antipode": None,
        "forms": {},
    }
    if pres.antipode is not None:
        out["antipode"] = {s: ncpoly_terms_to_list(pres.antipode[s])
                           for s in alphabet.symbols}
    if pres.antipode_alt is not None:
        out["antipode_alt"] = {s: ncpoly_terms_to_list(pres.antipode_alt[s])
                               for s in alphabet.symbols}
    if pres.e is not None:
        out["forms"]["e"] = form_to_dict(pres.e)
    if pres.f is not None:
        out["forms"]["f"] = form_to_dict(pres.f)
    if pres.N is not None:
        out["N"] = pres.N
    return out


def presentation_from_dict(obj: dict, validate: bool = True) -> Presentation:
    _require_keys(obj, {"kind", "n", "m", "alphabet", "relations",
                        "coproduct", "counit", "antipode", "forms"},
                  optional={"antipode_alt", "N"}, what="presentation")
    alphabet = Alphabet(obj["alphabet"])
    relations = [ncpoly_terms_from_list(alphabet, items)
                 for items in obj["relations"]]
    coproduct = {}
    for s, terms in obj["coproduct"].items():
        if s not in alphabet.index:
            raise SchemaError(f"coproduct key {s!r} not a generator")
        parsed = []
        for ent in terms:
            _require_keys(ent, {"val", "left", "right"}, what="coproduct term")
            parsed.append((rational_from_str(ent["val"]),
                           tuple(ent["left"]), tuple(ent["right"])))
        coproduct[s] = parsed
    counit = {s: rational_from_str(v) for s, v in obj["counit"].items()}
    antipode = None
    if obj["antipode"] is not None:
        antipode = {s: ncpoly_terms_from_list(alphabet, items)
                    for s, items in obj["antipode"].items()}
    antipode_alt = None
    if obj.get("antipode_alt") is not None:
        antipode_alt = {s: ncpoly_terms_from_list(alphabet, items)
                        for s, items in obj["antipode_alt"].items()}
    forms = obj["forms"]
    if not isinstance(forms, dict) or set(forms) - {"e", "f"}:
        raise SchemaError("forms block may only hold 'e' and 'f'")
    e = form_from_dict(forms["e"]) if "e" in forms else None
    f = form_from_dict(forms["f"]) if "f" in forms else None
    return Presentation(obj["kind"], obj["n"], obj["m"], alphabet, relations,
                        coproduct, counit, antipode=antipode,
                        antipode_alt=antipode_alt, e=e, f=f,
                        N=obj.get("N"), validate=validate)


# -- reports -------------------------------------------------------------------

def report_to_dict(report: VerificationReport, alphabet: Alphabet) -> dict:
    return {"checks": [
        {
            "name": c.name,
            "status": c.status,
            "certificates": [certificate_to_dict(cert, alphabet)
                             for cert in c.certificates],
            "detail": c.detail,
            "bound_used": c.bound_used,
            "elapsed_ms": c.elapsed_ms,
            "target": ncpoly_terms_to_list(c.target)
            if c.target is not None else None,
        }
        for c in report.checks
    ]}


def report_from_dict(obj: dict, alphabet: Alphabet) -> VerificationReport:
    _require_keys(obj, {"checks"}, what="report")
    report = VerificationReport()
    for ent in obj["checks"]:
        _require_keys(ent, {"name", "status", "certificates", "detail",
                            "bound_used", "elapsed_ms", "target"}, what="check")
        target = None
        if ent["target"] is not None:
            target = ncpoly_terms_from_list(alphabet, ent["target"])
        report.add(CheckResult(
            ent["name"], ent["status"],
            tuple(certificate_from_dict(c, alphabet)
                  for c in ent["certificates"]),
            ent["detail"], int(ent["bound_used"]), int(ent["elapsed_ms"]),
            target))
    return report


# -- matrices and top-level helpers ---------------------------------------------

def matrix_to_dict(mat) -> dict:
    return {"dim": len(mat),
            "entries": [[rational_to_str(x) for x in row] for row in mat]}


def matrix_from_dict(obj: dict):
    _require_keys(obj, {"dim", "entries"}, what="matrix")
    rows = [[rational_from_str(x) for x in row] for row in obj["entries"]]
    if len(rows) != obj["dim"] or any(len(r) != obj["dim"] for r in rows):
        raise SchemaError("matrix shape disagrees with its dim")
    return tuple(tuple(r) for r in rows)


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaError("top-level JSON value must be an object")
    return obj

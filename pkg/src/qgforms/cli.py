"""Batch front-end.

Artifacts go to stdout (or ``--out``); diagnostics go to stderr.  Exit
codes are part of the contract: 0 success / all proved, 1 I/O or parse
failure, 2 violated precondition (degenerate form, bad parameters), 3 any
refuted check, 4 any inconclusive check.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import catalog, hopf, io, spalg
from .forms import (FIRST, LAST, DegenerateFormError, FormError,
                    check_preregular, polar)
from .hopf import (INCONCLUSIVE, PROVED, REFUTED, CheckResult, Presentation,
                   PresentationError, VerificationReport)
from .ncpoly import AlgebraError, verify_certificate

EXIT_OK = 0
EXIT_IO = 1
EXIT_PRECONDITION = 2
EXIT_REFUTED = 3
EXIT_INCONCLUSIVE = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return io.loads(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    except io.SchemaError as exc:
        raise CliError(f"{path}: {exc}", EXIT_IO) from exc


def _emit(text: str, out: str | None):
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(f"cannot write {out}: {exc}", EXIT_IO) from exc
    else:
        sys.stdout.write(text)


def _load_form(path: str):
    try:
        return io.form_from_dict(_read_json(path))
    except io.SchemaError as exc:
        raise CliError(f"{path}: {exc}", EXIT_IO) from exc


def _params_map(pairs: list[str]) -> dict[str, Fraction]:
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise CliError(f"--param needs name=value, got {item!r}", EXIT_IO)
        name, _, value = item.partition("=")
        try:
            out[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"bad parameter value {item!r}", EXIT_IO) from exc
    return out


def _threads_cap() -> int:
    raw = os.environ.get("QGFORMS_THREADS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        raise CliError(f"QGFORMS_THREADS must be an integer, got {raw!r}",
                       EXIT_IO)
    if cap < 1:
        raise CliError("QGFORMS_THREADS must be positive", EXIT_IO)
    return cap


# -- commands -----------------------------------------------------------------

def cmd_catalog(args) -> int:
    params = _params_map(args.param)

    def need(*names):
        missing = [k for k in names if k not in params]
        if missing:
            raise CliError(f"catalog {args.name} needs --param "
                           + ", ".join(missing), EXIT_PRECONDITION)
        return [params[k] for k in names]

    try:
        if args.name == "signature":
            form = catalog.signature_form(args.n or 2)
        elif args.name == "ast":
            lam = need("lambda")[0]
            upper = {}
            for key, val in params.items():
                if key == "lambda":
                    continue
                if not key.startswith("p_"):
                    raise CliError(f"unknown ast parameter {key!r}",
                                   EXIT_PRECONDITION)
                _, i, j = key.split("_")
                upper[(int(i), int(j))] = val
            if args.n and not upper:
                upper = {(i, j): Fraction(1) for i in range(args.n)
                         for j in range(i + 1, args.n)}
            e_q, f_p = catalog.ast_forms(upper, lam)
            pair = {"e": io.form_to_dict(e_q), "f": io.form_to_dict(f_p)}
            _emit(io.dumps(pair), args.out)
            return EXIT_OK
        elif args.name == "takeuchi":
            p, q = need("p", "q")
            e_q, f_p = catalog.takeuchi_forms(p, q, args.n or 2)
            pair = {"e": io.form_to_dict(e_q), "f": io.form_to_dict(f_p)}
            _emit(io.dumps(pair), args.out)
            return EXIT_OK
        elif args.name == "sklyanin3":
            form = catalog.sklyanin3(*need("a", "b", "c"))
        elif args.name == "sklyanin4":
            form = catalog.sklyanin4(*need("alpha", "beta", "gamma"))
        elif args.name == "yangmills":
            n = args.n or 3
            g = [[params.get(f"g_{i}_{j}",
                             Fraction(1 if i == j else 0))
                  for j in range(n)] for i in range(n)]
            form = catalog.yang_mills(g)
        else:
            raise CliError(f"unknown catalog name {args.name!r}", EXIT_IO)
    except catalog.CatalogError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from exc
    _emit(io.dumps(io.form_to_dict(form)), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    form = _load_form(args.form)
    report = check_preregular(form)
    payload = {
        "nondegenerate_first_slot": report.nondegenerate_first_slot,
        "nondegenerate_last_slot": report.nondegenerate_last_slot,
        "twist": io.matrix_to_dict(report.twist.entries)
        if report.twist else None,
        "failure_witness": [io.rational_to_str(x) for x in report.failure_witness]
        if report.failure_witness else None,
        "preregular": report.preregular,
    }
    _emit(io.dumps(payload), args.out)
    return EXIT_OK if report.preregular else EXIT_PRECONDITION


def cmd_algebra(args) -> int:
    form = _load_form(args.form)
    try:
        rs = spalg.derive_relations(form, args.N)
    except FormError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from exc
    _emit(io.dumps(io.relspace_to_dict(rs)), args.out)
    return EXIT_OK


def cmd_polar(args) -> int:
    form = _load_form(args.form)
    slot = FIRST if args.slot == "first" else LAST
    try:
        companion = polar(form, slot)
    except DegenerateFormError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from exc
    _emit(io.dumps(io.form_to_dict(companion)), args.out)
    return EXIT_OK


def cmd_codet(args) -> int:
    form = _load_form(args.form)
    try:
        mat = io.matrix_from_dict(_read_json(args.matrix))
    except io.SchemaError as exc:
        raise CliError(f"{args.matrix}: {exc}", EXIT_IO) from exc
    try:
        value, independent = hopf.codeterminant_numeric(form, mat)
    except DegenerateFormError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from exc
    _emit(io.dumps({"value": io.rational_to_str(value),
                    "column_independent": independent}), args.out)
    return EXIT_OK


def cmd_hopf(args) -> int:
    e = _load_form(args.forms[0])
    f = _load_form(args.forms[1]) if len(args.forms) > 1 else None
    kind = args.kind
    try:
        if kind in ("he", "se"):
            pres = hopf.build_He(e)
            if kind == "se":
                pres = hopf.build_quotients(pres, "se")
        elif kind in ("hf", "sf"):
            pres = hopf.build_Hf(e if f is None else f)
            if kind == "sf":
                pres = hopf.build_quotients(pres, "sf")
        elif kind in ("hef", "sef", "gef"):
            if f is None:
                raise CliError("paired kinds need two form files", EXIT_PRECONDITION)
            pres = hopf.build_Hef(e, f)
            if kind != "hef":
                pres = hopf.build_quotients(pres, kind)
        elif kind == "om":
            if f is None:
                raise CliError("om needs two form files", EXIT_PRECONDITION)
            if args.N is None:
                raise CliError("om needs --N", EXIT_PRECONDITION)
            pres = hopf.build_OM(e, f, args.N)
        else:
            raise CliError(f"unknown kind {kind!r}", EXIT_IO)
    except (DegenerateFormError, FormError, PresentationError) as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from exc
    _emit(io.dumps(io.presentation_to_dict(pres)), args.out)
    return EXIT_OK


def _load_presentation(path: str) -> Presentation:
    try:
        return io.presentation_from_dict(_read_json(path), validate=False)
    except (io.SchemaError, AlgebraError, PresentationError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_IO) from exc


def _counit_report(pres: Presentation) -> VerificationReport:
    report = VerificationReport()
    for k in pres.counit_violations():
        report.add(CheckResult(f"counit[{k}]", REFUTED,
                               detail="counit does not kill this relation"))
    return report


def _exit_for(report: VerificationReport) -> int:
    if report.any_refuted:
        return EXIT_REFUTED
    if report.any_inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_verify(args) -> int:
    _threads_cap()
    pres = _load_presentation(args.presentation)
    report = _counit_report(pres)
    if args.recheck:
        return _recheck(args, pres)
    if not report.any_refuted:
        try:
            report.extend(_run_suites(args, pres))
        except (PresentationError, DegenerateFormError, AlgebraError) as exc:
            raise CliError(str(exc), EXIT_PRECONDITION) from exc
    payload = io.report_to_dict(report, pres.alphabet)
    _emit(io.dumps(payload), args.out)
    sys.stderr.write(report.summary() + "\n")
    return _exit_for(report)


def _run_suites(args, pres: Presentation) -> VerificationReport:
    suites = [args.suite]
    if args.suite == "all":
        if pres.kind in ("hef", "gef"):
            suites = ["inverse", "antipode", "central", "s2"]
        elif pres.kind in ("he", "hf"):
            suites = ["antipode", "s2"]
        elif pres.kind in ("se", "sf", "sef"):
            suites = ["antipode", "sovereign"]
        else:
            suites = ["antipode"]
    report = VerificationReport()
    for suite in suites:
        if suite == "antipode":
            report.extend(hopf.verify_antipode(pres, args.max_len))
        elif suite == "inverse":
            report.extend(hopf.verify_inverse_lemma(pres, args.max_len))
        elif suite == "central":
            report.extend(hopf.verify_central_codet(pres, args.max_len))
        elif suite == "s2":
            report.extend(hopf.verify_s2_twist(pres, args.max_len))
        elif suite == "sovereign":
            report.extend(hopf.sovereign_check(pres, max_len=args.max_len))
        elif suite == "pushout":
            if not args.he or not args.hf:
                raise CliError("pushout suite needs --he and --hf", EXIT_PRECONDITION)
            he = _load_presentation(args.he)
            hf = _load_presentation(args.hf)
            report.extend(hopf.verify_pushout_maps(he, hf, pres, args.max_len))
        elif suite == "equiv":
            if not args.other or not args.dictionary:
                raise CliError("equiv suite needs --other and --dictionary",
                               EXIT_PRECONDITION)
            other = _load_presentation(args.other)
            dic_obj = _read_json(args.dictionary)
            io_err = io.SchemaError
            try:
                images = {
                    sym: io.ncpoly_terms_from_list(other.alphabet, items)
                    for sym, items in dic_obj.items()
                }
            except io_err as exc:
                raise CliError(f"{args.dictionary}: {exc}", EXIT_IO) from exc
            report.extend(hopf.equivalence_check(pres, other, images,
                                                 args.max_len))
        else:
            raise CliError(f"unknown suite {suite!r}", EXIT_IO)
    return report


def _recheck(args, pres: Presentation) -> int:
    obj = _read_json(args.recheck)
    try:
        previous = io.report_from_dict(obj, pres.alphabet)
    except io.SchemaError as exc:
        raise CliError(f"{args.recheck}: {exc}", EXIT_IO) from exc
    report = VerificationReport()
    for check in previous.checks:
        if check.status != PROVED or not check.certificates:
            report.add(check)
            continue
        if check.target is None:
            report.add(CheckResult(check.name, INCONCLUSIVE,
                                   detail="recheck: no embedded target"))
            continue
        ok = all(
            verify_certificate(check.target, pres.relations, cert)
            for cert in check.certificates
        )
        status = PROVED if ok else REFUTED
        report.add(CheckResult(check.name, status, check.certificates,
                               detail="recheck", bound_used=check.bound_used,
                               target=check.target))
    payload = io.report_to_dict(report, pres.alphabet)
    _emit(io.dumps(payload), args.out)
    sys.stderr.write(report.summary() + "\n")
    return _exit_for(report)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        """Usage problems are I/O-class failures (exit 1), not preconditions."""
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_IO)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write the artifact here instead of stdout")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized property checks")
    parser = _Parser(
        prog="qgforms",
        parents=[common],
        description="Exact universal quantum groups of preregular form pairs")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("catalog", help="emit a catalog form", parents=[common])
    p.add_argument("name", choices=["signature", "ast", "takeuchi",
                                    "sklyanin3", "sklyanin4", "yangmills"])
    p.add_argument("--n", type=int, help="dimension for the families that need it")
    p.add_argument("--param", action="append", default=[],
                   help="name=value, repeatable (values are rationals)")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("check", help="preregularity report of a form", parents=[common])
    p.add_argument("form")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("algebra", help="relation space of the superpotential algebra", parents=[common])
    p.add_argument("form")
    p.add_argument("--N", type=int, required=True, help="relation degree")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("polar", help="canonical polar companion form", parents=[common])
    p.add_argument("form")
    p.add_argument("--slot", choices=["first", "last"], default="first")
    p.set_defaults(func=cmd_polar)

    p = sub.add_parser("codet", help="numeric codeterminant of a matrix", parents=[common])
    p.add_argument("form")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_codet)

    p = sub.add_parser("hopf", help="build a presentation", parents=[common])
    p.add_argument("forms", nargs="+",
                   help="form file(s): one for he/hf/se/sf, two for the pairs")
    p.add_argument("--kind", required=True,
                   choices=["he", "hf", "hef", "se", "sf", "sef", "gef", "om"])
    p.add_argument("--N", type=int, help="relation degree (om only)")
    p.set_defaults(func=cmd_hopf)

    p = sub.add_parser("verify", help="run a verification suite", parents=[common])
    p.add_argument("presentation")
    p.add_argument("--suite", required=True,
                   choices=["antipode", "inverse", "central", "s2",
                            "pushout", "sovereign", "equiv", "all"])
    p.add_argument("--max-len", dest="max_len", type=int, default=None)
    p.add_argument("--he", help="he presentation (pushout suite)")
    p.add_argument("--hf", help="hf presentation (pushout suite)")
    p.add_argument("--other", help="target presentation (equiv suite)")
    p.add_argument("--dictionary", help="generator dictionary JSON (equiv suite)")
    p.add_argument("--recheck", help="re-validate certificates of a saved report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except BrokenPipeError:
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: check, separability (solve | verify), maschke, radical,
tensor, category (search | reflect | tables).  Exit codes: 0 success,
2 mathematical negative (infeasible, not semisimple, no structure),
3 hypothesis or budget failure, 4 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io as fio
from .rings import (
    RingMorphism,
    RingMismatch,
    AssociativityViolation,
    NotAGroup,
    is_unital,
    is_left_s_unital_ring,
    is_unitary_ring,
    is_locally_unital,
)
from .modules import (
    RightModule,
    ActionViolation,
    is_unitary_module,
    is_s_unital_module,
    is_firm_module,
)
from .tensor import balanced_tensor
from .separability import (
    solve_separability,
    verify_certificate,
    maschke_certificate,
    NoLocalUnit,
    NotInvertible,
)
from .semisimple import (
    radical,
    is_left_semisimple_ring,
    maschke_pipeline,
    NotSUnital,
    UnsupportedCharacteristic,
)
from .category import (
    FiniteFunctor,
    SearchBudgetExceeded,
    DEFAULT_BUDGET,
    REFLECTION_PROPERTIES,
    find_separability_structure,
    check_reflection,
    check_SF2_iff_SF3,
)

EXIT_OK = 0
EXIT_NEGATIVE = 2
EXIT_HYPOTHESIS = 3
EXIT_INPUT = 4


def _load_workspace(paths) -> fio.Workspace:
    ws = fio.Workspace()
    for p in paths:
        try:
            ws.load_file(p)
        except OSError as exc:
            raise fio.InputError(str(exc)) from exc
    return ws


def _emit(report: dict, as_json: bool):
    if as_json:
        sys.stdout.write(fio.dump_canonical(report))
        return
    for key in report:
        val = report[key]
        if isinstance(val, dict):
            print("%s:" % key)
            for k in sorted(val, key=str):
                print("  %-24s %s" % (k, val[k]))
        else:
            print("%-26s %s" % (key + ":", val))


def _fmt_bool(b):
    if b is None:
        return "n/a"
    return "yes" if b else "no"


# -- check -------------------------------------------------------------------


def cmd_check(args) -> int:
    ws = _load_workspace(args.files)
    targets = args.target or sorted(ws.rings) + sorted(ws.modules)
    report = {}
    for label in sorted(targets):
        if label in ws.rings:
            A = ws.rings[label]
            row = {
                "kind": "ring",
                "unital": is_unital(A) is not None,
                "s-unital": is_left_s_unital_ring(A),
                "unitary": is_unitary_ring(A),
            }
            fam = ws.families.get(label)
            if fam is not None:
                basis = [A.basis_element(i) for i in range(A.dim)]
                row["locally-unital"] = \
                    is_locally_unital(A, fam, basis) is not None
        elif label in ws.modules:
            M = ws.modules[label]
            row = {
                "kind": "module",
                "unitary": is_unitary_module(M),
                "s-unital": is_s_unital_module(M),
                "firm": is_firm_module(M),
            }
        else:
            raise fio.InputError("unknown label %r" % label)
        report[label] = row
    _emit(report, args.json)
    code = EXIT_OK
    for req in args.require or []:
        try:
            label, pred = req.split(":")
        except ValueError:
            raise fio.InputError(
                "--require takes LABEL:PREDICATE, got %r" % req)
        if label not in report or pred not in report[label]:
            raise fio.InputError("nothing checked for %r" % req)
        if not report[label][pred]:
            code = EXIT_NEGATIVE
    return code


# -- separability --------------------------------------------------------------


def _morphism_from_file(path: str, base, ring) -> RingMorphism:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise fio.InputError(
                "%s: invalid JSON at line %d column %d: %s"
                % (path, exc.lineno, exc.colno, exc.msg)) from exc
    rows = data["matrix"] if isinstance(data, dict) else data
    mat = fio.mat_from_json(ring.field, rows, (ring.dim, base.dim))
    try:
        return RingMorphism(base, ring, mat)
    except RingMismatch as exc:
        raise fio.InputError("morphism file: %s" % exc) from exc


def cmd_separability(args) -> int:
    ws = _load_workspace(args.files)
    A = ws.resolve_ring(args.ring)
    B = ws.resolve_ring(args.base)
    if args.action == "solve":
        f = _morphism_from_file(args.morphism, B, A)
        cert, evidence = solve_separability(f)
        if cert is None:
            report = {
                "separable": False,
                "constraint_rank": evidence.constraint_rank,
                "augmented_rank": evidence.augmented_rank,
                "unknowns": evidence.unknowns,
            }
            _emit(report, args.json)
            return EXIT_NEGATIVE
        obj = fio.certificate_to_json(cert, args.ring, args.base)
        if args.output:
            fio.write_canonical(args.output, obj)
            _emit({"separable": True, "certificate": args.output}, args.json)
        else:
            sys.stdout.write(fio.dump_canonical(obj))
        return EXIT_OK
    # verify
    with open(args.certificate, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise fio.InputError(
                "%s: invalid JSON at line %d column %d: %s"
                % (args.certificate, exc.lineno, exc.colno, exc.msg)) from exc
    cert = fio.certificate_from_json(obj, A, B)
    ok, reason = verify_certificate(cert)
    _emit({"verified": ok, "detail": reason}, args.json)
    return EXIT_OK if ok else EXIT_NEGATIVE


# -- maschke -------------------------------------------------------------------


def cmd_maschke(args) -> int:
    ws = _load_workspace(args.files)
    B = ws.resolve_ring(args.base)
    fam = ws.families.get(args.base)
    if fam is None:
        raise fio.InputError(
            "ring %r carries no idempotent family" % args.base)
    table = ws.resolve_group(args.group)
    report = maschke_pipeline(B, fam, table)
    checks = report["checks"]
    out = {
        "base": args.base,
        "group": args.group,
        "checks": {k: _fmt_bool(v) if isinstance(v, (bool, type(None)))
                   else v for k, v in checks.items()},
        "semisimple": _fmt_bool(report.get("semisimple")),
        "prediction_applies": _fmt_bool(report["prediction_applies"]),
        "matches_prediction": _fmt_bool(report.get("matches_prediction")),
    }
    if args.certificate and report.get("certificate") is not None:
        cert = report["certificate"]
        fio.write_canonical(
            args.certificate,
            fio.certificate_to_json(cert, report["ring"].label, args.base))
        out["certificate"] = args.certificate
    _emit(out, args.json)
    failed = [k for k, v in checks.items() if v is False]
    if failed:
        return EXIT_HYPOTHESIS
    if report.get("matches_prediction") is False:
        return EXIT_NEGATIVE
    return EXIT_OK


# -- radical -------------------------------------------------------------------


def cmd_radical(args) -> int:
    ws = _load_workspace(args.files)
    A = ws.resolve_ring(args.ring)
    rep = radical(A)
    semisimple = is_left_semisimple_ring(A)
    report = {
        "ring": args.ring,
        "radical_dim": rep.radical.dim,
        "radical_basis": [fio.vec_to_json(A.field, v)
                          for v in rep.radical.basis],
        "method": rep.method,
        "left_semisimple": semisimple,
    }
    _emit(report, args.json)
    return EXIT_OK if semisimple else EXIT_NEGATIVE


# -- tensor --------------------------------------------------------------------


def cmd_tensor(args) -> int:
    ws = _load_workspace(args.files)
    B = ws.resolve_ring(args.ring)
    Xl = ws.resolve_module(args.left)
    Y = ws.resolve_module(args.right)
    # the left factor is read as a right module (same matrices, opposite
    # composition law, revalidated here)
    try:
        X = RightModule(B, Xl.actions, Xl.label)
    except ActionViolation as exc:
        raise fio.InputError(
            "module %r is not a right module: %s" % (args.left, exc)) from exc
    T = balanced_tensor(B, X, Y)
    report = {
        "ring": args.ring,
        "left": args.left,
        "right": args.right,
        "ambient_dim": Xl.dim * Y.dim,
        "dim": T.dim,
        "coset_section": fio.mat_to_json(B.field, T.quotient.section),
    }
    _emit(report, args.json)
    return EXIT_OK


# -- category ------------------------------------------------------------------


def _category_functor(args, ws):
    if args.functor:
        with open(args.functor, "r", encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise fio.InputError(
                    "%s: invalid JSON at line %d column %d: %s"
                    % (args.functor, exc.lineno, exc.colno, exc.msg)) from exc
        return fio.functor_from_json(obj, ws)
    cat = ws.resolve_category(args.category)
    return FiniteFunctor.identity(cat)


def cmd_category(args) -> int:
    ws = _load_workspace(args.files)
    if args.action == "tables":
        cat = ws.resolve_category(args.category)
        report = {}
        for m in range(cat.n_objects):
            subs = cat.subobject_table(m)
            quots = cat.quotient_table(m)
            report[cat.objects[m]] = {
                "subobject_classes": len(subs),
                "subobjects": [[cat.names[f] for f in cls] for cls in subs],
                "quotient_classes": len(quots),
                "quotients": [[cat.names[f] for f in cls] for cls in quots],
                "subobject_simple": cat.is_subobject_simple(m),
                "quotient_simple": cat.is_quotient_simple(m),
            }
        _emit(report, args.json)
        return EXIT_OK
    F = _category_functor(args, ws)
    S = find_separability_structure(F, args.budget)
    if args.action == "search":
        if S is None:
            _emit({"structure": "absent"}, args.json)
            return EXIT_NEGATIVE
        C, D = F.source, F.target
        table = {}
        for (M, N), entries in sorted(S.R.items()):
            for fp, f in sorted(entries.items()):
                key = "(%s,%s) %s" % (C.objects[M], C.objects[N],
                                      D.names[fp])
                table[key] = C.names[f]
        _emit({"structure": "found",
               "verified": S.verify(),
               "axioms_agree": check_SF2_iff_SF3(S),
               "R": table}, args.json)
        return EXIT_OK
    # reflect
    if S is None:
        _emit({"structure": "absent"}, args.json)
        return EXIT_NEGATIVE
    report = {}
    for prop in REFLECTION_PROPERTIES:
        r = check_reflection(F, S, prop)
        report[prop] = {
            "holds": r["holds"],
            "instances": r["instances"],
            "side_condition": _fmt_bool(r["side_condition"]),
        }
    _emit(report, args.json)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="firmring",
        description="Exact workbench for finite-dimensional nonunital rings.")
    p.add_argument("--json", action="store_true",
                   help="emit reports as canonical JSON")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="unitality predicates on rings/modules")
    c.add_argument("files", nargs="+")
    c.add_argument("--target", action="append")
    c.add_argument("--require", action="append",
                   metavar="LABEL:PREDICATE",
                   help="exit 2 unless the named predicate holds")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("separability",
                       help="solve for or verify a bimodule section")
    s.add_argument("action", choices=["solve", "verify"])
    s.add_argument("files", nargs="+")
    s.add_argument("--ring", required=True)
    s.add_argument("--base", required=True)
    s.add_argument("--morphism", help="JSON matrix file (solve)")
    s.add_argument("--certificate", help="certificate file (verify)")
    s.add_argument("-o", "--output", help="write certificate here (solve)")
    s.set_defaults(func=cmd_separability)

    m = sub.add_parser("maschke", help="group-ring semisimplicity pipeline")
    m.add_argument("files", nargs="+")
    m.add_argument("--base", required=True)
    m.add_argument("--group", required=True)
    m.add_argument("--certificate", help="write the certificate here")
    m.set_defaults(func=cmd_maschke)

    r = sub.add_parser("radical", help="radical and semisimplicity of a ring")
    r.add_argument("files", nargs="+")
    r.add_argument("--ring", required=True)
    r.set_defaults(func=cmd_radical)

    t = sub.add_parser("tensor", help="balanced tensor product of modules")
    t.add_argument("files", nargs="+")
    t.add_argument("--ring", required=True)
    t.add_argument("--left", required=True)
    t.add_argument("--right", required=True)
    t.set_defaults(func=cmd_tensor)

    k = sub.add_parser("category", help="finite-category computations")
    k.add_argument("action", choices=["search", "reflect", "tables"])
    k.add_argument("files", nargs="+")
    k.add_argument("--category", help="category label (identity functor)")
    k.add_argument("--functor", help="functor JSON file")
    k.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    k.set_defaults(func=cmd_category)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "separability":
        if args.action == "solve" and not args.morphism:
            parser.error("solve requires --morphism")
        if args.action == "verify" and not args.certificate:
            parser.error("verify requires --certificate")
    if args.command == "category" and args.action != "search":
        pass
    if args.command == "category" and not args.functor and not args.category:
        parser.error("category needs --category or --functor")
    try:
        return args.func(args)
    except (fio.InputError, AssociativityViolation, NotAGroup,
            RingMismatch, ActionViolation) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (NotSUnital, UnsupportedCharacteristic, NoLocalUnit,
            NotInvertible, SearchBudgetExceeded) as exc:
        print("hypothesis failure: %s" % exc, file=sys.stderr)
        return EXIT_HYPOTHESIS


def run():  # console-script entry point
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())

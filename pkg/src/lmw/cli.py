"""Command-line entry point: ``lmw <command> ...``.

stdout carries one result per line; diagnostics go to stderr.  Exit codes:
0 ok/true/valid, 1 false/countermodel/failures, 2 usage, 3 input error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import bridges
from .errors import BadConclusion, BadLine, LmwError
from .proofs import Consecution, check_consecution, check_derivation, load_proof
from .proofs.checker import SYSTEMS
from .proofs.document import ProofSyntaxError
from .search.countermodel import SEMANTICS, find_countermodel
from .search.generators import Bounds
from .search.suites import SUITES, run_suite
from .semantics.classical import ClassicalModel, eval_c
from .semantics.conditional import CkModel, KripkeModalModel, NcModel, eval_ck, eval_m, eval_nc, validate_nc
from .semantics.sheaf import IntuitionisticSheaf, NelsonianSheaf, eval_i, eval_n, validate_sheaf
from .syntax.base import E, O, R, S, Signature, Var, prop
from .text.documents import dumps, load_model
from .text.formulas import PARSERS, ParseError, print_formula
from .theories import I_EXTENSION, th_ck, th_n4
from .translate import BOX_ONLY, VARIANT_I, VARIANT_J, st_ck, st_modal, st_n4ck, tr_n4

OK, FALSE, USAGE, INPUT_ERROR = 0, 1, 2, 3

_MAPS = {
    "tr": ("fo", lambda x, phi: tr_n4(phi)),
    "st-modal": ("md", lambda x, phi: st_modal(x, phi, BOX_ONLY)),
    "st-modal-i": ("md", lambda x, phi: st_modal(x, phi, VARIANT_I)),
    "st-modal-j": ("md", lambda x, phi: st_modal(x, phi, VARIANT_J)),
    "st-ck": ("cn", st_ck),
    "st-n4ck": ("cn", st_n4ck),
}

_SEMANTICS_LANG = {"c": "fo", "i": "fo", "n4": "fo", "ck": "cn", "nc": "cn", "m": "md"}

_SEMANTICS_MODEL = {
    "c": ClassicalModel, "i": IntuitionisticSheaf, "n4": NelsonianSheaf,
    "ck": CkModel, "nc": NcModel, "m": KripkeModalModel,
}

_CONSTRUCTIONS = {
    "ck-to-cl": (CkModel, bridges.ck_to_classical),
    "cl-to-ck": (ClassicalModel, lambda M: bridges.materialize(bridges.classical_to_ck(M))),
    "sheafify": (NcModel, bridges.nc_sheafify),
    "sheaf-to-nc": (NelsonianSheaf, lambda S: bridges.materialize(bridges.sheaf_to_nc(S))),
}


class InputError(Exception):
    """Bad user input detected by the adapter itself."""


def _parse(lang: str, text: str):
    return PARSERS[lang](text)


def _assignment(text: str | None) -> dict:
    out: dict = {}
    for item in filter(None, (t.strip() for t in (text or "").split(","))):
        name, eq, value = item.partition("=")
        if not eq:
            raise InputError(f"assignment item {item!r} has no '='")
        try:
            out[Var.parse(name.strip())] = value.strip()
        except ValueError as exc:
            raise InputError(str(exc)) from None
    return out


def _bounds(args) -> Bounds:
    try:
        b = Bounds.parse(args.bounds) if getattr(args, "bounds", None) else Bounds()
    except ValueError as exc:
        raise InputError(f"bad bounds: {exc}") from None
    if getattr(args, "seed", None) is not None:
        b = replace(b, seed=args.seed)
    return b


def _model(path: str, expected=None):
    model = load_model(path)
    if expected is not None and not isinstance(model, expected):
        raise InputError(f"{path} holds a {type(model).__name__}, expected {expected.__name__}")
    return model


# commands


def cmd_parse(args) -> int:
    print(print_formula(_parse(args.lang, args.expr)))
    return OK


def cmd_print(args) -> int:
    sys.stdout.write(dumps(_model(args.file)))
    return OK


def cmd_translate(args) -> int:
    lang, fn = _MAPS[args.map]
    try:
        x = Var.parse(args.var)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(print_formula(fn(x, _parse(lang, args.expr))))
    return OK


def cmd_check(args) -> int:
    sem = args.semantics
    M = _model(args.model, _SEMANTICS_MODEL[sem])
    phi = _parse(_SEMANTICS_LANG[sem], args.expr)
    f = _assignment(args.assign)
    if args.polarity == "-" and sem not in ("n4", "nc"):
        raise InputError(f"semantics {sem} has no falsification polarity")
    if sem != "c" and args.world is None:
        raise InputError(f"semantics {sem} needs --world")
    if sem == "c":
        value = eval_c(M, f, phi)
    elif sem == "i":
        value = eval_i(M, args.world, f, phi)
    elif sem == "n4":
        value = eval_n(M, args.world, f, phi, args.polarity)
    elif sem == "ck":
        value = eval_ck(M, args.world, phi)
    elif sem == "nc":
        value = eval_nc(M, args.world, phi, args.polarity)
    else:
        value = eval_m(M, args.world, phi)
    print("true" if value else "false")
    return OK if value else FALSE


def cmd_validate_model(args) -> int:
    M = _model(args.file)
    if isinstance(M, (IntuitionisticSheaf, NelsonianSheaf)):
        report = validate_sheaf(M)
    elif isinstance(M, NcModel):
        report = validate_nc(M)
    else:
        print("valid")
        return OK
    if report.ok:
        print("valid")
        return OK
    for v in report.violations:
        print(f"violation: {v.detail}")
    return FALSE


def cmd_gen_theory(args) -> int:
    if args.props < 0:
        raise InputError("--props must be non-negative")
    sig = Signature.of([S, O, E, R] + [prop(i) for i in range(args.props)])
    theory = {"th-ck": lambda: th_ck(sig), "th": lambda: th_n4(sig), "th-i": lambda: th_n4(sig, I_EXTENSION)}
    for label, phi in theory[args.theory]().items():
        print(f"{label}: {print_formula(phi)}")
    return OK


def cmd_bridge(args) -> int:
    expected, build = _CONSTRUCTIONS[args.construction]
    out = dumps(build(_model(args.source, expected)))
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return OK


def cmd_prove_check(args) -> int:
    doc = load_proof(args.file, args.system)
    try:
        if isinstance(doc, Consecution):
            check_consecution(doc)
        else:
            check_derivation(doc)
    except (BadLine, BadConclusion) as exc:
        print(f"rejected: {exc}")
        return FALSE
    print("ok")
    return OK


def cmd_search(args) -> int:
    lang = _SEMANTICS_LANG[args.semantics]
    gamma = [_parse(lang, t) for t in args.gamma]
    delta = [_parse(lang, t) for t in args.delta]
    hit = find_countermodel(args.semantics, gamma, delta, _bounds(args))
    if not hit:
        print(f"{hit.label} (checked {hit.checked})")
        return OK
    where = "" if hit.world is None else f" world={hit.world}"
    f = ", ".join(f"{v}={a}" for v, a in sorted(hit.assignment.items()))
    print(f"countermodel semantics={hit.semantics}{where}" + (f" assignment={f}" if f else ""))
    model = hit.model
    if isinstance(model, (CkModel, NcModel)) and not getattr(model.accessor, "explicit", True):
        model = bridges.materialize(model)
    sys.stdout.write(dumps(model))
    return FALSE


def cmd_suite(args) -> int:
    report = run_suite(args.name, _bounds(args))
    for line in report.lines():
        print(line)
    if args.cases:
        out = Path(args.cases)
        out.mkdir(parents=True, exist_ok=True)
        for fail in report.failures:
            if fail.document:
                (out / f"{report.name}-{fail.index}.lmw").write_text(fail.document, encoding="utf-8")
    return OK if report.ok else FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lmw", description="Logic model workbench.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    c = sub.add_parser("parse", help="parse a formula and print it canonically")
    c.add_argument("--lang", choices=sorted(PARSERS), required=True)
    c.add_argument("expr")
    c.set_defaults(run=cmd_parse)

    c = sub.add_parser("print", help="print a model document in canonical form")
    c.add_argument("file")
    c.set_defaults(run=cmd_print)

    c = sub.add_parser("translate", help="apply a translation to a formula")
    c.add_argument("--map", choices=list(_MAPS), required=True)
    c.add_argument("--var", default="v0", help="start variable for standard translations (default v0)")
    c.add_argument("expr")
    c.set_defaults(run=cmd_translate)

    c = sub.add_parser("check", help="evaluate a formula at a point of a model")
    c.add_argument("--model", required=True)
    c.add_argument("--semantics", choices=SEMANTICS, required=True)
    c.add_argument("--world")
    c.add_argument("--assign", help="comma-separated v0=a,... pairs")
    c.add_argument("--polarity", choices=("+", "-"), default="+")
    c.add_argument("expr")
    c.set_defaults(run=cmd_check)

    c = sub.add_parser("validate-model", help="check the frame conditions of a model document")
    c.add_argument("file")
    c.set_defaults(run=cmd_validate_model)

    c = sub.add_parser("gen-theory", help="print a first-order theory, one labelled sentence per line")
    c.add_argument("theory", choices=("th-ck", "th", "th-i"))
    c.add_argument("--props", type=int, required=True)
    c.set_defaults(run=cmd_gen_theory)

    c = sub.add_parser("bridge", help="build one model from another and print its document")
    c.add_argument("--from", dest="source", required=True)
    c.add_argument("--construction", choices=list(_CONSTRUCTIONS), required=True)
    c.add_argument("--out")
    c.set_defaults(run=cmd_bridge)

    c = sub.add_parser("prove-check", help="check a proof document")
    c.add_argument("--system", choices=list(SYSTEMS))
    c.add_argument("file")
    c.set_defaults(run=cmd_prove_check)

    c = sub.add_parser("search", help="look for a point verifying gamma and refuting delta")
    c.add_argument("--semantics", choices=SEMANTICS, required=True)
    c.add_argument("--gamma", action="append", default=[])
    c.add_argument("--delta", action="append", default=[])
    c.add_argument("--bounds", help="k=v pairs, e.g. worlds=2,instances=100")
    c.add_argument("--seed", type=int)
    c.set_defaults(run=cmd_search)

    c = sub.add_parser("suite", help="run a named property suite")
    c.add_argument("name", choices=list(SUITES))
    c.add_argument("--bounds")
    c.add_argument("--seed", type=int)
    c.add_argument("--cases", help="directory for failure case documents")
    c.set_defaults(run=cmd_suite)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.run(args)
    except (ParseError, ProofSyntaxError, InputError, LmwError, OSError, ValueError, KeyError) as exc:
        print(f"lmw {args.command}: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""Named property suites over generated instances.

Each suite draws one (model, formulas) instance per index from its own
seeded stream and checks exact agreement between two independent code paths,
or validity of a law at every point.  Failures carry a self-contained case
document that :func:`replay_case` re-checks.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Callable, Iterable

from ..bridges import (
    SHEAF_WORLD, PairedWorld, check_comprehension, ck_to_classical, classical_to_ck, nc_sheafify,
    sheaf_to_nc,
)
from ..errors import LmwError, UnknownSuite
from ..semantics.classical import eval_c
from ..semantics.conditional import CkModel, KripkeModalModel, NcModel, eval_ck, eval_m, eval_nc, truthset_nc
from ..semantics.sheaf import (
    IntuitionisticSheaf, NelsonianSheaf, check_th, eval_i, eval_n, generated_subsheaf, int_to_nelsonian,
    nelsonian_to_int,
)
from ..syntax import cn, fo
from ..syntax.base import E, EPS, Var, prop
from ..syntax.derived import ampersand, equiv, strong_equiv, strong_imp
from ..syntax.md import has_diamond
from ..syntax.ops import TRIV, bound_vars, free_vars, is_nnf, nnf, replace_triv, subst_var
from ..text.documents import loads as load_model_text
from ..text.documents import to_document
from ..text.formulas import PARSERS, print_formula
from ..theories import th_ck, th_n4
from ..translate import BOX_ONLY, VARIANT_I, VARIANT_J, st_ck, st_modal, st_n4ck, tr_inverse, tr_n4
from .countermodel import NO_COUNTEREXAMPLE, find_countermodel
from .generators import Bounds, random_formula, random_model

FORMULAS_PER_INSTANCE = 3
MS_WORLD_CAP = 2  # sheafified domains grow as |W| + 4^|W|


@dataclass(frozen=True)
class Failure:
    index: int
    message: str
    document: str


@dataclass(frozen=True)
class SuiteReport:
    name: str
    instances: int
    failures: tuple[Failure, ...]
    wall_time: float
    seed: int
    notes: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        verdict = NO_COUNTEREXAMPLE if self.ok else f"{len(self.failures)} failing instance(s)"
        out = [f"suite={self.name} seed={self.seed} instances={self.instances} "
               f"failures={len(self.failures)} time={self.wall_time:.2f}s result={verdict}"]
        out += [f"note: {n}" for n in self.notes]
        out += [f"failure index={f.index}: {f.message}" for f in self.failures]
        return out


@dataclass(frozen=True)
class Suite:
    name: str
    language: str
    make: Callable  # (rng, bounds) -> (model, formulas)
    check: Callable  # (model, formulas) -> list of messages
    finish: Callable | None = None  # bounds -> (notes, messages), run once per suite


# shared helpers


def _formulas(rng, language: str, bounds: Bounds, symbols=(), n: int = FORMULAS_PER_INSTANCE) -> list:
    return [random_formula(rng, language, rng.randint(0, bounds.depth), bounds.props, bounds.variables, symbols)
            for _ in range(n)]


def _symbols(bounds: Bounds) -> tuple:
    return tuple(prop(i) for i in range(bounds.props)) + (E,)


def _assignments(domain, variables) -> Iterable[dict]:
    variables = sorted(variables)
    for values in product(list(domain), repeat=len(variables)):
        yield dict(zip(variables, values))


def _fv(phis) -> set:
    return set().union(*(free_vars(p) for p in phis)) if phis else set()


def _pf(phi) -> str:
    return print_formula(phi)


# persistence


def _make_persistence(rng, bounds):
    kind = rng.choice(("int-sheaf", "n4-sheaf", "nc"))
    lang = {"int-sheaf": "fo+", "n4-sheaf": "fo", "nc": "cn"}[kind]
    model = random_model(rng, kind, bounds, _symbols(bounds))
    return model, _formulas(rng, lang, bounds, (E,) if lang != "cn" else ())


def _check_persistence(model, formulas) -> list[str]:
    out = []
    if isinstance(model, NcModel):
        for phi in formulas:
            b = truthset_nc(model, phi)
            for name, ext in (("verification", b.pos), ("falsification", b.neg)):
                for w in ext:
                    for v in model.up[w]:
                        if v not in ext:
                            out.append(f"{name} of {_pf(phi)} at {w} is lost at {v}")
        return out
    polarities = ("+", "-") if isinstance(model, NelsonianSheaf) else ("+",)
    for phi in formulas:
        fv = free_vars(phi)
        for (w, v) in sorted(model.leq):
            for f in _assignments(model.domain(w), fv):
                g = model.transport(w, v, f)
                for pol in polarities:
                    if _eval_sheaf(model, w, f, phi, pol) and not _eval_sheaf(model, v, g, phi, pol):
                        out.append(f"{_pf(phi)} ({pol}) holds at {w} under {_show(f)} but not at {v}")
    return out


def _eval_sheaf(S, w, f, phi, pol="+") -> bool:
    if isinstance(S, NelsonianSheaf):
        return eval_n(S, w, f, phi, pol)
    return eval_i(S, w, f, phi)


def _show(f) -> str:
    return "{" + ", ".join(f"{x}={a}" for x, a in sorted(f.items())) + "}"


# generated sub-sheaf


def _make_subsheaf(rng, bounds):
    kind = rng.choice(("int-sheaf", "n4-sheaf"))
    model = random_model(rng, kind, bounds, _symbols(bounds))
    return model, _formulas(rng, "fo+" if kind == "int-sheaf" else "fo", bounds, (E,))


def _check_subsheaf(S, formulas) -> list[str]:
    out = []
    polarities = ("+", "-") if isinstance(S, NelsonianSheaf) else ("+",)
    for w in S.worlds:
        sub = generated_subsheaf(S, w)
        for v in S.up[w]:
            for phi in formulas:
                for f in _assignments(S.domain(v), free_vars(phi)):
                    for pol in polarities:
                        if _eval_sheaf(S, v, f, phi, pol) != _eval_sheaf(sub, v, f, phi, pol):
                            out.append(f"{_pf(phi)} ({pol}) at {v} differs in the sub-sheaf generated by {w}")
    return out


# embedding into the signed positive language


def _make_tr(rng, bounds):
    if rng.random() < 0.5:
        model = random_model(rng, "n4-sheaf", bounds, _symbols(bounds))
    else:
        signed = tuple(s.plus() for s in _symbols(bounds)) + tuple(s.minus() for s in _symbols(bounds)) + (EPS,)
        model = random_model(rng, "int-sheaf", bounds, signed)
    return model, _formulas(rng, "fo", bounds, (E,))


def _check_tr(model, formulas) -> list[str]:
    out = []
    if isinstance(model, NelsonianSheaf):
        N, I = model, nelsonian_to_int(model)
        how = "Nelsonian sheaf vs its signed sheaf"
    else:
        N, I = int_to_nelsonian(model), model
        how = "signed sheaf vs its Nelsonian sheaf"
    for phi in formulas:
        pos, neg = tr_n4(phi), tr_n4(fo.Neg(phi))
        for w in N.worlds:
            for f in _assignments(N.domain(w), free_vars(phi)):
                if eval_n(N, w, f, phi, "+") != eval_i(I, w, f, pos):
                    out.append(f"{how}: verification of {_pf(phi)} at {w} {_show(f)}")
                if eval_n(N, w, f, phi, "-") != eval_i(I, w, f, neg):
                    out.append(f"{how}: falsification of {_pf(phi)} at {w} {_show(f)}")
    return out


# negation normal form


def _make_nnf(rng, bounds):
    return random_model(rng, "n4-sheaf", bounds, _symbols(bounds)), _formulas(rng, "fo", bounds, (E,))


def _check_nnf(S, formulas) -> list[str]:
    out = []
    for phi in formulas:
        n = nnf(phi)
        if not is_nnf(n):
            out.append(f"nnf({_pf(phi)}) = {_pf(n)} is not in negation normal form")
        if tr_n4(phi) != tr_n4(n):
            out.append(f"tr differs on {_pf(phi)} and its normal form")
        if tr_inverse(tr_n4(n)) != n:
            out.append(f"decoding tr of {_pf(n)} does not return it")
        for w in S.worlds:
            for f in _assignments(S.domain(w), free_vars(phi)):
                # only verification is preserved: phi <-> nnf(phi) is a weak equivalence
                if eval_n(S, w, f, phi, "+") != eval_n(S, w, f, n, "+"):
                    out.append(f"{_pf(phi)} differs from its normal form at {w} {_show(f)}")
    return out


# modal standard translation


def _make_modal(rng, bounds):
    return random_model(rng, "kripke-modal", bounds, ()), _formulas(rng, "md", bounds)


def _check_modal(M, formulas) -> list[str]:
    out = []
    x = Var(0)
    for phi in formulas:
        variants = (VARIANT_I, VARIANT_J) if has_diamond(phi) else (BOX_ONLY, VARIANT_I, VARIANT_J)
        for variant in variants:
            st = st_modal(x, phi, variant)
            for w in M.worlds:
                if eval_m(M, w, phi) != eval_c(M.model, {x: w}, st):
                    out.append(f"{_pf(phi)} at {w}: modal and translated ({variant}) values differ")
    return out


# classical conditional embedding


def _make_ck(rng, bounds):
    return random_model(rng, "ck", bounds, ()), _formulas(rng, "cn", bounds)


def _check_ck(M, formulas) -> list[str]:
    out = []
    x = Var(0)
    Mcl = ck_to_classical(M)
    for label, sentence in th_ck(Mcl.signature).items():
        if not eval_c(Mcl, {}, sentence):
            out.append(f"the classical image fails {label}")
    back = classical_to_ck(Mcl, check=False)
    for phi in formulas:
        st = st_ck(x, phi)
        for w in M.worlds:
            if eval_ck(M, w, phi) != eval_c(Mcl, {x: w}, st):
                out.append(f"{_pf(phi)} at {w}: conditional and translated values differ")
            if eval_ck(back, w, phi) != eval_ck(M, w, phi):
                out.append(f"{_pf(phi)} at {w}: round trip through the classical image changes the value")
        for a in Mcl.domain:
            if eval_ck(back, a, phi) != eval_c(Mcl, {x: a}, st):
                out.append(f"{_pf(phi)} at element {a}: classical model and its conditional reading differ")
    return out


# main construction and comprehension


def _make_sheafify(rng, bounds):
    small = replace(bounds, worlds=min(bounds.worlds, MS_WORLD_CAP))
    return random_model(rng, "nc", small, ()), _formulas(rng, "cn", bounds)


def _check_ms(N, formulas) -> list[str]:
    out = []
    S = nc_sheafify(N)
    report = check_th(S, th_n4(S.signature))
    if not report.ok:
        return [f"sheafified model fails the theory: {report.first.detail}"]
    M = sheaf_to_nc(S, check=False)
    M = NcModel(M.worlds, M.leq, M.valplus, M.valminus, M.accessor, strict=True)
    x = Var(0)
    discrete = all(a == b for a, b in N.leq)
    for phi in formulas:
        st = st_n4ck(x, phi)
        try:
            for pw in M.worlds:
                for pol in ("+", "-"):
                    if eval_nc(M, pw, phi, pol) != eval_n(S, SHEAF_WORLD, {x: pw.element}, st, pol):
                        out.append(f"{_pf(phi)} ({pol}) at {pw}: conditional reading and translation differ")
            if discrete:
                for w in N.worlds:
                    for pol in ("+", "-"):
                        if eval_nc(N, w, phi, pol) != eval_nc(M, PairedWorld(SHEAF_WORLD, w), phi, pol):
                            out.append(f"{_pf(phi)} ({pol}) at {w}: original and sheaf-read models differ")
        except LmwError as exc:
            out.append(f"{_pf(phi)}: {exc}")
    return out


def _check_comprehension(N, formulas) -> list[str]:
    S = nc_sheafify(N)
    out = []
    for phi in formulas:
        c = check_comprehension(S, phi)
        if not c.ok:
            out.append(f"no set element encodes {_pf(phi)} at {', '.join(c.missing)}")
    return out


# derived-connective laws


def _meta(rng, bounds, nvars=None):
    return random_formula(rng, "fo", rng.randint(0, min(bounds.depth, 2)), bounds.props,
                          nvars or bounds.variables, (E,))


def _make_laws(rng, bounds):
    S = random_model(rng, "n4-sheaf", bounds, _symbols(bounds))
    phi, psi, chi, theta = (_meta(rng, bounds) for _ in range(4))
    # replacement needs an occurrence of v0 = v0 to act on
    if TRIV not in _atoms(theta):
        theta = fo.And(theta, TRIV) if rng.random() < 0.5 else fo.Or(TRIV, theta)
    return S, [phi, psi, chi, theta]


def _atoms(phi) -> set:
    if isinstance(phi, (fo.Pred, fo.Eq)):
        return {phi}
    return set().union(*(_atoms(c) for c in phi.children()))


def derived_laws(phi, psi, chi, theta, x: Var = Var(0)) -> list[tuple[str, fo.FoFormula]]:
    """Instances of the derived-connective theorems for the given formulas."""
    N = fo.Neg
    imp, siff, simp = fo.Imp, strong_equiv, strong_imp
    laws = [
        ("T1", imp(simp(phi, psi), imp(phi, psi))),
        ("T2", imp(siff(phi, psi), equiv(phi, psi))),
        ("T3", siff(simp(phi, psi), simp(N(psi), N(phi)))),
        ("T4", siff(siff(phi, psi), siff(N(phi), N(psi)))),
        ("T5", siff(phi, phi)),
        ("T6", siff(siff(phi, psi), siff(psi, phi))),
        ("T7", siff(siff(phi, psi), siff(siff(psi, chi), siff(phi, chi)))),
        ("T7[->]", imp(siff(phi, psi), siff(siff(psi, chi), siff(phi, chi)))),
        ("T8", siff(N(N(phi)), phi)),
        ("T9", siff(N(fo.And(phi, psi)), fo.Or(N(phi), N(psi)))),
        ("T10", siff(N(fo.Or(phi, psi)), fo.And(N(phi), N(psi)))),
        ("T11", siff(N(fo.Exists(x, theta)), fo.Forall(x, N(theta)))),
        ("T12", siff(N(fo.Forall(x, theta)), fo.Exists(x, N(theta)))),
    ]
    for name, op in (("and", fo.And), ("or", fo.Or), ("imp", fo.Imp)):
        laws.append((f"T13[{name}]", imp(fo.And(siff(phi, psi), siff(chi, theta)), siff(op(phi, chi), op(psi, theta)))))
    for name, q in (("forall", fo.Forall), ("exists", fo.Exists)):
        # antecedent closed over x: with x free the open form already fails classically
        laws.append((f"T14[{name}]", imp(fo.Forall(x, siff(phi, psi)), siff(q(x, phi), q(x, psi)))))
    # replacement can move phi and psi under binders of theta; close the
    # antecedent over the variables that would be captured
    same = siff(phi, psi)
    for y in sorted(bound_vars(theta) & free_vars(same), reverse=True):
        same = fo.Forall(y, same)
    laws += [
        ("T15", equiv(ampersand(phi, psi), fo.And(phi, psi))),
        ("T16", equiv(N(ampersand(phi, psi)), imp(phi, N(psi)))),
        ("T17", imp(same, siff(replace_triv(theta, phi), replace_triv(theta, psi)))),
        ("T18", imp(fo.Forall(x, imp(chi, same)),
                    equiv(fo.Forall(x, imp(chi, replace_triv(theta, phi))),
                          fo.Forall(x, imp(chi, replace_triv(theta, psi)))))),
        ("disjunction", siff(replace_triv(theta, fo.Or(phi, psi)),
                             replace_triv(theta, N(fo.And(N(phi), N(psi)))))),
    ]
    return laws


def _check_laws(S, metas) -> list[str]:
    out = []
    for name, law in derived_laws(*metas):
        for w in S.worlds:
            bad = next((f for f in _assignments(S.domain(w), free_vars(law)) if not eval_n(S, w, f, law, "+")), None)
            if bad is not None:
                out.append(f"{name} fails at {w} under {_show(bad)}")
                break
    return out


INVALID_SCHEMAS = (
    ("contraposition", "(p0 -> p1) -> (~p1 -> ~p0)"),
    ("negated equivalence", "(p0 <-> p1) -> (~p0 <-> ~p1)"),
)


def _finish_laws(bounds: Bounds) -> tuple[list[str], list[str]]:
    notes, missing = [], []
    for name, text in INVALID_SCHEMAS:
        hit = find_countermodel("nc", [], [PARSERS["cn"](text)], replace(bounds, worlds=1))
        if hit:
            val = ", ".join(f"{p.name}+={sorted(hit.model.valplus[p])} {p.name}-={sorted(hit.model.valminus[p])}"
                            for p in sorted(hit.model.valplus, key=lambda s: s.name))
            notes.append(f"countermodel found for {name} {text}: one world {hit.world}; {val}")
        else:
            missing.append(f"no countermodel found for {name} {text}")
    return notes, missing


# set encoding


def _make_set_encoding(rng, bounds):
    S = random_model(rng, "n4-sheaf", bounds, _symbols(bounds))
    x, y = Var(0), Var(1)
    phi = _meta(rng, bounds, 2)
    psi, chi = (subst_var(_meta(rng, bounds, 1), x, y) for _ in range(2))
    return S, [phi, psi, chi]


def _check_set_encoding(S, formulas) -> list[str]:
    phi, psi, chi = formulas
    x, y = Var(0), Var(1)
    direct = fo.Forall(y, fo.Imp(chi, strong_equiv(phi, psi)))
    out = []
    for w in S.worlds:
        for a in S.domain(w):
            got = eval_n(S, w, {x: a}, direct, "+")
            want = True
            for v in S.up[w]:
                av = S.homs[(w, v)][a]
                for b in S.domain(v):
                    if not eval_n(S, v, {y: b}, chi, "+"):
                        continue
                    for pol in ("+", "-"):
                        if eval_n(S, v, {y: b, x: av}, phi, pol) != eval_n(S, v, {y: b}, psi, pol):
                            want = False
            if got != want:
                out.append(f"at {w} with v0={a}: direct value {got}, unfolded value {want}")
    return out


SUITES: dict[str, Suite] = {s.name: s for s in (
    Suite("persistence", "mixed", _make_persistence, _check_persistence),
    Suite("subsheaf", "fo", _make_subsheaf, _check_subsheaf),
    Suite("tr-equiv", "fo", _make_tr, _check_tr),
    Suite("nnf", "fo", _make_nnf, _check_nnf),
    Suite("modal-lk", "md", _make_modal, _check_modal),
    Suite("st-ck", "cn", _make_ck, _check_ck),
    Suite("ms-equiv", "cn", _make_sheafify, _check_ms),
    Suite("comprehension", "cn", _make_sheafify, _check_comprehension),
    Suite("t-laws", "fo", _make_laws, _check_laws, _finish_laws),
    Suite("set-encoding", "fo", _make_set_encoding, _check_set_encoding),
)}


# failure cases


def _language_of_model(model) -> str:
    if isinstance(model, (NcModel, CkModel)):
        return "cn"
    if isinstance(model, KripkeModalModel):
        return "md"
    return "fo"


def case_document(suite: str, seed: int, index: int, model, formulas, message: str) -> str:
    doc = {
        "kind": "case",
        "suite": suite,
        "seed": seed,
        "index": index,
        "language": _language_of_model(model),
        "formulas": [print_formula(p) for p in formulas],
        "message": message,
        "model": to_document(model),
    }
    return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"


def load_case(text: str):
    """(suite name, model, formulas) from a case document."""
    doc = json.loads(text)
    if doc.get("kind") != "case":
        raise ValueError("not a case document")
    model = load_model_text(json.dumps(doc["model"]))
    parse = PARSERS[doc["language"]]
    return doc["suite"], model, [parse(t) for t in doc["formulas"]]


def replay_case(text: str) -> list[str]:
    """Re-run the suite check recorded in a case document."""
    name, model, formulas = load_case(text)
    return SUITES[name].check(model, formulas)


def run_suite(name: str, bounds: Bounds | None = None) -> SuiteReport:
    try:
        suite = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; known suites: {', '.join(SUITES)}") from None
    bounds = bounds or Bounds()
    start = time.perf_counter()
    failures = []
    for i in range(bounds.instances):
        rng = bounds.rng(f"suite:{name}:{i}")
        model, formulas = suite.make(rng, bounds)
        messages = suite.check(model, formulas)
        if messages:
            failures.append(Failure(i, messages[0], case_document(name, bounds.seed, i, model, formulas, messages[0])))
    notes: list[str] = []
    if suite.finish is not None:
        notes, problems = suite.finish(bounds)
        failures += [Failure(-1, m, "") for m in problems]
    return SuiteReport(name, bounds.instances, tuple(failures), time.perf_counter() - start, bounds.seed, tuple(notes))

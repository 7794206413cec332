"""End-to-end acceptance checks; each prints one PASS/FAIL line."""

import itertools
import random
import time

import pytest

from lmw.errors import BadLine
from lmw.proofs import Consecution, check_consecution, check_derivation, corpus, loads_proof
from lmw.search.generators import Bounds, MODEL_KINDS, all_cn_formulas, gen_formulas, gen_models, random_formula, random_model
from lmw.search.suites import _check_ck, _check_comprehension, _check_modal, _check_ms, _check_tr, run_suite
from lmw.syntax.base import E, prop
from lmw.syntax.ops import nnf
from lmw.text.documents import dumps, loads
from lmw.text.formulas import PARSERS, print_formula
from lmw.translate import tr_inverse, tr_n4

from .mutations import mutate

pytestmark = pytest.mark.slow

SYMBOLS = (prop(0), prop(1), E)


@pytest.fixture
def report(capsys):
    def emit(n: int, title: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[acceptance {n:>2}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
    return emit


def _run(kind, bounds, n_formulas, language, check, symbols=SYMBOLS, formula_symbols=()):
    """Instances checked, failure messages, seconds."""
    start = time.perf_counter()
    failures = []
    for i in range(bounds.instances):
        rng = bounds.rng(f"acceptance:{kind}:{i}")
        model = random_model(rng, kind, bounds, symbols)
        phis = [random_formula(rng, language, rng.randint(0, bounds.depth), bounds.props, bounds.variables,
                               formula_symbols) for _ in range(n_formulas)]
        failures += check(model, phis)
    return failures, time.perf_counter() - start


def test_1_modal_translation(report):
    failures, secs = _run("kripke-modal", Bounds(worlds=5, depth=4, instances=500), 20, "md", _check_modal, ())
    ok = not failures and secs < 30
    report(1, "modal standard translation", ok, f"500 models x 20 formulas, {len(failures)} disagreements, {secs:.1f}s")
    assert not failures, failures[:3]
    assert secs < 30


def test_2_classical_conditional_embedding(report):
    failures, secs = _run("ck", Bounds(worlds=3, depth=3, instances=300), 5, "cn", _check_ck, ())
    ok = not failures and secs < 120
    report(2, "classical conditional embedding", ok, f"300 models, {len(failures)} disagreements, {secs:.1f}s")
    assert not failures, failures[:3]
    assert secs < 120


def test_3_tr_faithfulness(report):
    failures, secs = _run("n4-sheaf", Bounds(worlds=3, elements=3, depth=3, instances=300), 5, "fo", _check_tr,
                          formula_symbols=(E,))
    ok = not failures and secs < 120
    report(3, "signed embedding, both polarities", ok, f"300 sheaves, {len(failures)} disagreements, {secs:.1f}s")
    assert not failures, failures[:3]
    assert secs < 120


def test_4_nnf_laws(report):
    phis = list(itertools.islice(gen_formulas("fo", Bounds(instances=1000, seed=4), (E,)), 1000))
    same_tr = sum(tr_n4(p) == tr_n4(nnf(p)) for p in phis)
    decodes = sum(tr_inverse(tr_n4(nnf(p))) == nnf(p) for p in phis)
    ok = same_tr == decodes == 1000
    report(4, "normal form laws", ok, f"tr agrees {same_tr}/1000, decoding inverts {decodes}/1000")
    assert ok


def _nc_fixtures():
    return list(gen_models("nc", Bounds(worlds=2, props=2, instances=50, seed=5)))


def test_5_main_construction(report):
    formulas = all_cn_formulas(2, 2)
    start = time.perf_counter()
    failures = [m for N in _nc_fixtures() for m in _check_ms(N, formulas)]
    secs = time.perf_counter() - start
    ok = not failures and secs < 300
    report(5, "sheafification and its conditional reading", ok,
           f"50 models x {len(formulas)} formulas, {len(failures)} disagreements, {secs:.1f}s")
    assert not failures, failures[:3]
    assert secs < 300


def test_6_comprehension(report):
    formulas = all_cn_formulas(2, 2)
    failures = [m for N in _nc_fixtures() for m in _check_comprehension(N, formulas)]
    report(6, "comprehension witnesses", not failures, f"50 models x {len(formulas)} formulas, {len(failures)} missing")
    assert not failures, failures[:3]


def test_7_derived_connective_laws(report):
    r = run_suite("t-laws", Bounds(instances=300))
    found = sum("countermodel found" in n for n in r.notes)
    failing = sorted({f.message.split()[0] for f in r.failures})
    ok = r.ok and found == 2
    report(7, "derived-connective laws", ok,
           f"300 sheaves, failing laws {failing or 'none'} in {len(r.failures)} instances, "
           f"{found}/2 invalid schemas refuted")
    assert found == 2
    assert r.ok, [f.message for f in r.failures[:3]]


def test_8_persistence(report):
    runs = [run_suite(name) for name in ("persistence", "subsheaf")]
    bad = sum(len(r.failures) for r in runs)
    report(8, "persistence and sub-sheaf invariance", bad == 0,
           ", ".join(f"{r.name} {r.instances} instances {len(r.failures)} violations" for r in runs))
    assert bad == 0


def test_9_proof_checker(report):
    texts = corpus()
    checked, killed, total = 0, 0, 0
    for name, text in texts.items():
        doc = loads_proof(text)
        (check_consecution if isinstance(doc, Consecution) else check_derivation)(doc)
        checked += 1
        d = doc.certificate if isinstance(doc, Consecution) else doc
        rng = random.Random(f"acceptance:mutate:{name}")
        for _ in range(5):
            bad, k = mutate(d, rng)
            total += 1
            try:
                check_derivation(bad)
            except BadLine as exc:
                killed += exc.line == k
    required = {"strong-reflexivity", "double-negation", "ampersand-conjunction"} <= set(texts)
    ok = checked == len(texts) >= 6 and required and killed == total
    report(9, "proof checker", ok, f"{checked} corpus proofs check, {killed}/{total} mutations rejected at their line")
    assert ok


def test_10_round_trips(report):
    bad = []
    for lang in PARSERS:
        syms = (E,) if lang == "fo" else ()
        for phi in itertools.islice(gen_formulas(lang, Bounds(instances=1000, seed=10), syms), 1000):
            if PARSERS[lang](print_formula(phi)) != phi:
                bad.append(f"{lang}: {print_formula(phi)}")
    docs = 0
    for kind in MODEL_KINDS:
        for M in gen_models(kind, Bounds(instances=100, seed=10)):
            text = dumps(M)
            docs += 1
            if dumps(loads(text)) != text:
                bad.append(f"{kind} document")
    report(10, "round trips", not bad, f"{len(PARSERS)} x 1000 formulas and {docs} documents, {len(bad)} mismatches")
    assert not bad, bad[:3]

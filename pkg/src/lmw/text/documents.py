"""JSON model documents (``.lmw``) for every model class.

Elements and worlds are strings.  Saving is canonical: symbols follow
:func:`symbol_order`, tuple lists are sorted, world and domain order is kept.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable

from ..errors import SchemaError
from ..semantics.classical import ClassicalModel
from ..semantics.conditional import CkModel, ExplicitAccessor, KripkeModalModel, NcModel
from ..semantics.sheaf import IntuitionisticSheaf, NelsonianSheaf
from ..syntax.base import E, PredSym, Signature, symbol_order

KINDS = ("classical", "int-sheaf", "n4-sheaf", "ck", "nc", "kripke-modal")
ARROW = "→"


# field helpers


def _get(doc: dict, field: str, path: str, kind: type | tuple = object) -> Any:
    if not isinstance(doc, dict):
        raise SchemaError(path or "document", "expected an object")
    if field not in doc:
        raise SchemaError(_join(path, field), "missing")
    value = doc[field]
    if not isinstance(value, kind):
        raise SchemaError(_join(path, field), f"expected {_type_name(kind)}")
    return value


def _join(path: str, field: str) -> str:
    return f"{path}.{field}" if path else field


def _type_name(kind) -> str:
    names = {list: "a list", dict: "an object", str: "a string"}
    if isinstance(kind, tuple):
        return " or ".join(names.get(k, k.__name__) for k in kind)
    return names.get(kind, kind.__name__)


def _strings(value: Any, path: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaError(path, "expected a list of strings")
    return value


def _worlds(doc: dict, path: str = "") -> tuple[str, ...]:
    ws = _strings(_get(doc, "worlds", path, list), _join(path, "worlds"))
    if not ws:
        raise SchemaError(_join(path, "worlds"), "must be nonempty")
    if len(set(ws)) != len(ws):
        raise SchemaError(_join(path, "worlds"), "duplicate world")
    return tuple(ws)


def _subset(value: Any, universe: set, path: str) -> frozenset:
    items = _strings(value, path)
    for w in items:
        if w not in universe:
            raise SchemaError(path, f"unknown world {w!r}")
    return frozenset(items)


def _symbol(name: str, path: str) -> PredSym:
    try:
        return PredSym.named(name)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _signature(doc: dict) -> Signature | None:
    if "signature" not in doc:
        return None
    names = _strings(doc["signature"], "signature")
    return Signature.of(_symbol(n, "signature") for n in names)


def _leq(doc: dict, worlds: tuple, path: str = "") -> frozenset:
    raw = _get(doc, "leq", path, list)
    wset = set(worlds)
    out = set()
    for i, pair in enumerate(raw):
        where = f"{_join(path, 'leq')}[{i}]"
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise SchemaError(where, "expected a pair of worlds")
        for x in pair:
            if x not in wset:
                raise SchemaError(where, f"unknown world {x!r}")
        out.add(tuple(pair))
    return frozenset(out)


def _classical_body(body: dict, path: str, signature: Signature | None) -> ClassicalModel:
    domain = _strings(_get(body, "domain", path, list), _join(path, "domain"))
    if not domain:
        raise SchemaError(_join(path, "domain"), "must be nonempty")
    if len(set(domain)) != len(domain):
        raise SchemaError(_join(path, "domain"), "duplicate element")
    dset = set(domain)
    interp_raw = _get(body, "interp", path, dict)
    interp: dict[PredSym, frozenset] = {}
    for name, rows in interp_raw.items():
        where = f"{_join(path, 'interp')}.{name}"
        sym = _symbol(name, where)
        if signature is not None and sym not in signature:
            raise SchemaError(where, f"{name} is not in the declared signature")
        if not isinstance(rows, list):
            raise SchemaError(where, "expected a list of tuples")
        tuples = set()
        for j, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != sym.arity or not all(isinstance(x, str) for x in row):
                raise SchemaError(f"{where}[{j}]", f"expected a list of {sym.arity} elements")
            for x in row:
                if x not in dset:
                    raise SchemaError(f"{where}[{j}]", f"unknown element {x!r}")
            tuples.add(tuple(row))
        interp[sym] = frozenset(tuples)
    return ClassicalModel.build(domain, interp, signature)


def _homs(doc: dict, worlds: tuple, leq: frozenset, domains: dict) -> dict:
    raw = doc.get("homs", {})
    if not isinstance(raw, dict):
        raise SchemaError("homs", "expected an object")
    out: dict = {}
    for key, mapping in raw.items():
        where = f"homs.{key}"
        sep = ARROW if ARROW in key else "->"
        parts = key.split(sep)
        if len(parts) != 2:
            raise SchemaError(where, f"key must look like w{ARROW}v")
        pair = (parts[0], parts[1])
        if pair not in leq:
            raise SchemaError(where, "pair is not in leq")
        if not isinstance(mapping, dict) or not all(isinstance(v, str) for v in mapping.values()):
            raise SchemaError(where, "expected an element map")
        out[pair] = dict(mapping)
    for pair in sorted(leq):
        if pair not in out:
            w, v = pair
            if not set(domains[w]) <= set(domains[v]):
                raise SchemaError("homs", f"missing map for {w}{ARROW}{v} and the domains do not nest")
            out[pair] = {a: a for a in domains[w]}
    return out


def _models_block(doc: dict, worlds: tuple) -> dict:
    models = _get(doc, "models", "", dict)
    for w in worlds:
        if w not in models:
            raise SchemaError(f"models.{w}", "missing")
    for w in models:
        if w not in worlds:
            raise SchemaError(f"models.{w}", "unknown world")
    return models


# per-kind loaders


def _load_classical(doc: dict) -> ClassicalModel:
    return _classical_body(doc, "", _signature(doc))


def _load_kripke(doc: dict) -> KripkeModalModel:
    sig = _signature(doc)
    model = _classical_body(doc, "", sig)
    for sym in model.interp:
        if sym != E and sym.kind != "prop":
            raise SchemaError(f"interp.{sym.name}", "a modal model interprets only props and E")
    if E not in model.interp:
        model = ClassicalModel(model.domain, {**model.interp, E: frozenset()})
    return KripkeModalModel(model)


def _load_int_sheaf(doc: dict) -> IntuitionisticSheaf:
    sig = _signature(doc)
    worlds = _worlds(doc)
    leq = _leq(doc, worlds)
    models = _models_block(doc, worlds)
    built = {w: _classical_body(models[w], f"models.{w}", sig) for w in worlds}
    homs = _homs(doc, worlds, leq, {w: built[w].domain for w in worlds})
    return IntuitionisticSheaf(worlds, leq, built, homs)


def _load_n4_sheaf(doc: dict) -> NelsonianSheaf:
    sig = _signature(doc)
    neg_sig = sig.with_eps() if sig is not None else None
    worlds = _worlds(doc)
    leq = _leq(doc, worlds)
    models = _models_block(doc, worlds)
    pos, neg = {}, {}
    for w in worlds:
        body = models[w]
        pos[w] = _classical_body(_get(body, "pos", f"models.{w}", dict), f"models.{w}.pos", sig)
        neg[w] = _classical_body(_get(body, "neg", f"models.{w}", dict), f"models.{w}.neg", neg_sig)
        if pos[w].domain_set != neg[w].domain_set:
            raise SchemaError(f"models.{w}.neg.domain", "differs from the positive domain")
    homs = _homs(doc, worlds, leq, {w: pos[w].domain for w in worlds})
    return NelsonianSheaf(worlds, leq, pos, neg, homs)


def _valuation(doc: dict, field: str, worlds: tuple, sig: Signature | None) -> dict:
    raw = _get(doc, field, "", dict)
    out = {}
    wset = set(worlds)
    for name, ws in raw.items():
        where = f"{field}.{name}"
        sym = _symbol(name, where)
        if sym.kind != "prop":
            raise SchemaError(where, "only props have a valuation")
        if sig is not None and sym not in sig:
            raise SchemaError(where, f"{name} is not in the declared signature")
        out[sym] = _subset(ws, wset, where)
    if sig is not None:
        for p in sig.props:
            out.setdefault(p, frozenset())
    return out


def _load_ck(doc: dict) -> CkModel:
    sig = _signature(doc)
    worlds = _worlds(doc)
    wset = set(worlds)
    val = _valuation(doc, "valuation", worlds, sig)
    triples = []
    for i, t in enumerate(_get(doc, "rel", "", list)):
        where = f"rel[{i}]"
        if not (isinstance(t, list) and len(t) == 3 and isinstance(t[0], str) and isinstance(t[2], str)):
            raise SchemaError(where, "expected [world, [subset], world]")
        for x in (t[0], t[2]):
            if x not in wset:
                raise SchemaError(where, f"unknown world {x!r}")
        triples.append((t[0], _subset(t[1], wset, f"{where}[1]"), t[2]))
    return CkModel(worlds, val, ExplicitAccessor(triples))


def _load_nc(doc: dict) -> NcModel:
    sig = _signature(doc)
    worlds = _worlds(doc)
    wset = set(worlds)
    leq = _leq(doc, worlds)
    vp = _valuation(doc, "valplus", worlds, sig)
    vm = _valuation(doc, "valminus", worlds, sig)
    for p in set(vp) | set(vm):
        vp.setdefault(p, frozenset())
        vm.setdefault(p, frozenset())
    triples = []
    for i, t in enumerate(_get(doc, "rel", "", list)):
        where = f"rel[{i}]"
        if not (isinstance(t, list) and len(t) == 3 and isinstance(t[0], str) and isinstance(t[2], str)
                and isinstance(t[1], list) and len(t[1]) == 2):
            raise SchemaError(where, "expected [world, [[X], [Y]], world]")
        for x in (t[0], t[2]):
            if x not in wset:
                raise SchemaError(where, f"unknown world {x!r}")
        key = (_subset(t[1][0], wset, f"{where}[1][0]"), _subset(t[1][1], wset, f"{where}[1][1]"))
        triples.append((t[0], key, t[2]))
    return NcModel(worlds, leq, vp, vm, ExplicitAccessor(triples))


_LOADERS: dict[str, Callable[[dict], Any]] = {
    "classical": _load_classical,
    "kripke-modal": _load_kripke,
    "int-sheaf": _load_int_sheaf,
    "n4-sheaf": _load_n4_sheaf,
    "ck": _load_ck,
    "nc": _load_nc,
}


def loads(text: str):
    """Parse a model document into its typed model."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("document", f"not valid JSON: {exc}") from None
    kind = _get(doc, "kind", "", str)
    if kind not in _LOADERS:
        raise SchemaError("kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    return _LOADERS[kind](doc)


def load_model(path: str | Path):
    return loads(Path(path).read_text(encoding="utf-8"))


# saving


def _sym_names(symbols) -> list[str]:
    return [s.name for s in sorted(symbols, key=symbol_order)]


def _ordered(items, order: tuple) -> list:
    rank = {w: i for i, w in enumerate(order)}
    return sorted(items, key=lambda w: rank.get(w, len(rank)))


def _classical_doc(M: ClassicalModel) -> dict:
    return {
        "domain": list(M.domain),
        "interp": {s.name: sorted(list(r) for r in M.interp[s])
                   for s in sorted(M.interp, key=symbol_order)},
    }


def _pairs(leq, worlds: tuple) -> list:
    rank = {w: i for i, w in enumerate(worlds)}
    return [list(p) for p in sorted(leq, key=lambda p: (rank[p[0]], rank[p[1]]))]


def _homs_doc(homs, leq, worlds: tuple, domains: dict) -> dict:
    out = {}
    for w, v in _pairs(leq, worlds):
        h = homs[(w, v)]
        out[f"{w}{ARROW}{v}"] = {a: h[a] for a in domains[w]}
    return out


def _val_doc(val: dict, worlds: tuple) -> dict:
    return {p.name: _ordered(val[p], worlds) for p in sorted(val, key=symbol_order)}


def to_document(model) -> dict:
    """The canonical JSON object for a model with explicit structure."""
    if isinstance(model, KripkeModalModel):
        return {"kind": "kripke-modal", "signature": _sym_names(model.model.interp), **_classical_doc(model.model)}
    if isinstance(model, ClassicalModel):
        return {"kind": "classical", "signature": _sym_names(model.interp), **_classical_doc(model)}
    if isinstance(model, IntuitionisticSheaf):
        syms = set().union(*(m.interp for m in model.models.values()))
        return {
            "kind": "int-sheaf",
            "signature": _sym_names(syms),
            "worlds": list(model.worlds),
            "leq": _pairs(model.leq, model.worlds),
            "models": {w: _classical_doc(model.models[w]) for w in model.worlds},
            "homs": _homs_doc(model.homs, model.leq, model.worlds, {w: model.domain(w) for w in model.worlds}),
        }
    if isinstance(model, NelsonianSheaf):
        return {
            "kind": "n4-sheaf",
            "signature": _sym_names(model.signature.symbols),
            "worlds": list(model.worlds),
            "leq": _pairs(model.leq, model.worlds),
            "models": {w: {"pos": _classical_doc(model.pos[w]), "neg": _classical_doc(model.neg[w])}
                       for w in model.worlds},
            "homs": _homs_doc(model.homs, model.leq, model.worlds, {w: model.domain(w) for w in model.worlds}),
        }
    if isinstance(model, (CkModel, NcModel)):
        if not isinstance(model.accessor, ExplicitAccessor):
            raise ValueError("a virtual accessor has no document form; materialise it first")
        W = model.worlds
        rank = {w: i for i, w in enumerate(W)}
        if isinstance(model, CkModel):
            rel = sorted(([t[0], _ordered(t[1], W), t[2]] for t in model.accessor.triples),
                         key=lambda t: (rank[t[0]], [rank[x] for x in t[1]], len(t[1]), rank[t[2]]))
            return {"kind": "ck", "signature": _sym_names(model.valuation), "worlds": list(W),
                    "valuation": _val_doc(dict(model.valuation), W), "rel": rel}
        rel = sorted(([t[0], [_ordered(t[1][0], W), _ordered(t[1][1], W)], t[2]] for t in model.accessor.triples),
                     key=lambda t: (rank[t[0]], [rank[x] for x in t[1][0]], [-1],
                                    [rank[x] for x in t[1][1]], rank[t[2]]))
        syms = set(model.valplus) | set(model.valminus)
        return {"kind": "nc", "signature": _sym_names(syms), "worlds": list(W),
                "leq": _pairs(model.leq, W), "valplus": _val_doc(dict(model.valplus), W),
                "valminus": _val_doc(dict(model.valminus), W), "rel": rel}
    raise TypeError(f"no document form for {type(model).__name__}")


def _format(value: Any, indent: int) -> str:
    """Objects one key per line; lists stay on one line."""
    if isinstance(value, dict) and value:
        pad = "  " * (indent + 1)
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_format(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    return json.dumps(value, ensure_ascii=False, separators=(", ", ": "))


def dumps(model) -> str:
    return _format(to_document(model), 0) + "\n"


save_model = dumps


def write_model(model, path: str | Path) -> None:
    Path(path).write_text(dumps(model), encoding="utf-8")

"""Axiom schemas as patterns, instantiation, and schema matching.

A pattern is a nested tuple: ``("->", a, b)``, ``("&", a, b)``, ``("|", a, b)``,
``("~", a)``, ``("[]>", a, b)``, ``("forall", "x", a)``, ``("exists", "x", a)``,
``("=", "x", "y")`` and ``("sub", "phi", "x", "y")`` for ``phi[x/y]``.  A bare
string names a formula metavariable (``phi psi chi theta``).  Variable
metavariables are ``x y z``.
"""

from __future__ import annotations

from types import ModuleType
from typing import Iterator

from ..errors import CaptureError
from ..syntax import cn, fo
from ..syntax.base import Node, Var
from ..syntax.ops import all_vars, subst_var, substitutable

FORMULA_METAS = ("phi", "psi", "chi", "theta")
VAR_METAS = ("x", "y", "z")

Pattern = "tuple | str"
Bindings = dict  # metavariable name -> Node or Var


def _imp(a, b):
    return ("->", a, b)


def _and(a, b):
    return ("&", a, b)


def _or(a, b):
    return ("|", a, b)


def _neg(a):
    return ("~", a)


def _iff(a, b):
    return _and(_imp(a, b), _imp(b, a))


def _simp(a, b):
    return _and(_imp(a, b), _imp(_neg(b), _neg(a)))


def _siff(a, b):
    return _and(_simp(a, b), _simp(b, a))


def _boxto(a, b):
    return ("[]>", a, b)


def _diamondto(a, b):
    return _neg(_boxto(a, _neg(b)))


P, Q, C, T = FORMULA_METAS

SCHEMAS: dict[str, tuple] = {
    "a1": _imp(P, _imp(Q, P)),
    "a2": _imp(_imp(P, _imp(Q, C)), _imp(_imp(P, Q), _imp(P, C))),
    "a3": _imp(_and(P, Q), P),
    "a4": _imp(_and(P, Q), Q),
    "a5": _imp(P, _imp(Q, _and(P, Q))),
    "a6": _imp(P, _or(P, Q)),
    "a7": _imp(Q, _or(P, Q)),
    "a8": _imp(_imp(P, C), _imp(_imp(Q, C), _imp(_or(P, Q), C))),
    "a9": _imp(("forall", "x", P), ("sub", P, "x", "y")),
    "a10": _imp(("sub", P, "x", "y"), ("exists", "x", P)),
    "a11": ("=", "x", "x"),
    "a12": _imp(("=", "y", "z"), _imp(("sub", P, "x", "y"), ("sub", P, "x", "z"))),
    "An1": _iff(_neg(_neg(P)), P),
    "An2": _iff(_neg(_and(P, Q)), _or(_neg(P), _neg(Q))),
    "An3": _iff(_neg(_or(P, Q)), _and(_neg(P), _neg(Q))),
    "An4": _iff(_neg(_imp(P, Q)), _and(P, _neg(Q))),
    "An5": _iff(_neg(("exists", "x", T)), ("forall", "x", _neg(T))),
    "An6": _iff(_neg(("forall", "x", T)), ("exists", "x", _neg(T))),
    "Ax1": _siff(_and(_boxto(P, Q), _boxto(P, C)), _boxto(P, _and(Q, C))),
    "Ax2": _imp(_and(_neg(_boxto(P, Q)), _boxto(P, C)), _neg(_boxto(P, _or(Q, _neg(C))))),
    "Ax3": _imp(_imp(_diamondto(P, Q), _boxto(P, C)), _boxto(P, _imp(Q, C))),
    "Ax4": _boxto(P, _imp(Q, Q)),
}

_CANON = {k.lower(): k for k in SCHEMAS}


def schema_id(name: str) -> str:
    """Canonical spelling of a schema id, accepting any case and an ``alpha`` prefix."""
    key = name.strip().lower().replace("alpha", "a").replace("α", "a")
    if key not in _CANON:
        raise KeyError(f"unknown schema {name!r}")
    return _CANON[key]


# pattern <-> node vocabulary

_OPS = {"And": "&", "Or": "|", "Imp": "->", "Neg": "~", "BoxTo": "[]>",
        "Forall": "forall", "Exists": "exists", "Eq": "="}


def _op(node: Node) -> str | None:
    return _OPS.get(type(node).__name__)


def instantiate(pattern, bindings: Bindings, L: ModuleType = fo) -> Node:
    """Substitute bindings into a pattern; raises KeyError on a missing binding."""
    if isinstance(pattern, str):
        return bindings[pattern]
    tag = pattern[0]
    if tag == "sub":
        return subst_var(bindings[pattern[1]], bindings[pattern[2]], bindings[pattern[3]])
    if tag == "=":
        return fo.Eq(bindings[pattern[1]], bindings[pattern[2]])
    if tag in ("forall", "exists"):
        cls = fo.Forall if tag == "forall" else fo.Exists
        return cls(bindings[pattern[1]], instantiate(pattern[2], bindings, L))
    if tag == "~":
        return L.Neg(instantiate(pattern[1], bindings, L))
    if tag == "[]>":
        return cn.BoxTo(instantiate(pattern[1], bindings, L), instantiate(pattern[2], bindings, L))
    cls = {"&": L.And, "|": L.Or, "->": L.Imp}[tag]
    return cls(instantiate(pattern[1], bindings, L), instantiate(pattern[2], bindings, L))


def _match(pattern, node: Node, env: dict, pending: list) -> bool:
    """Structural match; ``sub`` patterns are queued for the variable search."""
    if isinstance(pattern, str):
        bound = env.get(pattern)
        if bound is None:
            env[pattern] = node
            return True
        return bound == node
    tag = pattern[0]
    if tag == "sub":
        pending.append((pattern, node))
        return True
    if _op(node) != tag:
        return False
    if tag == "=":
        return _bind_var(pattern[1], node.left, env) and _bind_var(pattern[2], node.right, env)
    if tag in ("forall", "exists"):
        return _bind_var(pattern[1], node.var, env) and _match(pattern[2], node.body, env, pending)
    if tag == "~":
        return _match(pattern[1], node.body, env, pending)
    return _match(pattern[1], node.left, env, pending) and _match(pattern[2], node.right, env, pending)


def _bind_var(meta: str, var: Var, env: dict) -> bool:
    bound = env.get(meta)
    if bound is None:
        env[meta] = var
        return True
    return bound == var


def _candidates(phi: Node) -> list[Var]:
    """Variables occurring in phi in index order, then the least fresh one."""
    used = sorted(all_vars(phi)) if isinstance(phi, fo.FoFormula) else []
    fresh = Var(max((v.index for v in used), default=-1) + 1)
    return used + [fresh]


def _antiunify(a: Node, b: Node, x: Var, y: Var, z: Var) -> Node | None:
    """A formula f with f[x/y] = a and f[x/z] = b, guessed position by position."""
    if type(a) is not type(b):
        return None

    def var(u: Var, v: Var) -> Var | None:
        if u == v and not (u == x and y != x):
            return u
        if u == y and v == z:
            return x
        return None

    if isinstance(a, fo.Pred):
        if a.sym != b.sym:
            return None
        args = [var(u, v) for u, v in zip(a.args, b.args)]
        return None if None in args else fo.Pred(a.sym, tuple(args))
    if isinstance(a, fo.Eq):
        l, r = var(a.left, b.left), var(a.right, b.right)
        return None if l is None or r is None else fo.Eq(l, r)
    if isinstance(a, fo.Neg):
        body = _antiunify(a.body, b.body, x, y, z)
        return None if body is None else fo.Neg(body)
    if isinstance(a, (fo.And, fo.Or, fo.Imp)):
        l, r = _antiunify(a.left, b.left, x, y, z), _antiunify(a.right, b.right, x, y, z)
        return None if l is None or r is None else type(a)(l, r)
    if isinstance(a, (fo.Forall, fo.Exists)):
        if a.var != b.var:
            return None
        body = _antiunify(a.body, b.body, x, y, z)
        return None if body is None else type(a)(a.var, body)
    return None


def _resolve(pending: list, env: dict, target: Node) -> bool:
    """Find the variable metavariables that the queued substitutions need."""
    if not pending:
        return True
    if len(pending) == 1:
        (_, phi, xm, ym), node = pending[0]
        if phi not in env or xm not in env:
            return False
        if ym in env:
            return _subst_ok(env[phi], env[xm], env[ym], node)
        for y in _candidates(target):
            if _subst_ok(env[phi], env[xm], y, node):
                env[ym] = y
                return True
        return False
    # two substitutions sharing phi and x: the equality-replacement schema
    ((_, phi, xm, ym), a), ((_, _, _, zm), b) = pending
    y, z = env.get(ym), env.get(zm)
    if y is None or z is None:
        return False
    if phi in env and xm in env:
        return _subst_ok(env[phi], env[xm], y, a) and _subst_ok(env[phi], env[xm], z, b)
    for x in _candidates(target):
        f = _antiunify(a, b, x, y, z)
        if f is not None and _subst_ok(f, x, y, a) and _subst_ok(f, x, z, b):
            env[phi], env[xm] = f, x
            return True
    return False


def _subst_ok(phi: Node, x: Var, y: Var, node: Node) -> bool:
    if not isinstance(phi, fo.FoFormula):
        return False
    if not substitutable(phi, x, y):
        return False
    try:
        return subst_var(phi, x, y) == node
    except CaptureError:
        return False


def match_schema(phi: Node, sid: str) -> Bindings | None:
    """Bindings making ``phi`` an instance of schema ``sid``, or None.

    Variable metavariables that only occur inside substitutions are searched
    among the variables of ``phi`` in index order, then one fresh variable.
    """
    pattern = SCHEMAS[schema_id(sid)]
    env: dict = {}
    pending: list = []
    if not _match(pattern, phi, env, pending):
        return None
    if not _resolve(pending, env, phi):
        return None
    return env


def check_instance(phi: Node, sid: str, bindings: Bindings, L: ModuleType) -> str | None:
    """None if the bindings instantiate the schema to exactly phi, else a reason."""
    pattern = SCHEMAS[schema_id(sid)]
    try:
        inst = instantiate(pattern, bindings, L)
    except KeyError as exc:
        return f"missing binding for {exc.args[0]}"
    except CaptureError as exc:
        return f"side condition fails: {exc}"
    if inst != phi:
        return f"formula is not the {schema_id(sid)} instance for the given bindings"
    return None


def metavariables(pattern) -> Iterator[str]:
    if isinstance(pattern, str):
        yield pattern
        return
    tag = pattern[0]
    if tag == "sub":
        yield from pattern[1:]
    elif tag in ("forall", "exists"):
        yield pattern[1]
        yield from metavariables(pattern[2])
    elif tag == "=":
        yield from pattern[1:]
    else:
        for p in pattern[1:]:
            yield from metavariables(p)

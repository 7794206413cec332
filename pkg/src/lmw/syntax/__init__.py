"""Object-language syntax: three formula languages and their shared machinery."""

from . import cn, fo, md
from .base import E, EPS, O, R, S, Node, PredSym, Signature, Var, prop
from .derived import (
    AMPERSAND,
    EQUIV,
    STRONG_EQUIV,
    STRONG_IMP,
    ampersand,
    equiv,
    expand_derived,
    expand_diamondto,
    forall_o,
    strong_equiv,
    strong_imp,
)
from .ops import (
    depth,
    free_vars,
    is_nnf,
    nnf,
    replace_triv,
    subformulas,
    subst_var,
    substitutable,
)

__all__ = [
    "AMPERSAND", "E", "EPS", "EQUIV", "Node", "O", "PredSym", "R", "S",
    "STRONG_EQUIV", "STRONG_IMP", "Signature", "Var", "ampersand", "cn", "depth",
    "equiv", "expand_derived", "expand_diamondto", "fo", "forall_o", "free_vars",
    "is_nnf", "md", "nnf", "prop", "replace_triv", "strong_equiv", "strong_imp",
    "subformulas", "subst_var", "substitutable",
]

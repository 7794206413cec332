"""Hilbert-style derivations: schema matching, checking and proof documents."""

from importlib import resources

from .builder import ProofBuilder
from .checker import (
    MP, SYSTEMS, AxiomInstance, Consecution, Derivation, Premise, RABox, RCBox1, RCBox2, RExists,
    RForall, System, check_consecution, check_derivation,
)
from .document import ProofSyntaxError, dumps_proof, load_proof, loads_proof
from .schemas import SCHEMAS, check_instance, instantiate, match_schema, schema_id


def corpus() -> dict[str, str]:
    """Name -> text of every shipped proof document."""
    root = resources.files(__package__) / "corpus"
    return {p.name[:-4]: p.read_text(encoding="utf-8")
            for p in sorted(root.iterdir(), key=lambda p: p.name) if p.name.endswith(".lmw")}


__all__ = [
    "MP", "SCHEMAS", "SYSTEMS", "AxiomInstance", "Consecution", "Derivation", "Premise", "ProofBuilder",
    "ProofSyntaxError", "RABox", "RCBox1", "RCBox2", "RExists", "RForall", "System", "check_consecution",
    "check_derivation", "check_instance", "corpus", "dumps_proof", "instantiate", "load_proof", "loads_proof",
    "match_schema", "schema_id",
]

"""Exception hierarchy shared by every module of the workbench."""

from __future__ import annotations


class LmwError(Exception):
    """Base class for all workbench errors."""


class CaptureError(LmwError):
    """A substitution would capture the substituted variable."""


class UnboundVariable(LmwError):
    """A free variable of the formula has no value in the assignment."""


class UnknownSymbol(LmwError):
    """A predicate symbol is missing from the model's interpretation."""


class NotTotal(LmwError):
    """A map meant to be a homomorphism is not total on its source domain."""


class MissingSymbol(LmwError):
    """A theory generator needs a symbol the signature lacks."""


class NegationInPositiveLanguage(LmwError):
    """Strong negation reached an evaluator for the positive language."""


class UnknownWorld(LmwError):
    """A world or element is not part of the model."""


class WrongSignature(LmwError):
    """A structure is built over the wrong signature for the requested operation."""


class NotInImage(LmwError):
    """A positive formula cannot be decoded back through the signed translation."""


class DiamondInBoxOnly(LmwError):
    """The box-only modal translation received a diamond."""


class SizeCap(LmwError):
    """A construction would exceed its configured size cap."""


class TheoryNotSatisfied(LmwError):
    """A construction requires a model of a theory and got something else."""

    def __init__(self, message: str, sentence=None, world=None):
        super().__init__(message)
        self.sentence = sentence
        self.world = world


class SchemaError(LmwError):
    """A model document does not match its kind's schema."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class ValidationError(LmwError):
    """A structure loaded fine but violates a semantic invariant."""


class BadLine(LmwError):
    """A derivation line fails to check."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class BadConclusion(LmwError):
    """The last line of a consecution certificate is not a disjunction of the succedent."""


class UnknownSuite(LmwError):
    """The requested property suite is not registered."""

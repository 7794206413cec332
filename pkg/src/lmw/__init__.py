"""Logic model workbench: syntax, semantics, translations and checkers for
conditional, modal and first-order logics with strong negation."""

__version__ = "0.1.0"

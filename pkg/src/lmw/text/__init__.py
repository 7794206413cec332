"""Text formats: formula syntax and model documents."""

from .formulas import (
    ParseError,
    SourceSpan,
    parse_cn,
    parse_fo,
    parse_md,
    print_cn,
    print_fo,
    print_formula,
    print_md,
)

__all__ = [
    "ParseError", "SourceSpan", "parse_cn", "parse_fo", "parse_md", "print_cn",
    "print_fo", "print_formula", "print_md",
]

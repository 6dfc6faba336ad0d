"""Tree path subsequence queries."""

from ._tps import (
    ParseError,
    Tree,
    bench,
    check,
    format_tree,
    generate,
    is_subsequence,
    parse_tree,
    parse_xml,
    run_cli,
    solve,
    solve_queries,
)

__all__ = [
    "ParseError",
    "Tree",
    "bench",
    "check",
    "format_tree",
    "generate",
    "is_subsequence",
    "parse_tree",
    "parse_xml",
    "run_cli",
    "solve",
    "solve_queries",
]

"""Knight's tour magic enumeration."""

from ._knightmagic import (
    SearchAborted,
    Tour,
    classify,
    count,
    emperor,
    feasibility,
    magic_constants,
    parse_tour,
    search,
    verify,
    verify_corpus,
    warnsdorf,
)

__all__ = [
    "SearchAborted",
    "Tour",
    "classify",
    "count",
    "emperor",
    "feasibility",
    "magic_constants",
    "parse_tour",
    "search",
    "verify",
    "verify_corpus",
    "warnsdorf",
]

"""Algorithm dispatch shared by the merge machinery and the CLI."""

from __future__ import annotations

from .core import ChangedLines, EditScript, InternedSequence, flags_to_script
from .histogram import diff_histogram
from .myers import MINIMAL, MYERS, diff_myers
from .patience import diff_patience
from .slider import DEFAULT_WEIGHTS, IndentWeights, slide_changed_lines

ALGORITHMS = ("myers", "minimal", "patience", "histogram")


def diff_lines(old: InternedSequence, new: InternedSequence, algorithm: str = "myers") -> ChangedLines:
    if algorithm == "myers":
        return diff_myers(old, new, MYERS)
    if algorithm == "minimal":
        return diff_myers(old, new, MINIMAL)
    if algorithm == "patience":
        return diff_patience(old, new)
    if algorithm == "histogram":
        return diff_histogram(old, new)
    raise ValueError(f"unknown diff algorithm {algorithm!r}; expected one of {ALGORITHMS}")


def diff_script(
    old: InternedSequence,
    new: InternedSequence,
    algorithm: str = "myers",
    *,
    indent_heuristic: bool = False,
    weights: IndentWeights = DEFAULT_WEIGHTS,
) -> EditScript:
    """Diff and convert to hunks, optionally sliding groups for display."""
    flags = diff_lines(old, new, algorithm)
    if indent_heuristic:
        flags = slide_changed_lines(flags, old, new, weights)
    return flags_to_script(flags, old, new)

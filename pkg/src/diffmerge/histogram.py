"""Histogram diff: greedy recursion on common regions picked by occurrence count.

The split search scans the new file left to right.  Every occurrence of the
current line in the old file seeds a candidate region that is extended while
lines pairwise match; the candidate replaces the current best when it is
strictly longer or its least-frequent old-file line is rarer than the best so
far.  Lines occurring more than 64 times in the old file are never used as
seeds, and if every common line is that frequent the whole subproblem falls
back to the myers engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ChangedLines, InternedSequence
from .myers import MYERS, myers_flags

MAX_OCCURRENCES = 64


@dataclass
class OccurrenceIndex:
    occurrences: dict[int, list[int]]
    has_common: bool = False
    lowest_record_count: float = math.inf


@dataclass(frozen=True)
class Region:
    """A maximal run of pairwise-equal lines; bounds are inclusive."""

    begin1: int
    end1: int
    begin2: int
    end2: int
    record_count: int


class FallbackSignal(Exception):
    pass


def scan_a(tokens: list[int], lo: int = 0, hi: int | None = None) -> OccurrenceIndex:
    """Map each token to its ascending positions within old[lo:hi]."""
    if hi is None:
        hi = len(tokens)
    occ: dict[int, list[int]] = {}
    for i in range(lo, hi):
        occ.setdefault(tokens[i], []).append(i)
    return OccurrenceIndex(occ)


def find_split(
    a: list[int],
    b: list[int],
    lo1: int,
    hi1: int,
    lo2: int,
    hi2: int,
) -> Region | None:
    """Pick the split region for old[lo1:hi1] vs new[lo2:hi2].

    Returns None when the files share no usable region; raises FallbackSignal when
    common lines exist but all of them occur more than 64 times in old.
    """
    index = scan_a(a, lo1, hi1)
    occ = index.occurrences
    best: Region | None = None

    b_ptr = lo2
    while b_ptr < hi2:
        b_next = b_ptr + 1
        positions = occ.get(b[b_ptr])
        if positions:
            index.has_common = True
            count = len(positions)
            # Seeds rarer than the cap are always worth expanding; comparing
            # against the running lowest count instead would hide the better
            # region whenever a unique line was seen first.
            if count <= max(index.lowest_record_count, MAX_OCCURRENCES):
                region_end = lo1 - 1
                for apos in positions:
                    if apos <= region_end:
                        continue
                    begin1, begin2 = apos, b_ptr
                    end1, end2 = apos, b_ptr
                    while begin1 > lo1 and begin2 > lo2 and a[begin1 - 1] == b[begin2 - 1]:
                        begin1 -= 1
                        begin2 -= 1
                    while end1 < hi1 - 1 and end2 < hi2 - 1 and a[end1 + 1] == b[end2 + 1]:
                        end1 += 1
                        end2 += 1
                    record_count = min(len(occ[a[i]]) for i in range(begin1, end1 + 1))
                    if b_next <= end2:
                        b_next = end2 + 1
                    if (
                        best is not None and best.end1 - best.begin1 < end1 - begin1
                    ) or record_count < index.lowest_record_count:
                        best = Region(begin1, end1, begin2, end2, record_count)
                        index.lowest_record_count = record_count
                    region_end = end1
        b_ptr = b_next

    if index.has_common and index.lowest_record_count > MAX_OCCURRENCES:
        raise FallbackSignal
    return best


def diff_histogram(old: InternedSequence, new: InternedSequence) -> ChangedLines:
    a, b = old.tokens, new.tokens
    of = [False] * len(a)
    nf = [False] * len(b)
    work = [(0, len(a), 0, len(b))]
    while work:
        lo1, hi1, lo2, hi2 = work.pop()
        if lo1 == hi1 and lo2 == hi2:
            continue
        if lo1 == hi1:
            for j in range(lo2, hi2):
                nf[j] = True
            continue
        if lo2 == hi2:
            for i in range(lo1, hi1):
                of[i] = True
            continue
        try:
            split = find_split(a, b, lo1, hi1, lo2, hi2)
        except FallbackSignal:
            sub = myers_flags(a[lo1:hi1], b[lo2:hi2], MYERS)
            for i, flag in enumerate(sub.old_flags):
                if flag:
                    of[lo1 + i] = True
            for j, flag in enumerate(sub.new_flags):
                if flag:
                    nf[lo2 + j] = True
            continue
        if split is None:
            for i in range(lo1, hi1):
                of[i] = True
            for j in range(lo2, hi2):
                nf[j] = True
        else:
            work.append((lo1, split.begin1, lo2, split.begin2))
            work.append((split.end1 + 1, hi1, split.end2 + 1, hi2))
    return ChangedLines(of, nf)

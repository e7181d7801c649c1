"""Brute-force references used by tests and the CLI --verify mode.

Deliberately naive: guards raise instead of approximating, because an
oracle that silently truncates is worse than none.
"""

from __future__ import annotations

import numpy as np


class SizeGuard(Exception):
    """Input too large for an exact brute-force computation."""


_LCS_LIMIT = 2000
_MEMO_LIMIT = 600
_LIS_LIMIT = 15


def lcs_length(a: list[int], b: list[int]) -> int:
    """Exact longest-common-subsequence length via the classic O(N*M) table."""
    if len(a) > _LCS_LIMIT or len(b) > _LCS_LIMIT:
        raise SizeGuard(f"inputs of {len(a)}x{len(b)} exceed the {_LCS_LIMIT} guard")
    if not a or not b:
        return 0
    bv = np.asarray(b, dtype=np.int64)
    row = np.zeros(len(b) + 1, dtype=np.int64)
    for x in a:
        prev = row.copy()
        match = prev[:-1] + (bv == x)
        np.maximum(match, prev[1:], out=row[1:])
        np.maximum.accumulate(row, out=row)
    return int(row[-1])


def lcs_length_memo(a: list[int], b: list[int]) -> int:
    """Second, independent LCS implementation (top-down memo) for cross-checks."""
    if len(a) > _MEMO_LIMIT or len(b) > _MEMO_LIMIT:
        raise SizeGuard(f"inputs of {len(a)}x{len(b)} exceed the {_MEMO_LIMIT} guard")
    memo: dict[tuple[int, int], int] = {}
    # iterative worklist to dodge recursion limits
    def solve(i: int, j: int) -> int:
        stack = [(i, j)]
        while stack:
            x, y = stack[-1]
            if (x, y) in memo:
                stack.pop()
                continue
            if x == len(a) or y == len(b):
                memo[(x, y)] = 0
                stack.pop()
                continue
            if a[x] == b[y]:
                if (x + 1, y + 1) in memo:
                    memo[(x, y)] = 1 + memo[(x + 1, y + 1)]
                    stack.pop()
                else:
                    stack.append((x + 1, y + 1))
            else:
                have_r = (x + 1, y) in memo
                have_d = (x, y + 1) in memo
                if have_r and have_d:
                    memo[(x, y)] = max(memo[(x + 1, y)], memo[(x, y + 1)])
                    stack.pop()
                else:
                    if not have_r:
                        stack.append((x + 1, y))
                    if not have_d:
                        stack.append((x, y + 1))
        return memo[(i, j)]

    return solve(0, 0)


def min_edit_distance(a: list[int], b: list[int]) -> int:
    """Minimal changed-line count: (N - |LCS|) + (M - |LCS|)."""
    lcs = lcs_length(a, b)
    return (len(a) - lcs) + (len(b) - lcs)


def all_lis(perm: list[int]) -> set[tuple[int, ...]]:
    """Every longest strictly increasing subsequence, by exhaustive enumeration."""
    if len(perm) > _LIS_LIMIT:
        raise SizeGuard(f"permutation of {len(perm)} exceeds the {_LIS_LIMIT} guard")
    best: set[tuple[int, ...]] = {()}
    best_len = 0

    def extend(start: int, chain: list[int]) -> None:
        nonlocal best, best_len
        if len(chain) > best_len:
            best = {tuple(chain)}
            best_len = len(chain)
        elif len(chain) == best_len:
            best.add(tuple(chain))
        for k in range(start, len(perm)):
            if not chain or perm[k] > chain[-1]:
                chain.append(perm[k])
                extend(k + 1, chain)
                chain.pop()

    extend(0, [])
    return best


def check_flags_valid(old_tokens: list[int], new_tokens: list[int], old_flags: list[bool], new_flags: list[bool]) -> bool:
    """Common-subsequence correctness of a changed-lines result."""
    kept_old = [t for t, f in zip(old_tokens, old_flags) if not f]
    kept_new = [t for t, f in zip(new_tokens, new_flags) if not f]
    return kept_old == kept_new


def validate_merge_regions(regions, o: list[int], left: list[int], right: list[int]) -> list[str]:
    """Exhaustively check a merge-region list against the three token files.

    Verifies ordering and non-overlap in all three coordinate systems, the
    per-kind equality constraints, and that the text between regions is
    identical in ancestor, left and right.  Returns a list of violation
    descriptions (empty when valid).
    """
    problems = []
    pa = pl = pr = 0
    for idx, reg in enumerate(regions):
        if reg.start_a < pa or reg.start_l < pl or reg.start_r < pr:
            problems.append(f"region {idx} overlaps its predecessor: {reg}")
        gap_a = o[pa:reg.start_a]
        gap_l = left[pl:reg.start_l]
        gap_r = right[pr:reg.start_r]
        if not (gap_a == gap_l == gap_r):
            problems.append(f"gap before region {idx} differs between files")
        seg_a = o[reg.start_a:reg.end_a]
        seg_l = left[reg.start_l:reg.end_l]
        seg_r = right[reg.start_r:reg.end_r]
        if reg.kind == "left-change" and seg_a != seg_r:
            problems.append(f"left-change region {idx} has ancestor != right")
        if reg.kind == "right-change" and seg_a != seg_l:
            problems.append(f"right-change region {idx} has ancestor != left")
        if reg.kind == "same-change" and seg_l != seg_r:
            problems.append(f"same-change region {idx} has left != right")
        pa, pl, pr = reg.end_a, reg.end_l, reg.end_r
    if not (o[pa:] == left[pl:] == right[pr:]):
        problems.append("tail after the last region differs between files")
    return problems

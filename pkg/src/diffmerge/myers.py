"""Myers divide-and-conquer diff with the two cutoff heuristics.

The ``myers`` option runs the bidirectional shortest-edit-script search and
may pivot early on a long diagonal run (snake) or on the furthest frontier
point once a step budget is exhausted.  The ``minimal`` option disables both
cutoffs and also skips the frequent-line preprocessing step, so its output
length always equals the true minimal edit distance.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .core import ChangedLines, InternedSequence


def approx_sqrt(n: int) -> int:
    """Smallest power of two p with p*p >= n; approx_sqrt(0) == 1."""
    p = 1
    while p * p < n:
        p <<= 1
    return p


@dataclass
class HeuristicConfig:
    enable_heuristics: bool = True
    snake_length: int = 20
    min_steps: int = 256

    def step_budget(self, n: int) -> int:
        # The budget never drops below min_steps: a smaller budget would make
        # the cutoff fire on tiny files, which contradicts both observed Git
        # behaviour and the requirement that heuristics stay inert below the
        # 256-step threshold.
        return max(approx_sqrt(n), self.min_steps)


MYERS = HeuristicConfig(enable_heuristics=True)
MINIMAL = HeuristicConfig(enable_heuristics=False)


@dataclass
class PreprocessClassification:
    prefix_len: int
    suffix_len: int
    old_prechanged: list[bool]
    new_prechanged: list[bool]

    def residual(self) -> tuple[int, int]:
        return self.prefix_len, self.suffix_len


def preprocess(old: InternedSequence, new: InternedSequence, *, minimal: bool) -> PreprocessClassification:
    """Strip common ends and pre-flag lines the search need not consider.

    Lines occurring in only one file can never match and are always flagged.
    In myers mode only, a frequent line sitting inside a block of
    unmatched-or-frequent lines is additionally flagged when fewer than a
    quarter of the block is merely frequent; minimal mode skips this step so
    that its diffs stay minimal.
    """
    a, b = old.tokens, new.tokens
    n, m = len(a), len(b)
    prefix = 0
    while prefix < n and prefix < m and a[prefix] == b[prefix]:
        prefix += 1
    suffix = 0
    while suffix < n - prefix and suffix < m - prefix and a[n - 1 - suffix] == b[m - 1 - suffix]:
        suffix += 1

    count_a = Counter(a)
    count_b = Counter(b)
    old_pre = [False] * n
    new_pre = [False] * m
    for i in range(prefix, n - suffix):
        if count_b[a[i]] == 0:
            old_pre[i] = True
    for j in range(prefix, m - suffix):
        if count_a[b[j]] == 0:
            new_pre[j] = True

    if not minimal:
        _flag_frequent(a, count_a, old_pre, prefix, n - suffix)
        _flag_frequent(b, count_b, new_pre, prefix, m - suffix)

    return PreprocessClassification(prefix, suffix, old_pre, new_pre)


def _flag_frequent(tokens: list[int], counts: Counter, pre: list[bool], lo: int, hi: int) -> None:
    limit = approx_sqrt(len(tokens))
    frequent = [lo <= i < hi and not pre[i] and counts[tokens[i]] > limit for i in range(len(tokens))]
    extra = []
    for i in range(lo, hi):
        if frequent[i] and _block_qualifies(pre, frequent, i, lo, hi):
            extra.append(i)
    for i in extra:
        pre[i] = True


def _block_qualifies(unmatched: list[bool], frequent: list[bool], i: int, lo: int, hi: int) -> bool:
    # Scan outwards while lines are unmatched or frequent; require at least
    # one unmatched line on each side, and strictly fewer than a quarter of
    # the block being merely frequent.
    un_above, fr_above = 0, 1  # the line itself counts as frequent
    k = i - 1
    while k >= lo:
        if unmatched[k]:
            un_above += 1
        elif frequent[k]:
            fr_above += 1
        else:
            break
        k -= 1
    if un_above == 0:
        return False
    un_below, fr_below = 0, 0
    k = i + 1
    while k < hi:
        if unmatched[k]:
            un_below += 1
        elif frequent[k]:
            fr_below += 1
        else:
            break
        k += 1
    if un_below == 0:
        return False
    fr_total = fr_above + fr_below
    un_total = un_above + un_below
    return fr_total * 4 < fr_total + un_total


@dataclass
class _SearchEnv:
    ha1: list[int]
    ha2: list[int]
    need_min: bool
    snake: int
    heur_min: int
    mxcost: int
    kvdf: dict[int, int] = field(default_factory=dict)
    kvdb: dict[int, int] = field(default_factory=dict)


_BIG = 1 << 60


def _split(env: _SearchEnv, off1: int, lim1: int, off2: int, lim2: int, need_min: bool) -> tuple[int, int, bool, bool]:
    """Find a pivot on (or near) the shortest path; returns (i1, i2, min_lo, min_hi)."""
    ha1, ha2 = env.ha1, env.ha2
    kvdf, kvdb = env.kvdf, env.kvdb
    dmin, dmax = off1 - lim2, lim1 - off2
    fmid, bmid = off1 - off2, lim1 - lim2
    odd = (fmid - bmid) & 1
    kvdf[fmid] = off1
    kvdb[bmid] = lim1
    fmin = fmax = fmid
    bmin = bmax = bmid

    ec = 1
    while True:
        got_snake = False

        if fmin > dmin:
            fmin -= 1
            kvdf[fmin - 1] = -1
        else:
            fmin += 1
        if fmax < dmax:
            fmax += 1
            kvdf[fmax + 1] = -1
        else:
            fmax -= 1
        for d in range(fmax, fmin - 1, -2):
            if kvdf[d - 1] >= kvdf[d + 1]:
                i1 = kvdf[d - 1] + 1
            else:
                i1 = kvdf[d + 1]
            prev1 = i1
            i2 = i1 - d
            while i1 < lim1 and i2 < lim2 and ha1[i1] == ha2[i2]:
                i1 += 1
                i2 += 1
            if i1 - prev1 > env.snake:
                got_snake = True
            kvdf[d] = i1
            if odd and bmin <= d <= bmax and kvdb[d] <= i1:
                return i1, i1 - d, True, True

        if bmin > dmin:
            bmin -= 1
            kvdb[bmin - 1] = _BIG
        else:
            bmin += 1
        if bmax < dmax:
            bmax += 1
            kvdb[bmax + 1] = _BIG
        else:
            bmax -= 1
        for d in range(bmax, bmin - 1, -2):
            if kvdb[d - 1] < kvdb[d + 1]:
                i1 = kvdb[d - 1]
            else:
                i1 = kvdb[d + 1] - 1
            prev1 = i1
            i2 = i1 - d
            while i1 > off1 and i2 > off2 and ha1[i1 - 1] == ha2[i2 - 1]:
                i1 -= 1
                i2 -= 1
            if prev1 - i1 > env.snake:
                got_snake = True
            kvdb[d] = i1
            if not odd and fmin <= d <= fmax and i1 <= kvdf[d]:
                return i1, i1 - d, True, True

        if need_min:
            ec += 1
            continue

        # Snake cutoff: pivot on the best-scoring frontier point that ends a
        # long run of matching lines.  Score is total progress minus the
        # distance to the cross-file diagonal; ties go to the lower diagonal.
        if got_snake and ec > env.heur_min:
            best = 0
            spl: tuple[int, int] | None = None
            for d in range(fmin, fmax + 1, 2):
                dd = d - fmid if d > fmid else fmid - d
                i1 = kvdf[d]
                i2 = i1 - d
                v = (i1 - off1) + (i2 - off2) - dd
                if (
                    v > 4 * ec
                    and v > best
                    and off1 + env.snake <= i1 < lim1
                    and off2 + env.snake <= i2 < lim2
                ):
                    if all(ha1[i1 - k] == ha2[i2 - k] for k in range(1, env.snake + 1)):
                        best = v
                        spl = (i1, i2)
            if spl is not None:
                return spl[0], spl[1], True, False

            best = 0
            spl = None
            for d in range(bmin, bmax + 1, 2):
                dd = d - bmid if d > bmid else bmid - d
                i1 = kvdb[d]
                i2 = i1 - d
                v = (lim1 - i1) + (lim2 - i2) - dd
                if (
                    v > 4 * ec
                    and v > best
                    and off1 < i1 <= lim1 - env.snake
                    and off2 < i2 <= lim2 - env.snake
                ):
                    if all(ha1[i1 + k] == ha2[i2 + k] for k in range(env.snake)):
                        best = v
                        spl = (i1, i2)
            if spl is not None:
                return spl[0], spl[1], False, True

        # Budget cutoff: give up and pivot on the point furthest from the
        # respective origin.
        if ec >= env.mxcost:
            fbest = -1
            fbest1 = -1
            for d in range(fmax, fmin - 1, -2):
                i1 = min(kvdf[d], lim1)
                i2 = i1 - d
                if lim2 < i2:
                    i1 = lim2 + d
                    i2 = lim2
                if fbest < i1 + i2:
                    fbest = i1 + i2
                    fbest1 = i1
            bbest = _BIG
            bbest1 = _BIG
            for d in range(bmax, bmin - 1, -2):
                i1 = max(off1, kvdb[d])
                i2 = i1 - d
                if i2 < off2:
                    i1 = off2 + d
                    i2 = off2
                if bbest > i1 + i2:
                    bbest = i1 + i2
                    bbest1 = i1
            if (lim1 + lim2) - bbest < fbest - (off1 + off2):
                return fbest1, fbest - fbest1, True, False
            return bbest1, bbest - bbest1, False, True

        ec += 1


def _recs_cmp(env: _SearchEnv, rchg1: list[bool], rchg2: list[bool]) -> None:
    ha1, ha2 = env.ha1, env.ha2
    stack = [(0, len(ha1), 0, len(ha2), env.need_min)]
    while stack:
        off1, lim1, off2, lim2, need_min = stack.pop()
        while off1 < lim1 and off2 < lim2 and ha1[off1] == ha2[off2]:
            off1 += 1
            off2 += 1
        while off1 < lim1 and off2 < lim2 and ha1[lim1 - 1] == ha2[lim2 - 1]:
            lim1 -= 1
            lim2 -= 1
        if off1 == lim1:
            for j in range(off2, lim2):
                rchg2[j] = True
        elif off2 == lim2:
            for i in range(off1, lim1):
                rchg1[i] = True
        else:
            i1, i2, min_lo, min_hi = _split(env, off1, lim1, off2, lim2, need_min)
            stack.append((i1, lim1, i2, lim2, min_hi))
            stack.append((off1, i1, off2, i2, min_lo))


def myers_flags(old_tokens: list[int], new_tokens: list[int], config: HeuristicConfig) -> ChangedLines:
    """Run the bidirectional search on bare token lists (no preprocessing)."""
    of = [False] * len(old_tokens)
    nf = [False] * len(new_tokens)
    budget = config.step_budget(len(old_tokens) + len(new_tokens))
    env = _SearchEnv(
        old_tokens,
        new_tokens,
        need_min=not config.enable_heuristics,
        snake=config.snake_length,
        heur_min=config.min_steps,
        mxcost=budget,
    )
    _recs_cmp(env, of, nf)
    return ChangedLines(of, nf)


def diff_myers(old: InternedSequence, new: InternedSequence, config: HeuristicConfig | None = None) -> ChangedLines:
    """Full myers/minimal pipeline: preprocess, search kept lines, map back."""
    if config is None:
        config = MYERS
    cls = preprocess(old, new, minimal=not config.enable_heuristics)
    n, m = len(old), len(new)
    of = list(cls.old_prechanged)
    nf = list(cls.new_prechanged)

    kept_old = [i for i in range(cls.prefix_len, n - cls.suffix_len) if not of[i]]
    kept_new = [j for j in range(cls.prefix_len, m - cls.suffix_len) if not nf[j]]
    sub = myers_flags(
        [old.tokens[i] for i in kept_old],
        [new.tokens[j] for j in kept_new],
        config,
    )
    for i, flag in zip(kept_old, sub.old_flags):
        if flag:
            of[i] = True
    for j, flag in zip(kept_new, sub.new_flags):
        if flag:
            nf[j] = True
    return ChangedLines(of, nf)

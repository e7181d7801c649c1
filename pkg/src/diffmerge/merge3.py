"""Three-way merge: region computation, zealous refinement, and rendering.

The pipeline diffs the ancestor against each side, walks the two hunk lists
through a six-case loop to build merge regions, optionally refines conflicts
with a two-way diff of their sides, and renders with conflict markers in
merge, diff3 or zdiff3 style.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .core import EditScript, InternedSequence, InternTable, flags_to_script
from .engine import diff_lines

LEFT = "left-change"
RIGHT = "right-change"
SAME = "same-change"
CONFLICT = "conflict"

STYLES = ("merge", "diff3", "zdiff3")

_REMERGE_GAP = 3  # conflicts separated by fewer common lines are rejoined


class MergeError(Exception):
    pass


class InvariantViolation(MergeError):
    """Computed merge regions are not ordered and non-overlapping."""


@dataclass(frozen=True)
class MergeRegion:
    start_a: int
    end_a: int
    start_l: int
    end_l: int
    start_r: int
    end_r: int
    kind: str


@dataclass(frozen=True)
class MergeOptions:
    algorithm: str = "histogram"
    style: str = "merge"
    zealous: bool = True
    labels: tuple[str, str, str] = ("ours", "base", "theirs")
    # Compatibility switch: skip the false-conflict re-check that runs after
    # neighbouring conflicts are rejoined, reproducing the historical
    # behaviour where a rejoined conflict can end up with identical sides.
    skip_remerge_recheck: bool = False

    def __post_init__(self) -> None:
        if self.style not in STYLES:
            raise MergeError(f"unknown style {self.style!r}")
        if self.style == "diff3" and self.zealous:
            raise MergeError("zealous refinement is not compatible with the diff3 style")


@dataclass
class MergeOutcome:
    regions: list[MergeRegion]
    rendered: bytes
    conflict_count: int
    conflict_line_count: int

    @property
    def clean(self) -> bool:
        return self.conflict_count == 0


def compute_merge_regions(
    changes_l: EditScript,
    changes_r: EditScript,
    left: InternedSequence,
    right: InternedSequence,
    len_o: int,
) -> list[MergeRegion]:
    """Walk both hunk lists and classify every changed stretch.

    One-sided changes become left/right regions positioned in the opposite
    file by alignment lookback; overlapping changes become conflicts expanded
    to cover both old ranges; identical changes are dropped silently (false
    conflicts).  Touching regions are coalesced, combining kinds into a
    conflict when they differ.
    """
    regions: list[MergeRegion] = []

    def emit(kind: str, sa: int, ea: int, sl: int, el: int, sr: int, er: int) -> None:
        if regions:
            prev = regions[-1]
            if sa <= prev.end_a or sl <= prev.end_l or sr <= prev.end_r:
                kind = kind if kind == prev.kind else CONFLICT
                regions[-1] = MergeRegion(
                    prev.start_a,
                    max(prev.end_a, ea),
                    prev.start_l,
                    max(prev.end_l, el),
                    prev.start_r,
                    max(prev.end_r, er),
                    kind,
                )
                return
        regions.append(MergeRegion(sa, ea, sl, el, sr, er, kind))

    ls = list(changes_l)
    rs = list(changes_r)
    i = j = 0
    while i < len(ls) and j < len(rs):
        cl, cr = ls[i], rs[j]
        if cl.end_old < cr.start_old:
            off = cr.start_new - cr.start_old
            emit(LEFT, cl.start_old, cl.end_old, cl.start_new, cl.end_new,
                 cl.start_old + off, cl.end_old + off)
            i += 1
            continue
        if cr.end_old < cl.start_old:
            off = cl.start_new - cl.start_old
            emit(RIGHT, cr.start_old, cr.end_old, cr.start_old + off, cr.end_old + off,
                 cr.start_new, cr.end_new)
            j += 1
            continue
        identical = (
            cl.start_old == cr.start_old
            and cl.end_old == cr.end_old
            and cl.end_new - cl.start_new == cr.end_new - cr.start_new
            and left.tokens[cl.start_new:cl.end_new] == right.tokens[cr.start_new:cr.end_new]
        )
        if not identical:
            sa = min(cl.start_old, cr.start_old)
            ea = max(cl.end_old, cr.end_old)
            emit(
                CONFLICT,
                sa,
                ea,
                cl.start_new - (cl.start_old - sa),
                cl.end_new + (ea - cl.end_old),
                cr.start_new - (cr.start_old - sa),
                cr.end_new + (ea - cr.end_old),
            )
        # drop the change ending first; both when they end together
        if cl.end_old >= cr.end_old:
            j += 1
        if cr.end_old >= cl.end_old:
            i += 1
    len_l, len_r = len(left), len(right)
    while i < len(ls):
        cl = ls[i]
        off = len_r - len_o
        emit(LEFT, cl.start_old, cl.end_old, cl.start_new, cl.end_new,
             cl.start_old + off, cl.end_old + off)
        i += 1
    while j < len(rs):
        cr = rs[j]
        off = len_l - len_o
        emit(RIGHT, cr.start_old, cr.end_old, cr.start_old + off, cr.end_old + off,
             cr.start_new, cr.end_new)
        j += 1

    _check_ordering(regions)
    return regions


def _check_ordering(regions: list[MergeRegion]) -> None:
    for prev, cur in zip(regions, regions[1:]):
        if cur.start_a < prev.end_a or cur.start_l < prev.end_l or cur.start_r < prev.end_r:
            raise InvariantViolation(f"regions overlap: {prev} then {cur}")


def refine_zealous(
    region: MergeRegion,
    left: InternedSequence,
    right: InternedSequence,
    algorithm: str,
) -> list[MergeRegion]:
    """Split one conflict along the unchanged runs of a two-way side diff.

    Identical sides demote the whole region to a same-change.  Sub-conflicts
    inherit the ancestor range on the first piece only; the ranges of later
    pieces are empty, which is why this refinement cannot feed the diff3
    renderer.
    """
    if region.kind != CONFLICT:
        return [region]
    if region.end_l == region.start_l or region.end_r == region.start_r:
        return [region]

    sub_l = InternedSequence(
        left.tokens[region.start_l:region.end_l], left.raw[region.start_l:region.end_l]
    )
    sub_r = InternedSequence(
        right.tokens[region.start_r:region.end_r], right.raw[region.start_r:region.end_r]
    )
    flags = diff_lines(sub_l, sub_r, algorithm)
    script = flags_to_script(flags, sub_l, sub_r)
    if not len(script):
        return [replace(region, kind=SAME)]

    pieces = []
    first = True
    for hunk in script:
        sa, ea = (region.start_a, region.end_a) if first else (region.end_a, region.end_a)
        first = False
        pieces.append(
            MergeRegion(
                sa,
                ea,
                region.start_l + hunk.start_old,
                region.start_l + hunk.end_old,
                region.start_r + hunk.start_new,
                region.start_r + hunk.end_new,
                CONFLICT,
            )
        )
    return pieces


def _remerge_close_conflicts(regions: list[MergeRegion]) -> list[MergeRegion]:
    out: list[MergeRegion] = []
    for region in regions:
        if (
            out
            and out[-1].kind == CONFLICT
            and region.kind == CONFLICT
            and region.start_l - out[-1].end_l < _REMERGE_GAP
        ):
            prev = out[-1]
            out[-1] = MergeRegion(
                prev.start_a,
                max(prev.end_a, region.end_a),
                prev.start_l,
                region.end_l,
                prev.start_r,
                region.end_r,
                CONFLICT,
            )
        else:
            out.append(region)
    return out


def _demote_equal_sides(regions: list[MergeRegion], left: InternedSequence, right: InternedSequence) -> list[MergeRegion]:
    out = []
    for region in regions:
        if (
            region.kind == CONFLICT
            and left.tokens[region.start_l:region.end_l] == right.tokens[region.start_r:region.end_r]
        ):
            region = replace(region, kind=SAME)
        out.append(region)
    return out


def _trim_zdiff3(region: MergeRegion, o: InternedSequence, left: InternedSequence, right: InternedSequence) -> MergeRegion:
    """Drop line runs common to all three files from both ends of a conflict."""
    sa, ea = region.start_a, region.end_a
    sl, el = region.start_l, region.end_l
    sr, er = region.start_r, region.end_r
    while (
        sa < ea
        and sl < el
        and sr < er
        and o.tokens[sa] == left.tokens[sl] == right.tokens[sr]
    ):
        sa += 1
        sl += 1
        sr += 1
    while (
        sa < ea
        and sl < el
        and sr < er
        and o.tokens[ea - 1] == left.tokens[el - 1] == right.tokens[er - 1]
    ):
        ea -= 1
        el -= 1
        er -= 1
    return MergeRegion(sa, ea, sl, el, sr, er, CONFLICT)


class _Writer:
    """Byte assembly that never lets a marker share a line with content."""

    def __init__(self) -> None:
        self.parts: list[bytes] = []

    def lines(self, seq: InternedSequence, start: int, end: int) -> None:
        self.parts.extend(seq.raw[start:end])

    def marker(self, text: bytes) -> None:
        if self.parts and not self.parts[-1].endswith(b"\n"):
            self.parts.append(b"\n")
        self.parts.append(text)

    def getvalue(self) -> bytes:
        return b"".join(self.parts)


def render(
    regions: list[MergeRegion],
    o: InternedSequence,
    left: InternedSequence,
    right: InternedSequence,
    options: MergeOptions,
) -> bytes:
    label_l, label_o, label_r = (s.encode() for s in options.labels)
    out = _Writer()
    cursor = 0
    for region in regions:
        out.lines(left, cursor, region.start_l)
        if region.kind in (LEFT, SAME):
            out.lines(left, region.start_l, region.end_l)
        elif region.kind == RIGHT:
            out.lines(right, region.start_r, region.end_r)
        else:
            out.marker(b"<<<<<<<" + (b" " + label_l if label_l else b"") + b"\n")
            out.lines(left, region.start_l, region.end_l)
            if options.style in ("diff3", "zdiff3"):
                out.marker(b"|||||||" + (b" " + label_o if label_o else b"") + b"\n")
                out.lines(o, region.start_a, region.end_a)
            out.marker(b"=======\n")
            out.lines(right, region.start_r, region.end_r)
            out.marker(b">>>>>>>" + (b" " + label_r if label_r else b"") + b"\n")
        cursor = region.end_l
    out.lines(left, cursor, len(left))
    return out.getvalue()


def merge_regions_pipeline(
    o: InternedSequence,
    left: InternedSequence,
    right: InternedSequence,
    options: MergeOptions,
) -> list[MergeRegion]:
    flags_l = diff_lines(o, left, options.algorithm)
    flags_r = diff_lines(o, right, options.algorithm)
    script_l = flags_to_script(flags_l, o, left)
    script_r = flags_to_script(flags_r, o, right)
    regions = compute_merge_regions(script_l, script_r, left, right, len(o))

    if options.zealous and options.style == "merge":
        refined: list[MergeRegion] = []
        for region in regions:
            refined.extend(refine_zealous(region, left, right, options.algorithm))
        refined = _demote_equal_sides(refined, left, right)  # pre-join check
        refined = _remerge_close_conflicts(refined)
        if not options.skip_remerge_recheck:
            refined = _demote_equal_sides(refined, left, right)
        regions = refined
    elif options.style == "zdiff3" and options.zealous:
        regions = [
            _trim_zdiff3(r, o, left, right) if r.kind == CONFLICT else r
            for r in regions
        ]
    return regions


def merge3(
    o_data: bytes,
    left_data: bytes,
    right_data: bytes,
    options: MergeOptions | None = None,
) -> MergeOutcome:
    """Merge two descendants of a common ancestor; all inputs are raw bytes."""
    if options is None:
        options = MergeOptions()
    table = InternTable()
    o = table.intern(o_data)
    left = table.intern(left_data)
    right = table.intern(right_data)

    regions = merge_regions_pipeline(o, left, right, options)
    rendered = render(regions, o, left, right, options)
    conflicts = [r for r in regions if r.kind == CONFLICT]
    line_count = sum((r.end_l - r.start_l) + (r.end_r - r.start_r) for r in conflicts)
    return MergeOutcome(regions, rendered, len(conflicts), line_count)

"""Line interning, diff representations, patch application and unified rendering.

A diff problem (two or three files) shares one :class:`InternTable` so that
equal line content gets equal integer tokens across all files involved.
Lines are byte strings split on LF only; a CR is ordinary line content.  A
final line without a trailing newline is still one line, and its token
differs from the same content with a newline (matching the unified-diff
``\\ No newline at end of file`` convention).
"""

from __future__ import annotations

from dataclasses import dataclass, field


class DiffError(Exception):
    pass


class InvalidFlags(DiffError):
    """Unflagged lines of old and new do not form the same token sequence."""


class RangeError(DiffError):
    """An edit script references lines outside the file it is applied to."""


def split_lines(data: bytes) -> list[bytes]:
    """Split on LF, keeping terminators. ``b"a\\nb"`` -> ``[b"a\\n", b"b"]``."""
    if not data:
        return []
    parts = data.split(b"\n")
    records = [p + b"\n" for p in parts[:-1]]
    if parts[-1]:
        records.append(parts[-1])
    return records


@dataclass
class InternedSequence:
    """A file as interned line tokens plus the original line bytes."""

    tokens: list[int]
    raw: list[bytes]

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def missing_final_newline(self) -> bool:
        return bool(self.raw) and not self.raw[-1].endswith(b"\n")

    def to_bytes(self) -> bytes:
        return b"".join(self.raw)


class InternTable:
    """Token assignment shared by the files of one diff or merge problem."""

    def __init__(self) -> None:
        self._ids: dict[bytes, int] = {}

    def intern(self, data: bytes) -> InternedSequence:
        records = split_lines(data)
        ids = self._ids
        tokens = []
        for rec in records:
            tok = ids.get(rec)
            if tok is None:
                tok = len(ids)
                ids[rec] = tok
            tokens.append(tok)
        return InternedSequence(tokens, records)


def intern_files(*files: bytes) -> tuple[InternedSequence, ...]:
    table = InternTable()
    return tuple(table.intern(f) for f in files)


@dataclass
class ChangedLines:
    """Per-line change flags for the two files of a diff."""

    old_flags: list[bool]
    new_flags: list[bool]

    def flag_count(self) -> int:
        return sum(self.old_flags) + sum(self.new_flags)


@dataclass(frozen=True)
class Change:
    """One hunk: old[start_old:end_old] was replaced by new[start_new:end_new].

    Ranges are half-open and 0-based; an empty old range is a pure insertion,
    an empty new range a pure deletion.
    """

    start_old: int
    end_old: int
    start_new: int
    end_new: int

    def __post_init__(self) -> None:
        if not (0 <= self.start_old <= self.end_old and 0 <= self.start_new <= self.end_new):
            raise RangeError(f"malformed change {self}")


@dataclass(frozen=True)
class EditScript:
    changes: tuple[Change, ...] = field(default_factory=tuple)

    def __iter__(self):
        return iter(self.changes)

    def __len__(self) -> int:
        return len(self.changes)


def flags_to_script(flags: ChangedLines, old: InternedSequence, new: InternedSequence) -> EditScript:
    """Convert changed-line flags into hunks.

    Maximal runs of flagged lines at one alignment point become one Change.
    Raises InvalidFlags if the unflagged lines of both files are not the
    same token sequence.
    """
    of, nf = flags.old_flags, flags.new_flags
    if len(of) != len(old) or len(nf) != len(new):
        raise InvalidFlags("flag arrays do not match file lengths")
    changes = []
    i = j = 0
    n, m = len(old), len(new)
    while i < n or j < m:
        if (i < n and of[i]) or (j < m and nf[j]):
            s_old, s_new = i, j
            while i < n and of[i]:
                i += 1
            while j < m and nf[j]:
                j += 1
            changes.append(Change(s_old, i, s_new, j))
        elif i < n and j < m:
            if old.tokens[i] != new.tokens[j]:
                raise InvalidFlags(f"unflagged lines differ at old[{i}] vs new[{j}]")
            i += 1
            j += 1
        else:
            raise InvalidFlags("unflagged tail of one file has no counterpart")
    return EditScript(tuple(changes))


def script_to_flags(script: EditScript, old_len: int, new_len: int) -> ChangedLines:
    """Inverse of flags_to_script."""
    of = [False] * old_len
    nf = [False] * new_len
    for c in script:
        if c.end_old > old_len or c.end_new > new_len:
            raise RangeError(f"{c} outside file bounds")
        for i in range(c.start_old, c.end_old):
            of[i] = True
        for j in range(c.start_new, c.end_new):
            nf[j] = True
    return ChangedLines(of, nf)


def apply_script(old: InternedSequence, script: EditScript, new: InternedSequence) -> bytes:
    """Apply a script produced by diffing old against new.

    Replaced regions are taken from ``new``; everything else from ``old``.
    For any script produced by the engines here the result is byte-identical
    to ``new.to_bytes()``.
    """
    out = []
    cursor = 0
    for c in script:
        if c.end_old > len(old) or c.end_new > len(new) or c.start_old < cursor:
            raise RangeError(f"{c} does not fit old file of length {len(old)}")
        out.extend(old.raw[cursor:c.start_old])
        out.extend(new.raw[c.start_new:c.end_new])
        cursor = c.end_old
    out.extend(old.raw[cursor:])
    return b"".join(out)


_NO_NEWLINE = b"\n\\ No newline at end of file\n"


def _emit(out: list[bytes], prefix: bytes, seq: InternedSequence, index: int) -> None:
    rec = seq.raw[index]
    if rec.endswith(b"\n"):
        out.append(prefix + rec)
    else:
        # last line of the file without a trailing newline
        out.append(prefix + rec + _NO_NEWLINE)


def render_unified(
    old: InternedSequence,
    new: InternedSequence,
    script: EditScript,
    context_lines: int = 3,
) -> bytes:
    """Render hunks in unified-diff format (headers only, no ---/+++ lines).

    Changes whose unchanged gap is at most 2*context_lines are merged into a
    single hunk, mirroring classic unified-diff behaviour.
    """
    changes = list(script)
    if not changes:
        return b""

    groups: list[list[Change]] = [[changes[0]]]
    for c in changes[1:]:
        if c.start_old - groups[-1][-1].end_old <= 2 * context_lines:
            groups[-1].append(c)
        else:
            groups.append([c])

    out: list[bytes] = []
    for group in groups:
        old_lo = max(group[0].start_old - context_lines, 0)
        old_hi = min(group[-1].end_old + context_lines, len(old))
        new_lo = max(group[0].start_new - context_lines, 0)
        new_hi = min(group[-1].end_new + context_lines, len(new))
        out.append(_hunk_header(old_lo, old_hi, new_lo, new_hi))
        i = old_lo
        for c in group:
            for k in range(i, c.start_old):
                _emit(out, b" ", old, k)
            for k in range(c.start_old, c.end_old):
                _emit(out, b"-", old, k)
            for k in range(c.start_new, c.end_new):
                _emit(out, b"+", new, k)
            i = c.end_old
        for k in range(i, old_hi):
            _emit(out, b" ", old, k)
    return b"".join(out)


def _hunk_header(old_lo: int, old_hi: int, new_lo: int, new_hi: int) -> bytes:
    def fmt(lo: int, hi: int) -> bytes:
        count = hi - lo
        # for an empty range the convention is the line number *before* it
        start = lo + 1 if count else lo
        return b"%d" % start if count == 1 else b"%d,%d" % (start, count)

    return b"@@ -" + fmt(old_lo, old_hi) + b" +" + fmt(new_lo, new_hi) + b" @@\n"


def parse_unified(patch: bytes) -> EditScript:
    """Parse output of render_unified back into an edit script."""
    changes: list[Change] = []
    old_pos = new_pos = 0
    pending: list[tuple[int, int, int, int]] | None = None

    def flush_run(run_old: list[int], run_new: list[int]) -> None:
        if run_old or run_new:
            so = run_old[0] if run_old else old_pos
            sn = run_new[0] if run_new else new_pos
            changes.append(
                Change(so, so + len(run_old), sn, sn + len(run_new))
            )

    lines = patch.split(b"\n")
    i = 0
    run_old: list[int] = []
    run_new: list[int] = []
    while i < len(lines):
        line = lines[i]
        if line.startswith(b"@@"):
            flush_run(run_old, run_new)
            run_old, run_new = [], []
            header = line.split(b"@@")[1].strip()
            old_part, new_part = header.split(b" ")
            old_pos = _parse_range(old_part)
            new_pos = _parse_range(new_part)
        elif line.startswith(b"-"):
            run_old.append(old_pos)
            old_pos += 1
        elif line.startswith(b"+"):
            run_new.append(new_pos)
            new_pos += 1
        elif line.startswith(b" "):
            flush_run(run_old, run_new)
            run_old, run_new = [], []
            old_pos += 1
            new_pos += 1
        # "\ No newline at end of file" and blank tail lines need no action
        i += 1
    flush_run(run_old, run_new)
    return EditScript(tuple(changes))


def _parse_range(part: bytes) -> int:
    body = part[1:]  # strip - or +
    if b"," in body:
        start, count = body.split(b",")
        return int(start) - 1 if int(count) else int(start)
    return int(body) - 1

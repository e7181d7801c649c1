import random

import pytest

from diffmerge import oracle
from diffmerge.core import Change, EditScript, InternTable
from diffmerge.merge3 import (
    CONFLICT,
    LEFT,
    RIGHT,
    SAME,
    MergeError,
    MergeOptions,
    MergeRegion,
    compute_merge_regions,
    merge3,
    refine_zealous,
)

from conftest import random_file


def interned(*files):
    table = InternTable()
    return tuple(table.intern(f) for f in files)


def test_options_reject_diff3_with_zealous():
    with pytest.raises(MergeError):
        MergeOptions(style="diff3", zealous=True)
    MergeOptions(style="diff3", zealous=False)  # fine


def test_empty_scripts_give_no_regions():
    o, l, r = interned(b"a\n", b"a\n", b"a\n")
    assert compute_merge_regions(EditScript(), EditScript(), l, r, 1) == []


def test_one_sided_left_change_lookback():
    # O: a b c, L: a X c (change at line 1), R: a b c d (appended d)
    o, l, r = interned(b"a\nb\nc\n", b"a\nX\nc\n", b"a\nb\nc\nd\n")
    sl = EditScript((Change(1, 2, 1, 2),))
    sr = EditScript((Change(3, 3, 3, 4),))
    regions = compute_merge_regions(sl, sr, l, r, 3)
    assert regions[0] == MergeRegion(1, 2, 1, 2, 1, 2, LEFT)
    assert regions[1].kind == RIGHT
    assert not oracle.validate_merge_regions(regions, o.tokens, l.tokens, r.tokens)


def test_identical_change_is_applied_silently():
    o, l, r = interned(b"a\nb\nc\n", b"a\nX\nc\n", b"a\nX\nc\n")
    sl = EditScript((Change(1, 2, 1, 2),))
    sr = EditScript((Change(1, 2, 1, 2),))
    regions = compute_merge_regions(sl, sr, l, r, 3)
    assert regions == []
    out = merge3(b"a\nb\nc\n", b"a\nX\nc\n", b"a\nX\nc\n")
    assert out.clean and out.rendered == b"a\nX\nc\n"


def test_conflict_region_covers_both_changes_all_sign_combinations():
    # brute-validate the case-3 expansion for every o_s/o_e sign combination
    rng = random.Random(13)
    checked = set()
    for _ in range(4000):
        o_len = rng.randrange(2, 7)
        base = [b"o%d\n" % i for i in range(o_len)]
        s1, e1 = sorted(rng.sample(range(o_len + 1), 2)) if rng.random() < 0.8 else ((lambda x: (x, x))(rng.randrange(o_len + 1)))
        s2, e2 = sorted(rng.sample(range(o_len + 1), 2)) if rng.random() < 0.8 else ((lambda x: (x, x))(rng.randrange(o_len + 1)))
        ins1 = [b"L%d\n" % i for i in range(rng.randrange(3))]
        ins2 = [b"R%d\n" % i for i in range(rng.randrange(3))]
        if (e1 - s1) + len(ins1) == 0 or (e2 - s2) + len(ins2) == 0:
            continue
        if (s1, e1) == (s2, e2) and not ins1 and not ins2:
            continue  # identical deletions are applied silently, no region
        left_lines = base[:s1] + ins1 + base[e1:]
        right_lines = base[:s2] + ins2 + base[e2:]
        table = InternTable()
        o = table.intern(b"".join(base))
        l = table.intern(b"".join(left_lines))
        r = table.intern(b"".join(right_lines))
        sl = EditScript((Change(s1, e1, s1, s1 + len(ins1)),))
        sr = EditScript((Change(s2, e2, s2, s2 + len(ins2)),))
        regions = compute_merge_regions(sl, sr, l, r, o_len)
        problems = oracle.validate_merge_regions(regions, o.tokens, l.tokens, r.tokens)
        assert not problems, (base, left_lines, right_lines, regions, problems)
        if not (e1 < s2 or e2 < s1):
            checked.add((s1 - s2 < 0, e1 - e2 < 0))
    assert len(checked) == 4  # all four sign combinations exercised


def test_abab_locality_conflict():
    for k in (2, 10, 100):
        o = b"a\nb\n" * k
        left = b"a\nb\n" + o
        right = b"a\nb\n" * (k - 1) + b"c\n"
        out = merge3(o, left, right)
        assert out.conflict_count >= 1


def test_refine_demotes_identical_sides():
    o, l, r = interned(b"x\n", b"s\nt\n", b"s\nt\n")
    region = MergeRegion(0, 1, 0, 2, 0, 2, CONFLICT)
    (got,) = refine_zealous(region, l, r, "histogram")
    assert got.kind == SAME


def test_refine_removes_aa_conflict():
    # mismatched hunks made both sides of this conflict read "a a"
    o, l, r = interned(b"X\na\nY\n", b"X\na\na\nY\n", b"X\na\na\nY\n")
    region = MergeRegion(1, 2, 1, 3, 1, 3, CONFLICT)
    (got,) = refine_zealous(region, l, r, "histogram")
    assert got.kind == SAME


def test_refine_splits_and_remerges_close_conflicts():
    # sides share two common lines between two differing spots: the refined
    # pieces are rejoined because the gap is below three lines
    o = b"base\n"
    left = b"L1\ncommon1\ncommon2\nL2\n"
    right = b"R1\ncommon1\ncommon2\nR2\n"
    out = merge3(o, left, right)
    assert out.conflict_count == 1
    assert out.rendered.count(b"<<<<<<<") == 1
    # with three common lines in between the conflicts stay separate
    left = b"L1\nc1\nc2\nc3\nL2\n"
    right = b"R1\nc1\nc2\nc3\nR2\n"
    out = merge3(o, left, right)
    assert out.conflict_count == 2


def test_merge_style_render_bytes():
    out = merge3(b"one\nbase\nlast\n", b"one\nleft\nlast\n", b"one\nright\nlast\n")
    assert out.rendered == (
        b"one\n"
        b"<<<<<<< ours\n"
        b"left\n"
        b"=======\n"
        b"right\n"
        b">>>>>>> theirs\n"
        b"last\n"
    )
    assert out.conflict_count == 1
    assert out.conflict_line_count == 2


def test_diff3_style_shows_ancestor():
    opts = MergeOptions(style="diff3", zealous=False)
    out = merge3(b"one\nbase\nlast\n", b"one\nleft\nlast\n", b"one\nright\nlast\n", opts)
    assert out.rendered == (
        b"one\n"
        b"<<<<<<< ours\n"
        b"left\n"
        b"||||||| base\n"
        b"base\n"
        b"=======\n"
        b"right\n"
        b">>>>>>> theirs\n"
        b"last\n"
    )


def test_marker_shape_is_seven_chars_plus_label():
    out = merge3(b"b\n", b"l\n", b"r\n", MergeOptions(labels=("L", "B", "R")))
    lines = out.rendered.splitlines()
    assert lines[0] == b"<<<<<<< L"
    assert b"=======" in lines
    assert lines[-1] == b">>>>>>> R"


def test_zdiff3_trims_common_ends():
    # both sides append the same trailer inside an otherwise conflicting block
    o = b"keep\nmid\nkeep2\n"
    left = b"keep\nLEFT\nshared\nkeep2\n"
    right = b"keep\nRIGHT\nshared\nkeep2\n"
    out = merge3(o, left, right, MergeOptions(style="zdiff3"))
    # "shared" is common to both sides but absent from the ancestor range, so
    # the three-way trim keeps it inside the conflict
    assert out.conflict_count == 1

    # when the run is common to all three files it moves out of the conflict
    o = b"keep\nshared\nmid\nkeep2\n"
    left = b"keep\nshared\nLEFT\nkeep2\n"
    right = b"keep\nshared\nRIGHT\nkeep2\n"
    out = merge3(o, left, right, MergeOptions(style="zdiff3"))
    rendered = out.rendered
    head, _, _ = rendered.partition(b"<<<<<<<")
    assert b"shared\n" in head


def test_one_sided_identities_byte_exact():
    rng = random.Random(3)
    for _ in range(150):
        o = random_file(rng, 12, 3)
        x = random_file(rng, 12, 3)
        out = merge3(o, o, x)
        assert out.clean and out.rendered == x
        out = merge3(o, x, o)
        assert out.clean and out.rendered == x


def test_clean_merge_with_equal_sides_returns_them():
    rng = random.Random(14)
    for _ in range(100):
        o = random_file(rng, 10, 3)
        x = random_file(rng, 10, 3)
        out = merge3(o, x, x)
        assert out.clean and out.rendered == x


def test_duplicated_addition_same_change():
    # both sides added "A B" around the existing A, but the two diffs pick
    # mismatched minimal hunks; the merge silently duplicates the addition
    o = b"X\nA\nY\n"
    left = b"j\nX\nA\nB\nA\nY\n"
    right = b"X\nA\nB\nA\nY\nj\n"
    opts = MergeOptions(algorithm="minimal")
    out = merge3(o, left, right, opts)
    assert out.clean
    assert b"X\nA\nB\nA\nB\nA\nY\n" in out.rendered


def test_duplicated_addition_different_changes_merge_cleanly():
    o = b"X\nA\nY\n"
    left = b"j\nX\nA\nB\nA\nY\n"
    right = b"X\nA\nC\nA\nY\nj\n"
    opts = MergeOptions(algorithm="minimal")
    out = merge3(o, left, right, opts)
    assert out.clean
    assert b"X\nA\nB\nA\nC\nA\nY\n" in out.rendered


def test_non_commutative_merge_keeps_different_middle_line():
    o = b"X\n"
    left = b"A\na\nb\nc\nB\na\nb\nc\n"
    right = b"B\na\nb\nc\nA\na\nb\nc\n"
    m1 = merge3(o, left, right)
    m2 = merge3(o, right, left)
    assert m1.conflict_count == m2.conflict_count == 2

    def between_conflicts(rendered):
        after_first = rendered.split(b">>>>>>> theirs\n", 1)[1]
        return after_first.split(b"<<<<<<< ours\n", 1)[0]

    assert between_conflicts(m1.rendered) == b"B\na\nb\nc\n"
    assert between_conflicts(m2.rendered) == b"A\na\nb\nc\n"


def test_without_zealous_merge_is_mirror_symmetric():
    rng = random.Random(1002)
    opts = MergeOptions(zealous=False)
    for _ in range(150):
        o = random_file(rng, 8, 3)
        left = random_file(rng, 8, 3)
        right = random_file(rng, 8, 3)
        m1 = merge3(o, left, right, opts)
        m2 = merge3(o, right, left, opts)
        mirrored = [
            MergeRegion(r.start_a, r.end_a, r.start_r, r.end_r, r.start_l, r.end_l,
                        {LEFT: RIGHT, RIGHT: LEFT}.get(r.kind, r.kind))
            for r in m2.regions
        ]
        assert m1.regions == mirrored


def test_region_ordering_holds_after_refinement():
    rng = random.Random(2002)
    for _ in range(300):
        o = random_file(rng, 8, 3)
        left = random_file(rng, 8, 3)
        right = random_file(rng, 8, 3)
        out = merge3(o, left, right)
        pa = pl = pr = 0
        for reg in out.regions:
            assert reg.start_a >= pa and reg.start_l >= pl and reg.start_r >= pr
            pa, pl, pr = reg.end_a, reg.end_l, reg.end_r


def test_default_merge_never_emits_equal_sided_conflicts():
    rng = random.Random(3003)
    for _ in range(2000):
        o = random_file(rng, 6, 3)
        left = random_file(rng, 6, 3)
        right = random_file(rng, 6, 3)
        out = merge3(o, left, right)
        table = InternTable()
        oo, ll, rr = table.intern(o), table.intern(left), table.intern(right)
        for reg in out.regions:
            if reg.kind == CONFLICT:
                assert ll.tokens[reg.start_l:reg.end_l] != rr.tokens[reg.start_r:reg.end_r]


RESIDUAL_WITNESS = (b"a\na\na\nb\nb\nb\nb\n", b"b\nb\na\na\nb\n", b"b\nb\na\na\nb\na\n")


def test_compat_flag_reproduces_residual_equal_sided_conflict():
    o, left, right = RESIDUAL_WITNESS
    compat = MergeOptions(algorithm="myers", skip_remerge_recheck=True)
    out = merge3(o, left, right, compat)
    table = InternTable()
    oo, ll, rr = table.intern(o), table.intern(left), table.intern(right)
    equal_sided = [
        reg
        for reg in out.regions
        if reg.kind == CONFLICT
        and ll.tokens[reg.start_l:reg.end_l] == rr.tokens[reg.start_r:reg.end_r]
    ]
    assert equal_sided

    fixed = merge3(o, left, right, MergeOptions(algorithm="myers"))
    assert fixed.clean and fixed.rendered == right

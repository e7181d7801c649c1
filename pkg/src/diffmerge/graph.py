"""In-memory commit DAG: merge bases, merges, cherry-pick, revert, rebase.

Commits carry a tree (path -> blob bytes), ordered parents and an integer
timestamp used to order merge bases by descending creation time.  When two
heads have several lowest common ancestors those are folded pairwise into
virtual commits, recursing for each pairwise base; every invocation of the
recursive merge function is counted in MergeStats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .merge3 import MergeOptions, merge3


class GraphError(Exception):
    pass


class UnknownCommit(GraphError):
    pass


class MultiParent(GraphError):
    """Operation requires a commit with exactly one parent."""


@dataclass(frozen=True)
class Commit:
    id: str
    parents: tuple[str, ...]
    tree: dict[str, bytes]
    timestamp: int


@dataclass
class MergeStats:
    merge_calls: int = 0
    conflict_paths: list[str] = field(default_factory=list)


@dataclass
class MergeResult:
    kind: str  # "clean" | "fast-forward" | "conflict"
    commit: Commit | None
    conflicts: dict[str, bytes]
    stats: MergeStats

    @property
    def clean(self) -> bool:
        return self.kind != "conflict"


class CommitGraph:
    def __init__(self) -> None:
        self.commits: dict[str, Commit] = {}
        self._next_ts = 0
        self._ancestors: dict[str, frozenset[str]] = {}

    def add_commit(
        self,
        cid: str,
        parents: tuple[str, ...] | list[str] = (),
        tree: dict[str, bytes] | None = None,
        timestamp: int | None = None,
    ) -> Commit:
        if cid in self.commits:
            raise GraphError(f"duplicate commit id {cid!r}")
        parents = tuple(parents)
        for p in parents:
            if p not in self.commits:
                raise UnknownCommit(f"parent {p!r} of {cid!r} does not exist")
        if timestamp is None:
            timestamp = self._next_ts
        self._next_ts = max(self._next_ts, timestamp) + 1
        commit = Commit(cid, parents, dict(tree or {}), timestamp)
        self.commits[cid] = commit
        anc = frozenset({cid}).union(*(self._ancestors[p] for p in parents)) if parents else frozenset({cid})
        self._ancestors[cid] = anc
        return commit

    def __getitem__(self, cid: str) -> Commit:
        try:
            return self.commits[cid]
        except KeyError:
            raise UnknownCommit(cid) from None

    def __contains__(self, cid: str) -> bool:
        return cid in self.commits

    def __len__(self) -> int:
        return len(self.commits)

    def ancestors_of(self, cid: str) -> frozenset[str]:
        """Ancestors including the commit itself."""
        if cid not in self.commits:
            raise UnknownCommit(cid)
        return self._ancestors[cid]

    def is_ancestor(self, a: str, b: str) -> bool:
        return a in self.ancestors_of(b)


def graph_from_jsonl(text: str) -> CommitGraph:
    """Build a graph from JSON-lines records {id, parents, files, ts}."""
    graph = CommitGraph()
    for line_no, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
            cid = rec["id"]
            parents = tuple(rec.get("parents", ()))
            files = {path: content.encode() for path, content in rec.get("files", {}).items()}
            ts = rec.get("ts")
        except (json.JSONDecodeError, KeyError, AttributeError, TypeError) as exc:
            raise GraphError(f"bad graph record on line {line_no}: {exc}") from exc
        graph.add_commit(cid, parents, files, ts)
    return graph


class _MergeContext:
    """Per-merge scratch state: virtual commits live here, not in the graph."""

    def __init__(self, graph: CommitGraph, stats: MergeStats, options: MergeOptions):
        self.graph = graph
        self.stats = stats
        self.options = options
        self.virtual: dict[str, Commit] = {}
        self.virtual_anc: dict[str, frozenset[str]] = {}

    def commit(self, cid: str) -> Commit:
        if cid in self.virtual:
            return self.virtual[cid]
        return self.graph[cid]

    def ancestors_of(self, cid: str) -> frozenset[str]:
        if cid in self.virtual_anc:
            return self.virtual_anc[cid]
        return self.graph.ancestors_of(cid)

    def new_virtual(self, parents: tuple[str, str], tree: dict[str, bytes]) -> str:
        cid = f"virtual:{len(self.virtual)}"
        ts = max(self.commit(p).timestamp for p in parents)
        self.virtual[cid] = Commit(cid, parents, tree, ts)
        self.virtual_anc[cid] = frozenset({cid}).union(*(self.ancestors_of(p) for p in parents))
        return cid


def lowest_common_ancestors(graph: CommitGraph, a: str, b: str) -> set[str]:
    """All common ancestors not dominated by another common ancestor."""
    common = graph.ancestors_of(a) & graph.ancestors_of(b)
    return _maximal(common, graph.ancestors_of)


def _maximal(common: frozenset[str], ancestors_of) -> set[str]:
    result = set()
    for c in common:
        if not any(other != c and c in ancestors_of(other) for other in common):
            result.add(c)
    return result


def _lca(ctx: _MergeContext, a: str, b: str) -> list[str]:
    common = ctx.ancestors_of(a) & ctx.ancestors_of(b)
    maximal = _maximal(common, ctx.ancestors_of)
    # descending creation time; id breaks ties deterministically
    return sorted(maximal, key=lambda cid: (-ctx.commit(cid).timestamp, cid))


def _merge_tree_pair(
    ctx: _MergeContext,
    base: dict[str, bytes],
    left: dict[str, bytes],
    right: dict[str, bytes],
) -> tuple[dict[str, bytes], dict[str, bytes]]:
    """Per-path three-way merge; returns (tree, conflicts)."""
    tree: dict[str, bytes] = {}
    conflicts: dict[str, bytes] = {}
    for path in sorted(set(base) | set(left) | set(right)):
        b, l, r = base.get(path), left.get(path), right.get(path)
        if l == r:
            merged = l
        elif b == l:
            merged = r
        elif b == r:
            merged = l
        else:
            # Content differs on all sides; absent files merge as empty.
            outcome = merge3(b or b"", l or b"", r or b"", ctx.options)
            merged = outcome.rendered
            if outcome.conflict_count:
                conflicts[path] = outcome.rendered
        if merged is not None:
            tree[path] = merged
    return tree, conflicts


def _merge_recursive(ctx: _MergeContext, a: str, b: str) -> tuple[dict[str, bytes], dict[str, bytes]]:
    """The recursive merge function; every invocation counts."""
    ctx.stats.merge_calls += 1
    base_tree = _base_tree(ctx, a, b)
    return _merge_tree_pair(ctx, base_tree, ctx.commit(a).tree, ctx.commit(b).tree)


def _base_tree(ctx: _MergeContext, a: str, b: str) -> dict[str, bytes]:
    bases = _lca(ctx, a, b)
    if not bases:
        return {}
    if len(bases) == 1:
        return ctx.commit(bases[0]).tree
    current = bases[0]
    for nxt in bases[1:]:
        tree, _conflicts = _merge_recursive(ctx, current, nxt)
        # conflict markers, if any, stay in the virtual blobs
        current = ctx.new_virtual((current, nxt), tree)
    return ctx.commit(current).tree


def merge_base_recursive(
    graph: CommitGraph,
    a: str,
    b: str,
    stats: MergeStats | None = None,
    options: MergeOptions | None = None,
) -> dict[str, bytes]:
    """Tree of the (possibly virtual) merge base of a and b."""
    ctx = _MergeContext(graph, stats if stats is not None else MergeStats(), options or MergeOptions())
    if a not in graph or b not in graph:
        raise UnknownCommit(a if a not in graph else b)
    return _base_tree(ctx, a, b)


def merge_commits(
    graph: CommitGraph,
    a: str,
    b: str,
    options: MergeOptions | None = None,
    new_id: str | None = None,
) -> MergeResult:
    """Merge two heads: fast-forward when possible, else a three-way merge.

    A clean merge inserts and returns the new commit; conflicts are reported
    per path with the rendered conflict blobs, and nothing is committed.
    """
    options = options or MergeOptions()
    stats = MergeStats()
    if graph.is_ancestor(a, b):
        return MergeResult("fast-forward", graph[b], {}, stats)
    if graph.is_ancestor(b, a):
        return MergeResult("fast-forward", graph[a], {}, stats)

    ctx = _MergeContext(graph, stats, options)
    tree, conflicts = _merge_recursive(ctx, a, b)
    if conflicts:
        stats.conflict_paths = sorted(conflicts)
        return MergeResult("conflict", None, conflicts, stats)
    cid = new_id or f"merge({a},{b})"
    commit = graph.add_commit(cid, (a, b), tree)
    return MergeResult("clean", commit, {}, stats)


def _pick_tree(
    graph: CommitGraph,
    base: dict[str, bytes],
    left: dict[str, bytes],
    right: dict[str, bytes],
    options: MergeOptions,
) -> tuple[dict[str, bytes], dict[str, bytes]]:
    ctx = _MergeContext(graph, MergeStats(), options)
    return _merge_tree_pair(ctx, base, left, right)


def cherry_pick(
    graph: CommitGraph,
    commit: str,
    onto: str,
    options: MergeOptions | None = None,
    new_id: str | None = None,
) -> MergeResult:
    """Apply one commit's change elsewhere: a single three-way merge whose
    base is the commit's parent; the new commit's only parent is ``onto``."""
    options = options or MergeOptions()
    picked = graph[commit]
    if len(picked.parents) != 1:
        raise MultiParent(f"{commit!r} has {len(picked.parents)} parents")
    base = graph[picked.parents[0]].tree
    tree, conflicts = _pick_tree(graph, base, picked.tree, graph[onto].tree, options)
    stats = MergeStats(conflict_paths=sorted(conflicts))
    if conflicts:
        return MergeResult("conflict", None, conflicts, stats)
    cid = new_id or f"pick({commit}@{onto})"
    return MergeResult("clean", graph.add_commit(cid, (onto,), tree), {}, stats)


def revert(
    graph: CommitGraph,
    commit: str,
    current: str,
    options: MergeOptions | None = None,
    new_id: str | None = None,
) -> MergeResult:
    """Undo one commit: the cherry-pick merge with commit and parent swapped."""
    options = options or MergeOptions()
    reverted = graph[commit]
    if len(reverted.parents) != 1:
        raise MultiParent(f"{commit!r} has {len(reverted.parents)} parents")
    parent = graph[reverted.parents[0]]
    tree, conflicts = _pick_tree(graph, reverted.tree, parent.tree, graph[current].tree, options)
    stats = MergeStats(conflict_paths=sorted(conflicts))
    if conflicts:
        return MergeResult("conflict", None, conflicts, stats)
    cid = new_id or f"revert({commit}@{current})"
    return MergeResult("clean", graph.add_commit(cid, (current,), tree), {}, stats)


@dataclass
class RebaseResult:
    kind: str  # "clean" | "conflict"
    head: str | None
    failed_index: int | None = None
    conflicts: dict[str, bytes] = field(default_factory=dict)


def rebase(
    graph: CommitGraph,
    branch_head: str,
    onto: str,
    options: MergeOptions | None = None,
) -> RebaseResult:
    """Replay the branch's first-parent chain onto another head, pick by pick."""
    options = options or MergeOptions()
    onto_anc = graph.ancestors_of(onto)
    chain = []
    cur = branch_head
    while cur not in onto_anc:
        commit = graph[cur]
        chain.append(cur)
        if not commit.parents:
            break
        cur = commit.parents[0]
    chain.reverse()

    tip = onto
    for index, cid in enumerate(chain):
        result = cherry_pick(graph, cid, tip, options, new_id=f"rebase({cid}@{tip})")
        if result.kind == "conflict":
            return RebaseResult("conflict", None, index, result.conflicts)
        assert result.commit is not None
        tip = result.commit.id
    return RebaseResult("clean", tip)


def build_exponential_graph(n: int) -> tuple[CommitGraph, str, str]:
    """Commit family whose merge takes 2**n + 1 recursive merge calls.

    The two heads sit on a short chain of paired merge bases; below it, each
    block contributes a base triple {A_i, B_i, C_i} whose members all have to
    be folded into a virtual commit, and both fold steps recurse into the
    next triple, doubling the work per block.  The graph has 6n + 4 commits,
    every one carrying the same single-file tree.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    graph = CommitGraph()
    tree = {"file": b"shared content\n"}

    def add(cid: str, *parents: str) -> str:
        graph.add_commit(cid, tuple(parents), tree)
        return cid

    if n == 0:
        p = add("P")
        q = add("Q")
        add("A0", p, q)
        add("B0", p, q)
        return graph, "A0", "B0"

    # depth of the padding chain keeps the commit count at exactly 6n + 4
    pad = 4 if n == 1 else 5
    bottom = add("D%d" % pad)
    for i in range(pad - 1, 0, -1):
        bottom = add("D%d" % i, bottom)

    if n == 1:
        p2 = add("P'", bottom)
        q2 = add("Q'", bottom)
    else:
        # triples from the bottom block up; C is oldest, A newest, so the
        # descending-time fold merges (A, B) first and the virtual result
        # with C second
        level = n - 1
        c = add(f"C{level}", bottom)
        b = add(f"B{level}", bottom)
        a = add(f"A{level}", bottom)
        for level in range(n - 2, 0, -1):
            hc = add(f"H(C{level})", a, b)
            hb = add(f"H(B{level})", a, b)
            ha = add(f"H(A{level})", a, b)
            new_c = add(f"C{level}", hc, c)
            new_b = add(f"B{level}", hb, c)
            new_a = add(f"A{level}", ha, c)
            a, b, c = new_a, new_b, new_c
        gp = add("G(P')", a, b)
        gq = add("G(Q')", a, b)
        p2 = add("P'", gp, c)
        q2 = add("Q'", gq, c)

    p = add("P", p2, q2)
    q = add("Q", p2, q2)
    add("A0", p, q)
    add("B0", p, q)
    return graph, "A0", "B0"

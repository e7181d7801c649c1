#!/usr/bin/env python3
"""Commit-DAG operations: merges, fast-forward, cherry-pick, revert, rebase."""

from diffmerge import (
    CommitGraph,
    cherry_pick,
    lowest_common_ancestors,
    merge_commits,
    rebase,
    revert,
)

V1 = b"setup()\nrun()\nteardown()\n"

g = CommitGraph()
g.add_commit("root", (), {"app.py": V1})
g.add_commit("main1", ("root",), {"app.py": V1 + b"report()\n"})
g.add_commit("feat1", ("root",), {"app.py": V1.replace(b"run()", b"run(fast=True)")})

print("=== a normal merge commit ===")
result = merge_commits(g, "main1", "feat1", new_id="merge1")
print("kind:", result.kind)
print("merged file:")
print(result.commit.tree["app.py"].decode())

print("=== fast-forward: one head is an ancestor of the other ===")
result = merge_commits(g, "root", "main1")
print("kind:", result.kind, "-> pointer moves to", result.commit.id, "\n")

print("=== cherry-pick is a single three-way merge ===")
g.add_commit("fix", ("main1",), {"app.py": V1.replace(b"setup()", b"setup(safe=True)") + b"report()\n"})
picked = cherry_pick(g, "fix", "root")
print("picked tree:")
print(picked.commit.tree["app.py"].decode())
print("parents:", picked.commit.parents, "\n")

print("=== revert swaps the commit and its parent ===")
undone = revert(g, "fix", "fix")
print("tree after revert:")
print(undone.commit.tree["app.py"].decode())

print("=== rebase replays a branch, pick by pick ===")
g2 = CommitGraph()
g2.add_commit("o", (), {"f": b"b\n"})
g2.add_commit("x1", ("o",), {"f": b"b\nb\n"})
g2.add_commit("x2", ("x1",), {"f": b"b\n"})      # branch that undoes itself
g2.add_commit("y1", ("o",), {"f": b"b\na\n"})
g2.add_commit("y2", ("y1",), {"f": b"a\n"})
ok = rebase(g2, "y2", "x2")
print("rebase y onto x:", ok.kind, "final file:", g2[ok.head].tree["f"])
bad = rebase(g2, "x2", "y2")
print("rebase x onto y:", bad.kind, "at pick", (bad.failed_index or 0) + 1)
print("Rebase is not commutative: replaying 'add b then remove it' onto 'a' "
      "conflicts immediately.\n")

print("=== crisscross history: multiple lowest common ancestors ===")
g3 = CommitGraph()
g3.add_commit("c1", (), {"f": b"x\n"})
g3.add_commit("c3", (), {"f": b"x\n"})
g3.add_commit("c2", ("c1", "c3"), {"f": b"x\n"})
g3.add_commit("c4", ("c3", "c1"), {"f": b"x\n"})
print("lca(c2, c4) =", sorted(lowest_common_ancestors(g3, "c2", "c4")))
result = merge_commits(g3, "c2", "c4")
print("merging them first folds the ancestors into a virtual base;",
      "merge calls:", result.stats.merge_calls)

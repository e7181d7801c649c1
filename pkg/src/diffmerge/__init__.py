"""Line-based diff and merge engines, a commit DAG, and brute-force oracles."""

from .core import (
    Change,
    ChangedLines,
    DiffError,
    EditScript,
    InternedSequence,
    InternTable,
    InvalidFlags,
    RangeError,
    apply_script,
    flags_to_script,
    intern_files,
    parse_unified,
    render_unified,
    script_to_flags,
    split_lines,
)
from .engine import ALGORITHMS, diff_lines, diff_script
from .graph import (
    Commit,
    CommitGraph,
    GraphError,
    MergeResult,
    MergeStats,
    MultiParent,
    RebaseResult,
    UnknownCommit,
    build_exponential_graph,
    cherry_pick,
    graph_from_jsonl,
    lowest_common_ancestors,
    merge_base_recursive,
    merge_commits,
    rebase,
    revert,
)
from .histogram import diff_histogram
from .merge3 import (
    CONFLICT,
    LEFT,
    RIGHT,
    SAME,
    InvariantViolation,
    MergeOptions,
    MergeOutcome,
    MergeRegion,
    compute_merge_regions,
    merge3,
    refine_zealous,
)
from .myers import MINIMAL, MYERS, HeuristicConfig, approx_sqrt, diff_myers, preprocess
from .patience import diff_patience, find_matching_unique_lines, patience_lis
from .slider import (
    DEFAULT_WEIGHTS,
    IndentWeights,
    SplitMeasurement,
    measure_split,
    slidable_range,
    slide_changed_lines,
    slide_group,
    split_penalty,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Exact treewidth, separation and layout invariants of small graphs, with
profiles, tree-graded graphs and balls in free-product Cayley graphs."""

from twsep.errors import GraphFormatError, InconsistencyError, InputError, SizeLimitError, TwsepError
from twsep.graph import Graph, parse_graph, serialize_graph
from twsep.kernels import BACKEND
from twsep.layout import cutwidth_exact, pathwidth_exact, sumcut_exact, vertex_separation_exact
from twsep.profiles import Profile, profile
from twsep.separation import (
    BalancedSeparator,
    balanced_separator_min,
    cutset_to_balanced_separator,
    cutsize_exact,
    separation_number,
    validate_balanced_separator,
)
from twsep.treegraded import TreeGrading, compose, tw_profile_via_pieces, tw_via_grading, validate_tree_grading
from twsep.treewidth import TreeDecomposition, treewidth_exact, validate_tree_decomposition

__version__ = "0.1.0"

"""Property-based checks on small random graphs."""

from hypothesis import given, settings, strategies as st

from twsep.graph import Graph, induced_subgraph
from twsep.layout import cutwidth_exact, pathwidth_exact
from twsep.profiles import profile
from twsep.separation import balanced_separator_min, cutsize_exact, validate_balanced_separator
from twsep.treewidth import treewidth_exact, validate_tree_decomposition


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_invariant_chain(g):
    tw, td = treewidth_exact(g)
    pw, pd = pathwidth_exact(g)
    cw, _ = cutwidth_exact(g)
    cut, _ = cutsize_exact(g)
    bsep, sep = balanced_separator_min(g)
    assert validate_tree_decomposition(td) is None and validate_tree_decomposition(pd) is None
    assert validate_balanced_separator(sep) is None
    assert tw <= pw <= cw
    assert cut - 1 <= tw
    assert bsep <= cut


@settings(max_examples=80, deadline=None)
@given(graphs(), st.data())
def test_treewidth_minor_monotone_on_induced(g, data):
    s = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    sub, _ = induced_subgraph(g, s)
    assert treewidth_exact(sub)[0] <= treewidth_exact(g)[0]


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9), st.integers(1, 9))
def test_profiles_monotone_and_bounded(g, r):
    tw = profile(g, r, "tw").values()
    sep = profile(g, r, "cut").values()
    assert tw == sorted(tw) and sep == sorted(sep)
    assert all(s - 1 <= t <= 15 * s for s, t in zip(sep, tw))
    if r >= g.n and g.is_connected():
        assert tw[-1] == treewidth_exact(g)[0]


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9))
def test_relabeling_invariance(g):
    perm = list(reversed(range(g.n)))
    h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges])
    assert treewidth_exact(g)[0] == treewidth_exact(h)[0]
    assert cutsize_exact(g)[0] == cutsize_exact(h)[0]
    assert cutwidth_exact(g)[0] == cutwidth_exact(h)[0]

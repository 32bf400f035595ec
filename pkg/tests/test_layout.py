import random

import pytest

import oracles
from twsep.errors import InputError
from twsep.generators import complete_binary_tree, complete_graph, cycle_graph, path_graph, random_gnp, star_graph
from twsep.graph import Graph
from twsep.layout import (
    SUMCUT_DEFINITION,
    LinearLayout,
    cutwidth_exact,
    is_path_decomposition,
    layout_profiles,
    pathwidth_exact,
    sumcut_exact,
    vertex_separation_exact,
)
from twsep.treewidth import treewidth_exact, validate_tree_decomposition

K1 = Graph(1, frozenset())


class TestCutwidth:
    @pytest.mark.parametrize("n", range(2, 9))
    def test_path(self, n):
        assert cutwidth_exact(path_graph(n))[0] == 1

    def test_k4(self):
        assert cutwidth_exact(complete_graph(4))[0] == 4 == oracles.layout_costs(4, complete_graph(4).edges)[0]

    def test_c6(self):
        value, layout = cutwidth_exact(cycle_graph(6))
        assert value == 2 == layout.cutwidth()


class TestPathwidth:
    @pytest.mark.parametrize("n", range(2, 9))
    def test_path(self, n):
        assert pathwidth_exact(path_graph(n))[0] == 1

    def test_c5(self):
        assert pathwidth_exact(cycle_graph(5))[0] == 2 == oracles.layout_costs(5, cycle_graph(5).edges)[1]

    def test_binary_tree(self):
        g = complete_binary_tree(3)
        value, pd = pathwidth_exact(g)
        assert value == 2 and is_path_decomposition(pd) and validate_tree_decomposition(pd) is None

    def test_vertex_separation_witness(self):
        value, layout = vertex_separation_exact(cycle_graph(7))
        assert value == layout.vertex_separation() == 2


class TestSumcut:
    def test_single_vertex(self):
        assert sumcut_exact(K1)[0] == 0

    def test_edge(self):
        assert sumcut_exact(complete_graph(2))[0] == 1 == oracles.layout_costs(2, [(0, 1)])[2]

    def test_p3(self):
        assert sumcut_exact(path_graph(3))[0] == 2 == oracles.layout_costs(3, path_graph(3).edges)[2]

    def test_definition_exported(self):
        _, layout = sumcut_exact(path_graph(4))
        assert layout.to_json("sumcut", 3)["definition"] == SUMCUT_DEFINITION


@pytest.mark.parametrize("seed", range(30))
def test_against_oracles(seed):
    rng = random.Random(seed)
    g = random_gnp(rng.randint(1, 7), rng.uniform(0.1, 0.8), seed)
    cw, vs, sc = oracles.layout_costs(g.n, g.edges)
    c, lc = cutwidth_exact(g)
    p, pd = pathwidth_exact(g)
    s, ls = sumcut_exact(g)
    assert (c, p, s) == (cw, vs, sc)
    assert lc.cutwidth() == c and ls.sumcut() == s
    assert validate_tree_decomposition(pd) is None and is_path_decomposition(pd) and pd.width == p
    assert treewidth_exact(g)[0] <= p <= c


def test_layout_must_be_permutation():
    with pytest.raises(InputError):
        LinearLayout(path_graph(3), (0, 1, 1))


class TestProfiles:
    def test_path_pathwidth(self):
        assert layout_profiles(path_graph(8), 6, ("pw",))["pw"].values() == [0, 1, 1, 1, 1, 1]

    def test_clique_cutwidth(self):
        assert layout_profiles(complete_graph(5), 5, ("cw",))["cw"].values() == [0, 1, 2, 4, 6]

    def test_star_cutwidth(self):
        assert layout_profiles(star_graph(4), 5, ("cw",))["cw"].values() == [0, 1, 1, 2, 2]

    def test_sumcut_note(self):
        assert layout_profiles(path_graph(4), 3, ("sumcut",))["sumcut"].notes

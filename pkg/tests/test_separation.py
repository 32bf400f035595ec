import random

import pytest

import oracles
from twsep.errors import InputError, SizeLimitError
from twsep.generators import complete_binary_tree, complete_graph, cycle_graph, path_graph, random_gnp, star_graph
from twsep.graph import Graph
from twsep.separation import (
    BalancedSeparator,
    balanced_separator_min,
    cutset_to_balanced_separator,
    cutsize_exact,
    is_half_cutset,
    sep_profile,
    separation_number,
    validate_balanced_separator,
)

K1 = Graph(1, frozenset())


class TestCutsize:
    def test_single_vertex(self):
        assert cutsize_exact(K1) == (1, frozenset({0}))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_clique(self, n):
        k, s = cutsize_exact(complete_graph(n))
        assert k == -(-n // 2) == oracles.cutsize(n, complete_graph(n).edges)
        assert is_half_cutset(complete_graph(n), s)

    def test_p4(self):
        k, s = cutsize_exact(path_graph(4))
        assert k == 1 and s <= {1, 2}

    @pytest.mark.parametrize("seed", range(30))
    def test_oracle(self, seed):
        rng = random.Random(seed)
        g = random_gnp(rng.randint(1, 9), rng.uniform(0.1, 0.8), seed)
        k, s = cutsize_exact(g)
        assert k == len(s) == oracles.cutsize(g.n, g.edges)
        assert oracles.is_half_cutset(g.n, g.edges, s)

    def test_limit(self):
        with pytest.raises(SizeLimitError):
            cutsize_exact(path_graph(31))


class TestBalancedSeparator:
    def test_p5(self):
        k, sep = balanced_separator_min(path_graph(5))
        assert k == 1 and validate_balanced_separator(sep) is None

    @pytest.mark.parametrize("n", range(1, 9))
    def test_clique(self, n):
        k, sep = balanced_separator_min(complete_graph(n))
        assert k == -(-n // 3) == oracles.balanced_separator_size(n, complete_graph(n).edges)
        assert validate_balanced_separator(sep) is None

    def test_single_vertex(self):
        k, sep = balanced_separator_min(K1)
        assert k == 1 and sep.A == sep.B == {0}

    @pytest.mark.parametrize("seed", range(30))
    def test_oracle(self, seed):
        rng = random.Random(seed)
        g = random_gnp(rng.randint(1, 8), rng.uniform(0.1, 0.8), seed)
        k, sep = balanced_separator_min(g)
        assert k == sep.size == oracles.balanced_separator_size(g.n, g.edges)
        assert oracles.is_balanced_separator(g.n, g.edges, sep.A, sep.B)

    def test_without_completion_is_degenerate(self):
        k, sep = balanced_separator_min(complete_graph(6), completion=False)
        assert k == 0 and validate_balanced_separator(sep, completion=False) is None
        assert validate_balanced_separator(sep).condition == "completion"

    @pytest.mark.parametrize("a, b, condition", [
        ({0, 1, 2}, set(), "balance"),
        ({0}, {1, 2}, "completion"),
        ({0, 1}, {2, 3, 9}, "structure"),
        ({0, 1}, {2, 3}, "separation"),
    ])
    def test_violations(self, a, b, condition):
        g = path_graph(4) if condition != "balance" else path_graph(3)
        bad = validate_balanced_separator(BalancedSeparator(g, frozenset(a), frozenset(b)))
        assert bad.condition == condition


class TestSeparationNumber:
    def test_tree(self):
        assert separation_number(complete_binary_tree(2))[0] == 1
        assert separation_number(path_graph(7))[0] == 1

    def test_k6(self):
        assert separation_number(complete_graph(6))[0] == 2

    def test_single_vertex(self):
        assert separation_number(K1) == (1, frozenset({0}))

    @pytest.mark.parametrize("seed", range(12))
    def test_oracle(self, seed):
        rng = random.Random(seed)
        g = random_gnp(rng.randint(1, 6), rng.uniform(0.2, 0.9), seed)
        value, witness = separation_number(g)
        assert value == oracles.separation_number(g.n, g.edges)
        sub_n, sub_edges = oracles.induced(g.n, sorted(g.edges), witness)
        assert oracles.balanced_separator_size(sub_n, sub_edges) == value

    def test_limit(self):
        with pytest.raises(SizeLimitError):
            separation_number(path_graph(17))


class TestConversion:
    def test_p3_middle(self):
        # both unit components fit under 2n/3, so the maximal prefix takes them both
        sep = cutset_to_balanced_separator(path_graph(3), [1])
        assert sep.A == {0, 1, 2} and sep.B == {1} and sep.size == 1
        assert validate_balanced_separator(sep) is None

    def test_k5(self):
        sep = cutset_to_balanced_separator(complete_graph(5), [0, 1, 2])
        assert sep.A == set(range(5)) and sep.B == {0, 1, 2} and validate_balanced_separator(sep) is None

    def test_c6_antipodal(self):
        sep = cutset_to_balanced_separator(cycle_graph(6), [0, 3])
        assert sep.size == 2 and validate_balanced_separator(sep) is None

    def test_split_happens_when_needed(self):
        g = star_graph(6)  # removing the centre leaves 6 singletons, 2n/3 = 4.67
        sep = cutset_to_balanced_separator(g, [0])
        assert sep.A - sep.B == {1, 2, 3, 4} and sep.B - sep.A == {5, 6}
        assert validate_balanced_separator(sep) is None

    def test_rejects_non_cutset(self):
        with pytest.raises(InputError):
            cutset_to_balanced_separator(path_graph(5), [0])

    @pytest.mark.parametrize("seed", range(20))
    def test_every_minimal_cutset(self, seed):
        rng = random.Random(seed)
        g = random_gnp(rng.randint(1, 8), rng.uniform(0.1, 0.8), seed)
        for c in oracles.minimal_half_cutsets(g.n, g.edges):
            sep = cutset_to_balanced_separator(g, c)
            assert sep.size == len(c) and validate_balanced_separator(sep) is None


class TestProfile:
    def test_tree(self):
        assert sep_profile(complete_binary_tree(3), 10).values() == [1] * 10

    def test_k5(self):
        # cut(K_k) = ceil(k/2) for each clique size k
        expected = oracles.profile(5, sorted(complete_graph(5).edges), 5, oracles.cutsize)
        assert sep_profile(complete_graph(5), 5).values() == expected == [1, 1, 2, 2, 3]

    def test_single_vertex(self):
        assert sep_profile(K1, 1).values() == [1]

    @pytest.mark.parametrize("seed", range(6))
    def test_all_induced_matches_oracle(self, seed):
        g = random_gnp(7, 0.4, seed)
        edges = sorted(g.edges)
        got = sep_profile(g, 5, mode="all-induced").values()
        assert got == oracles.profile(7, edges, 5, oracles.cutsize, connected=False)
        got = sep_profile(g, 5).values()
        assert got == oracles.profile(7, edges, 5, oracles.cutsize, connected=True)

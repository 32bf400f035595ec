"""The shared test corpus: every connected graph on at most 7 vertices (from
the networkx atlas) plus 1000 seeded random graphs on at most 12 vertices."""

from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx

from twsep.graph import Graph

RANDOM_COUNT = 1000
RANDOM_SEED = 20240917


def from_nx(g) -> Graph:
    nodes = sorted(g.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(pos[u], pos[v]) for u, v in g.edges()])


@lru_cache(maxsize=None)
def atlas_connected() -> tuple[Graph, ...]:
    return tuple(from_nx(g) for g in nx.graph_atlas_g() if g.number_of_nodes() >= 1 and nx.is_connected(g))


@lru_cache(maxsize=None)
def random_graphs() -> tuple[Graph, ...]:
    rng = random.Random(RANDOM_SEED)
    out = []
    for _ in range(RANDOM_COUNT):
        n = rng.randint(1, 12)
        p = rng.uniform(0.15, 0.7)
        out.append(Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]))
    return tuple(out)


def full_corpus() -> tuple[Graph, ...]:
    return atlas_connected() + random_graphs()

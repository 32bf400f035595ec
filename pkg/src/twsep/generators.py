"""Small graph families and seeded random graphs / gluing specs."""

from __future__ import annotations

import random
from itertools import combinations

from twsep.errors import InputError
from twsep.graph import Graph
from twsep.treegraded import Gluing, GluingSpec


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    """Vertex ``(i, j)`` is ``i * cols + j``."""
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def complete_binary_tree(depth: int) -> Graph:
    n = 2 ** (depth + 1) - 1
    return Graph.from_edges(n, [((v - 1) // 2, v) for v in range(1, n)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph.from_edges(off, edges)


def random_gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_gnm(n: int, m: int, seed: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    if m > len(pairs):
        raise InputError(f"{m} edges do not fit in a simple graph on {n} vertices")
    rng = random.Random(seed)
    return Graph.from_edges(n, rng.sample(pairs, m))


def piece_templates() -> dict[str, Graph]:
    """The template pool used for random compositions."""
    return {
        "K2": complete_graph(2),
        "C3": cycle_graph(3),
        "C4": cycle_graph(4),
        "K4": complete_graph(4),
        "P4": path_graph(4),
    }


def random_gluing_spec(seed: int, max_vertices: int = 14, templates: dict[str, Graph] | None = None) -> tuple[GluingSpec, dict[str, Graph]]:
    """A random tree of template copies whose glued host has at most ``max_vertices``.

    Each new node picks a uniformly random earlier node as its parent and
    random attachment vertices on both sides.
    """
    templates = piece_templates() if templates is None else templates
    names = sorted(templates)
    rng = random.Random(seed)
    first = rng.choice(names)
    nodes = [first]
    gluings = []
    size = templates[first].n
    # a handful of attempts so small leftovers can still take a K2
    for _ in range(4 * max_vertices):
        name = rng.choice(names)
        extra = templates[name].n - 1
        if size + extra > max_vertices:
            continue
        parent = rng.randrange(len(nodes))
        gluings.append(Gluing(parent, len(nodes), rng.randrange(templates[nodes[parent]].n),
                              rng.randrange(templates[name].n)))
        nodes.append(name)
        size += extra
        if size == max_vertices or rng.random() < 0.08:
            break
    return GluingSpec(tuple(nodes), tuple(gluings)), templates

"""Exact linear-layout parameters: cutwidth, pathwidth (vertex separation) and sumcut.

For an order of the vertices and each prefix P:

* cutwidth counts edges leaving P, maximized over prefixes;
* vertex separation counts vertices of P with a neighbour outside P,
  maximized over prefixes; it equals pathwidth;
* sumcut sums that same vertex boundary over all prefixes.

Each parameter is minimized over all orders by a DP over vertex subsets.
"""

from __future__ import annotations

from dataclasses import dataclass

from twsep import kernels
from twsep.errors import InputError, SizeLimitError
from twsep.graph import Graph
from twsep.treewidth import TreeDecomposition

LAYOUT_LIMIT = 24
SUMCUT_DEFINITION = "min over vertex orders of the sum over prefixes of |{v in prefix : v has a neighbour after the prefix}|"


@dataclass(frozen=True)
class LinearLayout:
    host: Graph
    order: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(self.host.n)):
            raise InputError("layout order must be a permutation of the host vertices")

    def prefix_masks(self):
        mask = 0
        for v in self.order:
            mask |= 1 << v
            yield mask

    def cutwidth(self) -> int:
        adj = self.host.adj
        full = self.host.full_mask
        widths = [sum((adj[v] & full & ~p).bit_count() for v in range(self.host.n) if p >> v & 1)
                  for p in self.prefix_masks()]
        return max(widths, default=0)

    def boundaries(self) -> list[int]:
        adj = self.host.adj
        full = self.host.full_mask
        return [sum(1 for v in range(self.host.n) if p >> v & 1 and adj[v] & full & ~p)
                for p in self.prefix_masks()]

    def vertex_separation(self) -> int:
        return max(self.boundaries(), default=0)

    def sumcut(self) -> int:
        return sum(self.boundaries())

    def to_json(self, parameter: str, value: int) -> dict:
        out = {"order": list(self.order), "value": value, "parameter": parameter}
        if parameter == "sumcut":
            out["definition"] = SUMCUT_DEFINITION
        return out


def _check(g: Graph, what: str, limit: int):
    if g.n > limit:
        raise SizeLimitError(what, g.n, limit)


def cutwidth_exact(g: Graph, limit: int = LAYOUT_LIMIT) -> tuple[int, LinearLayout]:
    _check(g, "cutwidth_exact", limit)
    value, order = kernels.cutwidth_order(list(g.adj))
    return value, LinearLayout(g, tuple(order))


def sumcut_exact(g: Graph, limit: int = LAYOUT_LIMIT) -> tuple[int, LinearLayout]:
    _check(g, "sumcut_exact", limit)
    value, order = kernels.sumcut_order(list(g.adj))
    return value, LinearLayout(g, tuple(order))


def vertex_separation_exact(g: Graph, limit: int = LAYOUT_LIMIT) -> tuple[int, LinearLayout]:
    _check(g, "vertex_separation_exact", limit)
    value, order = kernels.vsn_order(list(g.adj))
    return value, LinearLayout(g, tuple(order))


def path_decomposition_from_layout(layout: LinearLayout) -> TreeDecomposition:
    """Path decomposition whose i-th bag is the i-th vertex plus the earlier
    vertices that still have a neighbour at position i or later."""
    g = layout.host
    adj = g.adj
    bags = []
    placed = 0
    for v in layout.order:
        later = g.full_mask & ~placed
        bag = {v} | {u for u in range(g.n) if placed >> u & 1 and adj[u] & later}
        bags.append(frozenset(bag))
        placed |= 1 << v
    edges = tuple((i, i + 1) for i in range(len(bags) - 1))
    return TreeDecomposition(g, tuple(bags), edges)


def pathwidth_exact(g: Graph, limit: int = LAYOUT_LIMIT) -> tuple[int, TreeDecomposition]:
    """Pathwidth with a path-decomposition certificate (built from an optimal
    vertex-separation order)."""
    if g.n < 1:
        raise InputError("pathwidth needs at least one vertex")
    value, layout = vertex_separation_exact(g, limit)
    td = path_decomposition_from_layout(layout)
    assert td.width == value
    return value, td


def is_path_decomposition(td: TreeDecomposition) -> bool:
    k = len(td.bags)
    degree = [0] * k
    for a, b in td.tree_edges:
        degree[a] += 1
        degree[b] += 1
    return all(d <= 2 for d in degree)


def layout_profiles(x: Graph, r: int, parameters=("cw", "pw", "sumcut"), **kwargs):
    """Profiles of the layout parameters, keyed by parameter name."""
    from twsep.profiles import profile

    return {p: profile(x, r, p, **kwargs) for p in parameters}

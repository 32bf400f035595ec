"""Tree decompositions: validation, exact treewidth, joins and the treewidth profile."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from twsep import kernels
from twsep.errors import InputError, SizeLimitError
from twsep.graph import Graph, component_masks, induced_subgraph, local_adjacency, mask_of, members

TREEWIDTH_LIMIT = 25


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags on the nodes of a tree, for the host graph ``host``.

    When ``vertices`` is given the decomposition covers only the induced
    subgraph ``host[vertices]``; bags still use host vertex ids. This is how
    pieces of one ambient graph are decomposed and then joined.
    """

    host: Graph
    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]
    vertices: frozenset[int] | None = None

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def covered(self) -> frozenset[int]:
        return frozenset(range(self.host.n)) if self.vertices is None else self.vertices

    def embed(self, ambient: Graph, mapping: Sequence[int]) -> "TreeDecomposition":
        """Relabel a decomposition of a relabeled subgraph back into ``ambient``.

        ``mapping[i]`` is the ambient id of local vertex ``i``.
        """
        bags = tuple(frozenset(mapping[v] for v in b) for b in self.bags)
        verts = frozenset(mapping)
        return TreeDecomposition(ambient, bags, self.tree_edges, None if len(verts) == ambient.n else verts)

    def to_json(self) -> dict:
        return {
            "bags": [sorted(b) for b in self.bags],
            "tree_edges": [list(e) for e in self.tree_edges],
        }

    def to_pace(self) -> str:
        """PACE-2017 ``.td`` text (1-based bags and vertices)."""
        n = self.host.n if self.vertices is None else len(self.vertices)
        lines = [f"s td {len(self.bags)} {self.width + 1} {n}"]
        for i, bag in enumerate(self.bags, 1):
            lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
        for a, b in self.tree_edges:
            lines.append(f"{a + 1} {b + 1}")
        return "\n".join(lines) + "\n"


def decomposition_from_json(host: Graph, obj: dict) -> TreeDecomposition:
    bags = tuple(frozenset(int(v) for v in b) for b in obj["bags"])
    edges = tuple((int(a), int(b)) for a, b in obj["tree_edges"])
    return TreeDecomposition(host, bags, edges)


def decomposition_from_pace(host: Graph, text: str) -> TreeDecomposition:
    bags: dict[int, frozenset[int]] = {}
    edges = []
    nbags = None
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "s":
            nbags = int(parts[2])
        elif parts[0] == "b":
            bags[int(parts[1]) - 1] = frozenset(int(v) - 1 for v in parts[2:])
        else:
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
    if nbags is None:
        raise InputError("missing 's td' header")
    return TreeDecomposition(host, tuple(bags.get(i, frozenset()) for i in range(nbags)), tuple(edges))


@dataclass(frozen=True)
class Violation:
    """First failed condition of a certificate check.

    ``condition`` is ``"structure"`` for malformed objects (the tree is not a
    tree, a vertex id is out of range) and otherwise names the violated
    defining condition.
    """

    condition: str
    witness: object
    message: str

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, (set, frozenset)):
            w = sorted(w)
        elif isinstance(w, tuple):
            w = list(w)
        return {"condition": self.condition, "witness": w, "message": self.message}


def _is_tree(k: int, edges: Iterable[tuple[int, int]]) -> str | None:
    edges = list(edges)
    if k == 0:
        return "decomposition has no bags"
    if len(edges) != k - 1:
        return f"tree has {len(edges)} edges, expected {k - 1}"
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            return f"bad tree edge ({a}, {b})"
        ra, rb = find(a), find(b)
        if ra == rb:
            return f"tree edge ({a}, {b}) closes a cycle"
        parent[ra] = rb
    return None


def validate_tree_decomposition(td: TreeDecomposition) -> Violation | None:
    """Check the three tree-decomposition conditions; ``None`` means valid.

    Conditions are checked in order: vertex coverage, edge coverage, then
    coherence (the bags containing each vertex span a subtree).
    """
    k = len(td.bags)
    problem = _is_tree(k, td.tree_edges)
    if problem:
        return Violation("structure", None, problem)
    verts = td.covered
    for i, bag in enumerate(td.bags):
        stray = bag - verts
        if stray:
            return Violation("structure", (i, min(stray)), f"bag {i} contains vertex {min(stray)} outside the decomposed graph")
    union = frozenset().union(*td.bags)
    for v in sorted(verts):
        if v not in union:
            return Violation("coverage", v, f"vertex {v} is in no bag")
    for u, v in td.host.sorted_edges():
        if u in verts and v in verts and not any(u in b and v in b for b in td.bags):
            return Violation("edge-coverage", (u, v), f"edge ({u}, {v}) lies in no bag")
    nbrs = [[] for _ in range(k)]
    for a, b in td.tree_edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    for v in sorted(verts):
        holders = {i for i, b in enumerate(td.bags) if v in b}
        start = min(holders)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if y in holders and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != holders:
            return Violation("coherence", v, f"bags containing vertex {v} do not form a subtree")
    return None


def decomposition_from_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Tree decomposition induced by an elimination order.

    Bag of ``v`` is ``v`` plus its later neighbours in the fill-in graph; its
    parent is the bag of the earliest-eliminated of those neighbours. Roots of
    separate components are chained so the result is one tree.
    """
    pos = {v: i for i, v in enumerate(order)}
    adj = list(g.adj)
    later_sets = []
    for v in order:
        later = [u for u in members(adj[v]) if pos[u] > pos[v]]
        later_sets.append(later)
        lm = mask_of(later)
        for u in later:
            adj[u] |= lm & ~(1 << u)
    bags = tuple(frozenset([v, *later]) for v, later in zip(order, later_sets))
    edges = []
    roots = []
    for i, later in enumerate(later_sets):
        if later:
            edges.append((i, min(pos[u] for u in later)))
        else:
            roots.append(i)
    edges.extend((a, b) for a, b in zip(roots, roots[1:]))
    return TreeDecomposition(g, bags, tuple(edges))


def elimination_width(g: Graph, order: Sequence[int]) -> int:
    """Width of the decomposition induced by ``order``."""
    return decomposition_from_order(g, order).width


def treewidth_exact(g: Graph, limit: int = TREEWIDTH_LIMIT) -> tuple[int, TreeDecomposition]:
    """Exact treewidth with a certifying decomposition of minimum width.

    Each connected component is solved by the subset DP over elimination
    orders; component orders are concatenated.
    """
    if g.n < 1:
        raise InputError("treewidth needs at least one vertex")
    if g.n > limit:
        raise SizeLimitError("treewidth_exact", g.n, limit)
    order: list[int] = []
    width = 0
    for comp in sorted(component_masks(g.adj, g.full_mask), key=lambda c: (c & -c)):
        verts = members(comp)
        if len(verts) == 1:
            order.extend(verts)
            continue
        w, local = kernels.tw_order(local_adjacency(g.adj, comp))
        width = max(width, w)
        order.extend(verts[i] for i in local)
    td = decomposition_from_order(g, order)
    assert td.width == width
    return width, td


def join_decompositions(td1: TreeDecomposition, td2: TreeDecomposition, shared: Iterable[int] = ()) -> TreeDecomposition:
    """Glue decompositions of two subgraphs meeting in at most one vertex.

    The new tree is the disjoint union of both trees plus one edge between a
    bag of each side containing the shared vertex (the first such bag), or
    between the first bags when nothing is shared. Width is the larger width.
    """
    if td1.host is not td2.host and td1.host != td2.host:
        raise InputError("decompositions must live in the same ambient graph")
    shared = frozenset(shared)
    v1, v2 = td1.covered, td2.covered
    overlap = v1 & v2
    if len(overlap) > 1:
        raise InputError(f"subgraphs overlap in {len(overlap)} vertices {sorted(overlap)}; at most one allowed")
    if overlap != shared:
        raise InputError(f"declared shared set {sorted(shared)} differs from actual overlap {sorted(overlap)}")
    host = td1.host
    for u, v in host.edges:
        if (u in v1 - v2 and v in v2 - v1) or (v in v1 - v2 and u in v2 - v1):
            raise InputError(f"host edge ({u}, {v}) joins the two sides; the union is not the glued graph")

    def anchor(td, name):
        for i, bag in enumerate(td.bags):
            if shared <= bag:
                return i
        raise InputError(f"shared vertex {sorted(shared)} is in no bag of {name}")

    g1, g2 = anchor(td1, "the first decomposition"), anchor(td2, "the second decomposition")
    off = len(td1.bags)
    edges = td1.tree_edges + tuple((a + off, b + off) for a, b in td2.tree_edges) + ((g1, g2 + off),)
    vertices = None if (v1 | v2) == frozenset(range(host.n)) else v1 | v2
    return TreeDecomposition(host, td1.bags + td2.bags, edges, vertices)


def tw_profile(x: Graph, r: int, **kwargs):
    """Treewidth profile ``k -> max tw over subgraphs with <= k vertices``, k = 1..r.

    See :func:`twsep.profiles.profile` for ``mode``, ``budget`` and ``jobs``.
    """
    from twsep.profiles import profile

    return profile(x, r, "tw", **kwargs)


def subgraph_treewidth(g: Graph, s: Iterable[int]) -> tuple[int, TreeDecomposition]:
    """Treewidth of ``g[s]`` with the certificate expressed in ``g``'s vertex ids."""
    sub, pos = induced_subgraph(g, s)
    w, td = treewidth_exact(sub)
    mapping = sorted(pos, key=pos.get)
    return w, td.embed(g, mapping)

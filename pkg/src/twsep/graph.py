"""Finite simple undirected graphs and the subgraph machinery shared by all solvers.

Vertices are the integers ``0..n-1``. Most solvers work on adjacency bitmasks
(``adj[v]`` has bit ``u`` set iff ``uv`` is an edge), which :class:`Graph`
caches on first use.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from twsep.errors import GraphFormatError

__all__ = [
    "Graph",
    "parse_graph",
    "serialize_graph",
    "induced_subgraph",
    "connected_components",
    "component_masks",
    "enumerate_connected_induced_subgraphs",
    "enumerate_induced_subsets",
    "blocks",
    "enumerate_simple_cycles",
    "mask_of",
    "members",
    "local_adjacency",
]


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    """Vertices whose bit is set in ``mask``, increasing."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Graph:
    """An immutable simple graph on vertices ``0..n-1``.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``. Labels are
    opaque metadata and never influence any invariant.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    labels: Mapping[int, str] | None = field(default=None, hash=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) is not normalized or out of range for n={self.n}")
        if self.labels is not None:
            for v in self.labels:
                if not 0 <= v < self.n:
                    raise ValueError(f"label for unknown vertex {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels=None) -> "Graph":
        """Build a graph, rejecting self-loops and duplicate edges."""
        seen = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        if labels is not None:
            labels = {int(k): str(s) for k, s in labels.items()}
        return cls(n, frozenset(seen), labels)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Adjacency bitmasks."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return members(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_connected(self) -> bool:
        return self.n <= 1 or len(component_masks(self.adj, self.full_mask)) == 1

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# -- I/O ------------------------------------------------------------------


def _parse_edge_list(text: str) -> Graph:
    lines = text.split("\n")
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not rows:
        raise GraphFormatError("empty input", line=1)
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise GraphFormatError(f"expected header 'n m', got {header!r}", line=lineno)
    n, m = int(parts[0]), int(parts[1])
    body = rows[1:]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges but {len(body)} edge lines follow",
                               line=body[m][0] if len(body) > m else lineno)
    seen = set()
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphFormatError(f"malformed edge line {ln!r}", line=lineno)
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise GraphFormatError(f"vertex index {max(u, v)} >= n={n}", line=lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", line=lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key}", line=lineno)
        seen.add(key)
    return Graph(n, frozenset(seen))


def graph_from_obj(obj) -> Graph:
    """Build a graph from the decoded JSON object ``{"n", "edges", "labels"?}``."""
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphFormatError("JSON graph must be an object with 'n' and 'edges'")
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise GraphFormatError(f"bad vertex count {n!r}")
    seen = set()
    for i, e in enumerate(obj["edges"]):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise GraphFormatError(f"edge #{i} is not a pair of integers: {e!r}")
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge #{i} {e!r}: vertex index out of range for n={n}")
        if u == v:
            raise GraphFormatError(f"edge #{i}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"edge #{i}: duplicate edge {key}")
        seen.add(key)
    labels = obj.get("labels")
    if labels is not None:
        try:
            labels = {int(k): str(s) for k, s in labels.items()}
        except (AttributeError, ValueError) as exc:
            raise GraphFormatError(f"bad labels: {exc}") from None
        if any(not 0 <= k < n for k in labels):
            raise GraphFormatError("label for a vertex out of range")
    return Graph(n, frozenset(seen), labels)


def graph_to_obj(g: Graph) -> dict:
    obj = {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
    if g.labels:
        obj["labels"] = {str(k): g.labels[k] for k in sorted(g.labels)}
    return obj


def parse_graph(text: str | bytes, format: str = "edge-list") -> Graph:
    """Parse a graph from edge-list text (``n m`` header then ``u v`` lines) or JSON.

    Errors carry the offending line number for edge lists.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii")
    if format == "edge-list":
        return _parse_edge_list(text)
    if format == "json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
        return graph_from_obj(obj)
    raise ValueError(f"unknown graph format {format!r}")


def serialize_graph(g: Graph, format: str = "edge-list") -> str:
    if format == "edge-list":
        lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
        return "\n".join(lines) + "\n"
    if format == "json":
        return json.dumps(graph_to_obj(g))
    raise ValueError(f"unknown graph format {format!r}")


# -- subgraphs and connectivity --------------------------------------------


def local_adjacency(adj: Sequence[int], mask: int) -> list[int]:
    """Adjacency bitmasks of the subgraph induced by ``mask``, relabeled 0..k-1."""
    verts = members(mask)
    if len(verts) == len(adj):
        return list(adj)
    pos = {v: i for i, v in enumerate(verts)}
    out = []
    for v in verts:
        row = 0
        nb = adj[v] & mask
        while nb:
            low = nb & -nb
            row |= 1 << pos[low.bit_length() - 1]
            nb ^= low
        out.append(row)
    return out


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return ``g[s]`` relabeled to ``0..|s|-1`` (in increasing order of ``s``) and the map old -> new."""
    verts = sorted(set(s))
    for v in verts:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    pos = {v: i for i, v in enumerate(verts)}
    edges = frozenset((pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos)
    labels = None
    if g.labels:
        labels = {pos[v]: lab for v, lab in g.labels.items() if v in pos} or None
    return Graph(len(verts), edges, labels), pos


def component_masks(adj: Sequence[int], mask: int) -> list[int]:
    """Connected components of the subgraph induced by ``mask``, ordered by
    decreasing size, ties broken by smallest contained vertex."""
    comps = []
    rest = mask
    while rest:
        comp = rest & -rest
        frontier = comp
        while frontier:
            nb = 0
            while frontier:
                low = frontier & -frontier
                nb |= adj[low.bit_length() - 1]
                frontier ^= low
            frontier = nb & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    # lowest-bit extraction already yields increasing minimum vertex; sort is stable
    comps.sort(key=lambda c: -c.bit_count())
    return comps


def connected_components(g: Graph) -> list[frozenset[int]]:
    return [frozenset(members(c)) for c in component_masks(g.adj, g.full_mask)]


def enumerate_connected_induced_subgraphs(g: Graph, r: int) -> Iterator[int]:
    """Yield every connected vertex set of size at most ``r`` exactly once, as a bitmask.

    Sets are grown from their minimum vertex with an exclusive extension set
    (Wernicke's ESU scheme), so no set is produced twice and no dedup table is
    needed. The order is deterministic.
    """
    if r < 1:
        raise ValueError("size bound r must be >= 1")
    adj = g.adj
    for v in range(g.n):
        above = ~((1 << (v + 1)) - 1)
        yield 1 << v
        if r > 1:
            yield from _esu_extend(adj, 1 << v, adj[v] & above, adj[v] | (1 << v), above, r - 1)


def _esu_extend(adj, sub, ext, closed, above, budget):
    # closed = sub | N(sub); extensions may only add vertices outside it
    while ext:
        low = ext & -ext
        ext ^= low
        w = low.bit_length() - 1
        new_sub = sub | low
        yield new_sub
        if budget > 1:
            excl = adj[w] & ~closed & above
            yield from _esu_extend(adj, new_sub, ext | excl, closed | adj[w], above, budget - 1)


def enumerate_induced_subsets(g: Graph, r: int) -> Iterator[int]:
    """Yield every nonempty vertex set of size at most ``r`` (by size, then lexicographically)."""
    from itertools import combinations

    if r < 1:
        raise ValueError("size bound r must be >= 1")
    for k in range(1, min(r, g.n) + 1):
        for combo in combinations(range(g.n), k):
            yield mask_of(combo)


def blocks(g: Graph) -> tuple[list[frozenset[int]], frozenset[int]]:
    """Biconnected components and cut vertices.

    Each block is a maximal 2-connected vertex set or the two ends of a bridge;
    every edge lies in exactly one block. Isolated vertices belong to no block.
    Blocks are returned sorted by their sorted vertex tuples.
    """
    n = g.n
    nbrs = [g.neighbors(v) for v in range(n)]
    disc = [-1] * n
    low = [0] * n
    found: list[frozenset[int]] = []
    cuts = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        edge_stack: list[tuple[int, int]] = []
        # frames: (vertex, parent, next neighbor index)
        stack = [[root, -1, 0]]
        while stack:
            frame = stack[-1]
            v, parent, i = frame
            if i < len(nbrs[v]):
                frame[2] += 1
                w = nbrs[v][i]
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    edge_stack.append((v, w))
                    stack.append([w, v, 0])
                    if v == root:
                        root_children += 1
                elif w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.update((a, b))
                    if (a, b) == (parent, v):
                        break
                found.append(frozenset(comp))
        if root_children > 1:
            cuts.add(root)
    found.sort(key=lambda b: sorted(b))
    return found, frozenset(cuts)


def enumerate_simple_cycles(g: Graph, limit: int) -> tuple[list[tuple[int, ...]], bool]:
    """All simple cycles, each once up to rotation and reflection.

    A cycle is reported starting at its minimum vertex, oriented so the second
    vertex is smaller than the last. Returns ``(cycles, truncated)``; enumeration
    stops once ``limit`` cycles have been found and more remain.
    """
    if limit <= 0:
        raise ValueError("limit must be positive")
    nbrs = [g.neighbors(v) for v in range(g.n)]
    cycles: list[tuple[int, ...]] = []
    for s in range(g.n):
        path = [s]
        on_path = {s}
        stack = [iter(nbrs[s])]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if w == s:
                if len(path) >= 3 and path[1] < path[-1]:
                    if len(cycles) == limit:
                        return cycles, True
                    cycles.append(tuple(path))
                continue
            if w < s or w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            stack.append(iter(nbrs[w]))
    return cycles, False

"""Tree-graded graphs: validation, composition from piece templates, induced
gradings of subgraphs, piece orderings and treewidth via pieces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from twsep.errors import InconsistencyError, InputError
from twsep.graph import (
    Graph,
    blocks,
    component_masks,
    enumerate_simple_cycles,
    graph_from_obj,
    graph_to_obj,
    induced_subgraph,
    mask_of,
)
from twsep.treewidth import TreeDecomposition, Violation, join_decompositions, subgraph_treewidth, validate_tree_decomposition

CYCLE_LIMIT = 1_000_000


@dataclass(frozen=True)
class TreeGrading:
    """A host graph with an indexed family of pieces.

    A piece is a vertex set; its subgraph is the induced one unless
    ``piece_edges`` supplies explicit (possibly non-induced) edge sets, which
    validation accepts only in diagnostic mode.
    """

    host: Graph
    pieces: tuple[frozenset[int], ...]
    piece_edges: tuple[frozenset[tuple[int, int]], ...] | None = None

    def edges_of(self, i: int) -> frozenset[tuple[int, int]]:
        if self.piece_edges is not None:
            return self.piece_edges[i]
        p = self.pieces[i]
        return frozenset(e for e in self.host.edges if e[0] in p and e[1] in p)

    def piece_graph(self, i: int) -> tuple[Graph, dict[int, int]]:
        if self.piece_edges is None:
            return induced_subgraph(self.host, self.pieces[i])
        verts = sorted(self.pieces[i])
        pos = {v: k for k, v in enumerate(verts)}
        return Graph(len(verts), frozenset((pos[u], pos[v]) for u, v in self.piece_edges[i])), pos

    def to_json(self) -> dict:
        obj = graph_to_obj(self.host)
        obj["pieces"] = [sorted(p) for p in self.pieces]
        if self.piece_edges is not None:
            obj["piece_edges"] = [[list(e) for e in sorted(es)] for es in self.piece_edges]
        return obj


def grading_from_json(obj: dict) -> TreeGrading:
    host = graph_from_obj(obj)
    if "pieces" not in obj:
        raise InputError("tree grading JSON needs a 'pieces' list")
    pieces = tuple(frozenset(int(v) for v in p) for p in obj["pieces"])
    piece_edges = None
    if obj.get("piece_edges") is not None:
        piece_edges = tuple(frozenset((min(a, b), max(a, b)) for a, b in es) for es in obj["piece_edges"])
        if len(piece_edges) != len(pieces):
            raise InputError("piece_edges must list one edge set per piece")
    return TreeGrading(host, pieces, piece_edges)


def _connected(verts: frozenset[int], edges: Iterable[tuple[int, int]]) -> bool:
    if not verts:
        return False
    nbrs: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    start = min(verts)
    seen = {start}
    stack = [start]
    while stack:
        for w in nbrs[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def _loops_via_blocks(tg: TreeGrading) -> Violation | None:
    piece_edge_sets = [tg.edges_of(i) for i in range(len(tg.pieces))]
    for block in blocks(tg.host)[0]:
        if len(block) < 3:
            continue  # a bridge lies on no cycle
        bedges = {e for e in tg.host.edges if e[0] in block and e[1] in block}
        if not any(block <= p and bedges <= pe for p, pe in zip(tg.pieces, piece_edge_sets)):
            return Violation("loops", sorted(block), f"block {sorted(block)} is not contained in a single piece")
    return None


def _loops_via_cycles(tg: TreeGrading, limit: int = CYCLE_LIMIT) -> Violation | None:
    cycles, truncated = enumerate_simple_cycles(tg.host, limit)
    if truncated:
        raise InputError(f"more than {limit} simple cycles; use the block criterion")
    piece_edge_sets = [tg.edges_of(i) for i in range(len(tg.pieces))]
    for cyc in cycles:
        cedges = {(min(a, b), max(a, b)) for a, b in zip(cyc, cyc[1:] + cyc[:1])}
        verts = frozenset(cyc)
        if not any(verts <= p and cedges <= pe for p, pe in zip(tg.pieces, piece_edge_sets)):
            return Violation("loops", list(cyc), f"cycle {list(cyc)} is not contained in a single piece")
    return None


def validate_tree_grading(tg: TreeGrading, allow_non_induced: bool = False, loop_check: str = "blocks") -> Violation | None:
    """Check that ``tg`` is a tree-grading; ``None`` means valid.

    Conditions, in order: pieces are connected subgraphs, pieces cover every
    vertex and edge, distinct pieces share at most one vertex, and every simple
    cycle lies in one piece. ``loop_check="blocks"`` decides the last condition
    through the block decomposition; ``"cycles"`` enumerates cycles directly.
    """
    g = tg.host
    if tg.piece_edges is not None and len(tg.piece_edges) != len(tg.pieces):
        return Violation("structure", None, "piece_edges must list one edge set per piece")
    for i, p in enumerate(tg.pieces):
        bad = [v for v in p if not 0 <= v < g.n]
        if bad:
            return Violation("structure", (i, bad[0]), f"piece {i} names vertex {bad[0]} outside the host")
        es = tg.edges_of(i)
        if tg.piece_edges is not None:
            for e in es:
                if e not in g.edges or e[0] not in p or e[1] not in p:
                    return Violation("structure", (i, e), f"piece {i} lists edge {e} that is not a host edge inside the piece")
            induced = frozenset(e for e in g.edges if e[0] in p and e[1] in p)
            if es != induced and not allow_non_induced:
                return Violation("induced", i, f"piece {i} is not an induced subgraph (diagnostic mode required)")
        if not _connected(p, es):
            return Violation("connected", i, f"piece {i} is not connected")
    covered = frozenset().union(*tg.pieces) if tg.pieces else frozenset()
    for v in range(g.n):
        if v not in covered:
            return Violation("cover", v, f"vertex {v} lies in no piece")
    all_piece_edges = frozenset().union(*(tg.edges_of(i) for i in range(len(tg.pieces)))) if tg.pieces else frozenset()
    for e in g.sorted_edges():
        if e not in all_piece_edges:
            return Violation("cover", e, f"edge {e} lies in no piece")
    for i in range(len(tg.pieces)):
        for j in range(i + 1, len(tg.pieces)):
            common = tg.pieces[i] & tg.pieces[j]
            if len(common) > 1:
                return Violation("intersection", (i, j), f"pieces {i} and {j} share {len(common)} vertices {sorted(common)}")
    if loop_check == "blocks":
        return _loops_via_blocks(tg)
    if loop_check == "cycles":
        return _loops_via_cycles(tg)
    raise ValueError(f"unknown loop_check {loop_check!r}")


# -- composition -------------------------------------------------------------


@dataclass(frozen=True)
class Gluing:
    parent: int
    child: int
    parent_vertex: int
    child_vertex: int


@dataclass(frozen=True)
class GluingSpec:
    """Copies of templates on the nodes of a tree; each tree edge identifies
    one vertex of the parent copy with one vertex of the child copy."""

    nodes: tuple[str, ...]
    gluings: tuple[Gluing, ...]

    def to_json(self, templates: Mapping[str, Graph]) -> dict:
        return {
            "templates": {k: graph_to_obj(templates[k]) for k in sorted(templates)},
            "tree_nodes": [{"template": t} for t in self.nodes],
            "tree_edges": [
                {"parent": e.parent, "child": e.child, "parent_vertex": e.parent_vertex, "child_vertex": e.child_vertex}
                for e in self.gluings
            ],
        }


def gluing_spec_from_json(obj: dict) -> tuple[GluingSpec, dict[str, Graph]]:
    try:
        templates = {str(k): graph_from_obj(v) for k, v in obj["templates"].items()}
        nodes = tuple(str(node["template"]) for node in obj["tree_nodes"])
        gluings = tuple(
            Gluing(int(e["parent"]), int(e["child"]), int(e["parent_vertex"]), int(e["child_vertex"]))
            for e in obj["tree_edges"]
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed gluing spec: missing or bad field {exc}") from None
    return GluingSpec(nodes, gluings), templates


def _check_spec(spec: GluingSpec, templates: Mapping[str, Graph]):
    k = len(spec.nodes)
    if k == 0:
        raise InputError("gluing spec has no tree nodes")
    for i, t in enumerate(spec.nodes):
        if t not in templates:
            raise InputError(f"tree node {i} uses unknown template {t!r}")
        if templates[t].n == 0 or not templates[t].is_connected():
            raise InputError(f"template {t!r} must be nonempty and connected")
    if len(spec.gluings) != k - 1:
        raise InputError(f"gluing tree has {len(spec.gluings)} edges for {k} nodes; not a tree")
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in spec.gluings:
        if not (0 <= e.parent < k and 0 <= e.child < k) or e.parent == e.child:
            raise InputError(f"bad tree edge {e.parent}-{e.child}")
        if find(e.parent) == find(e.child):
            raise InputError(f"tree edge {e.parent}-{e.child} closes a cycle")
        parent[find(e.parent)] = find(e.child)
        if not 0 <= e.parent_vertex < templates[spec.nodes[e.parent]].n:
            raise InputError(f"parent vertex {e.parent_vertex} invalid in template {spec.nodes[e.parent]!r}")
        if not 0 <= e.child_vertex < templates[spec.nodes[e.child]].n:
            raise InputError(f"child vertex {e.child_vertex} invalid in template {spec.nodes[e.child]!r}")


def compose(spec: GluingSpec, templates: Mapping[str, Graph]) -> TreeGrading:
    """Glue template copies along the tree and return the host with its pieces.

    Host vertices are numbered in order of first appearance, walking nodes in
    index order and template vertices in index order. Labels read
    ``"node:vertex"`` for the first copy that owns each vertex.
    """
    _check_spec(spec, templates)
    slots = {}
    for i, t in enumerate(spec.nodes):
        for v in range(templates[t].n):
            slots[(i, v)] = (i, v)

    def find(x):
        while slots[x] != x:
            slots[x] = slots[slots[x]]
            x = slots[x]
        return x

    for e in spec.gluings:
        a, b = find((e.parent, e.parent_vertex)), find((e.child, e.child_vertex))
        if a != b:
            slots[max(a, b)] = min(a, b)
    index: dict[tuple[int, int], int] = {}
    labels = {}
    pieces = []
    for i, t in enumerate(spec.nodes):
        piece = []
        for v in range(templates[t].n):
            root = find((i, v))
            if root not in index:
                index[root] = len(index)
                labels[index[root]] = f"{root[0]}:{root[1]}"
            piece.append(index[root])
        if len(set(piece)) != len(piece):
            raise InputError(f"gluing collapses two vertices of node {i}'s copy")
        pieces.append(piece)
    edges = set()
    for i, t in enumerate(spec.nodes):
        for u, v in templates[t].edges:
            a, b = pieces[i][u], pieces[i][v]
            edges.add((min(a, b), max(a, b)))
    host = Graph(len(index), frozenset(edges), labels)
    tg = TreeGrading(host, tuple(frozenset(p) for p in pieces))
    bad = validate_tree_grading(tg)
    if bad:
        raise InputError(f"composed graph is not tree-graded: {bad.message}")
    return tg


# -- subgraphs of tree-graded graphs -----------------------------------------


def induced_grading(tg: TreeGrading, s: Iterable[int]) -> tuple[TreeGrading, list[int]]:
    """Grading of ``host[s]`` by the intersections with the pieces.

    Keeps the intersections with at least two vertices. ``host[s]`` must be
    connected with at least two vertices. Returns the grading of the
    relabeled subgraph (vertices in increasing order of ``s``) and the list
    mapping new ids back to host ids.
    """
    s = frozenset(s)
    if len(s) < 2:
        raise InputError("induced grading needs at least two vertices")
    if any(not 0 <= v < tg.host.n for v in s):
        raise InputError("vertex set leaves the host")
    if len(component_masks(tg.host.adj, mask_of(s))) != 1:
        raise InputError("host[s] is disconnected; split it into components first")
    sub, pos = induced_subgraph(tg.host, s)
    back = sorted(s)
    pieces = []
    piece_edges = [] if tg.piece_edges is not None else None
    for i, p in enumerate(tg.pieces):
        common = p & s
        if len(common) < 2:
            continue
        pieces.append(frozenset(pos[v] for v in common))
        if piece_edges is not None:
            piece_edges.append(frozenset((pos[u], pos[v]) for u, v in tg.piece_edges[i] if u in s and v in s))
    out = TreeGrading(sub, tuple(pieces), None if piece_edges is None else tuple(piece_edges))
    bad = validate_tree_grading(out, allow_non_induced=True)
    if bad:
        raise InconsistencyError(f"restricted grading is not a tree-grading: {bad.message}")
    return out, back


def grading_order(tg: TreeGrading) -> list[int]:
    """Order the pieces so each one meets the union of its predecessors in exactly one vertex.

    Starts at piece 0 and always takes the lowest-index piece that meets the
    union so far.
    """
    k = len(tg.pieces)
    if k == 0:
        return []
    order = [0]
    union = set(tg.pieces[0])
    remaining = list(range(1, k))
    while remaining:
        for idx, i in enumerate(remaining):
            common = tg.pieces[i] & union
            if common:
                break
        else:
            raise InconsistencyError("no remaining piece meets the pieces placed so far; host disconnected?")
        if len(common) != 1:
            raise InconsistencyError(f"piece {i} meets earlier pieces in {len(common)} vertices {sorted(common)}")
        order.append(i)
        union |= tg.pieces[i]
        del remaining[idx]
    return order


def tw_via_grading(tg: TreeGrading) -> tuple[int, TreeDecomposition]:
    """Treewidth decomposition of the host assembled from optimal piece decompositions.

    Each piece is solved exactly, then the decompositions are joined one at a
    time along :func:`grading_order`.
    """
    if tg.host.n == 0:
        raise InputError("empty host")
    if not tg.host.is_connected():
        raise InputError("host must be connected")
    order = grading_order(tg)
    acc = None
    for i in order:
        _, td = subgraph_treewidth(tg.host, tg.pieces[i])
        if acc is None:
            acc = td
        else:
            acc = join_decompositions(acc, td, acc.covered & td.covered)
    bad = validate_tree_decomposition(acc)
    if bad:
        raise InconsistencyError(f"joined decomposition is invalid: {bad.message}")
    return acc.width, acc


def tw_profile_via_pieces(tg: TreeGrading, r: int, **kwargs):
    """Pointwise maximum over pieces of the piece treewidth profiles.

    Pieces with identical induced structure are profiled once.
    """
    from twsep.profiles import Profile, ProfileRow, profile

    seen: set[tuple] = set()
    result = None
    for i in range(len(tg.pieces)):
        piece, _ = tg.piece_graph(i)
        key = (piece.n, tuple(sorted(piece.edges)))
        if key in seen:
            continue
        seen.add(key)
        back = sorted(tg.pieces[i])
        prof = profile(piece, r, "tw", **kwargs)
        prof.rows = [ProfileRow(row.k, row.value, tuple(back[v] for v in row.witness)) for row in prof.rows]
        if result is None:
            result = prof
            continue
        rows = [a if a.value >= b.value else b for a, b in zip(result.rows, prof.rows)]
        result = Profile("tw", prof.mode, rows, result.partial or prof.partial, result.examined + prof.examined)
    return result


def piece_widths(tg: TreeGrading) -> list[int]:
    return [subgraph_treewidth(tg.host, p)[0] for p in tg.pieces]


def star_spec(template: str, count: int, center: int = 0) -> GluingSpec:
    """``count`` copies of ``template`` all glued at vertex ``center``."""
    return GluingSpec(
        tuple([template] * count),
        tuple(Gluing(0, i, center, center) for i in range(1, count)),
    )


def chain_spec(templates: Sequence[str], joints: Sequence[tuple[int, int]]) -> GluingSpec:
    """Templates in a path; ``joints[i]`` glues node i's vertex to node i+1's vertex."""
    return GluingSpec(
        tuple(templates),
        tuple(Gluing(i, i + 1, a, b) for i, (a, b) in enumerate(joints)),
    )

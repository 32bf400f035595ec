"""Finite balls in Cayley graphs of free products ``G * H``.

Factors are finite groups given by multiplication tables, or the infinite
cyclic group. Elements of ``G * H`` are stored in normal form: tuples of
syllables ``(tag, element)`` with alternating tags and no identity syllables.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from twsep.errors import InputError, SizeLimitError
from twsep.graph import Graph
from twsep.treegraded import TreeGrading, validate_tree_grading

BALL_CAP = 5000
ASSOCIATIVITY_EXHAUSTIVE_ORDER = 24
ASSOCIATIVITY_SAMPLES = 20_000

Syllable = tuple[str, int]
NormalFormWord = tuple[Syllable, ...]


@dataclass(frozen=True)
class GroupSpec:
    """A finite group by multiplication table, or the infinite cyclic group.

    For ``kind == "cyclic-infinite"`` elements are integers, the identity is 0
    and the generators are +1 and -1.
    """

    kind: str
    order: int = 0
    table: tuple[tuple[int, ...], ...] = ()
    gens: tuple[int, ...] = (1, -1)
    identity: int = 0

    @property
    def finite(self) -> bool:
        return self.kind == "finite-table"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b] if self.finite else a + b

    def inverse(self, a: int) -> int:
        if not self.finite:
            return -a
        row = self.table[a]
        return row.index(self.identity)

    def to_json(self) -> dict:
        if not self.finite:
            return {"kind": "cyclic-infinite"}
        return {"kind": "finite-table", "order": self.order, "table": [list(r) for r in self.table],
                "gens": list(self.gens), "identity": self.identity}


def group_from_json(obj: dict) -> GroupSpec:
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind == "cyclic-infinite":
        return GroupSpec("cyclic-infinite")
    if kind != "finite-table":
        raise InputError(f"unknown group kind {kind!r}")
    try:
        order = int(obj["order"])
        table = tuple(tuple(int(x) for x in row) for row in obj["table"])
        gens = tuple(int(s) for s in obj["gens"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed group spec: {exc}") from None
    if len(table) != order or any(len(row) != order for row in table):
        raise InputError(f"multiplication table must be {order}x{order}")
    if "identity" in obj:
        identity = int(obj["identity"])
    else:
        identity = next((e for e in range(order) if all(table[e][x] == x == table[x][e] for x in range(order))), -1)
        if identity < 0:
            raise InputError("table has no identity element")
    return GroupSpec("finite-table", order, table, gens, identity)


def cyclic_group(k: int, gens: Sequence[int] | None = None) -> GroupSpec:
    """``Z/k`` with generators ``gens`` (default ``{1, k-1}``)."""
    if gens is None:
        gens = sorted({1 % k, (k - 1) % k} - {0})
    table = tuple(tuple((a + b) % k for b in range(k)) for a in range(k))
    return GroupSpec("finite-table", k, table, tuple(gens), 0)


def infinite_cyclic() -> GroupSpec:
    return GroupSpec("cyclic-infinite")


def symmetric_group(m: int, gens: Sequence[Sequence[int]]) -> GroupSpec:
    """Sym(m) by table; element indices follow lexicographic order of the
    permutations, ``gens`` are given as permutation tuples. Product ``a*b``
    applies ``a`` first, then ``b``."""
    perms = list(permutations(range(m)))
    idx = {p: i for i, p in enumerate(perms)}
    table = tuple(tuple(idx[tuple(b[a[x]] for x in range(m))] for b in perms) for a in perms)
    return GroupSpec("finite-table", len(perms), table, tuple(idx[tuple(g)] for g in gens), idx[tuple(range(m))])


@dataclass(frozen=True)
class GroupViolation:
    axiom: str
    witness: tuple
    message: str

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness), "message": self.message}


def validate_group(spec: GroupSpec, seed: int = 0) -> GroupViolation | None:
    """Check closure, identity, inverses, associativity and generation.

    Associativity is checked on every triple up to order 24 and on a seeded
    random sample of triples above that.
    """
    if not spec.finite:
        if spec.kind != "cyclic-infinite":
            return GroupViolation("kind", (spec.kind,), f"unknown group kind {spec.kind!r}")
        return None
    k = spec.order
    t = spec.table
    if k < 1:
        return GroupViolation("closure", (), "group must have at least one element")
    for a in range(k):
        for b in range(k):
            if not 0 <= t[a][b] < k:
                return GroupViolation("closure", (a, b), f"{a}*{b} = {t[a][b]} is not an element")
    e = spec.identity
    if not 0 <= e < k:
        return GroupViolation("identity", (e,), f"identity index {e} out of range")
    for a in range(k):
        if t[e][a] != a or t[a][e] != a:
            return GroupViolation("identity", (e, a), f"{e} is not a two-sided identity for {a}")
    for a in range(k):
        if not any(t[a][b] == e and t[b][a] == e for b in range(k)):
            return GroupViolation("inverse", (a,), f"{a} has no two-sided inverse")
    if k <= ASSOCIATIVITY_EXHAUSTIVE_ORDER:
        triples = ((a, b, c) for a in range(k) for b in range(k) for c in range(k))
    else:
        rng = random.Random(seed)
        triples = ((rng.randrange(k), rng.randrange(k), rng.randrange(k)) for _ in range(ASSOCIATIVITY_SAMPLES))
    for a, b, c in triples:
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return GroupViolation("associativity", (a, b, c), f"({a}*{b})*{c} != {a}*({b}*{c})")
    for s in spec.gens:
        if not 0 <= s < k:
            return GroupViolation("generators", (s,), f"generator {s} is not an element")
        if s == e:
            return GroupViolation("generators", (s,), "the identity may not be a generator")
        if spec.inverse(s) not in spec.gens:
            return GroupViolation("generators", (s,), f"generating set is not closed under inverses: {s}")
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s in spec.gens:
            y = t[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != k:
        missing = min(set(range(k)) - seen)
        return GroupViolation("generation", (missing,), f"generators do not reach element {missing}")
    return None


def _require_valid(spec: GroupSpec, name: str):
    bad = validate_group(spec)
    if bad:
        raise InputError(f"invalid group {name}: {bad.message}")


def right_multiply(word: NormalFormWord, tag: str, element: int, factor: GroupSpec) -> NormalFormWord:
    """Normal form of ``word * element`` where ``element`` lies in factor ``tag``."""
    if word and word[-1][0] == tag:
        merged = factor.mul(word[-1][1], element)
        if merged == factor.identity:
            return word[:-1]
        return word[:-1] + ((tag, merged),)
    return word + ((tag, element),)


def word_label(word: NormalFormWord) -> str:
    return ".".join(f"{tag.lower()}{x}" for tag, x in word) if word else "e"


def _coset_key(word: NormalFormWord, tag: str):
    return (word[:-1] if word and word[-1][0] == tag else word, tag)


def _bfs(start, neighbours, radius, cap):
    dist = {start: 0}
    order = [start]
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if dist[x] == radius:
            continue
        for y in neighbours(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                order.append(y)
                if len(order) > cap:
                    raise SizeLimitError("ball", len(order), cap)
                queue.append(y)
    return order


def _ball_graph(order, neighbours) -> tuple[Graph, dict]:
    index = {x: i for i, x in enumerate(order)}
    edges = set()
    for x in order:
        for y in neighbours(x):
            j = index.get(y)
            if j is not None and j != index[x]:
                i = index[x]
                edges.add((min(i, j), max(i, j)))
    return Graph(len(order), frozenset(edges)), index


def free_product_ball(g: GroupSpec, h: GroupSpec, radius: int, cap: int = BALL_CAP):
    """Ball of the given radius around the identity in ``Cay(G * H, S + T)``.

    Returns ``(graph, grading, words)`` where ``words[v]`` is the normal form of
    vertex ``v``. Vertices are numbered in BFS order (generators of G first).
    Pieces are the cosets ``wG`` and ``wH`` intersected with the ball; cosets
    meeting the ball in a single vertex are dropped unless the ball is a single
    vertex.
    """
    if radius < 0:
        raise InputError("radius must be non-negative")
    _require_valid(g, "G")
    _require_valid(h, "H")
    factors = {"G": g, "H": h}
    letters = [("G", s) for s in g.gens] + [("H", t) for t in h.gens]

    def neighbours(word):
        return [right_multiply(word, tag, x, factors[tag]) for tag, x in letters]

    order = _bfs((), neighbours, radius, cap)
    graph, index = _ball_graph(order, neighbours)
    graph = Graph(graph.n, graph.edges, {i: word_label(w) for i, w in enumerate(order)})
    cosets: dict[tuple, list[int]] = {}
    for i, w in enumerate(order):
        for tag in ("G", "H"):
            cosets.setdefault(_coset_key(w, tag), []).append(i)
    pieces = [frozenset(vs) for vs in cosets.values() if len(vs) >= 2] or [frozenset([0])]
    tg = TreeGrading(graph, tuple(pieces))
    bad = validate_tree_grading(tg)
    if bad:
        raise AssertionError(f"free-product ball failed tree-grading validation: {bad.message}")
    return graph, tg, list(order)


def cayley_ball(g: GroupSpec, radius: int, cap: int = BALL_CAP) -> tuple[Graph, list[int]]:
    """Ball around the identity in ``Cay(G, S)``; for a finite group and a radius
    at least its diameter this is the whole Cayley graph."""
    if radius < 0:
        raise InputError("radius must be non-negative")
    _require_valid(g, "G")

    def neighbours(x):
        return [g.mul(x, s) for s in g.gens]

    order = _bfs(g.identity, neighbours, radius, cap)
    graph, _ = _ball_graph(order, neighbours)
    graph = Graph(graph.n, graph.edges, {i: f"g{x}" if x != g.identity else "e" for i, x in enumerate(order)})
    return graph, list(order)


def template_graph(g: GroupSpec, radius: int) -> Graph:
    """The piece template for factor ``g``: its full Cayley graph when finite,
    otherwise a ball of the given radius."""
    if g.finite:
        return cayley_ball(g, g.order)[0]
    return cayley_ball(g, radius)[0]

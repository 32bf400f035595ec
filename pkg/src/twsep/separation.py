"""Cutsize, balanced separators, separation number and the separation profile.

All balance thresholds are exact integer comparisons: a component of size c
is small when ``2*c <= n``; a private side of size s is balanced when
``3*s <= 2*n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from twsep import kernels
from twsep.errors import InputError, SizeLimitError
from twsep.graph import Graph, component_masks, mask_of, members
from twsep.treewidth import Violation

CUTSIZE_LIMIT = 30
BSEP_LIMIT = 24
SN_LIMIT = 16


@dataclass(frozen=True)
class BalancedSeparator:
    """A pair of vertex sets ``(A, B)``; its size is ``|A & B|``."""

    host: Graph
    A: frozenset[int]
    B: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.A & self.B)

    def to_json(self) -> dict:
        return {"A": sorted(self.A), "B": sorted(self.B), "size": self.size}


def is_half_cutset(g: Graph, s: Iterable[int]) -> bool:
    rest = g.full_mask & ~mask_of(s)
    return all(2 * c.bit_count() <= g.n for c in component_masks(g.adj, rest))


def cutsize_exact(g: Graph, limit: int = CUTSIZE_LIMIT) -> tuple[int, frozenset[int]]:
    """Minimum size of a set whose removal leaves components of at most n/2 vertices.

    Candidate sets are tried by size, then lexicographically, so the witness
    is canonical. A single vertex has cutsize 1.
    """
    if g.n < 1:
        raise InputError("cutsize needs at least one vertex")
    if g.n > limit:
        raise SizeLimitError("cutsize_exact", g.n, limit)
    k, witness = kernels.cutsize_search(list(g.adj))
    return k, frozenset(witness)


def validate_balanced_separator(sep: BalancedSeparator, completion: bool = True) -> Violation | None:
    """Check the balanced-separator conditions; ``None`` means valid.

    With ``completion`` the pair must also cover every vertex.
    """
    g = sep.host
    n = g.n
    verts = frozenset(range(n))
    stray = (sep.A | sep.B) - verts
    if stray:
        return Violation("structure", min(stray), f"vertex {min(stray)} is not in the host graph")
    if completion and (sep.A | sep.B) != verts:
        missing = min(verts - (sep.A | sep.B))
        return Violation("completion", missing, f"vertex {missing} is in neither A nor B")
    only_a, only_b = sep.A - sep.B, sep.B - sep.A
    if 3 * len(only_a) > 2 * n:
        return Violation("balance", "A", f"|A \\ B| = {len(only_a)} exceeds 2n/3 for n={n}")
    if 3 * len(only_b) > 2 * n:
        return Violation("balance", "B", f"|B \\ A| = {len(only_b)} exceeds 2n/3 for n={n}")
    for u, v in g.sorted_edges():
        if (u in only_a and v in only_b) or (u in only_b and v in only_a):
            return Violation("separation", (u, v), f"edge ({u}, {v}) joins A \\ B to B \\ A")
    return None


def _split_components(g: Graph, c: int) -> tuple[frozenset[int], frozenset[int]]:
    """Distribute the components of ``g - c`` onto two sides of size <= 2n/3 each.

    Subset-sum over component sizes (components in the standard order); the
    side ``X`` gets the largest reachable total that is within the cap.
    """
    n = g.n
    cap = 2 * n // 3
    comps = component_masks(g.adj, g.full_mask & ~c)
    total = sum(x.bit_count() for x in comps)
    # reach[i] = sums attainable with the first i components
    reach = [1]
    for comp in comps:
        reach.append(reach[-1] | (reach[-1] << comp.bit_count()))
    target = None
    for s in range(min(cap, total), -1, -1):
        if reach[-1] >> s & 1 and total - s <= cap:
            target = s
            break
    if target is None:
        raise InputError("components cannot be split into two balanced sides")
    x = 0
    for i in range(len(comps), 0, -1):
        size = comps[i - 1].bit_count()
        if not (reach[i - 1] >> target & 1):
            x |= comps[i - 1]
            target -= size
    y = g.full_mask & ~c & ~x
    return frozenset(members(x)), frozenset(members(y))


def balanced_separator_min(g: Graph, completion: bool = True, limit: int = BSEP_LIMIT) -> tuple[int, BalancedSeparator]:
    """Minimum-size balanced separator with a witness.

    With ``completion`` (the default) ``A | B`` must be all of V. Without it,
    ``(empty, empty)`` always qualifies and the minimum is 0; that mode exists
    only to make the degenerate reading observable.
    """
    if g.n < 1:
        raise InputError("balanced separators need at least one vertex")
    if not completion:
        return 0, BalancedSeparator(g, frozenset(), frozenset())
    if g.n > limit:
        raise SizeLimitError("balanced_separator_min", g.n, limit)
    k, middle = kernels.bsep_search(list(g.adj))
    c = mask_of(middle)
    x, y = _split_components(g, c)
    mid = frozenset(middle)
    return k, BalancedSeparator(g, x | mid, y | mid)


def separation_number(g: Graph, completion: bool = True, limit: int = SN_LIMIT) -> tuple[int, frozenset[int]]:
    """Largest minimum balanced separator over all nonempty induced subgraphs.

    Returns the value and the first vertex set (ordered as an integer bitmask)
    attaining it.
    """
    if g.n < 1:
        raise InputError("separation number needs at least one vertex")
    if not completion:
        return 0, frozenset([0])
    if g.n > limit:
        raise SizeLimitError("separation_number", g.n, limit)
    value, witness = kernels.sn_search(list(g.adj))
    return value, frozenset(members(witness))


def cutset_to_balanced_separator(g: Graph, c: Iterable[int]) -> BalancedSeparator:
    """Turn a half-cutset ``C`` into a balanced separator of size ``|C|``.

    The components of ``g - C`` are taken largest first (ties by smallest
    vertex); ``A'`` is the longest prefix of them with at most 2n/3 vertices and
    ``B'`` the remaining ones. The result is ``(A' | C, B' | C)``.
    """
    cset = frozenset(c)
    if any(not 0 <= v < g.n for v in cset):
        raise InputError("cutset contains a vertex outside the graph")
    if not is_half_cutset(g, cset):
        raise InputError(f"{sorted(cset)} is not a half-cutset: some component of g - C has more than n/2 vertices")
    n = g.n
    comps = component_masks(g.adj, g.full_mask & ~mask_of(cset))
    a_mask = 0
    used = 0
    for comp in comps:
        if 3 * (a_mask | comp).bit_count() > 2 * n:
            break
        a_mask |= comp
        used += 1
    b_mask = 0
    for comp in comps[used:]:
        b_mask |= comp
    if b_mask and 3 * a_mask.bit_count() < n:
        # cannot happen for a genuine half-cutset; the counting argument forbids it
        raise AssertionError("prefix side smaller than n/3 while components remain")
    a_side = frozenset(members(a_mask))
    b_side = frozenset(members(b_mask))
    return BalancedSeparator(g, a_side | cset, b_side | cset)


def sep_profile(x: Graph, r: int, **kwargs):
    """Separation profile: ``k -> max cutsize over subgraphs with <= k vertices``."""
    from twsep.profiles import profile

    return profile(x, r, "cut", **kwargs)


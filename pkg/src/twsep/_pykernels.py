"""Pure-Python exponential kernels.

Every function takes adjacency bitmasks ``adj`` (``len(adj) == n``) and must
return exactly what the compiled twin in ``_ckernels.pyx`` returns, witnesses
and tie-breaks included. Ties always go to the smallest vertex index or the
first subset in (size, lexicographic) order.
"""

from itertools import combinations

MAX_DP_VERTICES = 30


def _check_dp_size(n):
    if n > MAX_DP_VERTICES:
        raise ValueError(f"subset DP supports at most {MAX_DP_VERTICES} vertices, got {n}")


def _reach_boundary(adj, s, v):
    """Number of vertices outside ``s | {v}`` adjacent to v's component in G[s | {v}]."""
    comp = 1 << v
    frontier = comp
    nb_all = 0
    while frontier:
        nb = 0
        while frontier:
            low = frontier & -frontier
            nb |= adj[low.bit_length() - 1]
            frontier ^= low
        nb_all |= nb
        frontier = nb & s & ~comp
        comp |= frontier
    return (nb_all & ~s & ~(1 << v)).bit_count()


def _unwind(choice, full):
    rev = []
    s = full
    while s:
        v = choice[s]
        rev.append(v)
        s ^= 1 << v
    rev.reverse()
    return rev


def tw_order(adj):
    """Treewidth and an optimal elimination order.

    ``best[S]`` is the least width of eliminating exactly the vertices of S
    first; the last vertex of S contributes the number of outside vertices
    reachable from it through S.
    """
    n = len(adj)
    if n == 0:
        return -1, []
    _check_dp_size(n)
    size = 1 << n
    best = bytearray(size)
    choice = bytearray(size)
    for s in range(1, size):
        cur = 255
        arg = 0
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            prev = s ^ low
            if best[prev] >= cur:
                continue
            v = low.bit_length() - 1
            q = _reach_boundary(adj, prev, v)
            val = q if q > best[prev] else best[prev]
            if val < cur:
                cur = val
                arg = v
        best[s] = cur
        choice[s] = arg
    return best[size - 1], _unwind(choice, size - 1)


def _layout(adj, mode):
    # mode 0: cutwidth (edge cut, max); 1: vertex separation (boundary, max);
    # 2: sumcut (boundary, sum)
    n = len(adj)
    if n == 0:
        return 0, []
    _check_dp_size(n)
    size = 1 << n
    full = size - 1
    f = [0] * size
    choice = bytearray(size)
    cut = [0] * size if mode == 0 else None
    for s in range(1, size):
        if mode == 0:
            low = s & -s
            v = low.bit_length() - 1
            prev = s ^ low
            cost = cut[prev] + adj[v].bit_count() - 2 * (adj[v] & prev).bit_count()
            cut[s] = cost
        else:
            cost = 0
            outside = full & ~s
            rest = s
            while rest:
                low = rest & -rest
                rest ^= low
                if adj[low.bit_length() - 1] & outside:
                    cost += 1
        cur = -1
        arg = 0
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            val = f[s ^ low]
            if cur < 0 or val < cur:
                cur = val
                arg = low.bit_length() - 1
        if mode == 2:
            f[s] = cur + cost
        else:
            f[s] = cost if cost > cur else cur
        choice[s] = arg
    return f[full], _unwind(choice, full)


def cutwidth_order(adj):
    return _layout(adj, 0)


def vsn_order(adj):
    return _layout(adj, 1)


def sumcut_order(adj):
    return _layout(adj, 2)


def _largest_component(adj, rest):
    largest = 0
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
        c = comp.bit_count()
        if c > largest:
            largest = c
        rest &= ~comp
    return largest


def cutsize_search(adj):
    """Smallest S, first in (size, lex) order, leaving components of size <= n/2."""
    n = len(adj)
    full = (1 << n) - 1
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            s = 0
            for v in combo:
                s |= 1 << v
            if 2 * _largest_component(adj, full & ~s) <= n:
                return k, list(combo)
    raise AssertionError("unreachable: removing every vertex always works")


def _split_feasible(adj, u, c, nu):
    """Can the components of G[u - c] be split into two sides each of size <= 2*nu/3?"""
    cap = 2 * nu // 3
    rest = u & ~c
    total = rest.bit_count()
    lo = total - cap if total > cap else 0
    hi = total if total < cap else cap
    if lo > hi:
        return False
    sums = 1
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
        sums |= sums << comp.bit_count()
        rest &= ~comp
    return (sums >> lo) & ((1 << (hi - lo + 1)) - 1) != 0


def _bsep_first(adj, u, kmin, kmax):
    verts = []
    rest = u
    while rest:
        low = rest & -rest
        verts.append(low.bit_length() - 1)
        rest ^= low
    nu = len(verts)
    for k in range(kmin, min(kmax, nu) + 1):
        for combo in combinations(verts, k):
            c = 0
            for v in combo:
                c |= 1 << v
            if _split_feasible(adj, u, c, nu):
                return c
    return -1


def bsep_search(adj):
    """Smallest middle set C (first in (size, lex) order) of a balanced separator
    ``(X | C, Y | C)`` with X, Y unions of components of G - C."""
    n = len(adj)
    c = _bsep_first(adj, (1 << n) - 1, 0, n)
    verts = []
    while c:
        low = c & -c
        verts.append(low.bit_length() - 1)
        c ^= low
    return len(verts), verts


def sn_search(adj):
    """Max over nonempty induced subgraphs of the minimum balanced separator size.

    Returns ``(value, witness mask)``; the witness is the first vertex set (as
    an integer) attaining the maximum.
    """
    n = len(adj)
    if n == 0:
        return 0, 0
    _check_dp_size(n)
    best = 0
    witness = 0
    for u in range(1, 1 << n):
        if _bsep_first(adj, u, 0, best) >= 0:
            continue
        c = _bsep_first(adj, u, best + 1, n)
        best = c.bit_count()
        witness = u
    return best, witness

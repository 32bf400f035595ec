# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``; same inputs, same outputs."""

from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport uint8_t, int32_t, uint64_t

cdef extern from *:
    """
    static inline int tw_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int tw_ctz(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int tw_popcount(unsigned long long x) nogil
    int tw_ctz(unsigned long long x) nogil

ctypedef unsigned long long mask_t

cdef enum:
    MAX_DP_VERTICES = 30
    MAX_MASK_VERTICES = 63


cdef mask_t* _load(adj, int limit) except NULL:
    cdef int n = len(adj)
    if n > limit:
        raise ValueError(f"compiled kernels support at most {limit} vertices, got {n}")
    cdef mask_t* a = <mask_t*>malloc((n if n > 0 else 1) * sizeof(mask_t))
    if a == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n):
        a[i] = <mask_t>adj[i]
    return a


cdef inline int _reach_boundary(const mask_t* adj, mask_t s, int v) nogil:
    cdef mask_t comp = (<mask_t>1) << v
    cdef mask_t frontier = comp
    cdef mask_t nb_all = 0
    cdef mask_t nb
    while frontier:
        nb = 0
        while frontier:
            nb |= adj[tw_ctz(frontier)]
            frontier &= frontier - 1
        nb_all |= nb
        frontier = nb & s & ~comp
        comp |= frontier
    return tw_popcount(nb_all & ~s & ~((<mask_t>1) << v))


cdef list _unwind(const uint8_t* choice, mask_t full):
    cdef list rev = []
    cdef mask_t s = full
    cdef int v
    while s:
        v = choice[s]
        rev.append(v)
        s ^= (<mask_t>1) << v
    rev.reverse()
    return rev


def tw_order(adj):
    cdef int n = len(adj)
    if n == 0:
        return -1, []
    cdef mask_t* a = _load(adj, MAX_DP_VERTICES)
    cdef mask_t size = (<mask_t>1) << n
    cdef uint8_t* best = <uint8_t*>calloc(size, 1)
    cdef uint8_t* choice = <uint8_t*>calloc(size, 1)
    cdef mask_t s, rest, prev
    cdef int cur, arg, v, q, val
    if best == NULL or choice == NULL:
        free(a); free(best); free(choice)
        raise MemoryError()
    try:
        with nogil:
            for s in range(1, size):
                cur = 255
                arg = 0
                rest = s
                while rest:
                    v = tw_ctz(rest)
                    rest &= rest - 1
                    prev = s ^ ((<mask_t>1) << v)
                    if best[prev] >= cur:
                        continue
                    q = _reach_boundary(a, prev, v)
                    val = q if q > best[prev] else best[prev]
                    if val < cur:
                        cur = val
                        arg = v
                best[s] = <uint8_t>cur
                choice[s] = <uint8_t>arg
        return best[size - 1], _unwind(choice, size - 1)
    finally:
        free(a); free(best); free(choice)


cdef _layout(adj, int mode):
    cdef int n = len(adj)
    if n == 0:
        return 0, []
    cdef mask_t* a = _load(adj, MAX_DP_VERTICES)
    cdef mask_t size = (<mask_t>1) << n
    cdef mask_t full = size - 1
    cdef int32_t* f = <int32_t*>calloc(size, sizeof(int32_t))
    cdef int32_t* cut = <int32_t*>calloc(size if mode == 0 else 1, sizeof(int32_t))
    cdef uint8_t* choice = <uint8_t*>calloc(size, 1)
    cdef mask_t s, rest, prev, outside
    cdef int v, arg
    cdef int32_t cost, cur, val
    if f == NULL or cut == NULL or choice == NULL:
        free(a); free(f); free(cut); free(choice)
        raise MemoryError()
    try:
        with nogil:
            for s in range(1, size):
                if mode == 0:
                    v = tw_ctz(s)
                    prev = s & (s - 1)
                    cost = cut[prev] + tw_popcount(a[v]) - 2 * tw_popcount(a[v] & prev)
                    cut[s] = cost
                else:
                    cost = 0
                    outside = full & ~s
                    rest = s
                    while rest:
                        if a[tw_ctz(rest)] & outside:
                            cost += 1
                        rest &= rest - 1
                cur = -1
                arg = 0
                rest = s
                while rest:
                    v = tw_ctz(rest)
                    rest &= rest - 1
                    val = f[s ^ ((<mask_t>1) << v)]
                    if cur < 0 or val < cur:
                        cur = val
                        arg = v
                if mode == 2:
                    f[s] = cur + cost
                else:
                    f[s] = cost if cost > cur else cur
                choice[s] = <uint8_t>arg
        return f[full], _unwind(choice, full)
    finally:
        free(a); free(f); free(cut); free(choice)


def cutwidth_order(adj):
    return _layout(adj, 0)


def vsn_order(adj):
    return _layout(adj, 1)


def sumcut_order(adj):
    return _layout(adj, 2)


cdef inline int _largest_component(const mask_t* adj, mask_t rest) nogil:
    cdef int largest = 0, c
    cdef mask_t comp, frontier, nb
    while rest:
        comp = rest & (~rest + 1)
        frontier = comp
        while frontier:
            nb = 0
            while frontier:
                nb |= adj[tw_ctz(frontier)]
                frontier &= frontier - 1
            frontier = nb & rest & ~comp
            comp |= frontier
        c = tw_popcount(comp)
        if c > largest:
            largest = c
        rest &= ~comp
    return largest


cdef inline bint _next_combination(int* idx, int k, int n) nogil:
    # advance idx (strictly increasing, values < n) to the next k-subset in lex order
    cdef int i = k - 1
    cdef int j
    while i >= 0 and idx[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    for j in range(i + 1, k):
        idx[j] = idx[j - 1] + 1
    return True


def cutsize_search(adj):
    cdef int n = len(adj)
    cdef mask_t* a = _load(adj, MAX_MASK_VERTICES)
    cdef mask_t full = ((<mask_t>1) << n) - 1 if n < 64 else ~(<mask_t>0)
    cdef int idx[64]
    cdef int k, i, found = -1
    cdef mask_t s
    try:
        with nogil:
            for k in range(n + 1):
                for i in range(k):
                    idx[i] = i
                while True:
                    s = 0
                    for i in range(k):
                        s |= (<mask_t>1) << idx[i]
                    if 2 * _largest_component(a, full & ~s) <= n:
                        found = k
                        break
                    if not _next_combination(idx, k, n):
                        break
                if found >= 0:
                    break
        return found, [idx[i] for i in range(found)]
    finally:
        free(a)


cdef inline bint _split_feasible(const mask_t* adj, mask_t u, mask_t c, int nu) nogil:
    cdef int cap = 2 * nu // 3
    cdef mask_t rest = u & ~c
    cdef int total = tw_popcount(rest)
    cdef int lo = total - cap if total > cap else 0
    cdef int hi = total if total < cap else cap
    cdef mask_t sums = 1, comp, frontier, nb, window
    if lo > hi:
        return False
    while rest:
        comp = rest & (~rest + 1)
        frontier = comp
        while frontier:
            nb = 0
            while frontier:
                nb |= adj[tw_ctz(frontier)]
                frontier &= frontier - 1
            frontier = nb & rest & ~comp
            comp |= frontier
        sums |= sums << tw_popcount(comp)
        rest &= ~comp
    if hi - lo + 1 >= 64:
        window = ~(<mask_t>0)
    else:
        window = ((<mask_t>1) << (hi - lo + 1)) - 1
    return ((sums >> lo) & window) != 0


cdef mask_t _bsep_first(const mask_t* adj, mask_t u, int kmin, int kmax, bint* ok) nogil:
    cdef int verts[64]
    cdef int idx[64]
    cdef int nu = 0, k, i
    cdef mask_t rest = u, c
    while rest:
        verts[nu] = tw_ctz(rest)
        nu += 1
        rest &= rest - 1
    if kmax > nu:
        kmax = nu
    for k in range(kmin, kmax + 1):
        for i in range(k):
            idx[i] = i
        while True:
            c = 0
            for i in range(k):
                c |= (<mask_t>1) << verts[idx[i]]
            if _split_feasible(adj, u, c, nu):
                ok[0] = True
                return c
            if not _next_combination(idx, k, nu):
                break
    ok[0] = False
    return 0


def bsep_search(adj):
    cdef int n = len(adj)
    cdef mask_t* a = _load(adj, MAX_MASK_VERTICES - 1)
    cdef bint ok = False
    cdef mask_t c
    try:
        with nogil:
            c = _bsep_first(a, ((<mask_t>1) << n) - 1, 0, n, &ok)
        verts = []
        while c:
            verts.append(tw_ctz(c))
            c &= c - 1
        return len(verts), verts
    finally:
        free(a)


def sn_search(adj):
    cdef int n = len(adj)
    if n == 0:
        return 0, 0
    cdef mask_t* a = _load(adj, MAX_DP_VERTICES)
    cdef int best = 0
    cdef mask_t u, c, witness = 0
    cdef bint ok = False
    try:
        with nogil:
            for u in range(1, (<mask_t>1) << n):
                _bsep_first(a, u, 0, best, &ok)
                if ok:
                    continue
                c = _bsep_first(a, u, best + 1, n, &ok)
                best = tw_popcount(c)
                witness = u
        return best, witness
    finally:
        free(a)

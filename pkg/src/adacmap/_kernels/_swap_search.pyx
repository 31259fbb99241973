# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of the SWAP-sequence search kernel.

Observationally identical to ``swap_search_py`` (same state ordering, same
signature dedup, same pruning and budget accounting), but everything lives
in C: states are parent-pointer arrays, the pool is a binary heap of packed
64-bit keys (bound, depth, insertion id), and the visited set is an
open-addressing hash table whose keys sit in a growable arena and are
compared exactly.
"""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcmp, memcpy

FOUND = 0
NO_SOLUTION = 1
BUDGET_EXHAUSTED = 2

IMPL = "cython"

ctypedef unsigned long long u64
ctypedef unsigned char u8

cdef u64 FNV_OFFSET = 14695981039346656037ULL
cdef u64 FNV_PRIME = 1099511628211ULL


cdef inline u64 _fnv1a(const u8 *data, Py_ssize_t nbytes):
    cdef u64 h = FNV_OFFSET
    cdef Py_ssize_t i
    for i in range(nbytes):
        h = (h ^ data[i]) * FNV_PRIME
    return h


cdef struct SearchMem:
    int *parent
    int *via
    u64 *heap
    u64 *vhash
    int *voff
    u8 *vlen
    int *arena


cdef inline void _free_mem(SearchMem *m):
    free(m.parent); free(m.via); free(m.heap)
    free(m.vhash); free(m.voff); free(m.vlen); free(m.arena)


def swap_search(object dist_obj, object edges_obj, gates, positions,
                int num_vertices, int max_len, long budget):
    cdef const int[:, :] dist = dist_obj
    cdef const int[:, :] edges = edges_obj
    cdef int E = edges.shape[0]
    cdef int G = len(gates)
    cdef int L = len(positions)
    cdef int V = num_vertices
    if max_len > 200:
        raise ValueError("max_len above 200 is not supported by the packed heap")

    cdef int i, j, u, v, a, b, ei, h, h2, d, total, deg_cap, T, sigints
    cdef long pops = 0
    cdef long push_cap = 16 * budget
    cdef int length, nl, sid, s
    cdef u64 mask0, mask, cmask, key, khash, idx, par
    cdef Py_ssize_t sigbytes

    cdef int *ga = <int *> malloc(max(G, 1) * sizeof(int))
    cdef int *gb = <int *> malloc(max(G, 1) * sizeof(int))
    cdef int *pos0 = <int *> malloc(max(L, 1) * sizeof(int))
    cdef int *pos = <int *> malloc(max(L, 1) * sizeof(int))
    cdef int *occ0 = <int *> malloc(V * sizeof(int))
    cdef int *occ = <int *> malloc(V * sizeof(int))
    cdef int *deg = <int *> malloc(max(L, 1) * sizeof(int))
    cdef int *tok = <int *> malloc(max(L, 1) * sizeof(int))
    cdef int *sig = <int *> malloc((max(L, 1) + 2) * sizeof(int))
    cdef int *chain = <int *> malloc(max(max_len, 1) * sizeof(int))
    if (ga == NULL or gb == NULL or pos0 == NULL or pos == NULL or occ0 == NULL
            or occ == NULL or deg == NULL or tok == NULL or sig == NULL or chain == NULL):
        free(ga); free(gb); free(pos0); free(pos); free(occ0); free(occ)
        free(deg); free(tok); free(sig); free(chain)
        raise MemoryError()

    # growable search memory
    cdef SearchMem sm
    cdef int scap = 4096
    cdef int scount = 0
    cdef int hcap = 4096
    cdef int hsize = 0
    cdef u64 vcap = 1 << 13
    cdef u64 vcount = 0
    cdef int acap = 1 << 14
    cdef int aused = 0
    sm.parent = <int *> malloc(scap * sizeof(int))
    sm.via = <int *> malloc(scap * sizeof(int))
    sm.heap = <u64 *> malloc(hcap * sizeof(u64))
    sm.vhash = <u64 *> malloc(vcap * sizeof(u64))
    sm.voff = <int *> malloc(vcap * sizeof(int))
    sm.vlen = <u8 *> malloc(vcap * sizeof(u8))
    sm.arena = <int *> malloc(acap * sizeof(int))
    if (sm.parent == NULL or sm.via == NULL or sm.heap == NULL or sm.vhash == NULL
            or sm.voff == NULL or sm.vlen == NULL or sm.arena == NULL):
        _free_mem(&sm)
        free(ga); free(gb); free(pos0); free(pos); free(occ0); free(occ)
        free(deg); free(tok); free(sig); free(chain)
        raise MemoryError()
    for idx in range(vcap):
        sm.voff[idx] = -1

    try:
        for i in range(G):
            ga[i] = gates[i][0]
            gb[i] = gates[i][1]
        for i in range(V):
            occ0[i] = -1
        for i in range(L):
            pos0[i] = positions[i]
            deg[i] = 0
            if pos0[i] >= 0:
                occ0[pos0[i]] = i
        for i in range(G):
            deg[ga[i]] += 1
            deg[gb[i]] += 1
        T = 0
        for i in range(L):
            if deg[i] > 0:
                tok[T] = i
                T += 1
        sigints = T + 2
        sigbytes = sigints * sizeof(int)
        # two largest token degrees bound the per-swap improvement
        h = h2 = 0
        for i in range(T):
            d = deg[tok[i]]
            if d > h:
                h2 = h
                h = d
            elif d > h2:
                h2 = d
        deg_cap = h + h2
        if deg_cap < 1:
            deg_cap = 1

        mask0 = 0
        for i in range(V):
            if occ0[i] >= 0:
                mask0 |= (<u64> 1) << i

        h = total = 0
        for i in range(G):
            d = dist[pos0[ga[i]], pos0[gb[i]]]
            total += d
            if d > h:
                h = d
        h2 = (total + deg_cap - 1) // deg_cap
        if h2 > h:
            h = h2
        if h > max_len:
            return NO_SOLUTION, None

        # root state
        sm.parent[0] = -1
        sm.via[0] = -1
        scount = 1
        sm.heap[0] = _pack(h, 0, 0)
        hsize = 1
        sig[0] = <int> (mask0 & <u64> 0xFFFFFFFF)
        sig[1] = <int> (mask0 >> 32)
        for i in range(T):
            sig[2 + i] = pos0[tok[i]]
        khash = _fnv1a(<const u8 *> sig, sigbytes)
        idx = _probe(&sm, vcap, khash, sig, sigbytes)
        sm.vhash[idx] = khash
        sm.voff[idx] = aused
        sm.vlen[idx] = 0
        memcpy(sm.arena + aused, sig, sigbytes)
        aused += sigints
        vcount = 1

        while hsize > 0:
            key = _heap_pop(sm.heap, &hsize)
            length = 0xFF - <int> ((key >> 40) & 0xFF)
            if <int> (key >> 48) == length:  # bound zero: embedding reached
                seq = []
                sid = <int> (key & 0xFFFFFFFFFF)
                while sid > 0:
                    seq.append(sm.via[sid])
                    sid = sm.parent[sid]
                seq.reverse()
                return FOUND, seq
            pops += 1
            if pops >= budget:
                return BUDGET_EXHAUSTED, None
            if length >= max_len:
                continue
            sid = <int> (key & 0xFFFFFFFFFF)

            memcpy(pos, pos0, L * sizeof(int))
            memcpy(occ, occ0, V * sizeof(int))
            mask = mask0
            j = 0
            s = sid
            while s > 0:
                chain[j] = sm.via[s]
                s = sm.parent[s]
                j += 1
            while j > 0:
                j -= 1
                ei = chain[j]
                u = edges[ei, 0]
                v = edges[ei, 1]
                a = occ[u]
                b = occ[v]
                occ[u] = b
                occ[v] = a
                if a >= 0:
                    pos[a] = v
                if b >= 0:
                    pos[b] = u
                if (a >= 0) != (b >= 0):
                    mask ^= ((<u64> 1) << u) | ((<u64> 1) << v)

            nl = length + 1
            for ei in range(E):
                u = edges[ei, 0]
                v = edges[ei, 1]
                a = occ[u]
                b = occ[v]
                if a < 0 and b < 0:
                    continue
                occ[u] = b
                occ[v] = a
                if a >= 0:
                    pos[a] = v
                if b >= 0:
                    pos[b] = u
                if a >= 0 and b >= 0:
                    cmask = mask
                else:
                    cmask = mask ^ (((<u64> 1) << u) | ((<u64> 1) << v))
                sig[0] = <int> (cmask & <u64> 0xFFFFFFFF)
                sig[1] = <int> (cmask >> 32)
                for i in range(T):
                    sig[2 + i] = pos[tok[i]]
                khash = _fnv1a(<const u8 *> sig, sigbytes)
                idx = _probe(&sm, vcap, khash, sig, sigbytes)
                if sm.voff[idx] == -1 or sm.vlen[idx] > <u8> nl:
                    h = total = 0
                    for i in range(G):
                        d = dist[pos[ga[i]], pos[gb[i]]]
                        total += d
                        if d > h:
                            h = d
                    h2 = (total + deg_cap - 1) // deg_cap
                    if h2 > h:
                        h = h2
                    if nl + h <= max_len:
                        if sm.voff[idx] == -1:
                            sm.vhash[idx] = khash
                            sm.voff[idx] = aused
                            if aused + sigints > acap:
                                acap = acap * 2 + sigints
                                sm.arena = <int *> _grow(sm.arena, acap * sizeof(int))
                            memcpy(sm.arena + aused, sig, sigbytes)
                            aused += sigints
                            vcount += 1
                            if vcount * 10 > vcap * 7:
                                vcap = _rehash(&sm, vcap, sigbytes)
                        sm.vlen[idx] = <u8> nl
                        if scount > push_cap:
                            return BUDGET_EXHAUSTED, None
                        if scount >= scap:
                            scap *= 2
                            sm.parent = <int *> _grow(sm.parent, scap * sizeof(int))
                            sm.via = <int *> _grow(sm.via, scap * sizeof(int))
                        sm.parent[scount] = sid
                        sm.via[scount] = ei
                        if hsize >= hcap:
                            hcap *= 2
                            sm.heap = <u64 *> _grow(sm.heap, hcap * sizeof(u64))
                        _heap_push(sm.heap, &hsize, _pack(nl + h, nl, scount))
                        scount += 1
                occ[u] = a
                occ[v] = b
                if a >= 0:
                    pos[a] = u
                if b >= 0:
                    pos[b] = v
        return NO_SOLUTION, None
    finally:
        _free_mem(&sm)
        free(ga)
        free(gb)
        free(pos0)
        free(pos)
        free(occ0)
        free(occ)
        free(deg)
        free(tok)
        free(sig)
        free(chain)


cdef inline u64 _pack(int f, int length, int sid):
    return ((<u64> f) << 48) | ((<u64> (0xFF - length)) << 40) | (<u64> sid)


cdef inline void _heap_push(u64 *heap, int *hsize, u64 key):
    cdef int i = hsize[0]
    cdef int p
    heap[i] = key
    hsize[0] = i + 1
    while i > 0:
        p = (i - 1) >> 1
        if heap[p] <= heap[i]:
            break
        heap[p], heap[i] = heap[i], heap[p]
        i = p


cdef inline u64 _heap_pop(u64 *heap, int *hsize):
    cdef u64 top = heap[0]
    cdef int n = hsize[0] - 1
    cdef int i = 0
    cdef int c
    hsize[0] = n
    heap[0] = heap[n]
    while True:
        c = 2 * i + 1
        if c >= n:
            break
        if c + 1 < n and heap[c + 1] < heap[c]:
            c += 1
        if heap[i] <= heap[c]:
            break
        heap[i], heap[c] = heap[c], heap[i]
        i = c
    return top


cdef void *_grow(void *buf, size_t nbytes):
    cdef void *out = realloc(buf, nbytes)
    if out == NULL:
        raise MemoryError()
    return out


cdef inline u64 _probe(SearchMem *sm, u64 vcap, u64 khash, const int *sig,
                       Py_ssize_t sigbytes):
    cdef u64 idx = khash & (vcap - 1)
    while sm.voff[idx] != -1:
        if sm.vhash[idx] == khash and memcmp(
                sm.arena + sm.voff[idx], sig, sigbytes) == 0:
            return idx
        idx = (idx + 1) & (vcap - 1)
    return idx


cdef u64 _rehash(SearchMem *sm, u64 vcap, Py_ssize_t sigbytes):
    cdef u64 ncap = vcap * 2
    cdef u64 *nhash = <u64 *> malloc(ncap * sizeof(u64))
    cdef int *noff = <int *> malloc(ncap * sizeof(int))
    cdef u8 *nlen = <u8 *> malloc(ncap * sizeof(u8))
    cdef u64 i, idx
    if nhash == NULL or noff == NULL or nlen == NULL:
        free(nhash); free(noff); free(nlen)
        raise MemoryError()
    for i in range(ncap):
        noff[i] = -1
    for i in range(vcap):
        if sm.voff[i] == -1:
            continue
        idx = sm.vhash[i] & (ncap - 1)
        while noff[idx] != -1:
            idx = (idx + 1) & (ncap - 1)
        nhash[idx] = sm.vhash[i]
        noff[idx] = sm.voff[i]
        nlen[idx] = sm.vlen[i]
    free(sm.vhash)
    free(sm.voff)
    free(sm.vlen)
    sm.vhash = nhash
    sm.voff = noff
    sm.vlen = nlen
    return ncap

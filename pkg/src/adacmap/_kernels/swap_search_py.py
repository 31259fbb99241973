"""Pure-Python twin of the SWAP-sequence search kernel.

An A*-style best-first search over swap sequences. Semantics are shared with
the compiled extension and pinned by the parity tests:

* pool seeded with the empty sequence; states ordered by
  (length + remaining-swaps bound, longer first, insertion order);
* a popped zero-bound state is returned immediately;
* states shorter than ``max_len`` expand by appending every coupling edge
  with at least one occupied endpoint under the state's own mapping, scanned
  in lexicographic edge order;
* children whose bound proves they cannot finish within ``max_len`` are not
  inserted, nor are states whose (occupied-vertex set, gate-token positions)
  signature was already reached by a no-longer sequence - tokens that appear
  in no gate are interchangeable, so the signature captures everything the
  cost and the expansion rule can see;
* ``budget`` caps pool extractions, and 16x ``budget`` caps insertions.

The bound is the larger of the maximum single-gate distance (one swap moves
a gate's endpoint distance by at most one) and the summed distance divided
by the two largest gate-token degrees (one swap moves two tokens and can
improve one distance unit per gate incident to them). Both are admissible
and consistent, so the first goal popped has minimum length; every goal at
pool level f has length exactly f, which also makes the within-level tie
order irrelevant for optimality - deeper-first is simply faster on plateaus.

Edge indices refer to the architecture's lexicographically sorted edge list.
"""

from __future__ import annotations

import heapq

FOUND = 0
NO_SOLUTION = 1
BUDGET_EXHAUSTED = 2

IMPL = "python"


def swap_search(dist, edges, gates, positions, num_vertices, max_len, budget):
    """Search for a swap sequence making every gate's endpoints adjacent.

    dist: V x V matrix (indexable as dist[a][b]) of swap distances.
    edges: lexicographically sorted list of (u, v) vertex pairs, u < v.
    gates: list of (a, b) logical qubit pairs whose distance must reach 0.
    positions: logical-qubit-indexed vertex array, -1 for unplaced qubits.
    Returns (status, edge-index list or None).
    """
    pos0 = list(positions)
    occ0 = [-1] * num_vertices
    for q, v in enumerate(pos0):
        if v >= 0:
            occ0[v] = q

    tokens = sorted({q for pair in gates for q in pair})
    deg = {t: 0 for t in tokens}
    for a, b in gates:
        deg[a] += 1
        deg[b] += 1
    top = sorted(deg.values(), reverse=True)
    deg_cap = max(1, sum(top[:2]))

    def bound(pos):
        h = total = 0
        for a, b in gates:
            d = dist[pos[a]][pos[b]]
            total += d
            if d > h:
                h = d
        h2 = -(-total // deg_cap)  # ceil
        return h if h >= h2 else h2

    mask0 = 0
    for v in range(num_vertices):
        if occ0[v] >= 0:
            mask0 |= 1 << v

    h0 = bound(pos0)
    if h0 > max_len:
        return NO_SOLUTION, None

    push_cap = 16 * budget
    parent = [-1]
    via = [-1]
    heap = [(h0, 0, 0)]  # (bound + length, -length, state id)
    visited = {(mask0, *(pos0[t] for t in tokens)): 0}
    pops = 0
    while heap:
        f, neg_len, sid = heapq.heappop(heap)
        length = -neg_len
        if f == length:  # bound zero: embedding reached
            seq = []
            while sid > 0:
                seq.append(via[sid])
                sid = parent[sid]
            seq.reverse()
            return FOUND, seq
        pops += 1
        if pops >= budget:
            return BUDGET_EXHAUSTED, None
        if length >= max_len:
            continue
        pos = list(pos0)
        occ = list(occ0)
        mask = mask0
        chain = []
        s = sid
        while s > 0:
            chain.append(via[s])
            s = parent[s]
        for ei in reversed(chain):
            u, v = edges[ei]
            a, b = occ[u], occ[v]
            occ[u], occ[v] = b, a
            if a >= 0:
                pos[a] = v
            if b >= 0:
                pos[b] = u
            if (a >= 0) != (b >= 0):
                mask ^= (1 << u) | (1 << v)
        nl = length + 1
        for ei, (u, v) in enumerate(edges):
            a, b = occ[u], occ[v]
            if a < 0 and b < 0:
                continue
            occ[u], occ[v] = b, a
            if a >= 0:
                pos[a] = v
            if b >= 0:
                pos[b] = u
            cmask = mask if (a >= 0 and b >= 0) else mask ^ ((1 << u) | (1 << v))
            key = (cmask, *(pos[t] for t in tokens))
            prev = visited.get(key)
            if prev is None or prev > nl:
                h = bound(pos)
                if nl + h <= max_len:
                    visited[key] = nl
                    if len(parent) > push_cap:
                        return BUDGET_EXHAUSTED, None
                    parent.append(sid)
                    via.append(ei)
                    heapq.heappush(heap, (nl + h, -nl, len(parent) - 1))
            occ[u], occ[v] = a, b
            if a >= 0:
                pos[a] = u
            if b >= 0:
                pos[b] = v
    return NO_SOLUTION, None

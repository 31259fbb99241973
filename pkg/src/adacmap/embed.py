"""Subgraph-isomorphism testing, embedding enumeration, and anchored selection.

The matcher is a depth-first backtracking search in the VF2 mould: interaction
graph nodes are assigned in descending-degree order, candidate vertices are
constrained to common neighbours of already-assigned neighbours, and vertex
degrees prune early. A per-call step budget guards pathological instances.

`best_embedding` fuses a distance objective into the same search: among all
embeddings it returns one minimising the summed distance of each node's image
from an anchor placement, with branch-and-bound pruning on the partial sum.
"""

from __future__ import annotations

import logging
from typing import Iterator

from .arch import ArchGraph
from .circuit import InteractionGraph
from .mapping import Mapping

logger = logging.getLogger(__name__)

MATCHER_BUDGET = 10**6


class _Budget:
    __slots__ = ("left", "tripped")

    def __init__(self, steps: int):
        self.left = steps
        self.tripped = False

    def step(self) -> bool:
        if self.left <= 0:
            self.tripped = True
            return False
        self.left -= 1
        return True


def _node_order(ig: InteractionGraph) -> list[int]:
    """Connected expansion order: every node after a component root has an
    already-ordered neighbour, so candidates stay adjacency-constrained."""
    remaining = set(ig.nodes)
    order: list[int] = []
    ordered: set[int] = set()
    while remaining:
        root = min(remaining, key=lambda q: (-ig.degree(q), q))
        stack = [root]
        order.append(root)
        ordered.add(root)
        remaining.discard(root)
        while True:
            cands = [q for q in remaining if ig.adj[q] & ordered]
            if not cands:
                break
            q = min(
                cands,
                key=lambda q: (-len(ig.adj[q] & ordered), -ig.degree(q), q),
            )
            order.append(q)
            ordered.add(q)
            remaining.discard(q)
    return order


def _quick_reject(ig: InteractionGraph, ag: ArchGraph) -> bool:
    """Cheap necessary conditions; True means certainly not embeddable."""
    if len(ig.nodes) > ag.num_vertices:
        return True
    if len(ig.edges) > len(ag.edges):
        return True
    ig_degs = sorted((ig.degree(q) for q in ig.nodes), reverse=True)
    if any(di > da for di, da in zip(ig_degs, ag.degree_sorted_desc())):
        return True
    if ag.is_bipartite and not ig.is_bipartite():
        return True
    return False


def _iter_assignments(
    ig: InteractionGraph, ag: ArchGraph, budget: _Budget
) -> Iterator[dict[int, int]]:
    order = _node_order(ig)
    assign: dict[int, int] = {}
    used = [False] * ag.num_vertices

    def rec(idx: int) -> Iterator[dict[int, int]]:
        if not budget.step():
            return
        if idx == len(order):
            yield dict(assign)
            return
        q = order[idx]
        mapped = [assign[n] for n in ig.adj[q] if n in assign]
        if mapped:
            cands = set(ag.adj[mapped[0]])
            for mv in mapped[1:]:
                cands &= set(ag.adj[mv])
            cand_list = sorted(cands)
        else:
            cand_list = range(ag.num_vertices)
        need = ig.degree(q)
        for v in cand_list:
            if used[v] or len(ag.adj[v]) < need:
                continue
            assign[q] = v
            used[v] = True
            yield from rec(idx + 1)
            del assign[q]
            used[v] = False

    yield from rec(0)


def is_embeddable(ig: InteractionGraph, ag: ArchGraph, budget: int = MATCHER_BUDGET) -> bool:
    """True iff at least one embedding of ``ig`` into ``ag`` exists.

    Results are memoised per architecture (keyed by the IG edge set). A
    tripped search budget counts as not embeddable, with a logged warning.
    """
    cached = ag.embed_cache.get(ig.edges)
    if cached is not None:
        return cached
    if _quick_reject(ig, ag):
        ag.embed_cache[ig.edges] = False
        return False
    b = _Budget(budget)
    found = next(_iter_assignments(ig, ag, b), None) is not None
    if not found and b.tripped:
        logger.warning(
            "matcher budget (%d steps) exhausted on %d-node IG vs %s; treating as not embeddable",
            budget, len(ig.nodes), ag.name,
        )
    ag.embed_cache[ig.edges] = found
    return found


def _check_embedding(assign: dict[int, int], ig: InteractionGraph, ag: ArchGraph) -> None:
    for a, b in ig.edges:
        if not ag.has_edge(assign[a], assign[b]):
            raise AssertionError(f"embedding violates edge ({a},{b})")


def enumerate_embeddings(
    ig: InteractionGraph, ag: ArchGraph, limit: int, budget: int = MATCHER_BUDGET
) -> Iterator[Mapping]:
    """Lazily yield up to ``limit`` distinct embeddings in deterministic order."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if _quick_reject(ig, ag):
        return
    b = _Budget(budget)
    count = 0
    for assign in _iter_assignments(ig, ag, b):
        if __debug__:
            _check_embedding(assign, ig, ag)
        yield Mapping(assign)
        count += 1
        if count >= limit:
            return


def best_embedding(
    ig: InteractionGraph,
    ag: ArchGraph,
    anchor: Mapping,
    budget: int = MATCHER_BUDGET,
) -> Mapping | None:
    """Embedding minimising sum over IG nodes of dist[image][anchor image].

    Branch-and-bound on the partial sum (zero lower bound for unassigned
    nodes); exact ties resolved toward the lexicographically smallest
    assignment vector ordered by logical id. Returns None when no embedding
    exists. If the budget trips, the best embedding found so far is returned.
    """
    for q in ig.nodes:
        if q not in anchor:
            raise ValueError(f"anchor does not place IG node {q}")
    if _quick_reject(ig, ag):
        return None

    order = _node_order(ig)
    nodes_sorted = sorted(ig.nodes)
    dist = ag.dist
    best: tuple[int, tuple[int, ...]] | None = None
    best_assign: dict[int, int] | None = None
    assign: dict[int, int] = {}
    used = [False] * ag.num_vertices
    b = _Budget(budget)

    def rec(idx: int, pcost: int) -> None:
        nonlocal best, best_assign
        if not b.step():
            return
        if idx == len(order):
            vec = tuple(assign[q] for q in nodes_sorted)
            if best is None or (pcost, vec) < best:
                best = (pcost, vec)
                best_assign = dict(assign)
            return
        q = order[idx]
        mapped = [assign[n] for n in ig.adj[q] if n in assign]
        if mapped:
            cands = set(ag.adj[mapped[0]])
            for mv in mapped[1:]:
                cands &= set(ag.adj[mv])
        else:
            cands = None  # all vertices
        aq = anchor[q]
        need = ig.degree(q)
        pool = sorted(
            (int(dist[v][aq]), v)
            for v in (cands if cands is not None else range(ag.num_vertices))
            if not used[v] and len(ag.adj[v]) >= need
        )
        for dv, v in pool:
            c = pcost + dv
            if best is not None and c > best[0]:
                break  # pool sorted by contribution, rest only costlier
            assign[q] = v
            used[v] = True
            rec(idx + 1, c)
            del assign[q]
            used[v] = False

    rec(0, 0)
    if b.tripped:
        logger.warning("best_embedding budget exhausted on %s; returning incumbent", ag.name)
    if best_assign is None:
        return None
    if __debug__:
        _check_embedding(best_assign, ig, ag)
    return Mapping(best_assign)

"""Independent correctness oracles for routed circuits.

Equivalence is established by two separate checks. The first replays the
physical circuit, translating every gate back to logical qubits through the
evolving placement, and demands that each qubit sees exactly its original
gate subsequence. The second treats CNOT and SWAP as permutations of
computational basis states (exact integer arithmetic, so limited to 16
qubits) and compares the composed permutation, with routing swaps absorbed
into the placement bookkeeping rather than the permutation.

Also here: exact token-swap distances by breadth-first search over occupancy
states, the ground truth the heuristic swap search is validated against.
"""

from __future__ import annotations

import logging

import numpy as np

from .arch import ArchGraph
from .circuit import CNOT, SINGLE, SWAP, Circuit, InteractionGraph
from .embed import enumerate_embeddings
from .mapping import Mapping
from .route import RoutedCircuit

logger = logging.getLogger(__name__)

PERMUTATION_QUBIT_LIMIT = 16


def check_executability(rc: RoutedCircuit, ag: ArchGraph) -> bool:
    """True iff every two-qubit physical gate acts on an architecture edge."""
    for pg in rc.physical_gates:
        if len(pg.vertices) == 2 and not ag.has_edge(*pg.vertices):
            return False
    return True


# ---------------------------------------------------------------------------
# basis-state permutations

def _perm_cnot(n: int, control: int, target: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return idx ^ (((idx >> control) & 1) << target)


def _perm_swap(n: int, a: int, b: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    diff = ((idx >> a) & 1) ^ ((idx >> b) & 1)
    return idx ^ ((diff << a) | (diff << b))


def circuit_permutation(n: int, gates) -> np.ndarray:
    """Composed basis permutation of an iterable of two-qubit gates.

    Single-qubit gates are outside the permutation model and are skipped.
    """
    total = np.arange(1 << n, dtype=np.int64)
    for g in gates:
        if g.kind == CNOT:
            total = _perm_cnot(n, *g.qubits)[total]
        elif g.kind == SWAP:
            total = _perm_swap(n, *g.qubits)[total]
    return total


def _track_events(c: Circuit) -> list[list[tuple]]:
    out: list[list[tuple]] = [[] for _ in range(c.num_qubits)]
    for g in c.gates:
        if g.kind == CNOT:
            ctl, tgt = g.qubits
            out[ctl].append((CNOT, "c", tgt))
            out[tgt].append((CNOT, "t", ctl))
        elif g.kind == SWAP:
            a, b = g.qubits
            out[a].append((SWAP, b))
            out[b].append((SWAP, a))
        else:
            out[g.qubits[0]].append((SINGLE, g.label))
    return out


class _Replay:
    """Vertex -> logical bookkeeping while walking physical gates."""

    def __init__(self, placement: Mapping):
        self.inv: dict[int, int] = {v: q for q, v in placement.items()}

    def routing_swap(self, u: int, v: int) -> None:
        a, b = self.inv.pop(u, None), self.inv.pop(v, None)
        if b is not None:
            self.inv[u] = b
        if a is not None:
            self.inv[v] = a

    def logical(self, v: int) -> int | None:
        return self.inv.get(v)


def check_equivalence(lc: Circuit, rc: RoutedCircuit, ag: ArchGraph) -> bool:
    """Order reconstruction plus (for <= 16 qubits) the permutation oracle."""
    for q in range(lc.num_qubits):
        if q not in rc.initial_placement:
            logger.debug("qubit %d unplaced in initial placement", q)
            return False

    # (1) per-qubit order reconstruction
    replay = _Replay(rc.initial_placement)
    recon: list[list[tuple]] = [[] for _ in range(lc.num_qubits)]
    for pg in rc.physical_gates:
        if pg.kind == SWAP and pg.origin is None:
            replay.routing_swap(*pg.vertices)
            continue
        qs = [replay.logical(v) for v in pg.vertices]
        if any(q is None for q in qs):
            logger.debug("gate on unoccupied vertex %s", pg.vertices)
            return False
        if pg.kind == CNOT:
            ctl, tgt = qs
            recon[ctl].append((CNOT, "c", tgt))
            recon[tgt].append((CNOT, "t", ctl))
        elif pg.kind == SWAP:
            a, b = qs
            recon[a].append((SWAP, b))
            recon[b].append((SWAP, a))
        else:
            recon[qs[0]].append((SINGLE, pg.label))
    if recon != _track_events(lc):
        return False

    # (2) basis-permutation oracle
    n = lc.num_qubits
    if n > PERMUTATION_QUBIT_LIMIT:
        logger.warning(
            "%d qubits exceed the permutation oracle limit (%d); "
            "equivalence downgraded to order reconstruction only",
            n, PERMUTATION_QUBIT_LIMIT,
        )
        return True
    replay = _Replay(rc.initial_placement)
    total = np.arange(1 << n, dtype=np.int64)
    for pg in rc.physical_gates:
        if pg.kind == SWAP and pg.origin is None:
            replay.routing_swap(*pg.vertices)
        elif pg.kind == CNOT:
            ctl, tgt = (replay.logical(v) for v in pg.vertices)
            total = _perm_cnot(n, ctl, tgt)[total]
        elif pg.kind == SWAP:
            a, b = (replay.logical(v) for v in pg.vertices)
            total = _perm_swap(n, a, b)[total]
    return bool(np.array_equal(total, circuit_permutation(n, lc.gates)))


# ---------------------------------------------------------------------------
# exact swap distances (small instances)

def _bfs_swap_distance(start: tuple[int, ...], is_goal, ag: ArchGraph, cap: int) -> int | None:
    if is_goal(start):
        return 0
    frontier = [start]
    seen = {start}
    depth = 0
    while frontier and depth < cap:
        depth += 1
        nxt = []
        for st in frontier:
            for u, v in ag.edges:
                t = tuple(v if p == u else u if p == v else p for p in st)
                if t in seen:
                    continue
                if is_goal(t):
                    return depth
                seen.add(t)
                nxt.append(t)
        frontier = nxt
    return None


def exact_token_swap_distance(m1: Mapping, m2: Mapping, ag: ArchGraph, cap: int) -> int | None:
    """Minimum swaps transforming m1 into m2, or None beyond ``cap``."""
    qs = m1.qubits()
    if m2.qubits() != qs:
        raise ValueError("mappings must cover the same logical qubits")
    goal = tuple(m2[q] for q in qs)
    start = tuple(m1[q] for q in qs)
    return _bfs_swap_distance(start, lambda st: st == goal, ag, cap)


def exact_mapping_to_graph_distance(
    m: Mapping, ig: InteractionGraph, ag: ArchGraph, cap: int
) -> int | None:
    """Minimum swaps from m to any embedding of ig; None if unreachable.

    Computed as the breadth-first distance to the goal set formed by all
    embeddings (enumerated exhaustively), i.e. the minimum over embeddings of
    the pairwise token-swap distance.
    """
    nodes = sorted(ig.nodes)
    for q in nodes:
        if q not in m:
            raise ValueError(f"mapping does not place IG node {q}")
    goals = {
        tuple(emb[q] for q in nodes)
        for emb in enumerate_embeddings(ig, ag, limit=10**9)
    }
    if not goals:
        return None
    qs = m.qubits()
    pick = [qs.index(q) for q in nodes]
    start = tuple(m[q] for q in qs)

    def is_goal(st: tuple[int, ...]) -> bool:
        return tuple(st[i] for i in pick) in goals

    return _bfs_swap_distance(start, is_goal, ag, cap)

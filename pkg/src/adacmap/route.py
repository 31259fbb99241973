"""Adaptive divide-and-conquer routing.

The pipeline: find the largest embeddable subsequence (divide module), pick
its embedding anchored to reverse-traversal mappings (sabre module), then
route the right part forward and the reversed left part from that embedding,
chunk by chunk. Each chunk is grown gate by gate; a best-first search over
swap sequences (the compiled kernel) finds, for the grown chunk, a sequence
that turns the current mapping into an embedding of the chunk's interaction
graph. A look-ahead score (gates settled per swap spent, one recursion level
deep by default) decides where the chunk boundary lands.

Assembly re-reverses the left half: its chunks are emitted last-to-first,
each chunk's gates reversed, and each swap sequence reversed and placed
after its chunk's gates, so a swap inserted before a gate in the reversed
direction sits after that gate in the forward circuit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as kernels
from .arch import ArchGraph
from .circuit import CNOT, SINGLE, SWAP, Circuit, Gate, interaction_graph
from .divide import Division, max_subgraph_division
from .embed import best_embedding, is_embeddable
from .mapping import Mapping

logger = logging.getLogger(__name__)

SWAP_SEARCH_BUDGET = 100_000

Edge = tuple[int, int]


class RoutingError(RuntimeError):
    pass


class DivisionInfeasible(RoutingError):
    """No front-layer gate can be settled within the swap budget."""


@dataclass
class AdacParams:
    t_ini: int = 3
    t_s: int = 12
    t_d: int = 2

    def __post_init__(self) -> None:
        if self.t_ini < 1 or self.t_d < 1 or self.t_s < 0:
            raise ValueError("invalid routing parameters")


@dataclass
class RoutedHalf:
    """Chunks of one routing direction: (gate ids in execution order, swaps)."""

    divisions: list[tuple[list[int], list[Edge]]]
    final_mapping: Mapping

    @property
    def swap_count(self) -> int:
        return sum(len(s) for _, s in self.divisions)


@dataclass(frozen=True)
class PhysGate:
    """Physical gate; ``origin`` is the source logical gate id, None for
    swaps inserted by routing."""

    kind: str
    vertices: tuple[int, ...]
    label: str = ""
    origin: int | None = None


@dataclass
class RoutedCircuit:
    initial_placement: Mapping
    physical_gates: list[PhysGate]
    swap_count: int
    divisions: list[dict]
    num_vertices: int
    router: str
    fallback_count: int = 0
    division_plan: Division | None = field(default=None, repr=False)


# ---------------------------------------------------------------------------
# primitives

def apply_swap(m: Mapping, e: Edge, ag: ArchGraph) -> Mapping:
    """Exchange the logical occupants across an architecture edge."""
    u, v = e
    if not ag.has_edge(u, v):
        raise ValueError(f"({u},{v}) is not an architecture edge")
    return m.swapped(u, v)


def apply_swap_seq(m: Mapping, seq, ag: ArchGraph) -> Mapping:
    for e in seq:
        m = apply_swap(m, e, ag)
    return m


def cost(s, c_cur, m: Mapping, ag: ArchGraph) -> int:
    """Summed swap-distance of every two-qubit gate in c_cur under m * s."""
    m2 = apply_swap_seq(m, s, ag)
    total = 0
    for g in c_cur:
        if not g.is_two_qubit:
            continue
        a, b = g.qubits
        va, vb = m2.get(a), m2.get(b)
        if va is None or vb is None:
            raise ValueError(f"gate {g.id}: qubit not placed")
        total += int(ag.dist[va][vb])
    return total


def _edges_np(ag: ArchGraph) -> np.ndarray:
    arr = getattr(ag, "_kernel_edges_np", None)
    if arr is None:
        arr = np.asarray(ag.edges, dtype=np.int32).reshape(-1, 2)
        ag._kernel_edges_np = arr
    return arr


def _dist_rows(ag: ArchGraph) -> list[list[int]]:
    rows = getattr(ag, "_dist_rows", None)
    if rows is None:
        rows = [[int(x) for x in row] for row in ag.dist]
        ag._dist_rows = rows
    return rows


def _run_kernel(ag: ArchGraph, gate_pairs, positions, t_s, budget):
    # the compiled kernel packs occupancy into a 64-bit mask
    if kernels.ACTIVE_IMPL == "cython" and ag.num_vertices <= 64:
        return kernels.swap_search(
            ag.dist, _edges_np(ag), gate_pairs, positions, ag.num_vertices, t_s, budget
        )
    return kernels.swap_search_py(
        _dist_rows(ag), ag.edges, gate_pairs, positions, ag.num_vertices, t_s, budget
    )


def search_swaps_status(
    c_cur, m: Mapping, ag: ArchGraph, t_s: int, budget: int = SWAP_SEARCH_BUDGET
) -> tuple[int, list[Edge] | None]:
    """heuristic_swaps plus the raw search status (found/no-solution/budget)."""
    # the search outcome depends only on the set of endpoint pairs, so
    # deduplicate and canonicalise before hitting the kernel or the memo
    pairs = sorted({(min(g.qubits), max(g.qubits)) for g in c_cur if g.is_two_qubit})
    if not pairs:
        return kernels.FOUND, []
    ig = interaction_graph(g for g in c_cur if g.is_two_qubit)
    # unembeddable chunks can never reach distance zero; skip the search
    if not is_embeddable(ig, ag):
        return kernels.NO_SOLUTION, None
    n_logical = max(max(p) for p in pairs) + 1
    positions = m.as_array(max(n_logical, max(m.qubits(), default=-1) + 1))
    for a, b in pairs:
        if positions[a] < 0 or positions[b] < 0:
            raise ValueError(f"qubit pair ({a},{b}) not fully placed")
    # the outcome depends only on where the gate tokens sit and which
    # vertices are occupied, so the memo key ignores other qubits' identity
    tokens = sorted({q for p in pairs for q in p})
    occupied = frozenset(v for v in positions if v >= 0)
    key = (tuple(pairs), tuple(positions[t] for t in tokens), occupied, t_s, budget)
    hit = ag.swap_search_cache.get(key)
    if hit is not None:
        status, seq = hit
        return status, None if seq is None else list(seq)
    status, idx_seq = _run_kernel(ag, pairs, positions, t_s, budget)
    seq = None if status != kernels.FOUND else [ag.edges[i] for i in idx_seq]
    ag.swap_search_cache[key] = (status, seq)
    return status, None if seq is None else list(seq)


def heuristic_swaps(
    c_cur, m: Mapping, ag: ArchGraph, t_s: int, budget: int = SWAP_SEARCH_BUDGET
) -> list[Edge] | None:
    """Best-first search for a swap sequence embedding c_cur, length <= t_s.

    The pool is ordered by length plus the maximum gate distance (an
    admissible bound on the swaps still needed), so any returned sequence
    has minimum length. Returns None when no sequence within the length
    bound exists or the extraction budget trips.
    """
    if t_s < 0:
        raise ValueError("t_s must be >= 0")
    _, seq = search_swaps_status(c_cur, m, ag, t_s, budget)
    return seq


# ---------------------------------------------------------------------------
# dependency state over one routing direction

class RouteState:
    """Executed-set tracking over a circuit's two-qubit DAG, with undo."""

    def __init__(self, circuit: Circuit):
        self.circuit = circuit
        two_q = circuit.two_qubit_gates()
        self.gate_of: dict[int, Gate] = {g.id: g for g in two_q}
        self.pred_cnt: dict[int, int] = {g.id: 0 for g in two_q}
        self.succs: dict[int, list[int]] = {g.id: [] for g in two_q}
        last_on: dict[int, int] = {}
        for g in two_q:
            for q in g.qubits:
                p = last_on.get(q)
                if p is not None and g.id not in self.succs[p]:
                    self.succs[p].append(g.id)
                    self.pred_cnt[g.id] += 1
                last_on[q] = g.id
        self.ready: set[int] = {gid for gid, c in self.pred_cnt.items() if c == 0}
        self.executed: set[int] = set()
        self.remaining = len(two_q)

    def ready_ids(self) -> list[int]:
        return sorted(self.ready)

    def execute(self, gid: int) -> None:
        self.ready.discard(gid)
        self.executed.add(gid)
        self.remaining -= 1
        for s in self.succs[gid]:
            self.pred_cnt[s] -= 1
            if self.pred_cnt[s] == 0:
                self.ready.add(s)

    def unexecute(self, gid: int) -> None:
        for s in self.succs[gid]:
            if self.pred_cnt[s] == 0:
                self.ready.discard(s)
            self.pred_cnt[s] += 1
        self.executed.discard(gid)
        self.ready.add(gid)
        self.remaining += 1


# ---------------------------------------------------------------------------
# chunk growth with look-ahead

def _score(c_total: int, s_total: int, c_cur_len: int):
    """Comparable look-ahead score; swap-free chunks rank above any ratio,
    ordered by settled-gate count, then chunk size."""
    if s_total == 0:
        return (1, c_total, c_cur_len)
    return (0, c_total / s_total, 0)


def heuristic_dac(
    state: RouteState, m: Mapping, ag: ArchGraph, t_d: int, t_s: int
) -> tuple[list[int], list[Edge]]:
    """Grow one chunk from the front layer; return (gate ids, swap sequence).

    Gates are tried in order of mapped endpoint distance (ties: id). A gate
    whose addition admits no swap sequence within t_s is put back and never
    retried within this invocation. Every successful prefix is scored with a
    depth-(t_d - 1) look-ahead; the best prefix wins. The state is left
    exactly as found; raises DivisionInfeasible when nothing fits.
    """
    dist = ag.dist
    positions = None  # mapping is fixed for the whole invocation
    c_cur: list[int] = []
    traversed: set[int] = set()
    best_score = None
    c_best: list[int] | None = None
    s_best: list[Edge] = []
    running_cost = 0

    try:
        while True:
            cands = [gid for gid in state.ready_ids() if gid not in traversed]
            if not cands:
                break

            def gate_dist(gid: int) -> int:
                a, b = state.gate_of[gid].qubits
                return int(dist[m[a]][m[b]])

            g = min(cands, key=lambda gid: (gate_dist(gid), gid))
            c_cur.append(g)
            state.execute(g)
            gates = [state.gate_of[gid] for gid in c_cur]
            added = gate_dist(g)
            if running_cost + added == 0:
                s_cur: list[Edge] | None = []
            else:
                s_cur = heuristic_swaps(gates, m, ag, t_s)
            if s_cur is None:
                state.unexecute(g)
                c_cur.pop()
                traversed.add(g)
                continue
            running_cost += added

            if t_d > 1 and state.remaining > 0:
                m_next = apply_swap_seq(m, s_cur, ag)
                try:
                    c_next, s_next = heuristic_dac(state, m_next, ag, t_d - 1, t_s)
                except DivisionInfeasible:
                    c_next, s_next = [], []
            else:
                c_next, s_next = [], []

            sc = _score(len(c_cur) + len(c_next), len(s_cur) + len(s_next), len(c_cur))
            if best_score is None or sc > best_score:
                best_score = sc
                c_best = list(c_cur)
                s_best = s_cur
    finally:
        for gid in reversed(c_cur):
            state.unexecute(gid)

    if c_best is None:
        raise DivisionInfeasible("no front-layer gate admits a swap sequence within budget")
    return c_best, s_best


def extend_mapping(
    m: Mapping, qubits, ag: ArchGraph, anchor: Mapping | None = None
) -> Mapping:
    """Place any unplaced qubits: ascending id, each on the free vertex
    nearest its anchor position (or the lowest free vertex without one)."""
    occupied = set(m.vertices())
    if occupied and max(occupied) >= ag.num_vertices:
        raise RoutingError("mapping references vertices outside the architecture")
    free = sorted(set(range(ag.num_vertices)) - occupied)
    for q in sorted(qubits):
        if q in m:
            continue
        if not free:
            raise RoutingError("no free vertex left for qubit placement")
        if anchor is not None and q in anchor:
            aq = anchor[q]
            v = min(free, key=lambda x: (int(ag.dist[x][aq]), x))
        else:
            v = free[0]
        m = m.place(q, v)
        free.remove(v)
    return m


@dataclass
class RoutingStats:
    fallback_count: int = 0


def adaptive_routing(
    lc: Circuit,
    m0: Mapping,
    ag: ArchGraph,
    t_d: int = 2,
    t_s: int = 12,
    stats: RoutingStats | None = None,
) -> RoutedHalf:
    """Route one direction chunk by chunk from m0; swaps precede each chunk.

    A chunk that cannot be formed within t_s retries once with 2*t_s before
    aborting (cannot trigger on connected graphs with budget >= diameter).
    """
    stats = stats if stats is not None else RoutingStats()
    used_qubits = sorted({q for g in lc.gates for q in g.qubits})
    m = extend_mapping(m0, used_qubits, ag)
    state = RouteState(lc)
    divisions: list[tuple[list[int], list[Edge]]] = []
    while state.remaining:
        try:
            c_del, s_add = heuristic_dac(state, m, ag, t_d, t_s)
        except DivisionInfeasible:
            stats.fallback_count += 1
            logger.warning("chunk infeasible at t_s=%d; retrying with %d", t_s, 2 * t_s)
            try:
                c_del, s_add = heuristic_dac(state, m, ag, t_d, 2 * t_s)
            except DivisionInfeasible as exc:
                raise RoutingError(
                    f"routing stuck: no chunk found within swap budget {2 * t_s} "
                    f"on {ag.name} with {state.remaining} gates left"
                ) from exc
        m = apply_swap_seq(m, s_add, ag)
        for gid in c_del:
            state.execute(gid)
        divisions.append((c_del, s_add))
    return RoutedHalf(divisions, m)


# ---------------------------------------------------------------------------
# physical assembly

def assemble(
    lc: Circuit,
    ag: ArchGraph,
    placement: Mapping,
    schedule: list[tuple],
    router: str,
    divisions: list[dict],
    fallback_count: int = 0,
    division_plan: Division | None = None,
) -> RoutedCircuit:
    """Walk a schedule of ("swap", u, v) / ("gate", gid) events, emitting
    physical gates and re-attaching single-qubit gates by track order."""
    m = placement
    tracks = lc.tracks()
    ptr = [0] * lc.num_qubits
    phys: list[PhysGate] = []

    def flush_singles(q: int, stop_gid: int | None) -> None:
        track = tracks[q]
        while ptr[q] < len(track):
            g = track[ptr[q]]
            if stop_gid is not None and g.id == stop_gid:
                return
            if g.is_two_qubit:
                if stop_gid is None:
                    return
                raise RoutingError(
                    f"schedule skipped two-qubit gate {g.id} on qubit {q}"
                )
            phys.append(PhysGate(SINGLE, (m[q],), g.label, origin=g.id))
            ptr[q] += 1

    for ev in schedule:
        if ev[0] == "swap":
            _, u, v = ev
            if not ag.has_edge(u, v):
                raise RoutingError(f"inserted swap ({u},{v}) is not an edge")
            phys.append(PhysGate(SWAP, (u, v)))
            m = m.swapped(u, v)
        else:
            _, gid = ev
            g = lc.gate_by_id(gid)
            for q in g.qubits:
                flush_singles(q, g.id)
            if g.kind == CNOT:
                c, t = g.qubits
                phys.append(PhysGate(CNOT, (m[c], m[t]), origin=g.id))
            else:
                a, b = g.qubits
                phys.append(PhysGate(SWAP, (m[a], m[b]), origin=g.id))
            va, vb = phys[-1].vertices
            if not ag.has_edge(va, vb):
                raise RoutingError(f"gate {gid} landed on non-edge ({va},{vb})")
            for q in g.qubits:
                ptr[q] += 1
    for q in range(lc.num_qubits):
        flush_singles(q, None)
        if ptr[q] != len(tracks[q]):
            raise RoutingError(f"unscheduled gates remain on qubit {q}")

    swap_count = sum(1 for p in phys if p.kind == SWAP and p.origin is None)
    return RoutedCircuit(
        initial_placement=placement,
        physical_gates=phys,
        swap_count=swap_count,
        divisions=divisions,
        num_vertices=ag.num_vertices,
        router=router,
        fallback_count=fallback_count,
        division_plan=division_plan,
    )


def adac(lc: Circuit, ag: ArchGraph, params: AdacParams | None = None) -> RoutedCircuit:
    """Full divide-and-conquer pipeline producing a verified-ready circuit."""
    from .sabre import reverse_traversal_mapping

    params = params or AdacParams()
    if lc.num_qubits > ag.num_vertices:
        raise RoutingError(
            f"{lc.num_qubits} logical qubits exceed {ag.num_vertices} vertices"
        )
    if len(lc.gates) == 0:
        placement = extend_mapping(Mapping(), range(lc.num_qubits), ag)
        return assemble(lc, ag, placement, [], "adac", [])

    division = max_subgraph_division(lc, ag)
    tau_beg, tau_fin = reverse_traversal_mapping(lc, ag, params.t_ini)
    pre_2q = sum(1 for gid in division.pre if lc.gate_by_id(gid).is_two_qubit)
    post_2q = sum(1 for gid in division.post if lc.gate_by_id(gid).is_two_qubit)
    anchor = tau_beg if pre_2q > post_2q else tau_fin

    mid_gates = [lc.gate_by_id(gid) for gid in division.mid]
    emb = best_embedding(interaction_graph(mid_gates), ag, anchor)
    if emb is None:
        raise RoutingError("mid interaction graph unexpectedly not embeddable")
    tau_ini = extend_mapping(emb, range(lc.num_qubits), ag, anchor=anchor)

    stats = RoutingStats()
    right = adaptive_routing(
        lc.subsequence(set(division.post)), tau_ini, ag, params.t_d, params.t_s, stats
    )
    left = adaptive_routing(
        lc.subsequence(set(division.pre)).reverse(), tau_ini, ag, params.t_d, params.t_s, stats
    )

    schedule: list[tuple] = []
    div_stats: list[dict] = []
    for gids, swaps in reversed(left.divisions):
        schedule.extend(("gate", gid) for gid in reversed(gids))
        schedule.extend(("swap", u, v) for u, v in reversed(swaps))
        div_stats.append({"gates": len(gids), "swaps": len(swaps)})
    mid_two_q = [gid for gid in division.mid if lc.gate_by_id(gid).is_two_qubit]
    schedule.extend(("gate", gid) for gid in mid_two_q)
    div_stats.append({"gates": len(mid_two_q), "swaps": 0})
    for gids, swaps in right.divisions:
        schedule.extend(("swap", u, v) for u, v in swaps)
        schedule.extend(("gate", gid) for gid in gids)
        div_stats.append({"gates": len(gids), "swaps": len(swaps)})

    return assemble(
        lc,
        ag,
        left.final_mapping,
        schedule,
        "adac",
        div_stats,
        fallback_count=stats.fallback_count,
        division_plan=division,
    )

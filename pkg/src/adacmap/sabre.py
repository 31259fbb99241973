"""Look-ahead swap router in the SABRE style.

Serves two roles: the comparison baseline for improvement numbers, and the
reverse-traversal machinery that produces the anchor mappings consumed by the
divide-and-conquer pipeline's embedding selection.

The heuristic is the classic one: score each candidate swap by the mean hop
count of the front layer plus a discounted mean over a window of upcoming
gates, multiplied by a per-vertex decay that discourages ping-ponging the
same pair. A stall guard forces progress on the nearest front gate when no
candidate improves the undecayed score for several consecutive steps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .arch import ArchGraph
from .circuit import Circuit
from .mapping import Mapping
from .route import Edge, RoutedCircuit, RoutedHalf, RouteState, assemble, extend_mapping
from .seeds import derive_seed


@dataclass
class SabreParams:
    extended_window: int = 20
    extended_weight: float = 0.5
    decay_increment: float = 0.001
    decay_reset_interval: int = 5
    trials: int = 5

    def __post_init__(self) -> None:
        if min(self.extended_window, self.decay_increment, self.trials) < 0:
            raise ValueError("parameters must be non-negative")
        if not 0 <= self.extended_weight <= 1:
            raise ValueError("extended_weight must lie in [0, 1]")
        if self.decay_reset_interval < 1 or self.trials < 1:
            raise ValueError("decay_reset_interval and trials must be >= 1")


def _extended_set(state: RouteState, front: list[int], window: int) -> list[int]:
    """Up to ``window`` unexecuted successors of the front layer, BFS order."""
    out: list[int] = []
    seen = set(front)
    level = list(front)
    while level and len(out) < window:
        nxt: list[int] = []
        for gid in level:
            for s in sorted(state.succs[gid]):
                if s in seen or s in state.executed:
                    continue
                seen.add(s)
                out.append(s)
                nxt.append(s)
                if len(out) >= window:
                    return out
        level = nxt
    return out


def sabre_route(
    lc: Circuit, m0: Mapping, ag: ArchGraph, p: SabreParams | None = None
) -> RoutedHalf:
    """Front-layer loop: execute what fits, otherwise apply the best swap."""
    p = p or SabreParams()
    hop = ag.hop
    used_qubits = sorted({q for g in lc.gates for q in g.qubits})
    m = extend_mapping(m0, used_qubits, ag)
    state = RouteState(lc)

    divisions: list[tuple[list[int], list[Edge]]] = []
    cur_gates: list[int] = []
    cur_swaps: list[Edge] = []
    decay = [1.0] * ag.num_vertices
    swaps_since_reset = 0
    stall = 0

    def base_score(mm: Mapping, front: list[int], ext: list[int]) -> float:
        s = 0.0
        for gid in front:
            a, b = state.gate_of[gid].qubits
            s += hop[mm[a]][mm[b]]
        s /= len(front)
        if ext:
            e = 0.0
            for gid in ext:
                a, b = state.gate_of[gid].qubits
                e += hop[mm[a]][mm[b]]
            s += p.extended_weight * e / len(ext)
        return s

    while state.remaining:
        front = state.ready_ids()
        runnable = [
            gid
            for gid in front
            if ag.dist[m[state.gate_of[gid].qubits[0]]][m[state.gate_of[gid].qubits[1]]] == 0
        ]
        if runnable:
            for gid in runnable:
                state.execute(gid)
                cur_gates.append(gid)
            decay = [1.0] * ag.num_vertices
            swaps_since_reset = 0
            stall = 0
            continue

        if cur_gates:
            divisions.append((cur_gates, cur_swaps))
            cur_gates, cur_swaps = [], []

        front_vertices = sorted({m[q] for gid in front for q in state.gate_of[gid].qubits})
        cands = sorted(
            {
                (min(v, w), max(v, w))
                for v in front_vertices
                for w in ag.adj[v]
            }
        )
        ext = _extended_set(state, front, p.extended_window)
        here = base_score(m, front, ext)
        scored = [(base_score(m.swapped(u, v), front, ext), (u, v)) for u, v in cands]
        improving = any(s < here for s, _ in scored)
        stall = 0 if improving else stall + 1

        if stall >= p.decay_reset_interval:
            # forced progress: shrink the nearest front gate's distance
            near = min(
                front,
                key=lambda gid: (
                    hop[m[state.gate_of[gid].qubits[0]]][m[state.gate_of[gid].qubits[1]]],
                    gid,
                ),
            )
            a, b = state.gate_of[near].qubits
            choice = min(
                cands,
                key=lambda e: (int(hop[m.swapped(*e)[a]][m.swapped(*e)[b]]), e),
            )
            decay = [1.0] * ag.num_vertices
            swaps_since_reset = 0
            stall = 0
        else:
            choice = min(
                ((max(decay[u], decay[v]) * s, (u, v)) for s, (u, v) in scored)
            )[1]

        u, v = choice
        m = m.swapped(u, v)
        cur_swaps.append((u, v))
        decay[u] += p.decay_increment
        decay[v] += p.decay_increment
        swaps_since_reset += 1
        if swaps_since_reset >= p.decay_reset_interval:
            decay = [1.0] * ag.num_vertices
            swaps_since_reset = 0

    if cur_gates or cur_swaps:
        divisions.append((cur_gates, cur_swaps))
    return RoutedHalf(divisions, m)


def reverse_traversal_mapping(
    lc: Circuit, ag: ArchGraph, t_ini: int, p: SabreParams | None = None
) -> tuple[Mapping, Mapping]:
    """Alternate forward/backward routing from the trivial placement.

    Each round routes the circuit forward and feeds the resulting mapping
    into a backward pass over the reversed circuit; the final round skips
    the backward pass and reports its forward run's (begin, final) pair.
    """
    if t_ini < 1:
        raise ValueError("t_ini must be >= 1")
    p = p or SabreParams()
    rev = lc.reverse()
    m = extend_mapping(Mapping.trivial(lc.num_qubits), range(lc.num_qubits), ag)
    tau_beg = tau_fin = m
    for r in range(t_ini):
        tau_beg = m
        tau_fin = sabre_route(lc, m, ag, p).final_mapping
        if r < t_ini - 1:
            m = sabre_route(rev, tau_fin, ag, p).final_mapping
    return tau_beg, tau_fin


def sabre_map(
    lc: Circuit, ag: ArchGraph, p: SabreParams | None = None, seed: int = 0
) -> RoutedCircuit:
    """Baseline pipeline: seeded initial placements, one forward/backward
    refinement each, keep the trial with the fewest swaps."""
    p = p or SabreParams()
    if lc.num_qubits > ag.num_vertices:
        raise ValueError(f"{lc.num_qubits} logical qubits exceed {ag.num_vertices} vertices")
    rev = lc.reverse()
    best: tuple[int, RoutedHalf, Mapping] | None = None
    for t in range(p.trials):
        if t == 0:
            m0 = Mapping.trivial(lc.num_qubits)
        else:
            rng = random.Random(derive_seed(seed, t))
            perm = rng.sample(range(ag.num_vertices), lc.num_qubits)
            m0 = Mapping({q: perm[q] for q in range(lc.num_qubits)})
        m0 = extend_mapping(m0, range(lc.num_qubits), ag)
        fin = sabre_route(lc, m0, ag, p).final_mapping
        start = sabre_route(rev, fin, ag, p).final_mapping
        half = sabre_route(lc, start, ag, p)
        if best is None or half.swap_count < best[0]:
            best = (half.swap_count, half, start)
    assert best is not None
    _, half, placement = best
    schedule: list[tuple] = []
    div_stats: list[dict] = []
    for gids, swaps in half.divisions:
        schedule.extend(("swap", u, v) for u, v in swaps)
        schedule.extend(("gate", gid) for gid in gids)
        div_stats.append({"gates": len(gids), "swaps": len(swaps)})
    return assemble(lc, ag, placement, schedule, "sabre", div_stats)

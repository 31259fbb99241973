"""Initial three-way circuit division around a maximal embeddable subsequence.

A greedy search slides a start gate across the sequence. From each start it
grows a candidate by repeatedly scanning the front layer of the remaining
suffix (ascending gate order) and absorbing any gate whose addition keeps the
candidate's interaction graph embeddable, until a full pass absorbs nothing.
The largest candidate over all starts becomes the middle part; remaining
gates fall before or after it so that every qubit's gate order is preserved
when the three parts are replayed in sequence.

Two monotonicity facts keep this cheap: a gate refused once stays refused for
the same start (the IG only grows), and a repeated qubit pair never needs a
fresh embeddability check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arch import ArchGraph
from .circuit import Circuit, InteractionGraph, interaction_graph
from .embed import is_embeddable


@dataclass
class Division:
    """Gate ids of the three parts, each in original sequence order."""

    pre: list[int]
    mid: list[int]
    post: list[int]

    def part_of(self, gid: int) -> str:
        if gid in self._mid_set():
            return "mid"
        return "pre" if gid in set(self.pre) else "post"

    def _mid_set(self) -> set[int]:
        return set(self.mid)


def _grow_from(start_idx: int, two_q: list, ag: ArchGraph) -> list[int]:
    """Absorbed indices (into two_q) for the candidate started at start_idx."""
    edges: set[tuple[int, int]] = set()
    g0 = two_q[start_idx]
    edges.add((min(g0.qubits), max(g0.qubits)))
    absorbed = [start_idx]

    # suffix dependency structure: nearest-earlier chains per qubit
    n = len(two_q)
    pred_cnt = [0] * n
    succs: list[list[int]] = [[] for _ in range(n)]
    last_on: dict[int, int] = {}
    for i in range(start_idx + 1, n):
        for q in two_q[i].qubits:
            p = last_on.get(q)
            if p is not None and i not in succs[p]:
                succs[p].append(i)
                pred_cnt[i] += 1
            last_on[q] = i
    ready = {i for i in range(start_idx + 1, n) if pred_cnt[i] == 0}
    refused: set[int] = set()

    while True:
        absorbed_any = False
        for i in sorted(ready - refused):
            g = two_q[i]
            e = (min(g.qubits), max(g.qubits))
            if e in edges:
                ok = True
            else:
                ok = is_embeddable(InteractionGraph(edges | {e}), ag)
            if ok:
                edges.add(e)
                absorbed.append(i)
                ready.discard(i)
                for s in succs[i]:
                    pred_cnt[s] -= 1
                    if pred_cnt[s] == 0:
                        ready.add(s)
                absorbed_any = True
            else:
                refused.add(i)
        if not absorbed_any:
            break
    return absorbed


def max_subgraph_division(c: Circuit, ag: ArchGraph) -> Division:
    """Split ``c`` into pre/mid/post with mid the largest embeddable candidate.

    Candidate size ties keep the earliest start gate. Single-qubit gates are
    absorbed freely; they never affect the interaction graph.
    """
    if len(c.gates) == 0:
        raise ValueError("cannot divide an empty circuit")
    two_q = c.two_qubit_gates()
    if not two_q:
        return Division(pre=[], mid=[g.id for g in c.gates], post=[])

    best: list[int] | None = None
    for start in range(len(two_q)):
        if best is not None and len(two_q) - start <= len(best):
            break
        cand = _grow_from(start, two_q, ag)
        if best is None or len(cand) > len(best):
            best = cand
    assert best is not None
    mid_two_q = {two_q[i].id for i in best}
    return _assign_parts(c, mid_two_q)


def _assign_parts(c: Circuit, mid_two_q: set[int]) -> Division:
    """Distribute all gates (singles included) around the chosen mid set."""
    order = {g.id: i for i, g in enumerate(c.gates)}
    succ: dict[int, list[int]] = {g.id: [] for g in c.gates}
    pred: dict[int, list[int]] = {g.id: [] for g in c.gates}
    for track in c.tracks():
        for a, b in zip(track, track[1:]):
            succ[a.id].append(b.id)
            pred[b.id].append(a.id)

    def closure(seeds: set[int], nbrs: dict[int, list[int]]) -> set[int]:
        out: set[int] = set()
        stack = list(seeds)
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if w not in out and w not in seeds:
                    out.add(w)
                    stack.append(w)
        return out

    before = closure(mid_two_q, pred)  # can reach mid going forward
    after = closure(mid_two_q, succ)  # reachable from mid
    mid: set[int] = set(mid_two_q)
    pre: set[int] = set()
    post: set[int] = set()
    sandwiched = before & after
    if any(c.gate_by_id(g).is_two_qubit for g in sandwiched):
        raise AssertionError("two-qubit gate both precedes and follows mid")
    mid |= sandwiched

    mid_ids = sorted(mid_two_q, key=lambda g: order[g])
    median_id = mid_ids[len(mid_ids) // 2]
    for g in c.gates:
        if g.id in mid:
            continue
        if g.id in before:
            pre.add(g.id)
        elif g.id in after:
            post.add(g.id)
        elif order[g.id] < order[median_id]:
            pre.add(g.id)
        else:
            post.add(g.id)

    by_order = sorted(order, key=lambda g: order[g])
    return Division(
        pre=[g for g in by_order if g in pre],
        mid=[g for g in by_order if g in mid],
        post=[g for g in by_order if g in post],
    )


def check_division(c: Circuit, ag: ArchGraph, d: Division) -> None:
    """Raise AssertionError unless ``d`` satisfies all division invariants."""
    all_ids = [g.id for g in c.gates]
    combined = list(d.pre) + list(d.mid) + list(d.post)
    if sorted(combined) != sorted(all_ids):
        raise AssertionError("division does not partition the gate ids")
    mid_gates = [c.gate_by_id(g) for g in d.mid]
    if not is_embeddable(interaction_graph(mid_gates), ag):
        raise AssertionError("mid interaction graph is not embeddable")
    label = {}
    for rank, part in enumerate((d.pre, d.mid, d.post)):
        for gid in part:
            label[gid] = rank
    for track in c.tracks():
        ranks = [label[g.id] for g in track]
        if any(a > b for a, b in zip(ranks, ranks[1:])):
            raise AssertionError("per-qubit order not preserved across parts")

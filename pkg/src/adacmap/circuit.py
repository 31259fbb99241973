"""Circuit IR: gates, dependency DAG with front-layer queries, interaction graphs.

A circuit is an ordered gate sequence over logical qubits. Only CNOT and SWAP
count as two-qubit gates; every other gate is an opaque single-qubit marker
whose label is carried along verbatim. Routing decisions look only at the
two-qubit structure; single-qubit gates are re-attached by per-qubit track
order when the physical circuit is assembled.
"""

from __future__ import annotations

from dataclasses import dataclass, field

SINGLE = "single"
CNOT = "cnot"
SWAP = "swap"


@dataclass(frozen=True)
class Gate:
    """One gate. ``id`` is the ordinal assigned when the circuit was built.

    For ``cnot``, ``qubits`` is (control, target); for ``swap`` an unordered
    pair stored as given; for ``single`` a 1-tuple plus an opaque ``label``.
    """

    id: int
    kind: str
    qubits: tuple[int, ...]
    label: str = ""

    def __post_init__(self) -> None:
        if self.kind not in (SINGLE, CNOT, SWAP):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        n = 1 if self.kind == SINGLE else 2
        if len(self.qubits) != n:
            raise ValueError(f"{self.kind} gate takes {n} qubit(s), got {self.qubits}")
        if n == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"two-qubit gate on identical qubits {self.qubits}")

    @property
    def is_two_qubit(self) -> bool:
        return self.kind != SINGLE


def single(gid: int, q: int, label: str = "g") -> Gate:
    return Gate(gid, SINGLE, (q,), label)


def cnot(gid: int, control: int, target: int) -> Gate:
    return Gate(gid, CNOT, (control, target))


def swap_gate(gid: int, a: int, b: int) -> Gate:
    return Gate(gid, SWAP, (a, b))


class Circuit:
    """Ordered gate sequence over ``num_qubits`` logical qubits.

    Gate ids must be unique; they are preserved under `reverse` and
    subsequence extraction, so a reversed circuit lists the same ids in
    reversed order. All sequence-dependent structure (DAG, tracks) is built
    from list position, never from id.
    """

    __slots__ = ("num_qubits", "gates")

    def __init__(self, num_qubits: int, gates: list[Gate] | tuple[Gate, ...] = ()):
        if num_qubits < 0:
            raise ValueError("num_qubits must be non-negative")
        gates = tuple(gates)
        seen: set[int] = set()
        for g in gates:
            if g.id in seen:
                raise ValueError(f"duplicate gate id {g.id}")
            seen.add(g.id)
            for q in g.qubits:
                if not 0 <= q < num_qubits:
                    raise ValueError(f"gate {g.id} references qubit {q} outside 0..{num_qubits - 1}")
        self.num_qubits = num_qubits
        self.gates = gates

    @classmethod
    def build(cls, num_qubits: int, ops: list[tuple]) -> "Circuit":
        """Build from ("cx", c, t) / ("swap", a, b) / (label, q) tuples, ids 0..m-1."""
        gates = []
        for i, op in enumerate(ops):
            if op[0] == "cx":
                gates.append(cnot(i, op[1], op[2]))
            elif op[0] == "swap":
                gates.append(swap_gate(i, op[1], op[2]))
            else:
                gates.append(single(i, op[1], str(op[0])))
        return cls(num_qubits, gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Circuit)
            and self.num_qubits == other.num_qubits
            and self.gates == other.gates
        )

    def __repr__(self) -> str:
        return f"Circuit(num_qubits={self.num_qubits}, gates={len(self.gates)})"

    def two_qubit_gates(self) -> list[Gate]:
        return [g for g in self.gates if g.is_two_qubit]

    @property
    def cnot_count(self) -> int:
        return sum(1 for g in self.gates if g.is_two_qubit)

    def gate_by_id(self, gid: int) -> Gate:
        for g in self.gates:
            if g.id == gid:
                return g
        raise KeyError(gid)

    def tracks(self) -> list[list[Gate]]:
        """Per-qubit gate sequences, in circuit order (singles included)."""
        out: list[list[Gate]] = [[] for _ in range(self.num_qubits)]
        for g in self.gates:
            for q in g.qubits:
                out[q].append(g)
        return out

    def subsequence(self, ids: set[int] | frozenset[int]) -> "Circuit":
        """Circuit restricted to the given gate ids, original order and ids kept."""
        return Circuit(self.num_qubits, [g for g in self.gates if g.id in ids])

    def reverse(self) -> "Circuit":
        """Reversed gate order; gate identities preserved (an involution)."""
        return Circuit(self.num_qubits, tuple(reversed(self.gates)))


def reverse(c: Circuit) -> Circuit:
    return c.reverse()


@dataclass
class DependencyGraph:
    """DAG over the two-qubit gates of one circuit.

    A gate's predecessors are the nearest earlier two-qubit gates sharing a
    qubit with it, so each node has at most two incoming edges. The front
    layer relative to an executed set is the set of unexecuted nodes whose
    predecessors are all executed.
    """

    nodes: list[int]
    preds: dict[int, list[int]]
    succs: dict[int, list[int]]
    gate_of: dict[int, Gate] = field(default_factory=dict)

    def front_layer(self, executed: set[int] | frozenset[int] = frozenset()) -> list[int]:
        """Unexecuted nodes with all predecessors executed, ascending id.

        Rejects executed sets that are not downward-closed under the DAG.
        """
        executed = set(executed)
        unknown = executed - set(self.nodes)
        if unknown:
            raise ValueError(f"executed set contains non-node ids {sorted(unknown)}")
        for gid in executed:
            for p in self.preds[gid]:
                if p not in executed:
                    raise ValueError(
                        f"executed set not downward-closed: {gid} executed but predecessor {p} is not"
                    )
        return sorted(
            gid
            for gid in self.nodes
            if gid not in executed and all(p in executed for p in self.preds[gid])
        )


def build_dependency_graph(c: Circuit) -> DependencyGraph:
    """Dependency DAG of ``c``'s two-qubit gates, chained per qubit in sequence order."""
    last_on: dict[int, int] = {}
    nodes: list[int] = []
    preds: dict[int, list[int]] = {}
    succs: dict[int, list[int]] = {}
    gate_of: dict[int, Gate] = {}
    for g in c.gates:
        if not g.is_two_qubit:
            continue
        nodes.append(g.id)
        gate_of[g.id] = g
        preds[g.id] = []
        succs[g.id] = []
        for q in g.qubits:
            p = last_on.get(q)
            if p is not None and p not in preds[g.id]:
                preds[g.id].append(p)
                succs[p].append(g.id)
            last_on[q] = g.id
    return DependencyGraph(nodes, preds, succs, gate_of)


def front_layer(dg: DependencyGraph, executed: set[int] | frozenset[int]) -> list[int]:
    return dg.front_layer(executed)


class InteractionGraph:
    """Undirected graph of qubit pairs coupled by at least one two-qubit gate."""

    __slots__ = ("nodes", "edges", "adj")

    def __init__(self, edges: set[tuple[int, int]]):
        self.edges: frozenset[tuple[int, int]] = frozenset(
            (min(a, b), max(a, b)) for a, b in edges
        )
        nodes: set[int] = set()
        adj: dict[int, set[int]] = {}
        for a, b in self.edges:
            nodes.add(a)
            nodes.add(b)
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        self.nodes: frozenset[int] = frozenset(nodes)
        self.adj = adj

    def degree(self, q: int) -> int:
        return len(self.adj.get(q, ()))

    def is_bipartite(self) -> bool:
        color: dict[int, int] = {}
        for start in sorted(self.nodes):
            if start in color:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                u = stack.pop()
                for v in self.adj[u]:
                    if v not in color:
                        color[v] = color[u] ^ 1
                        stack.append(v)
                    elif color[v] == color[u]:
                        return False
        return True

    def __eq__(self, other: object) -> bool:
        return isinstance(other, InteractionGraph) and self.edges == other.edges

    def __repr__(self) -> str:
        return f"InteractionGraph(nodes={sorted(self.nodes)}, edges={sorted(self.edges)})"


def interaction_graph(gates) -> InteractionGraph:
    """Interaction graph of a gate iterable; repeated pairs collapse to one edge."""
    edges = {
        (min(g.qubits), max(g.qubits)) for g in gates if g.is_two_qubit
    }
    return InteractionGraph(edges)

"""Injective partial mappings from logical qubits to physical vertices."""

from __future__ import annotations


class Mapping:
    """Partial injective logical-qubit -> physical-vertex assignment.

    Instances are treated as immutable: every update returns a new Mapping.
    """

    __slots__ = ("_fwd", "_inv")

    def __init__(self, forward: dict[int, int] | None = None):
        fwd = dict(forward or {})
        inv: dict[int, int] = {}
        for q, v in fwd.items():
            if v in inv:
                raise ValueError(f"not injective: qubits {inv[v]} and {q} both on vertex {v}")
            inv[v] = q
        self._fwd = fwd
        self._inv = inv

    @classmethod
    def trivial(cls, n: int) -> "Mapping":
        return cls({q: q for q in range(n)})

    @classmethod
    def from_array(cls, placement: list[int]) -> "Mapping":
        """Build from an array indexed by logical qubit; -1/None entries unplaced."""
        return cls({q: v for q, v in enumerate(placement) if v is not None and v >= 0})

    def get(self, q: int) -> int | None:
        return self._fwd.get(q)

    def __getitem__(self, q: int) -> int:
        return self._fwd[q]

    def __contains__(self, q: int) -> bool:
        return q in self._fwd

    def logical_at(self, v: int) -> int | None:
        return self._inv.get(v)

    def qubits(self) -> list[int]:
        return sorted(self._fwd)

    def vertices(self) -> list[int]:
        return sorted(self._inv)

    def items(self):
        return self._fwd.items()

    def __len__(self) -> int:
        return len(self._fwd)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Mapping) and self._fwd == other._fwd

    def __hash__(self) -> int:
        return hash(frozenset(self._fwd.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"q{q}->{v}" for q, v in sorted(self._fwd.items()))
        return f"Mapping({body})"

    def place(self, q: int, v: int) -> "Mapping":
        if q in self._fwd:
            raise ValueError(f"qubit {q} already placed")
        if v in self._inv:
            raise ValueError(f"vertex {v} already occupied")
        fwd = dict(self._fwd)
        fwd[q] = v
        return Mapping(fwd)

    def restrict(self, qubits) -> "Mapping":
        return Mapping({q: self._fwd[q] for q in qubits if q in self._fwd})

    def swapped(self, u: int, v: int) -> "Mapping":
        """Mapping after exchanging the occupants of vertices u and v.

        One empty endpoint moves the occupant across; two empty endpoints
        leave the mapping unchanged. Edge validity is the caller's concern.
        """
        a, b = self._inv.get(u), self._inv.get(v)
        if a is None and b is None:
            return self
        fwd = dict(self._fwd)
        if a is not None:
            fwd[a] = v
        if b is not None:
            fwd[b] = u
        return Mapping(fwd)

    def as_array(self, num_qubits: int) -> list[int]:
        """Logical-indexed placement array, -1 for unplaced qubits."""
        return [self._fwd.get(q, -1) for q in range(num_qubits)]

    def occupancy(self, num_vertices: int) -> tuple[int, ...]:
        """Vertex-indexed occupant array, -1 for empty vertices."""
        return tuple(self._inv.get(v, -1) for v in range(num_vertices))

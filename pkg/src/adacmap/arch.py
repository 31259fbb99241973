"""Coupling (architecture) graphs and the SWAP-distance matrix.

``dist[a][b]`` counts the SWAPs needed to make two physical qubits adjacent,
i.e. shortest-path hops minus one, with ``dist[a][a] = 0``. Adjacent vertices
therefore have distance zero, which makes "total gate distance 0" coincide
with "the current mapping embeds the interaction graph" - the zero test the
routing search relies on. The raw hop matrix is kept alongside for heuristics
that want plain path lengths.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import numpy as np

_BUILTIN_FILES = {"tokyo": "tokyo.json", "sycamore": "sycamore.json"}


class ArchError(ValueError):
    pass


class ArchGraph:
    """Undirected, connected coupling graph with precomputed distance matrices."""

    def __init__(self, num_vertices: int, edges, name: str = "custom"):
        if num_vertices < 2:
            raise ArchError("architecture needs at least 2 vertices")
        canon: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise ArchError(f"self-loop on vertex {u}")
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise ArchError(f"edge ({u},{v}) outside 0..{num_vertices - 1}")
            canon.add((min(u, v), max(u, v)))
        self.name = name
        self.num_vertices = num_vertices
        self.edges: list[tuple[int, int]] = sorted(canon)
        self.edge_set: frozenset[tuple[int, int]] = frozenset(canon)
        self.adj: list[list[int]] = [[] for _ in range(num_vertices)]
        for u, v in self.edges:
            self.adj[u].append(v)
            self.adj[v].append(u)
        for nbrs in self.adj:
            nbrs.sort()
        self.hop = self._bfs_all_pairs()
        if self.hop.max() >= num_vertices + 1:
            raise ArchError("architecture graph must be connected")
        self.dist = np.maximum(self.hop.astype(np.int32) - 1, 0)
        self.is_bipartite = self._bipartite()
        self._deg_sorted = sorted((len(a) for a in self.adj), reverse=True)
        # embeddability memo shared by the matcher; keyed by IG edge frozenset
        self.embed_cache: dict[frozenset, bool] = {}
        # swap-search memo; keyed by (gate pairs, placement, budget params)
        self.swap_search_cache: dict[tuple, tuple] = {}

    def _bfs_all_pairs(self) -> np.ndarray:
        n = self.num_vertices
        hop = np.full((n, n), n + 1, dtype=np.int32)
        for s in range(n):
            hop[s][s] = 0
            queue = [s]
            while queue:
                nxt = []
                for u in queue:
                    for v in self.adj[u]:
                        if hop[s][v] > hop[s][u] + 1:
                            hop[s][v] = hop[s][u] + 1
                            nxt.append(v)
                queue = nxt
        return hop

    def _bipartite(self) -> bool:
        color = [-1] * self.num_vertices
        color[0] = 0
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.adj[u]:
                if color[v] < 0:
                    color[v] = color[u] ^ 1
                    stack.append(v)
                elif color[v] == color[u]:
                    return False
        return True

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    def degree_sorted_desc(self) -> list[int]:
        return self._deg_sorted

    def __repr__(self) -> str:
        return f"ArchGraph({self.name!r}, n={self.num_vertices}, edges={len(self.edges)})"


def line(n: int) -> ArchGraph:
    return ArchGraph(n, [(i, i + 1) for i in range(n - 1)], name=f"line:{n}")


def grid(rows: int, cols: int) -> ArchGraph:
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise ArchError("grid needs at least 2 vertices")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return ArchGraph(rows * cols, edges, name=f"grid:{rows}x{cols}")


def _load_builtin(name: str) -> ArchGraph:
    data = json.loads(
        resources.files("adacmap.data").joinpath(_BUILTIN_FILES[name]).read_text()
    )
    return ArchGraph(data["n"], [tuple(e) for e in data["edges"]], name=name)


def from_file(path: str | Path) -> ArchGraph:
    """Load a custom graph from JSON ``{"n": int, "edges": [[u,v],...]}``."""
    data = json.loads(Path(path).read_text())
    try:
        n, edges = data["n"], data["edges"]
    except (TypeError, KeyError) as exc:
        raise ArchError(f"{path}: expected JSON object with 'n' and 'edges'") from exc
    return ArchGraph(n, [tuple(e) for e in edges], name=data.get("name", str(path)))


def build_arch(spec: str | Path) -> ArchGraph:
    """Resolve a topology spec: tokyo | sycamore | line:N | grid:RxC | RxC | file.

    A bare "4x5" is grid shorthand. Anything else is treated as a path to a
    custom-graph JSON file.
    """
    s = str(spec).strip()
    low = s.lower()
    if low in _BUILTIN_FILES:
        return _load_builtin(low)
    if low.startswith("line:"):
        return line(int(low.split(":", 1)[1]))
    body = low.split(":", 1)[1] if low.startswith("grid:") else low
    parts = body.split("x")
    if len(parts) == 2 and all(p.isdigit() for p in parts):
        return grid(int(parts[0]), int(parts[1]))
    if Path(s).exists():
        return from_file(s)
    raise ArchError(f"unknown architecture spec {spec!r}")


def swap_distance_lower_bound(ag: ArchGraph, gate, m) -> int:
    """dist between the mapped endpoints of a two-qubit gate; 0 iff executable."""
    a, b = gate.qubits
    va, vb = m.get(a), m.get(b)
    if va is None or vb is None:
        raise ValueError(f"gate {gate.id}: qubit not placed by mapping")
    return int(ag.dist[va][vb])

"""Pseudo-realistic circuit generation, benchmark orchestration, and the
improvement metric.

Generated circuits mimic the block structure seen in arithmetic-style
workloads: a small active window of qubits receives a burst of CNOTs, then
one window qubit is retired for a fresh one, until every qubit has appeared.
Reports compare the divide-and-conquer router against the in-repo SABRE
baseline; improvement numbers are therefore relative to this baseline, not
to any external implementation.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .arch import ArchGraph
from .circuit import Circuit
from .route import AdacParams, RoutedCircuit, adac
from .sabre import SabreParams, sabre_map
from .seeds import derive_seed
from .verify import check_equivalence, check_executability


@dataclass(frozen=True)
class GenSpec:
    num_qubits: int
    l_q: int
    l_g: int
    seed: int

    def __post_init__(self) -> None:
        if not 2 <= self.l_q <= self.num_qubits:
            raise ValueError("need 2 <= l_q <= num_qubits")
        if self.l_g < 1:
            raise ValueError("l_g must be >= 1")

    @property
    def name(self) -> str:
        return f"pr_q{self.num_qubits}_lq{self.l_q}_lg{self.l_g}_s{self.seed}"


class GeneratedCircuit(Circuit):
    """Circuit plus the block structure it was generated with."""

    __slots__ = ("blocks", "gen_name")


def generate_pseudo_realistic(spec: GenSpec) -> GeneratedCircuit:
    """Block-structured random circuit; deterministic under the seed.

    Each block adds ``l_g`` CNOTs on uniformly drawn distinct ordered pairs
    from the active window, then swaps one active qubit for an unused one.
    Blocks repeat until every qubit has been used, so the CNOT count is
    l_g * (1 + num_qubits - l_q).
    """
    rng = random.Random(derive_seed(spec.seed, 0))
    all_qubits = list(range(spec.num_qubits))
    active = rng.sample(all_qubits, spec.l_q)
    unused = [q for q in all_qubits if q not in active]
    ops: list[tuple] = []
    blocks: list[dict] = []
    while True:
        start = len(ops)
        for _ in range(spec.l_g):
            a, b = rng.sample(active, 2)
            ops.append(("cx", a, b))
        blocks.append({"qubits": sorted(active), "gates": list(range(start, len(ops)))})
        if not unused:
            break
        out_q = active[rng.randrange(len(active))]
        in_q = unused.pop(rng.randrange(len(unused)))
        active[active.index(out_q)] = in_q
    c = GeneratedCircuit(spec.num_qubits, Circuit.build(spec.num_qubits, ops).gates)
    c.blocks = blocks
    c.gen_name = spec.name
    return c


def improvement(n_our: int, n_com: int) -> float | None:
    """Relative swap-count reduction; None marks the undefined 0-baseline case."""
    if n_com < 0 or n_our < 0:
        raise ValueError("swap counts must be non-negative")
    if n_com == 0:
        return 0.0 if n_our == 0 else None
    return (n_com - n_our) / n_com


@dataclass
class BenchRow:
    name: str
    qubits: int
    cnot_count: int
    swaps_adac: int
    swaps_baseline: int
    rho: float | None
    wall_time_ms_adac: float
    wall_time_ms_baseline: float
    verified: bool
    error: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "qubits": self.qubits,
            "cnot_count": self.cnot_count,
            "swaps_adac": self.swaps_adac,
            "swaps_baseline": self.swaps_baseline,
            "rho": self.rho,
            "wall_time_ms_adac": round(self.wall_time_ms_adac, 3),
            "wall_time_ms_baseline": round(self.wall_time_ms_baseline, 3),
            "verified": self.verified,
            "error": self.error,
        }


@dataclass
class BenchReport:
    arch: str
    params: AdacParams
    rows: list[BenchRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.verified for r in self.rows)

    @property
    def total_swaps_adac(self) -> int:
        return sum(r.swaps_adac for r in self.rows)

    @property
    def total_swaps_baseline(self) -> int:
        return sum(r.swaps_baseline for r in self.rows)

    @property
    def aggregate_rho(self) -> float | None:
        return improvement(self.total_swaps_adac, self.total_swaps_baseline)

    def as_dict(self) -> dict:
        return {
            "arch": self.arch,
            "params": {
                "t_ini": self.params.t_ini,
                "t_s": self.params.t_s,
                "t_d": self.params.t_d,
            },
            "rows": [r.as_dict() for r in self.rows],
            "aggregate": {
                "circuits": len(self.rows),
                "total_swaps_adac": self.total_swaps_adac,
                "total_swaps_baseline": self.total_swaps_baseline,
                "rho": self.aggregate_rho,
            },
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        headers = ["circuit", "qubits", "cnots", "adac", "sabre", "rho", "ok"]
        lines = []
        for r in self.rows:
            rho = "n/a" if r.rho is None else f"{r.rho:+.4f}"
            lines.append(
                [r.name, str(r.qubits), str(r.cnot_count), str(r.swaps_adac),
                 str(r.swaps_baseline), rho, "yes" if r.verified else "NO"]
            )
        widths = [max(len(h), *(len(row[i]) for row in lines)) if lines else len(h)
                  for i, h in enumerate(headers)]
        fmt = "  ".join(f"{{:<{w}}}" for w in widths)
        out = [fmt.format(*headers)]
        out.extend(fmt.format(*row) for row in lines)
        agg = self.aggregate_rho
        out.append("")
        out.append(
            f"total swaps: adac={self.total_swaps_adac} "
            f"baseline={self.total_swaps_baseline} "
            f"rho={'n/a' if agg is None else format(agg, '+.4f')}"
        )
        return "\n".join(out) + "\n"

    def to_csv(self) -> str:
        cols = ["name", "qubits", "cnot_count", "swaps_adac", "swaps_baseline",
                "rho", "wall_time_ms_adac", "wall_time_ms_baseline", "verified"]
        lines = [",".join(cols)]
        for r in self.rows:
            d = r.as_dict()
            lines.append(",".join("" if d[c] is None else str(d[c]) for c in cols))
        return "\n".join(lines) + "\n"


def _route_and_verify(args) -> BenchRow:
    name, lc, ag, params, sabre_params = args
    t0 = time.perf_counter()
    rc_a = adac(lc, ag, params)
    t_a = (time.perf_counter() - t0) * 1000
    t0 = time.perf_counter()
    rc_s = sabre_map(lc, ag, sabre_params)
    t_s = (time.perf_counter() - t0) * 1000
    ok = True
    error = ""
    for label, rc in (("adac", rc_a), ("sabre", rc_s)):
        if not check_executability(rc, ag):
            ok, error = False, f"{label}: executability failed"
            break
        if not check_equivalence(lc, rc, ag):
            ok, error = False, f"{label}: equivalence failed"
            break
    return BenchRow(
        name=name,
        qubits=lc.num_qubits,
        cnot_count=lc.cnot_count,
        swaps_adac=rc_a.swap_count,
        swaps_baseline=rc_s.swap_count,
        rho=improvement(rc_a.swap_count, rc_s.swap_count),
        wall_time_ms_adac=t_a,
        wall_time_ms_baseline=t_s,
        verified=ok,
        error=error,
    )


def run_suite(
    circuits: list[tuple[str, Circuit]],
    ag: ArchGraph,
    params: AdacParams | None = None,
    sabre_params: SabreParams | None = None,
    jobs: int = 1,
) -> BenchReport:
    """Route every circuit with both routers, verify, and aggregate.

    Rows are sorted by circuit name; any verification failure marks the row
    and flips the report's ok flag.
    """
    params = params or AdacParams()
    sabre_params = sabre_params or SabreParams()
    work = [(name, lc, ag, params, sabre_params) for name, lc in sorted(circuits)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_route_and_verify, work))
    else:
        rows = [_route_and_verify(w) for w in work]
    return BenchReport(arch=ag.name, params=params, rows=rows)


def load_corpus(directory: str | Path) -> tuple[list[tuple[str, Circuit]], list[tuple[str, str]]]:
    """Read every ``*.qasm`` in a directory; returns (circuits, per-file errors)."""
    from .qasm import QasmError, parse_qasm

    circuits: list[tuple[str, Circuit]] = []
    errors: list[tuple[str, str]] = []
    for path in sorted(Path(directory).glob("*.qasm")):
        try:
            circuits.append((path.stem, parse_qasm(path.read_text())))
        except (OSError, QasmError) as exc:
            errors.append((path.name, str(exc)))
    return circuits, errors

"""Command-line surface: map, bench, gen, verify.

Exit codes: 0 ok, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .arch import ArchError, build_arch
from .bench import GenSpec, generate_pseudo_realistic, load_corpus, run_suite
from .circuit import CNOT, SWAP
from .qasm import QasmError, emit_logical_qasm, emit_qasm, parse_qasm
from .route import AdacParams, PhysGate, RoutedCircuit, RoutingError, adac
from .sabre import SabreParams, sabre_map
from .verify import check_equivalence, check_executability

logger = logging.getLogger(__name__)

OK, VERIFY_FAILED, INPUT_ERROR = 0, 1, 2


def _add_arch(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--arch",
        required=True,
        help="tokyo | sycamore | line:N | grid:RxC | RxC | custom-graph JSON file",
    )


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t-ini", type=int, default=3, help="reverse-traversal rounds")
    p.add_argument("--t-s", type=int, default=12, help="per-chunk swap budget")
    p.add_argument("--t-d", type=int, default=2, help="look-ahead depth")


def _report_dict(name: str, arch: str, rc: RoutedCircuit, params: AdacParams,
                 cnot_count: int, wall_ms: float) -> dict:
    n = max(rc.initial_placement.qubits(), default=-1) + 1
    return {
        "circuit": name,
        "arch": arch,
        "router": rc.router,
        "params": {"t_ini": params.t_ini, "t_s": params.t_s, "t_d": params.t_d},
        "swaps_added": rc.swap_count,
        "cnot_count": cnot_count,
        "divisions": rc.divisions,
        "initial_placement": rc.initial_placement.as_array(n),
        "wall_time_ms": round(wall_ms, 3),
    }


def cmd_map(args) -> int:
    try:
        text = Path(args.circuit).read_text()
        lc = parse_qasm(text)
        ag = build_arch(args.arch)
    except (OSError, QasmError, ArchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    params = AdacParams(t_ini=args.t_ini, t_s=args.t_s, t_d=args.t_d)
    t0 = time.perf_counter()
    try:
        if args.router == "adac":
            rc = adac(lc, ag, params)
        else:
            rc = sabre_map(lc, ag, SabreParams())
    except RoutingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    wall_ms = (time.perf_counter() - t0) * 1000

    if not check_executability(rc, ag):
        print("error: output failed executability check", file=sys.stderr)
        return VERIFY_FAILED
    if args.verify and not check_equivalence(lc, rc, ag):
        print("error: output failed equivalence check", file=sys.stderr)
        return VERIFY_FAILED

    if args.output:
        Path(args.output).write_text(emit_qasm(rc, expand_swaps=args.expand_swaps))
    else:
        sys.stdout.write(emit_qasm(rc, expand_swaps=args.expand_swaps))
    if args.report:
        report = _report_dict(Path(args.circuit).stem, args.arch, rc, params,
                              lc.cnot_count, wall_ms)
        Path(args.report).write_text(json.dumps(report, indent=2) + "\n")
    if args.placement:
        n = max(rc.initial_placement.qubits(), default=-1) + 1
        Path(args.placement).write_text(
            json.dumps(rc.initial_placement.as_array(n)) + "\n"
        )
    print(f"{args.router}: {rc.swap_count} swaps added "
          f"({lc.cnot_count} CNOTs on {ag.name})", file=sys.stderr)
    return OK


def cmd_bench(args) -> int:
    try:
        ag = build_arch(args.arch)
        circuits, errors = load_corpus(args.corpus)
    except (OSError, ArchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    for fname, msg in errors:
        print(f"skipping {fname}: {msg}", file=sys.stderr)
    if not circuits:
        print("error: no readable circuits in corpus", file=sys.stderr)
        return INPUT_ERROR
    params = AdacParams(t_ini=args.t_ini, t_s=args.t_s, t_d=args.t_d)
    report = run_suite(circuits, ag, params, jobs=args.jobs)
    sys.stdout.write(report.to_text())
    if args.out:
        Path(args.out).write_text(report.to_json())
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
    return OK if report.ok and not errors else VERIFY_FAILED


def cmd_gen(args) -> int:
    outdir = Path(args.output)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    for i in range(args.count):
        spec = GenSpec(args.qubits, args.lq, args.lg, args.seed + i)
        c = generate_pseudo_realistic(spec)
        (outdir / f"{spec.name}.qasm").write_text(emit_logical_qasm(c))
    print(f"wrote {args.count} circuits to {outdir}", file=sys.stderr)
    return OK


def cmd_verify(args) -> int:
    try:
        lc = parse_qasm(Path(args.logical).read_text())
        pc = parse_qasm(Path(args.physical).read_text())
        ag = build_arch(args.arch)
        placement_data = json.loads(Path(args.placement).read_text())
    except (OSError, QasmError, ArchError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    if isinstance(placement_data, dict):
        placement_data = placement_data.get("initial_placement")
    if not isinstance(placement_data, list):
        print("error: placement must be a JSON array (or a report containing one)",
              file=sys.stderr)
        return INPUT_ERROR
    from .mapping import Mapping

    # physical swap gates are taken to be routing swaps
    phys = []
    for g in pc.gates:
        if g.kind == CNOT:
            phys.append(PhysGate(CNOT, g.qubits, origin=g.id))
        elif g.kind == SWAP:
            phys.append(PhysGate(SWAP, g.qubits))
        else:
            phys.append(PhysGate(g.kind, g.qubits, g.label, origin=g.id))
    rc = RoutedCircuit(
        initial_placement=Mapping.from_array(placement_data),
        physical_gates=phys,
        swap_count=sum(1 for p in phys if p.kind == SWAP and p.origin is None),
        divisions=[],
        num_vertices=ag.num_vertices,
        router="external",
    )
    if not check_executability(rc, ag):
        print("FAIL: executability", file=sys.stderr)
        return VERIFY_FAILED
    if not check_equivalence(lc, rc, ag):
        print("FAIL: equivalence", file=sys.stderr)
        return VERIFY_FAILED
    print("OK: circuits are equivalent", file=sys.stderr)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="adacmap",
        description="Qubit mapping and routing with adaptive divide-and-conquer",
    )
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("map", help="route one circuit onto an architecture")
    p.add_argument("circuit")
    _add_arch(p)
    _add_params(p)
    p.add_argument("--router", choices=["adac", "sabre"], default="adac")
    p.add_argument("--expand-swaps", action="store_true",
                   help="emit each swap as three CNOTs")
    p.add_argument("-o", "--output", help="output QASM path (default: stdout)")
    p.add_argument("--report", help="write a JSON routing report")
    p.add_argument("--placement", help="write the initial placement array")
    p.add_argument("--verify", action="store_true",
                   help="also run the equivalence checker")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("bench", help="route a corpus with both routers and compare")
    p.add_argument("corpus", help="directory of .qasm files")
    _add_arch(p)
    _add_params(p)
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--csv", help="write a CSV report here")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="generate pseudo-realistic circuits")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--lq", type=int, required=True, help="active window size")
    p.add_argument("--lg", type=int, required=True, help="CNOTs per block")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a physical circuit against a logical one")
    p.add_argument("logical")
    p.add_argument("physical")
    _add_arch(p)
    p.add_argument("--placement", required=True,
                   help="initial placement JSON (array, or a map report)")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())

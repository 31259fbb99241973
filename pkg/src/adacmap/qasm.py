"""OpenQASM 2.0 subset reader/writer.

Accepted input: the version header, one qreg, ``cx``/``swap`` as two-qubit
gates, and any other single-argument gate kept as an opaque single-qubit
gate (its name and parameter text become the label). Barriers, measures,
cregs and includes are skipped; barriers/measures/cregs with a warning.
Anything else multi-qubit is rejected with its line number.
"""

from __future__ import annotations

import logging
import re

from .circuit import CNOT, SWAP, Circuit
from .route import RoutedCircuit

logger = logging.getLogger(__name__)

_APP_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*(\(([^()]*)\))?\s*(.*)$", re.S)
_ARG_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")


class QasmError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _statements(text: str):
    """Yield (line_number, statement) pairs, comments stripped."""
    pending = ""
    pending_line = 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0]
        if not pending.strip():
            pending_line = lineno
        pending += line + " "
        while ";" in pending:
            stmt, pending = pending.split(";", 1)
            if stmt.strip():
                yield pending_line, stmt.strip()
            pending_line = lineno
    if pending.strip():
        raise QasmError(f"unterminated statement {pending.strip()!r}", pending_line)


def parse_qasm(text: str) -> Circuit:
    reg_name: str | None = None
    num_qubits = 0
    ops: list[tuple] = []
    warned: set[str] = set()

    def warn_once(kind: str, lineno: int) -> None:
        if kind not in warned:
            warned.add(kind)
            logger.warning("line %d: ignoring %s statements", lineno, kind)

    for lineno, stmt in _statements(text):
        head = stmt.split()[0].lower()
        if head == "openqasm":
            continue
        if head == "include":
            continue
        if head == "qreg":
            m = re.match(r"^qreg\s+([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$", stmt)
            if not m:
                raise QasmError(f"malformed qreg declaration {stmt!r}", lineno)
            if reg_name is not None:
                raise QasmError("only one qreg is supported", lineno)
            reg_name, num_qubits = m.group(1), int(m.group(2))
            continue
        if head == "creg":
            warn_once("creg", lineno)
            continue
        if head == "barrier":
            warn_once("barrier", lineno)
            continue
        if head == "measure":
            warn_once("measure", lineno)
            continue
        if head in ("if", "reset", "opaque", "gate"):
            raise QasmError(f"unsupported statement {head!r}", lineno)

        m = _APP_RE.match(stmt)
        if not m:
            raise QasmError(f"cannot parse statement {stmt!r}", lineno)
        name, params, argtext = m.group(1), m.group(3), m.group(4)
        if reg_name is None:
            raise QasmError("gate before qreg declaration", lineno)
        args = []
        for piece in argtext.split(","):
            am = _ARG_RE.match(piece.strip())
            if not am:
                raise QasmError(f"malformed operand {piece.strip()!r}", lineno)
            if am.group(1) != reg_name:
                raise QasmError(f"unknown register {am.group(1)!r}", lineno)
            idx = int(am.group(2))
            if idx >= num_qubits:
                raise QasmError(f"qubit index {idx} outside qreg[{num_qubits}]", lineno)
            args.append(idx)

        lname = name.lower()
        if lname == "cx":
            if len(args) != 2:
                raise QasmError("cx takes exactly two qubits", lineno)
            ops.append(("cx", args[0], args[1]))
        elif lname == "swap":
            if len(args) != 2:
                raise QasmError("swap takes exactly two qubits", lineno)
            ops.append(("swap", args[0], args[1]))
        elif len(args) == 1:
            label = name if params is None else f"{name}({params.strip()})"
            ops.append((label, args[0]))
        else:
            raise QasmError(
                f"unsupported multi-qubit gate {name!r} (only cx and swap)", lineno
            )

    if reg_name is None:
        raise QasmError("no qreg declaration found")
    return Circuit.build(num_qubits, ops)


def emit_qasm(rc: RoutedCircuit, expand_swaps: bool = False) -> str:
    """Physical circuit as QASM; swaps kept or expanded into three CNOTs."""
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{rc.num_vertices}];",
    ]
    for pg in rc.physical_gates:
        if pg.kind == CNOT:
            u, v = pg.vertices
            lines.append(f"cx q[{u}],q[{v}];")
        elif pg.kind == SWAP:
            u, v = pg.vertices
            if expand_swaps:
                lines.append(f"cx q[{u}],q[{v}];")
                lines.append(f"cx q[{v}],q[{u}];")
                lines.append(f"cx q[{u}],q[{v}];")
            else:
                lines.append(f"swap q[{u}],q[{v}];")
        else:
            lines.append(f"{pg.label} q[{pg.vertices[0]}];")
    return "\n".join(lines) + "\n"


def emit_logical_qasm(c: Circuit) -> str:
    """Logical circuit as QASM (used by the generator CLI)."""
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{c.num_qubits}];",
    ]
    for g in c.gates:
        if g.kind == CNOT:
            lines.append(f"cx q[{g.qubits[0]}],q[{g.qubits[1]}];")
        elif g.kind == SWAP:
            lines.append(f"swap q[{g.qubits[0]}],q[{g.qubits[1]}];")
        else:
            lines.append(f"{g.label} q[{g.qubits[0]}];")
    return "\n".join(lines) + "\n"

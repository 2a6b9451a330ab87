"""Plain-text circuit files.

::

    qubits 4
    catalyst alpha 2 one
    catalyst beta 3 minus
    cv 2 1
    cv 1 3   # comment

The ``qubits`` header comes first.  Catalyst lines may appear anywhere after
it but are printed directly below the header, in role order.
"""

from __future__ import annotations

from .ir import ROLE_STATE, Circuit, Gate, GateKind


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise ParseError(lineno, f"expected integer {what}, got {tok!r}") from None
    if val < 0:
        raise ParseError(lineno, f"{what} must be non-negative")
    return val


def parse_circuit(text: str) -> Circuit:
    n_qubits = None
    gates = []
    catalysts = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        head, args = toks[0].lower(), toks[1:]
        if n_qubits is None:
            if head != "qubits" or len(args) != 1:
                raise ParseError(lineno, "first statement must be 'qubits N'")
            n_qubits = _int(args[0], lineno, "qubit count")
            continue
        if head == "qubits":
            raise ParseError(lineno, "duplicate 'qubits' header")
        if head == "catalyst":
            if len(args) != 3:
                raise ParseError(lineno, "expected 'catalyst <role> <qubit> <state>'")
            role, q, state = args[0].lower(), args[1], args[2].lower()
            if role not in ROLE_STATE:
                raise ParseError(lineno, f"unknown catalyst role {role!r}")
            if role in catalysts:
                raise ParseError(lineno, f"duplicate catalyst role {role!r}")
            if state != ROLE_STATE[role]:
                raise ParseError(
                    lineno, f"catalyst {role} must be '{ROLE_STATE[role]}', got {state!r}"
                )
            q = _int(q, lineno, "qubit index")
            if q >= n_qubits:
                raise ParseError(lineno, f"qubit index {q} >= declared count {n_qubits}")
            if q in catalysts.values():
                raise ParseError(lineno, f"qubit {q} already holds a catalyst")
            catalysts[role] = q
            continue
        try:
            kind = GateKind.from_name(head)
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        if len(args) != kind.arity:
            raise ParseError(
                lineno, f"{kind.value} takes {kind.arity} qubit(s), got {len(args)}"
            )
        qs = tuple(_int(a, lineno, "qubit index") for a in args)
        for q in qs:
            if q >= n_qubits:
                raise ParseError(lineno, f"qubit index {q} >= declared count {n_qubits}")
        try:
            gates.append(Gate(kind, qs))
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
    if n_qubits is None:
        raise ParseError(0, "missing 'qubits N' header")
    return Circuit(n_qubits, tuple(gates), catalysts)


def print_circuit(circuit: Circuit) -> str:
    lines = [f"qubits {circuit.n_qubits}"]
    for role, q in circuit.catalysts.items():
        lines.append(f"catalyst {role} {q} {ROLE_STATE[role]}")
    lines.extend(str(g) for g in circuit.gates)
    return "\n".join(lines) + "\n"


def read_circuit(path) -> Circuit:
    with open(path, encoding="utf-8") as fh:
        return parse_circuit(fh.read())


def write_circuit(circuit: Circuit, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(print_circuit(circuit))

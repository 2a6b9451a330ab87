"""Catalytic embedding of a source circuit into a CV-only circuit.

Catalyst qubits are appended after the data qubits in role order
alpha (|1>), beta (|->), gamma (|T>); roles no gate touches are removed.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .decomp import CATALYTIC_RULES, RULES, SUPPORTED
from .ir import ROLES, Circuit, Gate, GateKind as K


@dataclass(frozen=True)
class GateCost:
    gate: Gate | None
    cv_count: int
    roles: tuple[str, ...]
    label: str = ""

    def to_json(self):
        return {
            "gate": str(self.gate) if self.gate is not None else self.label,
            "cv_count": self.cv_count,
            "roles": list(self.roles),
        }


@dataclass(frozen=True)
class EncodedCircuit:
    """An encoded circuit together with the source it simulates.

    The first ``source.n_qubits`` qubits of ``circuit`` are the data qubits;
    every later qubit is either a declared catalyst or starts in |0>.
    """

    circuit: Circuit
    source: Circuit
    catalysts_used: tuple[str, ...]
    breakdown: tuple[GateCost, ...] = ()
    # U(circuit) acts as exp(i pi/4 * phase_eighths) * U(source) on the data
    phase_eighths: int = 0
    ground_state: bool = False
    data_qubits: int | None = None

    @property
    def n_data(self) -> int:
        return self.source.n_qubits if self.data_qubits is None else self.data_qubits


@dataclass(frozen=True)
class CostReport:
    cv_count: int
    aux_qubits: int
    per_gate_breakdown: tuple[GateCost, ...] = field(default=())
    routing_overhead: int = 0

    def to_json(self):
        return {
            "cv_count": self.cv_count,
            "aux_qubits": self.aux_qubits,
            "routing_overhead": self.routing_overhead,
            "per_gate": [c.to_json() for c in self.per_gate_breakdown],
        }


def _expand(g: Gate, slots: dict, roles: set) -> tuple[list[Gate], int]:
    kind = g.kind
    if kind is K.CV:
        return [g], 0
    if kind in CATALYTIC_RULES:
        rule = CATALYTIC_RULES[kind]
        if rule.catalyst not in slots:
            raise ValueError(f"encoding {kind.value} needs the {rule.catalyst} catalyst")
        roles.add(rule.catalyst)
        subs, phase = rule.instantiate(g.qubits, slots[rule.catalyst]), rule.phase_eighths
    elif kind in RULES:
        rule = RULES[kind]
        subs, phase = rule.instantiate(g.qubits), rule.phase_eighths
    else:
        raise ValueError(f"cannot encode {kind.value}")
    out = []
    for sub in subs:
        gs, p = _expand(sub, slots, roles)
        out.extend(gs)
        phase += p
    return out, phase % 8


def encode_gate(kind: K, data_qubit: int, catalysts: dict) -> list[Gate]:
    """CV-only encoding of a single-qubit V, S or T on ``data_qubit``.

    ``catalysts`` maps role name to qubit index and must contain every role
    the fully lowered encoding touches (T needs all three).
    """
    if kind not in (K.V, K.S, K.T):
        raise ValueError(f"encode_gate handles v, s and t, not {kind.value}")
    gates, _ = _expand(Gate(kind, (data_qubit,)), dict(catalysts), set())
    return gates


def encode_circuit(source: Circuit, elide: bool = True) -> EncodedCircuit:
    """Build the catalytic embedding of ``source``."""
    if source.has_measurements:
        raise ValueError("cannot encode measurements")
    bad = {g.kind for g in source.gates} - SUPPORTED
    if bad:
        raise ValueError(f"unsupported gate kind(s): {sorted(k.value for k in bad)}")
    if source.catalysts:
        # an already encoded circuit passes through unchanged
        if any(g.kind is not K.CV for g in source.gates):
            raise ValueError("a source with catalyst declarations must be CV-only")
        costs = tuple(GateCost(g, 1, ()) for g in source.gates)
        return EncodedCircuit(
            source, source, tuple(source.catalysts), costs,
            data_qubits=source.n_qubits - len(source.catalysts),
        )

    n = source.n_qubits
    slots = {role: n + i for i, role in enumerate(ROLES)}
    gates, costs, phase = [], [], 0
    for g in source.gates:
        roles = set()
        sub, p = _expand(g, slots, roles)
        gates.extend(sub)
        phase += p
        costs.append(GateCost(g, len(sub), tuple(r for r in ROLES if r in roles)))
    enc = EncodedCircuit(
        Circuit(n + len(ROLES), gates, slots),
        source,
        ROLES,
        tuple(costs),
        phase % 8,
    )
    return elide_unused_catalysts(enc) if elide else enc


def elide_unused_catalysts(e: EncodedCircuit) -> EncodedCircuit:
    """Drop catalyst qubits that no gate touches and compact the indices."""
    c = e.circuit
    touched = {q for g in c.gates for q in g.qubits}
    dead = {q for q in c.catalysts.values() if q not in touched}
    if not dead:
        return e
    keep = [q for q in range(c.n_qubits) if q not in dead]
    index = {q: i for i, q in enumerate(keep)}
    cats = {r: index[q] for r, q in c.catalysts.items() if q not in dead}
    out = Circuit(len(keep), [g.remap(index) for g in c.gates], cats)
    return replace(e, circuit=out, catalysts_used=tuple(r for r in ROLES if r in cats))


def cost_report(e: EncodedCircuit, routing_overhead: int = 0) -> CostReport:
    return CostReport(
        cv_count=e.circuit.native_count,
        aux_qubits=e.circuit.n_qubits - e.n_data,
        per_gate_breakdown=e.breakdown,
        routing_overhead=routing_overhead,
    )


# gate name, kind, minimal width
TABLE_GATES = (
    ("CX", K.CX), ("SWAP", K.SWAP), ("CCX", K.CCX), ("V", K.V), ("X", K.X),
    ("Z", K.Z), ("S", K.S), ("H", K.H), ("CS", K.CS), ("T", K.T),
)


def table_one() -> list[tuple[str, int, int]]:
    """(gate, auxiliary qubits, CV gates) for the ten reference gates."""
    rows = []
    for name, kind in TABLE_GATES:
        src = Circuit(kind.arity, [Gate(kind, tuple(range(kind.arity)))])
        rep = cost_report(encode_circuit(src))
        rows.append((name, rep.aux_qubits, rep.cv_count))
    return rows


def format_table(rows) -> str:
    lines = ["gate qubits gates"]
    lines += [f"{name} {q} {g}" for name, q, g in rows]
    return "\n".join(lines) + "\n"

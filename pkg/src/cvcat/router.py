"""Nearest-neighbour routing on a 1-D line by move-and-restore SWAP chains.

A CV whose control sits ``d`` positions from its target is applied by walking
the control next to the target with ``d - 1`` adjacent SWAPs, applying the CV,
and walking it back.  Each SWAP costs 6 CVs, so the gate costs
``1 + 12 (d - 1)`` CVs and the layout is unchanged afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ir import Circuit, Gate, GateKind as K


@dataclass(frozen=True)
class LineLayout:
    """``positions[logical] = physical line position``."""

    positions: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(int(p) for p in self.positions))
        if sorted(self.positions) != list(range(len(self.positions))):
            raise ValueError(f"layout {self.positions} is not a permutation")

    @classmethod
    def identity(cls, n: int) -> "LineLayout":
        return cls(tuple(range(n)))

    def __len__(self):
        return len(self.positions)


def _adjacent_swap(a: int, b: int) -> list[Gate]:
    cx_ab = [Gate(K.CV, (a, b))] * 2
    cx_ba = [Gate(K.CV, (b, a))] * 2
    return cx_ab + cx_ba + cx_ab


def _check(circuit: Circuit, layout: LineLayout):
    if len(layout) != circuit.n_qubits:
        raise ValueError(
            f"layout has {len(layout)} positions for a {circuit.n_qubits}-qubit circuit"
        )
    for g in circuit.gates:
        if g.kind is not K.CV:
            raise ValueError(f"route_line expects a CV-only circuit, found '{g}'")


def route_line(circuit: Circuit, layout: LineLayout | None = None) -> Circuit:
    """Return the routed circuit, expressed on physical line positions."""
    if layout is None:
        layout = LineLayout.identity(circuit.n_qubits)
    _check(circuit, layout)
    pos = layout.positions
    out = []
    for g in circuit.gates:
        c, t = pos[g.qubits[0]], pos[g.qubits[1]]
        step = 1 if t > c else -1
        swaps = [(p, p + step) for p in range(c, t - step, step)]
        for a, b in swaps:
            out += _adjacent_swap(a, b)
        out.append(Gate(K.CV, (t - step, t)))
        for a, b in reversed(swaps):
            out += _adjacent_swap(a, b)
    cats = {r: pos[q] for r, q in circuit.catalysts.items()}
    return Circuit(circuit.n_qubits, out, cats)


def routing_overhead(circuit: Circuit, layout: LineLayout | None = None) -> int:
    """Extra CVs introduced by :func:`route_line`, computed without routing."""
    if layout is None:
        layout = LineLayout.identity(circuit.n_qubits)
    _check(circuit, layout)
    pos = layout.positions
    return sum(12 * (abs(pos[g.qubits[0]] - pos[g.qubits[1]]) - 1) for g in circuit.gates)


def relabel(circuit: Circuit, layout: LineLayout) -> Circuit:
    """The unrouted circuit with logical qubits renamed to their positions."""
    pos = layout.positions
    return Circuit(
        circuit.n_qubits,
        [g.remap(pos) for g in circuit.gates],
        {r: pos[q] for r, q in circuit.catalysts.items()},
    )

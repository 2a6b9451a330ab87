"""Resource states: the post-selected |-> preparation and the |0>-only NCV mode."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .encoder import EncodedCircuit, GateCost
from .ir import Circuit, Gate, GateKind as K, named_state
from .numerics import measure_z, product_state, simulate

# layout of the preparation circuit
MEASURED, OUTPUT, ALPHA = 0, 1, 2


@dataclass(frozen=True)
class PrepOutcome:
    success: bool
    shots_used: int
    post_state: np.ndarray | None = None

    def to_json(self):
        out = {"success": self.success, "shots_used": self.shots_used}
        if self.post_state is not None:
            out["post_state"] = [[z.real, z.imag] for z in self.post_state]
        return out


def minus_prep_circuit() -> Circuit:
    """Three-qubit CV-only |-> preparation.

    Qubits 0 and 1 start in |0>, qubit 2 is the alpha catalyst.  Both work
    qubits get V through the alpha encoding, then CX(1->0), CX(0->1) as CV
    pairs, then qubit 0 is measured.  Outcome 0 leaves qubit 1 in |-> up to a
    phase.
    """
    cv = lambda c, t: Gate(K.CV, (c, t))  # noqa: E731
    gates = [
        cv(ALPHA, MEASURED), cv(ALPHA, OUTPUT),
        cv(OUTPUT, MEASURED), cv(OUTPUT, MEASURED),
        cv(MEASURED, OUTPUT), cv(MEASURED, OUTPUT),
        Gate(K.MEASURE, (MEASURED,)),
    ]
    return Circuit(3, gates, {"alpha": ALPHA})


def minus_prep_statevector() -> np.ndarray:
    """State of the preparation circuit just before the measurement."""
    c = minus_prep_circuit()
    unitary_part = c.with_gates(g for g in c.gates if g.kind is not K.MEASURE)
    start = product_state(named_state("zero"), named_state("zero"), named_state("one"))
    return simulate(unitary_part, start)


@lru_cache(maxsize=2)
def _branch(outcome: int):
    prob, post = measure_z(minus_prep_statevector(), MEASURED, outcome)
    return prob, post


def minus_prep_branch(outcome: int) -> tuple[float, np.ndarray]:
    """(probability, post-measurement 3-qubit state) for a measurement outcome."""
    prob, post = _branch(outcome)
    return prob, post.copy()


def output_qubit_state(post: np.ndarray) -> np.ndarray:
    """Qubit-1 state of a post-measurement state with qubit 0 = |0>, alpha = |1>."""
    t = post.reshape(2, 2, 2)
    return t[0, :, 1].copy()


def sample_outcomes(seed: int, shots: int) -> np.ndarray:
    """Measurement outcomes of ``shots`` independent runs (0 marks success)."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    p_success, _ = _branch(0)
    return (np.random.default_rng(seed).random(shots) >= p_success).astype(np.int8)


def sample_minus_prep(seed: int, max_shots: int) -> PrepOutcome:
    """Repeat the preparation until outcome 0 or ``max_shots`` attempts."""
    if max_shots < 1:
        raise ValueError("max_shots must be at least 1")
    rng = np.random.default_rng(seed)
    p_success, post = _branch(0)
    for shot in range(1, max_shots + 1):
        if rng.random() < p_success:
            return PrepOutcome(True, shot, output_qubit_state(post))
    return PrepOutcome(False, max_shots)


def _x_via_ncv(anc: int, q: int) -> list[Gate]:
    # NCV with a |0> control is V on the target; V^2 = X
    return [Gate(K.NCV, (anc, q))] * 2


def ground_state_mode(circuit: Circuit) -> Circuit:
    """Rewrite a CV-only circuit over NCV with a single extra |0> ancilla.

    Each ``CV(a, b)`` becomes ``X(a) NCV(a, b) X(a)`` with ``X = NCV(g, .)^2``
    against the ancilla ``g`` (appended as the last qubit).  The alpha
    catalyst is dropped from the declarations: its qubit starts in |0>, is
    flipped to |1> at the beginning and flipped back at the end.  The beta and
    gamma declarations are kept.
    """
    for g in circuit.gates:
        if g.kind is not K.CV:
            raise ValueError(f"ground_state_mode expects a CV-only circuit, found '{g}'")
    cats = {r: q for r, q in circuit.catalysts.items() if r != "alpha"}
    if not circuit.gates:
        return Circuit(circuit.n_qubits, (), cats)
    anc = circuit.n_qubits
    alpha = circuit.catalysts.get("alpha")
    out = _x_via_ncv(anc, alpha) if alpha is not None else []
    for g in circuit.gates:
        a, b = g.qubits
        out += _x_via_ncv(anc, a) + [Gate(K.NCV, (a, b))] + _x_via_ncv(anc, a)
    if alpha is not None:
        out += _x_via_ncv(anc, alpha)
    return Circuit(circuit.n_qubits + 1, out, cats)


def ground_state_encoded(e: EncodedCircuit) -> EncodedCircuit:
    """:func:`ground_state_mode` applied to an encoded circuit, costs rescaled."""
    c = ground_state_mode(e.circuit)
    costs = tuple(replace(gc, cv_count=5 * gc.cv_count) for gc in e.breakdown)
    if "alpha" in e.circuit.catalysts and e.circuit.gates:
        costs += (GateCost(None, 4, ("alpha",), label="alpha preparation and reset"),)
    return replace(
        e,
        circuit=c,
        catalysts_used=tuple(r for r in e.catalysts_used if r in c.catalysts),
        breakdown=costs,
        ground_state=True,
    )

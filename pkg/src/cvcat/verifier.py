"""Statevector checks for encoded circuits.

The first ``encoded.n_data`` qubits are data.  Every later qubit starts in its
declared catalyst state, or in |0> when nothing is declared for it (scratch
ancillas, the alpha qubit of ground-state mode).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .encoder import EncodedCircuit
from .ir import ROLE_STATE, Circuit, named_state
from .numerics import MAX_QUBITS, circuit_unitary, random_states, simulate

DEFAULT_TOLERANCE = 1e-10
RESTORE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    worst_deviation: float
    trials: int
    phase: complex = 1 + 0j
    notes: tuple[str, ...] = field(default=())

    def to_json(self):
        return {
            "passed": self.passed,
            "worst_deviation": self.worst_deviation,
            "trials": self.trials,
            "phase_re": self.phase.real,
            "phase_im": self.phase.imag,
            "notes": list(self.notes),
        }


def aux_state(encoded: EncodedCircuit, catalyst_states: dict | None = None) -> np.ndarray:
    """Initial state of the non-data register."""
    c = encoded.circuit
    n = encoded.n_data
    states = {role: named_state(name) for role, name in ROLE_STATE.items()}
    for role, psi in (catalyst_states or {}).items():
        if role not in states:
            raise ValueError(f"unknown catalyst role {role!r}")
        psi = np.asarray(psi, dtype=complex)
        if psi.shape != (2,):
            raise ValueError(f"catalyst state for {role} must have 2 amplitudes")
        states[role] = psi
    at = {}
    for role, q in c.catalysts.items():
        if q < n:
            raise ValueError(f"catalyst {role} sits on data qubit {q}")
        at[q] = states[role]
    out = np.ones(1, dtype=complex)
    for q in range(n, c.n_qubits):
        out = np.kron(out, at.get(q, named_state("zero")))
    return out


def _run(encoded: EncodedCircuit, trials: int, seed: int, catalyst_states):
    c = encoded.circuit
    n = encoded.n_data
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if c.n_qubits > MAX_QUBITS:
        raise ValueError(f"{c.n_qubits} qubits exceeds the simulation cap {MAX_QUBITS}")
    if encoded.source.n_qubits != n:
        raise ValueError(
            f"source has {encoded.source.n_qubits} qubits but the encoding has {n} data qubits"
        )
    chi = aux_state(encoded, catalyst_states)
    psi = random_states(n, trials, np.random.default_rng(seed))
    inputs = (psi[:, :, None] * chi[None, None, :]).reshape(trials, -1)
    return psi, chi, simulate(c, inputs)


def check_catalytic(
    encoded: EncodedCircuit,
    tolerance: float = DEFAULT_TOLERANCE,
    trials: int = 100,
    seed: int = 0,
    catalyst_states: dict | None = None,
) -> VerificationReport:
    """Compare ``Gamma(psi (x) chi)`` against ``(C psi) (x) chi`` on random ``psi``.

    One global phase is fitted on the first trial, at the amplitude of largest
    magnitude, and then applied to every trial.
    """
    psi, chi, out = _run(encoded, trials, seed, catalyst_states)
    ideal = simulate(encoded.source, psi)
    want = (ideal[:, :, None] * chi[None, None, :]).reshape(trials, -1)
    j = int(np.argmax(np.abs(want[0])))
    ratio = out[0, j] / want[0, j]
    phase = ratio / abs(ratio) if abs(ratio) > 0 else 1 + 0j
    dev = float(np.max(np.linalg.norm(out - phase * want, axis=1)))
    notes = (
        f"{encoded.n_data} data qubits, catalysts {sorted(encoded.circuit.catalysts)}",
        f"phase fitted on trial 0 at basis index {j}",
    )
    return VerificationReport(dev <= tolerance, dev, trials, complex(phase), notes)


def check_catalyst_restored(
    encoded: EncodedCircuit,
    trials: int = 100,
    seed: int = 0,
    tolerance: float = RESTORE_TOLERANCE,
    catalyst_states: dict | None = None,
) -> VerificationReport:
    """Check the non-data register ends in its initial state, unentangled.

    Per trial the deviation is ``(1 - <chi|rho|chi>) + (1 - tr rho^2)`` for the
    reduced state ``rho`` of the non-data register.
    """
    _, chi, out = _run(encoded, trials, seed, catalyst_states)
    t = out.reshape(trials, 1 << encoded.n_data, chi.shape[0])
    rho = np.einsum("bia,bic->bac", t, t.conj())
    overlap = np.einsum("a,bac,c->b", chi.conj(), rho, chi).real
    purity = np.einsum("bac,bca->b", rho, rho).real
    dev = float(np.max((1 - overlap) + (1 - purity)))
    dev = max(dev, 0.0)
    notes = (f"non-data register of {encoded.circuit.n_qubits - encoded.n_data} qubits",)
    return VerificationReport(dev <= tolerance, dev, trials, 1 + 0j, notes)


def check_equiv_up_to_phase(
    a: Circuit, b: Circuit, tolerance: float = 1e-12
) -> VerificationReport:
    """Unitary equivalence: passed iff ``1 - |tr(U_a^dagger U_b)|/d <= tolerance``."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"width mismatch: {a.n_qubits} vs {b.n_qubits} qubits")
    ua, ub = circuit_unitary(a), circuit_unitary(b)
    overlap = np.vdot(ua, ub) / ua.shape[0]
    dev = max(float(1 - abs(overlap)), 0.0)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1 + 0j
    return VerificationReport(dev <= tolerance, dev, 1, complex(phase))


def data_block_unitary(
    encoded: EncodedCircuit, catalyst_states: dict | None = None
) -> np.ndarray:
    """``(I (x) <chi|) Gamma (I (x) |chi>)``, the action seen by the data qubits."""
    chi = aux_state(encoded, catalyst_states)
    gamma = circuit_unitary(encoded.circuit)
    d = 1 << encoded.n_data
    embed = np.kron(np.eye(d), chi[:, None])
    return embed.conj().T @ gamma @ embed


def approx_t_error_bound(fidelity: float, t_gates: int = 1) -> float:
    """Heuristic error bound ``2 sqrt(1 - F)`` per T gate for an approximate |T> catalyst.

    Only a heuristic: it is not a proven diamond-norm bound and ignores how
    errors on a reused catalyst compose.
    """
    if not 0 <= fidelity <= 1:
        raise ValueError("fidelity must lie in [0, 1]")
    return 2 * np.sqrt(1 - fidelity) * t_gates

"""Dense statevector and unitary simulation, the exact oracle for small circuits.

States are plain complex128 arrays of length ``2**n`` (or batches of shape
``(B, 2**n)``); qubit 0 is the most significant bit of the basis index.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .ir import Circuit, Gate, gate_matrix

MAX_QUBITS = 14
# a dense 2**n x 2**n unitary at 14 qubits needs 4 GiB; unitaries stop earlier
MAX_UNITARY_QUBITS = 12


class ZeroProbabilityError(ValueError):
    """A measurement branch with zero probability was requested."""


def n_qubits_of(size: int) -> int:
    n = int(size).bit_length() - 1
    if n < 0 or 1 << n != size:
        raise ValueError(f"state length {size} is not a power of two")
    return n


def basis_state(n: int, index: int = 0) -> np.ndarray:
    psi = np.zeros(1 << n, dtype=complex)
    psi[index] = 1
    return psi


def product_state(*factors) -> np.ndarray:
    out = np.ones(1, dtype=complex)
    for f in factors:
        out = np.kron(out, f)
    return out


def random_states(n: int, count: int, rng) -> np.ndarray:
    """``count`` normalized states from complex Gaussian samples, shape (count, 2**n)."""
    z = rng.standard_normal((count, 1 << n)) + 1j * rng.standard_normal((count, 1 << n))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def _check_gate(g: Gate, n: int):
    if not g.kind.is_unitary:
        raise ValueError("measurement has no unitary; use measure_z")
    if max(g.qubits) >= n:
        raise ValueError(f"gate '{g}' addresses qubit >= {n}")


def apply_gate(state: np.ndarray, g: Gate) -> np.ndarray:
    """Return ``U_g |state>``; accepts one state or a batch of row states."""
    state = np.asarray(state, dtype=complex)
    batch = state.reshape(-1, state.shape[-1])
    n = n_qubits_of(batch.shape[1])
    _check_gate(g, n)
    out = kernels.apply_matrix(batch, gate_matrix(g.kind), g.qubits, n)
    return out.reshape(state.shape)


def simulate(circuit: Circuit, state: np.ndarray) -> np.ndarray:
    """Run a measurement-free circuit on a state (or batch of states)."""
    state = np.asarray(state, dtype=complex)
    if state.shape[-1] != 1 << circuit.n_qubits:
        raise ValueError(
            f"state length {state.shape[-1]} does not match {circuit.n_qubits} qubits"
        )
    if circuit.n_qubits > MAX_QUBITS:
        raise ValueError(f"{circuit.n_qubits} qubits exceeds the simulation cap {MAX_QUBITS}")
    if circuit.has_measurements:
        raise ValueError("circuit contains measurements")
    batch = np.ascontiguousarray(state.reshape(-1, state.shape[-1]))
    n = circuit.n_qubits
    for g in circuit.gates:
        batch = kernels.apply_matrix(batch, gate_matrix(g.kind), g.qubits, n)
    return batch.reshape(state.shape)


def circuit_unitary(circuit: Circuit, cap: int = MAX_UNITARY_QUBITS) -> np.ndarray:
    """Product of the gate unitaries in circuit order."""
    if circuit.n_qubits > cap:
        raise ValueError(f"{circuit.n_qubits} qubits exceeds the unitary cap {cap}")
    if circuit.has_measurements:
        raise ValueError("circuit contains measurements")
    dim = 1 << circuit.n_qubits
    # row j of the batch evolves e_j, i.e. becomes column j of U
    return simulate(circuit, np.eye(dim, dtype=complex)).T


def fidelity_up_to_phase(u: np.ndarray, w: np.ndarray) -> float:
    """``|tr(U^dagger W)| / dim``; 1 exactly when ``U = e^{i phi} W``."""
    u = np.asarray(u)
    w = np.asarray(w)
    if u.shape != w.shape:
        raise ValueError(f"dimension mismatch {u.shape} vs {w.shape}")
    return float(abs(np.vdot(u, w)) / u.shape[0])


def state_fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """``|<a|b>|^2`` for normalized states."""
    return float(abs(np.vdot(a, b)) ** 2)


def measure_z(state: np.ndarray, qubit: int, outcome: int):
    """Project ``qubit`` onto ``|outcome>``; returns (probability, renormalized state)."""
    state = np.asarray(state, dtype=complex)
    n = n_qubits_of(state.shape[0])
    if not 0 <= qubit < n:
        raise ValueError(f"qubit {qubit} out of range for {n} qubits")
    if outcome not in (0, 1):
        raise ValueError("outcome must be 0 or 1")
    bits = (np.arange(state.shape[0]) >> (n - 1 - qubit)) & 1
    branch = np.where(bits == outcome, state, 0)
    prob = float(np.vdot(branch, branch).real)
    if prob <= 1e-15:
        raise ZeroProbabilityError(f"outcome {outcome} on qubit {qubit} has probability 0")
    return prob, branch / np.sqrt(prob)


def reduced_density(state: np.ndarray, keep) -> np.ndarray:
    """Reduced density matrix of the qubits in ``keep`` (in the given order)."""
    state = np.asarray(state, dtype=complex)
    n = n_qubits_of(state.shape[0])
    keep = list(keep)
    rest = [q for q in range(n) if q not in keep]
    t = np.transpose(state.reshape((2,) * n), keep + rest).reshape(1 << len(keep), -1)
    return t @ t.conj().T


def gate_unitary_on(g: Gate, n: int) -> np.ndarray:
    """Full ``2**n`` unitary of a single gate."""
    return circuit_unitary(Circuit(n, (g,)), cap=max(n, MAX_UNITARY_QUBITS))


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


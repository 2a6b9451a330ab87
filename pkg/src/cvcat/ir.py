"""Gate kinds, their unitaries, and the immutable circuit representation."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

_W = np.exp(1j * np.pi / 4)
_R2 = 1 / np.sqrt(2)


class GateKind(Enum):
    X = "x"
    Z = "z"
    S = "s"
    SDG = "sdg"
    T = "t"
    TDG = "tdg"
    V = "v"
    VDG = "vdg"
    H = "h"
    CX = "cx"
    CS = "cs"
    CH = "ch"
    SWAP = "swap"
    CCX = "ccx"
    CV = "cv"
    CVDG = "cvdg"
    NCV = "ncv"
    MEASURE = "measure"

    @property
    def arity(self) -> int:
        return _ARITY[self]

    @property
    def is_unitary(self) -> bool:
        return self is not GateKind.MEASURE

    @classmethod
    def from_name(cls, name: str) -> "GateKind":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown gate name {name!r}") from None


_ARITY = {
    GateKind.X: 1, GateKind.Z: 1, GateKind.S: 1, GateKind.SDG: 1,
    GateKind.T: 1, GateKind.TDG: 1, GateKind.V: 1, GateKind.VDG: 1,
    GateKind.H: 1, GateKind.MEASURE: 1,
    GateKind.CX: 2, GateKind.CS: 2, GateKind.CH: 2, GateKind.SWAP: 2,
    GateKind.CV: 2, GateKind.CVDG: 2, GateKind.NCV: 2,
    GateKind.CCX: 3,
}

# two-qubit kinds that count as native gates of the target architecture
NATIVE_KINDS = frozenset({GateKind.CV, GateKind.NCV})


def _controlled(u: np.ndarray) -> np.ndarray:
    d = u.shape[0]
    out = np.eye(2 * d, dtype=complex)
    out[d:, d:] = u
    return out


def _build_matrices() -> dict:
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    z = np.diag([1, -1]).astype(complex)
    s = np.diag([1, 1j])
    t = np.diag([1, _W])
    # entries are exactly (1 +- i)/2
    v = np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]) / 2
    h = np.array([[1, 1], [1, -1]], dtype=complex) * _R2
    swap = np.eye(4, dtype=complex)[[0, 2, 1, 3]]
    cv = _controlled(v)
    xi = np.kron(x, np.eye(2))
    m = {
        GateKind.X: x,
        GateKind.Z: z,
        GateKind.S: s,
        GateKind.SDG: s.conj().T,
        GateKind.T: t,
        GateKind.TDG: t.conj().T,
        GateKind.V: v,
        GateKind.VDG: v.conj().T,
        GateKind.H: h,
        GateKind.CX: _controlled(x),
        GateKind.CS: _controlled(s),
        GateKind.CH: _controlled(h),
        GateKind.SWAP: swap,
        GateKind.CCX: _controlled(_controlled(x)),
        GateKind.CV: cv,
        GateKind.CVDG: cv.conj().T,
        GateKind.NCV: xi @ cv @ xi,
    }
    for mat in m.values():
        mat.setflags(write=False)
    return m


_MATRICES = _build_matrices()


def gate_matrix(kind: GateKind) -> np.ndarray:
    """Canonical unitary of ``kind`` (read-only array; controls are leading qubits)."""
    if kind is GateKind.MEASURE:
        raise ValueError("measure has no unitary matrix")
    return _MATRICES[kind]


@dataclass(frozen=True)
class Gate:
    """A gate kind applied to an ordered tuple of qubits, controls first."""

    kind: GateKind
    qubits: tuple[int, ...]

    def __post_init__(self):
        qs = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qs)
        if len(qs) != self.kind.arity:
            raise ValueError(
                f"{self.kind.value} takes {self.kind.arity} qubit(s), got {len(qs)}"
            )
        if len(set(qs)) != len(qs):
            raise ValueError(f"duplicate qubit index in {self.kind.value} {qs}")
        if any(q < 0 for q in qs):
            raise ValueError(f"negative qubit index in {self.kind.value} {qs}")

    def remap(self, mapping) -> "Gate":
        return Gate(self.kind, tuple(mapping[q] for q in self.qubits))

    def __str__(self):
        return " ".join([self.kind.value, *map(str, self.qubits)])


GateInstance = Gate


def gate(kind, *qubits) -> Gate:
    """Shorthand: ``gate("cv", 0, 1)`` or ``gate(GateKind.CV, 0, 1)``."""
    if not isinstance(kind, GateKind):
        kind = GateKind.from_name(kind)
    return Gate(kind, tuple(qubits))


# Catalyst roles, in the fixed order they are appended after data qubits.
ROLES = ("alpha", "beta", "gamma")
ROLE_STATE = {"alpha": "one", "beta": "minus", "gamma": "tstate"}

_STATES = {
    "zero": np.array([1, 0], dtype=complex),
    "one": np.array([0, 1], dtype=complex),
    "minus": np.array([1, -1], dtype=complex) * _R2,
    "tstate": np.array([1, _W], dtype=complex) * _R2,
}


def named_state(name: str) -> np.ndarray:
    """Single-qubit state by name: ``zero``, ``one``, ``minus`` or ``tstate``."""
    return _STATES[name].copy()


@dataclass(frozen=True)
class Circuit:
    """Qubit count, gate list and catalyst declarations (role -> qubit)."""

    n_qubits: int
    gates: tuple[Gate, ...] = ()
    catalysts: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        cats = {r: int(self.catalysts[r]) for r in ROLES if r in self.catalysts}
        unknown = set(self.catalysts) - set(ROLES)
        if unknown:
            raise ValueError(f"unknown catalyst role(s) {sorted(unknown)}")
        object.__setattr__(self, "catalysts", cats)
        if self.n_qubits < 0:
            raise ValueError("qubit count must be non-negative")
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits:
                raise ValueError(f"gate '{g}' addresses a qubit >= {self.n_qubits}")
        for role, q in cats.items():
            if not 0 <= q < self.n_qubits:
                raise ValueError(f"catalyst {role} at qubit {q} out of range")
        if len(set(cats.values())) != len(cats):
            raise ValueError("catalyst qubits must be distinct")

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise ValueError("cannot concatenate circuits of different width")
        cats = dict(self.catalysts)
        for role, q in other.catalysts.items():
            if cats.setdefault(role, q) != q:
                raise ValueError(f"conflicting catalyst declarations for {role}")
        return Circuit(self.n_qubits, self.gates + other.gates, cats)

    def __len__(self):
        return len(self.gates)

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.n_qubits, tuple(gates), self.catalysts)

    def count(self, *kinds: GateKind) -> int:
        return sum(g.kind in kinds for g in self.gates)

    @property
    def native_count(self) -> int:
        """Number of CV/NCV gates."""
        return sum(g.kind in NATIVE_KINDS for g in self.gates)

    @property
    def has_measurements(self) -> bool:
        return any(g.kind is GateKind.MEASURE for g in self.gates)

    def kinds(self) -> set:
        return {g.kind for g in self.gates}

    @property
    def catalyst_qubits(self) -> dict:
        """Qubit -> role."""
        return {q: r for r, q in self.catalysts.items()}

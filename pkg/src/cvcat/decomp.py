"""Rewrite rules taking every supported gate down to {CV, V, S, T, Tdg}.

A rule template is written over wire placeholders: ``0 .. arity-1`` are the
source gate's qubits and, for catalytic rules, wire ``arity`` is the catalyst
qubit.  ``phase_eighths`` records the global phase of the template relative to
the source as a multiple of pi/4 (only ``h -> v s v`` carries one).

V, S, T and Tdg are left alone by :func:`lower`; their catalytic encodings live
in :data:`CATALYTIC_RULES` and are applied by the encoder.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .ir import Circuit, Gate, GateKind as K, gate_matrix, named_state, ROLE_STATE
from .numerics import circuit_unitary

log = logging.getLogger(__name__)

RULE_TOL = 1e-12


@dataclass(frozen=True)
class RewriteRule:
    source: K
    template: tuple[tuple[K, tuple[int, ...]], ...]
    phase_eighths: int = 0
    catalyst: str | None = None
    note: str = ""

    @property
    def width(self) -> int:
        return self.source.arity + (self.catalyst is not None)

    def instantiate(self, qubits, catalyst_qubit=None) -> list[Gate]:
        wires = list(qubits)
        if self.catalyst is not None:
            if catalyst_qubit is None:
                raise ValueError(f"{self.source.value} needs the {self.catalyst} catalyst")
            wires.append(catalyst_qubit)
        return [Gate(kind, tuple(wires[w] for w in ws)) for kind, ws in self.template]


def _r(source, *template, phase=0, catalyst=None, note=""):
    return RewriteRule(source, tuple(template), phase, catalyst, note)


RULES = {
    K.CX: _r(K.CX, (K.CV, (0, 1)), (K.CV, (0, 1)), note="CV^2 = CX"),
    K.CVDG: _r(K.CVDG, (K.CX, (0, 1)), (K.CV, (0, 1)), note="V X = V^dagger"),
    K.SWAP: _r(K.SWAP, (K.CX, (0, 1)), (K.CX, (1, 0)), (K.CX, (0, 1))),
    K.CCX: _r(
        K.CCX,
        (K.CV, (1, 2)), (K.CX, (0, 1)), (K.CVDG, (1, 2)), (K.CX, (0, 1)), (K.CV, (0, 2)),
        note="Sleator-Weinfurter",
    ),
    K.H: _r(K.H, (K.V, (0,)), (K.S, (0,)), (K.V, (0,)), phase=1, note="V S V = e^{i pi/4} H"),
    K.CS: _r(K.CS, (K.H, (1,)), (K.CV, (0, 1)), (K.H, (1,)), note="H V H = S"),
    K.CH: _r(
        K.CH,
        (K.CV, (0, 1)), (K.CS, (0, 1)), (K.CV, (0, 1)), (K.TDG, (0,)),
        note="controlled (V S V) carries a relative e^{i pi/4}",
    ),
    K.X: _r(K.X, (K.V, (0,)), (K.V, (0,))),
    K.Z: _r(K.Z, (K.S, (0,)), (K.S, (0,))),
    K.SDG: _r(K.SDG, (K.S, (0,)), (K.Z, (0,))),
    K.VDG: _r(K.VDG, (K.V, (0,)), (K.V, (0,)), (K.V, (0,))),
}

# Wire 0 is the data qubit, wire 1 the catalyst.
CATALYTIC_RULES = {
    K.V: _r(K.V, (K.CV, (1, 0)), catalyst="alpha"),
    K.S: _r(K.S, (K.CV, (0, 1)), catalyst="beta"),
    K.T: _r(K.T, (K.CX, (0, 1)), (K.CS, (0, 1)), catalyst="gamma"),
    # adjoint of the T encoding: CS^dagger (as H CV^dagger H) then CX
    K.TDG: _r(
        K.TDG,
        (K.H, (1,)), (K.CVDG, (0, 1)), (K.H, (1,)), (K.CX, (0, 1)),
        catalyst="gamma",
    ),
}

TERMINAL = frozenset({K.CV, K.V, K.S, K.T, K.TDG})
SUPPORTED = frozenset(RULES) | TERMINAL

# Well-ordering used for the termination argument: every template kind ranks
# strictly below its source, counting the catalytic rules as well.
RANK = {
    K.CCX: 15, K.CH: 14, K.SWAP: 13, K.T: 12, K.TDG: 11, K.CS: 10, K.CVDG: 9,
    K.CX: 8, K.H: 7, K.SDG: 6, K.Z: 5, K.X: 4, K.VDG: 3, K.V: 2, K.S: 1, K.CV: 0,
}


def lower(g: Gate) -> list[Gate]:
    """One rewrite step; V, S, T, Tdg and CV are returned unchanged."""
    if g.kind in TERMINAL:
        return [g]
    rule = RULES.get(g.kind)
    if rule is None:
        raise ValueError(f"cannot lower {g.kind.value}")
    return rule.instantiate(g.qubits)


def lower_fully(g: Gate) -> tuple[list[Gate], int]:
    """Rewrite to a fixpoint over {CV, V, S, T, Tdg}.

    Returns the gate list and the accumulated global phase in units of pi/4,
    so that ``U(lowered) = exp(i pi/4 * phase) U(g)``.
    """
    if g.kind in TERMINAL:
        return [g], 0
    rule = RULES.get(g.kind)
    if rule is None:
        raise ValueError(f"cannot lower {g.kind.value}")
    out, phase = [], rule.phase_eighths
    for sub in rule.instantiate(g.qubits):
        gs, p = lower_fully(sub)
        out.extend(gs)
        phase += p
    return out, phase % 8


def _template_circuit(rule: RewriteRule) -> Circuit:
    return Circuit(rule.width, rule.instantiate(range(rule.source.arity),
                                                rule.source.arity if rule.catalyst else None))


def rule_fidelity(rule: RewriteRule) -> tuple[float, complex]:
    """Fidelity of the template with its source and the fitted overlap phase.

    Plain rules compare unitaries.  Catalytic rules compare the isometry
    ``Gamma (I (x) |chi>)`` against ``U (x) |chi>``; the overlap is 1 only if
    the catalyst comes back unchanged.
    """
    gamma = circuit_unitary(_template_circuit(rule))
    u = gate_matrix(rule.source)
    d = u.shape[0]
    if rule.catalyst is None:
        overlap = np.vdot(u, gamma) / d
    else:
        chi = named_state(ROLE_STATE[rule.catalyst])[:, None]
        iso = gamma @ np.kron(np.eye(d), chi)
        overlap = np.vdot(np.kron(u, chi), iso) / d
    return float(abs(overlap)), complex(overlap / abs(overlap)) if abs(overlap) else 0j


def verify_rule(rule: RewriteRule, tol: float = RULE_TOL) -> bool:
    fid, phase = rule_fidelity(rule)
    want = np.exp(1j * np.pi / 4 * rule.phase_eighths)
    ok = fid >= 1 - tol and abs(phase - want) <= 1e-9
    if not ok:
        log.warning(
            "rule %s failed: fidelity %.15f, phase %s (recorded %s)",
            rule.source.value, fid, phase, want,
        )
    return ok


def all_rules() -> list[RewriteRule]:
    return list(RULES.values()) + list(CATALYTIC_RULES.values())

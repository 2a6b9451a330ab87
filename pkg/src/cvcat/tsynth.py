"""Approximate |T> preparation over the Clifford+Toffoli set {S, H, CX, CCX}.

Every word over these gates maps |0...0> to ``u * v / (1+i)**k`` with ``v`` a
vector of Gaussian integers and ``u`` a unit phase.  The fidelity with
|T>|0...0> is therefore ``|v_0 + conj(w) v_m|**2 / 2**(k+1)`` (``w =
e^{i pi/4}``, ``m`` the index of |10...0>), which can approach 1 as ``k``
grows but never reaches it, since the ratio of two such amplitudes is never
``w``.

The search runs in two stages:

1. an overlap-scored beam search from |0...0> with states deduplicated by
   rounding the phase-normalized amplitudes (a cheap warm start);
2. a lattice stage: for increasing ``k`` pick exact target vectors whose
   fidelity beats the best so far, then reduce each target back to a basis
   state by best-first search on the denominator exponent, in exact integer
   arithmetic.  Reversing that reduction gives the preparing word.

``nodes_explored`` counts expanded states across both stages.  The reported
fidelity is always recomputed by replaying the returned word in the
statevector oracle.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass
from math import isqrt

import numpy as np

from . import kernels
from .ir import Circuit, Gate, GateKind as K, named_state
from .kernels import MOVE_CCX, MOVE_CX, MOVE_H, MOVE_S, MOVE_SDG
from .numerics import basis_state, product_state, simulate

log = logging.getLogger(__name__)

_W = np.exp(1j * np.pi / 4)

WARM_START_NODES = 256
DEDUP_DECIMALS = 8
TARGETS_PER_LEVEL = 3
NODES_PER_TARGET = 150_000
MAX_EXPONENT = 20


@dataclass(frozen=True)
class SynthesisResult:
    circuit: Circuit
    achieved_fidelity: float
    nodes_explored: int
    target_fidelity: float
    exact_fidelity: float | None = None
    denominator_exponent: int | None = None

    @property
    def target_reached(self) -> bool:
        return self.achieved_fidelity >= self.target_fidelity

    @property
    def word_length(self) -> int:
        return len(self.circuit.gates)

    def to_json(self):
        return {
            "achieved_fidelity": self.achieved_fidelity,
            "target_fidelity": self.target_fidelity,
            "target_reached": self.target_reached,
            "word_length": self.word_length,
            "nodes_explored": self.nodes_explored,
            "denominator_exponent": self.denominator_exponent,
        }


def t_target(n: int) -> np.ndarray:
    """|T> on qubit 0 with the remaining ``n - 1`` qubits in |0>."""
    return product_state(named_state("tstate"), basis_state(n - 1))


def word_fidelity(circuit: Circuit) -> float:
    """|<T,0..0| W |0..0>|^2 by statevector replay."""
    n = circuit.n_qubits
    out = simulate(circuit, basis_state(n))
    return float(abs(np.vdot(t_target(n), out)) ** 2)


def gate_alphabet(n: int) -> list[Gate]:
    """Every S, H, CX and CCX placement on ``n`` qubits, in a fixed order."""
    out = [Gate(K.S, (q,)) for q in range(n)]
    out += [Gate(K.H, (q,)) for q in range(n)]
    out += [Gate(K.CX, (c, t)) for c in range(n) for t in range(n) if c != t]
    for t in range(n):
        rest = [q for q in range(n) if q != t]
        out += [Gate(K.CCX, (a, b, t)) for a, b in itertools.combinations(rest, 2)]
    return out


# ---------------------------------------------------------------- beam stage


def _phase_keys(states: np.ndarray) -> np.ndarray:
    mags = np.abs(states)
    first = np.argmax(mags > 1e-6, axis=1)
    ref = states[np.arange(len(states)), first]
    normed = states * (np.conj(ref) / np.abs(ref))[:, None]
    return np.round(normed.view(np.float64), DEDUP_DECIMALS) + 0.0


def overlap_beam_search(n: int, node_cap: int, beam_width: int = 64):
    """Beam search scored by overlap with |T>|0..0>.

    Returns ``(word, fidelity, nodes)``; ``word`` is a list of gates.
    """
    alphabet = gate_alphabet(n)
    target = t_target(n)
    start = basis_state(n)
    beam = start[None, :]
    words = [()]
    seen = {_phase_keys(beam)[0].tobytes()}
    best_word, best_fid = (), float(abs(np.vdot(target, start)) ** 2)
    nodes = 0
    while nodes < node_cap and len(beam):
        take = min(len(beam), node_cap - nodes)
        beam, words = beam[:take], words[:take]
        nodes += take
        children = np.stack([simulate(Circuit(n, (g,)), beam) for g in alphabet], axis=1)
        children = children.reshape(-1, beam.shape[1])
        child_words = [w + (gi,) for w in words for gi in range(len(alphabet))]
        keys = _phase_keys(children)
        fresh = []
        for i, key in enumerate(keys):
            kb = key.tobytes()
            if kb not in seen:
                seen.add(kb)
                fresh.append(i)
        if not fresh:
            break
        fresh = np.asarray(fresh)
        scores = np.abs(children[fresh] @ target.conj()) ** 2
        order = np.lexsort((fresh, -np.round(scores, 12)))[:beam_width]
        if scores[order[0]] > best_fid:
            best_fid = float(scores[order[0]])
            best_word = child_words[fresh[order[0]]]
        beam = children[fresh[order]]
        words = [child_words[i] for i in fresh[order]]
    return [alphabet[i] for i in best_word], best_fid, nodes


# ------------------------------------------------------------- lattice stage


def _moves(n: int):
    rows, inverse = [], []
    for q in range(n):
        rows.append((MOVE_S, q, 0, 0))
        inverse.append([Gate(K.S, (q,))] * 3)
    for q in range(n):
        rows.append((MOVE_SDG, q, 0, 0))
        inverse.append([Gate(K.S, (q,))])
    for q in range(n):
        rows.append((MOVE_H, q, 0, 0))
        inverse.append([Gate(K.H, (q,))])
    for c in range(n):
        for t in range(n):
            if c != t:
                rows.append((MOVE_CX, c, t, 0))
                inverse.append([Gate(K.CX, (c, t))])
    for t in range(n):
        rest = [q for q in range(n) if q != t]
        for a, b in itertools.combinations(rest, 2):
            rows.append((MOVE_CCX, a, b, t))
            inverse.append([Gate(K.CCX, (a, b, t))])
    return np.array(rows, dtype=np.int64), inverse


def lattice_fidelity(p: complex, q: complex, k: int) -> float:
    return abs(p + np.conj(_W) * q) ** 2 / 2 ** (k + 1)


def target_candidates(k: int, min_fidelity: float, limit: int):
    """Best ``(fidelity, p, q)`` with ``|p|^2 + |q|^2 <= 2**k``, fidelity > min.

    ``p`` is taken up to multiplication by a unit (first quadrant) since a
    common unit factor does not change the state.
    """
    N = 1 << k
    r = isqrt(N)
    g = np.arange(-r, r + 1)
    re, im = np.meshgrid(g, g, indexing="ij")
    p = (re + 1j * im).ravel()
    p = p[(p.real > 0) & (p.imag >= 0) & (np.abs(p) ** 2 <= N)]
    room = N - np.abs(p) ** 2
    centre = _W * p * np.sqrt(room) / np.abs(p)
    shrunk = centre * np.maximum(np.abs(centre) - 0.75, 0) / np.maximum(np.abs(centre), 1e-12)
    best = {}
    for c in (centre, shrunk):
        base = np.round(c.real) + 1j * np.round(c.imag)
        for dr in (-1, 0, 1):
            for di in (-1, 0, 1):
                q = base + dr + 1j * di
                f = np.abs(p + np.conj(_W) * q) ** 2 / (2 * N)
                ok = (np.abs(q) ** 2 <= room) & (f > min_fidelity)
                for pi, qi, fi in zip(p[ok], q[ok], f[ok]):
                    key = (int(pi.real), int(pi.imag), int(qi.real), int(qi.imag))
                    best[key] = float(fi)
    ranked = sorted(best.items(), key=lambda kv: (-round(kv[1], 12), kv[0]))
    return [(f, complex(a, b), complex(c, d)) for (a, b, c, d), f in ranked[:limit]]


def _two_gaussians(r: int):
    """Gaussian integers ``g1, g2`` with ``|g1|^2 + |g2|^2 = r``."""
    for a in range(isqrt(r), -1, -1):
        for b in range(min(a, isqrt(r - a * a)), -1, -1):
            rest = r - a * a - b * b
            for c in range(isqrt(rest), -1, -1):
                d2 = rest - c * c
                d = isqrt(d2)
                if d * d == d2:
                    return (a, b), (c, d)
    raise AssertionError("four-square decomposition must exist")


def target_vector(p: complex, q: complex, k: int, n: int) -> np.ndarray:
    """Exact unit vector with ``p`` on |0..0>, ``q`` on |10..0>, leakage on |0..01>, |0..10>."""
    v = np.zeros((1 << n, 2), dtype=np.int64)
    v[0] = int(p.real), int(p.imag)
    v[1 << (n - 1)] = int(q.real), int(q.imag)
    rest = (1 << k) - int(v[0] @ v[0]) - int(v[1 << (n - 1)] @ v[1 << (n - 1)])
    if rest < 0:
        raise ValueError(f"|p|^2 + |q|^2 exceeds 2**{k}")
    g1, g2 = _two_gaussians(rest)
    v[1] = g1
    v[2] = g2
    return v


def reduce_to_basis(v: np.ndarray, k: int, n: int, node_cap: int):
    """Best-first search (on denominator exponent) from ``v / (1+i)**k`` to a basis state.

    Returns ``(path, basis_index, nodes)``; ``path`` is None when the cap is hit.
    """
    moves, _ = _moves(n)
    v, k = kernels._reduce_and_normalize_numpy(np.asarray(v, dtype=np.int64), k)
    start = (v.tobytes(), k)
    parent = {start: None}
    counter = itertools.count()
    heap = [(k, next(counter), start, v)]
    nodes = 0
    while heap and nodes < node_cap:
        ck, _, key, cur = heapq.heappop(heap)
        nodes += 1
        if ck == 0:
            path = []
            while parent[key] is not None:
                key, m = parent[key]
                path.append(m)
            index = int(np.flatnonzero(cur[:, 0] | cur[:, 1])[0])
            return path[::-1], index, nodes
        children, ks = kernels.lattice_children(cur, ck, moves, n)
        for m in range(len(ks)):
            child = children[m]
            ckey = (child.tobytes(), int(ks[m]))
            if ckey not in parent:
                parent[ckey] = (key, m)
                heapq.heappush(heap, (int(ks[m]), next(counter), ckey, child))
    return None, None, nodes


def word_from_reduction(path, basis_index: int, n: int) -> list[Gate]:
    """Forward word preparing the reduced target from |0..0>."""
    _, inverse = _moves(n)
    word = []
    for q in range(n):
        if (basis_index >> (n - 1 - q)) & 1:
            # X = H S S H
            word += [Gate(K.H, (q,)), Gate(K.S, (q,)), Gate(K.S, (q,)), Gate(K.H, (q,))]
    for m in reversed(path):
        word += inverse[m]
    return word


def synthesize_t_state(
    epsilon: float,
    work_qubits: int = 3,
    node_cap: int = 10**6,
    strategy: str = "lattice",
    beam_width: int = 64,
) -> SynthesisResult:
    """Find a word preparing |T>|0..0> with fidelity >= 1 - epsilon if possible.

    A result below the target is still returned (check ``target_reached``).
    ``strategy="beam"`` spends the whole budget on the overlap-scored beam.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie strictly between 0 and 1")
    if work_qubits < 3:
        raise ValueError("need at least 3 work qubits")
    if node_cap < 1:
        raise ValueError("node_cap must be positive")
    if strategy not in ("lattice", "beam"):
        raise ValueError(f"unknown strategy {strategy!r}")
    n = work_qubits
    target = 1 - epsilon

    warm = node_cap if strategy == "beam" else min(node_cap, WARM_START_NODES)
    word, best, nodes = overlap_beam_search(n, warm, beam_width)
    best_k = None

    if strategy == "lattice":
        for k in range(1, MAX_EXPONENT + 1):
            if best >= target or nodes >= node_cap:
                break
            for _, p, q in target_candidates(k, best, TARGETS_PER_LEVEL):
                budget = min(node_cap - nodes, NODES_PER_TARGET)
                if budget <= 0:
                    break
                path, index, used = reduce_to_basis(target_vector(p, q, k, n), k, n, budget)
                nodes += used
                if path is None:
                    log.debug("k=%d target p=%s q=%s not reduced in %d nodes", k, p, q, used)
                    continue
                cand = word_from_reduction(path, index, n)
                fid = word_fidelity(Circuit(n, cand))
                if fid > best:
                    word, best, best_k = cand, fid, k
                break

    circuit = Circuit(n, word)
    achieved = word_fidelity(circuit)
    exact = _exact_from_circuit(circuit) if best_k is not None else None
    return SynthesisResult(circuit, achieved, nodes, target, exact, best_k)


def _exact_from_circuit(circuit: Circuit) -> float:
    """Closed-form fidelity from the exact lattice image of |0..0> under the word."""
    n = circuit.n_qubits
    moves, _ = _moves(n)
    index = {}
    for i, (op, a, b, c) in enumerate(moves):
        index.setdefault((int(op), int(a), int(b), int(c)), i)
    v = np.zeros((1 << n, 2), dtype=np.int64)
    v[0, 0] = 1
    k = 0
    for g in circuit.gates:
        if g.kind is K.S:
            row = (MOVE_S, g.qubits[0], 0, 0)
        elif g.kind is K.H:
            row = (MOVE_H, g.qubits[0], 0, 0)
        elif g.kind is K.CX:
            row = (MOVE_CX, *g.qubits, 0)
        else:
            row = (MOVE_CCX, *g.qubits)
        one = moves[index[row]][None, :]
        children, ks = kernels.lattice_children_numpy(v, k, one, n)
        v, k = children[0], int(ks[0])
    p = complex(*v[0])
    q = complex(*v[1 << (n - 1)])
    return lattice_fidelity(p, q, k)

"""Hot inner loops, each with a numba and a pure-numpy implementation.

``apply_matrix`` applies a small dense gate to a batch of statevectors.
``lattice_children`` expands one exact Gaussian-integer state by every move of
the |T> synthesis search.  The public names are bound to the numba variant
unless ``CVCAT_DISABLE_NUMBA`` is set (see ``cvcat._jit``).

Index convention: qubit 0 is the most significant bit of a basis index, and the
first listed qubit of a gate is the most significant bit of the gate's local
matrix index.
"""

import numpy as np

from ._jit import USE_NUMBA, njit

# lattice move opcodes
MOVE_S, MOVE_SDG, MOVE_H, MOVE_CX, MOVE_CCX = 0, 1, 2, 3, 4


def apply_matrix_numpy(states, mat, qubits, n):
    """Apply ``mat`` on ``qubits`` to every row of ``states`` (shape ``(B, 2**n)``)."""
    qubits = [int(q) for q in qubits]
    k = len(qubits)
    batch = states.shape[0]
    t = states.reshape((batch,) + (2,) * n)
    src = [1 + q for q in qubits]
    dst = list(range(n + 1 - k, n + 1))
    t = np.moveaxis(t, src, dst)
    shape = t.shape
    t = (t.reshape(-1, 1 << k) @ mat.T).reshape(shape)
    return np.ascontiguousarray(np.moveaxis(t, dst, src)).reshape(batch, -1)


@njit(cache=True)
def apply_matrix_numba(states, mat, qubits, n):
    batch, dim = states.shape
    k = qubits.shape[0]
    dk = 1 << k
    masks = np.empty(k, np.int64)
    allmask = 0
    for t in range(k):
        masks[t] = 1 << (n - 1 - qubits[t])
        allmask |= masks[t]
    offs = np.zeros(dk, np.int64)
    for j in range(dk):
        o = 0
        for t in range(k):
            if (j >> (k - 1 - t)) & 1:
                o |= masks[t]
        offs[j] = o
    out = np.empty_like(states)
    buf = np.empty(dk, np.complex128)
    for b in range(batch):
        for base in range(dim):
            if base & allmask:
                continue
            for c in range(dk):
                buf[c] = states[b, base + offs[c]]
            for r in range(dk):
                acc = 0j
                for c in range(dk):
                    acc += mat[r, c] * buf[c]
                out[b, base + offs[r]] = acc
    return out


def _reduce_and_normalize_numpy(v, k):
    while k > 0 and not np.any((v[:, 0] + v[:, 1]) & 1):
        v = np.stack([(v[:, 0] + v[:, 1]) // 2, (v[:, 1] - v[:, 0]) // 2], axis=1)
        k -= 1
    nz = np.flatnonzero(v[:, 0] | v[:, 1])
    if nz.size:
        for _ in range(4):
            a, b = v[nz[0]]
            if a > 0 and b >= 0:
                break
            v = np.stack([-v[:, 1], v[:, 0]], axis=1)
    return v, k


def lattice_children_numpy(v, k, moves, n):
    """Apply every move to the exact state ``v / (1+i)**k``.

    ``v`` is an ``(2**n, 2)`` int64 array of Gaussian integers (re, im).  Each
    child is reduced to its least denominator exponent and multiplied by the
    power of i that makes its first nonzero entry lie in the quadrant
    ``re > 0, im >= 0``, so equal states up to a unit have equal arrays.
    """
    dim = 1 << n
    idx = np.arange(dim)
    out = np.empty((moves.shape[0], dim, 2), np.int64)
    ks = np.empty(moves.shape[0], np.int64)
    for m, (op, a, b, c) in enumerate(moves):
        ck = k
        if op == MOVE_S or op == MOVE_SDG:
            sel = ((idx >> (n - 1 - a)) & 1).astype(bool)
            w = v.copy()
            if op == MOVE_S:
                w[sel] = np.stack([-v[sel, 1], v[sel, 0]], axis=1)
            else:
                w[sel] = np.stack([v[sel, 1], -v[sel, 0]], axis=1)
        elif op == MOVE_H:
            mask = 1 << (n - 1 - a)
            lo = idx[(idx & mask) == 0]
            w = np.empty_like(v)
            w[lo] = v[lo] + v[lo | mask]
            w[lo | mask] = v[lo] - v[lo | mask]
            ck = k + 1
        elif op == MOVE_CX:
            ctl = (idx >> (n - 1 - a)) & 1
            dest = idx ^ (ctl << (n - 1 - b))
            w = np.empty_like(v)
            w[dest] = v
        else:
            ctl = ((idx >> (n - 1 - a)) & 1) & ((idx >> (n - 1 - b)) & 1)
            dest = idx ^ (ctl << (n - 1 - c))
            w = np.empty_like(v)
            w[dest] = v
        w, ck = _reduce_and_normalize_numpy(w, ck)
        out[m] = w
        ks[m] = ck
    return out, ks


@njit(cache=True)
def lattice_children_numba(v, k, moves, n):
    dim = 1 << n
    nm = moves.shape[0]
    out = np.empty((nm, dim, 2), np.int64)
    ks = np.empty(nm, np.int64)
    w = np.empty((dim, 2), np.int64)
    for m in range(nm):
        op = moves[m, 0]
        a = moves[m, 1]
        b = moves[m, 2]
        c = moves[m, 3]
        ck = k
        if op == MOVE_S or op == MOVE_SDG:
            for x in range(dim):
                if (x >> (n - 1 - a)) & 1:
                    if op == MOVE_S:
                        w[x, 0] = -v[x, 1]
                        w[x, 1] = v[x, 0]
                    else:
                        w[x, 0] = v[x, 1]
                        w[x, 1] = -v[x, 0]
                else:
                    w[x, 0] = v[x, 0]
                    w[x, 1] = v[x, 1]
        elif op == MOVE_H:
            mask = 1 << (n - 1 - a)
            for x in range(dim):
                if x & mask == 0:
                    y = x | mask
                    w[x, 0] = v[x, 0] + v[y, 0]
                    w[x, 1] = v[x, 1] + v[y, 1]
                    w[y, 0] = v[x, 0] - v[y, 0]
                    w[y, 1] = v[x, 1] - v[y, 1]
            ck = k + 1
        elif op == MOVE_CX:
            for x in range(dim):
                d = x ^ (((x >> (n - 1 - a)) & 1) << (n - 1 - b))
                w[d, 0] = v[x, 0]
                w[d, 1] = v[x, 1]
        else:
            for x in range(dim):
                ctl = ((x >> (n - 1 - a)) & 1) & ((x >> (n - 1 - b)) & 1)
                d = x ^ (ctl << (n - 1 - c))
                w[d, 0] = v[x, 0]
                w[d, 1] = v[x, 1]
        while ck > 0:
            odd = False
            for x in range(dim):
                if (w[x, 0] + w[x, 1]) & 1:
                    odd = True
                    break
            if odd:
                break
            for x in range(dim):
                re = w[x, 0]
                im = w[x, 1]
                w[x, 0] = (re + im) // 2
                w[x, 1] = (im - re) // 2
            ck -= 1
        first = -1
        for x in range(dim):
            if w[x, 0] != 0 or w[x, 1] != 0:
                first = x
                break
        if first >= 0:
            for _ in range(4):
                if w[first, 0] > 0 and w[first, 1] >= 0:
                    break
                for x in range(dim):
                    re = w[x, 0]
                    w[x, 0] = -w[x, 1]
                    w[x, 1] = re
        for x in range(dim):
            out[m, x, 0] = w[x, 0]
            out[m, x, 1] = w[x, 1]
        ks[m] = ck
    return out, ks


if USE_NUMBA:
    _apply = apply_matrix_numba
    lattice_children = lattice_children_numba
else:
    _apply = apply_matrix_numpy
    lattice_children = lattice_children_numpy


def apply_matrix(states, mat, qubits, n):
    """Dispatching wrapper; ``states`` must be a 2-D complex128 batch."""
    return _apply(
        np.ascontiguousarray(states, dtype=np.complex128),
        np.ascontiguousarray(mat, dtype=np.complex128),
        np.asarray(qubits, dtype=np.int64),
        int(n),
    )

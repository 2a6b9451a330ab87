"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Also times a full |T> synthesis run under each backend; the backend is fixed
at import, so that part runs in a subprocess with CVCAT_DISABLE_NUMBA set.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from cvcat import kernels
from cvcat._jit import HAVE_NUMBA
from cvcat.ir import GateKind, gate_matrix
from cvcat.tsynth import _moves, target_vector


def best_of(fn, repeat):
    fn()  # warm-up, includes jit compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_apply(repeat):
    rng = np.random.default_rng(0)
    rows = []
    for n, batch in ((4, 1000), (10, 64), (14, 2)):
        states = rng.standard_normal((batch, 1 << n)) + 0j
        for kind, qubits in ((GateKind.CV, (0, n - 1)), (GateKind.CCX, (n - 1, 0, 1))):
            mat = gate_matrix(kind)
            q = np.array(qubits, dtype=np.int64)
            a = kernels.apply_matrix_numpy(states, mat, q, n)
            b = kernels.apply_matrix_numba(states, mat, q, n)
            assert np.allclose(a, b)
            t_np = best_of(lambda: kernels.apply_matrix_numpy(states, mat, q, n), repeat)
            t_nb = best_of(lambda: kernels.apply_matrix_numba(states, mat, q, n), repeat)
            rows.append((f"apply {kind.value} n={n} batch={batch}", t_np, t_nb))
    return rows


def bench_lattice(repeat):
    rows = []
    for n in (3, 4):
        moves, _ = _moves(n)
        v = target_vector(-11 - 3j, -5 - 10j, 8, n)
        a = kernels.lattice_children_numpy(v, 8, moves, n)
        b = kernels.lattice_children_numba(v, 8, moves, n)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])

        def loop(fn):
            for _ in range(200):
                fn(v, 8, moves, n)

        t_np = best_of(lambda: loop(kernels.lattice_children_numpy), repeat)
        t_nb = best_of(lambda: loop(kernels.lattice_children_numba), repeat)
        rows.append((f"lattice_children x200 n={n}", t_np, t_nb))
    return rows


def bench_synthesis():
    code = (
        "import time; from cvcat.tsynth import synthesize_t_state as s; "
        "t=time.perf_counter(); r=s(0.01); print(time.perf_counter()-t, r.nodes_explored)"
    )
    out = {}
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, CVCAT_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True)
        secs, nodes = res.stdout.split()
        out[label] = (float(secs), int(nodes))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-synthesis", action="store_true")
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba not importable: the 'numba' column runs the plain python loops")
    print(f"{'case':<36} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for name, t_np, t_nb in bench_apply(args.repeat) + bench_lattice(args.repeat):
        print(f"{name:<36} {t_np:>10.5f} {t_nb:>10.5f} {t_np / t_nb:>8.2f}")
    if not args.skip_synthesis:
        res = bench_synthesis()
        for label, (secs, nodes) in res.items():
            print(f"synthesize_t_state(0.01) [{label}]: {secs:.2f} s, {nodes} nodes")


if __name__ == "__main__":
    main()

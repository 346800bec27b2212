"""Benchmark the compiled RK4 kernel against the pure-Python reference.

Both backends receive identical CSR arrays; outputs are checked for
bit-identity before timing. Run from the repository root:

    python3 benchmarks/benchmark_solver.py [--count 200] [--n 12]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from argufact._kernels import reference
from argufact.axioms import generate_random_qbaf
from argufact.semantics import Semantics, SolverParams, _adjacency

try:
    from argufact._kernels import _rk4 as compiled
except ImportError:
    compiled = None

SEM_CODE = {Semantics.QE: 0, Semantics.DFQUAD: 1, Semantics.EULER: 2}


def make_problem(seed: int, n: int):
    qbaf = generate_random_qbaf(seed, n, 0.35, acyclic=seed % 2 == 0)
    ids = tuple(sorted(qbaf.ids))
    index = {a: i for i, a in enumerate(ids)}
    base = np.array([qbaf.argument(a).base_score for a in ids], dtype=np.float64)
    return (base, *_adjacency(qbaf, ids, index))


def run_backend(backend, problems, params: SolverParams, semantics: Semantics):
    code = SEM_CODE[semantics]
    max_steps = int(params.max_time / params.step + 1e-9)
    outputs = []
    start = time.perf_counter()
    for base, sup_ptr, sup_idx, att_ptr, att_idx in problems:
        traj = np.empty((max_steps + 1, base.shape[0]), dtype=np.float64)
        rows, converged, max_clamp = backend.integrate(
            base, sup_ptr, sup_idx, att_ptr, att_idx, code,
            params.step, params.epsilon, max_steps, traj,
        )
        outputs.append((traj[:rows].copy(), converged, max_clamp))
    elapsed = time.perf_counter() - start
    return elapsed, outputs


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=200, help="graphs per semantics (default: 200)")
    parser.add_argument("--n", type=int, default=12, help="arguments per graph (default: 12)")
    parser.add_argument("--repeats", type=int, default=3, help="timing repeats (default: 3)")
    args = parser.parse_args()

    if compiled is None:
        print("compiled kernel unavailable; build the extension first (pip install -e .)")
        return 1

    params = SolverParams()
    problems = [make_problem(seed, args.n) for seed in range(args.count)]

    print(f"{args.count} graphs x {len(SEM_CODE)} semantics, n={args.n}, "
          f"step={params.step}, epsilon={params.epsilon}, max_time={params.max_time}")

    total = args.count * len(SEM_CODE)
    for name, backend in (("compiled", compiled), ("python", reference)):
        times = []
        for _ in range(args.repeats):
            elapsed = 0.0
            for sem in SEM_CODE:
                t, _ = run_backend(backend, problems, params, sem)
                elapsed += t
            times.append(elapsed)
        best = min(times)
        print(f"{name:>9}: best {best * 1e3:9.1f} ms total, "
              f"{best / total * 1e3:7.3f} ms/solve "
              f"(median {statistics.median(times) * 1e3:.1f} ms)")
        if name == "compiled":
            compiled_best = best

    print(f"speedup: {best / compiled_best:.1f}x")

    # outputs must agree bit for bit, trajectories included
    mismatches = 0
    for sem in SEM_CODE:
        _, ref_out = run_backend(reference, problems, params, sem)
        _, cmp_out = run_backend(compiled, problems, params, sem)
        for (rt, rc, rm), (ct, cc, cm) in zip(ref_out, cmp_out):
            if rc != cc or rm != cm or rt.shape != ct.shape or not np.array_equal(rt, ct):
                mismatches += 1
    print(f"bit-identity check: {'OK' if mismatches == 0 else f'{mismatches} MISMATCHES'} "
          f"({total} runs)")
    return 0 if mismatches == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())

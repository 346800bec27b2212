import os
import subprocess
import sys

import numpy as np
import pytest

from argufact._kernels import BACKEND, reference
from argufact.axioms import generate_random_qbaf
from argufact.semantics import SolverParams, _adjacency

compiled = pytest.importorskip("argufact._kernels._rk4", reason="compiled kernel not built")


def _problem(seed, n=8, density=0.4, acyclic=False):
    q = generate_random_qbaf(seed, n, density, acyclic=acyclic)
    ids = tuple(sorted(q.ids))
    index = {a: i for i, a in enumerate(ids)}
    base = np.array([q.argument(a).base_score for a in ids], dtype=np.float64)
    return (base, *_adjacency(q, ids, index))


def _run(backend, problem, code, params):
    base, sup_ptr, sup_idx, att_ptr, att_idx = problem
    max_steps = int(params.max_time / params.step + 1e-9)
    traj = np.empty((max_steps + 1, base.shape[0]))
    rows, converged, max_clamp = backend.integrate(
        base, sup_ptr, sup_idx, att_ptr, att_idx, code,
        params.step, params.epsilon, max_steps, traj,
    )
    return traj[:rows].copy(), converged, max_clamp


def test_backend_reports_compiled():
    expected = "python" if os.environ.get("ARGUFACT_PURE_PYTHON") else "compiled"
    assert BACKEND == expected


@pytest.mark.parametrize("code", [0, 1, 2])
def test_backends_bit_identical(code):
    params = SolverParams()
    for seed in range(40):
        problem = _problem(seed, acyclic=seed % 2 == 0)
        rt, rc, rm = _run(reference, problem, code, params)
        ct, cc, cm = _run(compiled, problem, code, params)
        assert rc == cc
        assert rm == cm
        assert rt.shape == ct.shape
        assert np.array_equal(rt, ct)


def test_env_var_forces_python_backend():
    env = dict(os.environ, ARGUFACT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from argufact._kernels import BACKEND; print(BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"


def test_python_backend_produces_same_solve_results():
    # end to end through solve() in a forced pure-python subprocess
    env = dict(os.environ, ARGUFACT_PURE_PYTHON="1")
    script = (
        "from argufact.qbaf import Argument, build_qbaf\n"
        "from argufact.semantics import solve\n"
        "q = build_qbaf([Argument('claim', base_score=0.5), Argument('E1', base_score=0.1),"
        " Argument('E2', base_score=0.5), Argument('E3', base_score=0.9)],"
        " attacks=[('E3', 'claim'), ('E3', 'E1')],"
        " supports=[('E1', 'claim'), ('E2', 'claim'), ('E2', 'E1')])\n"
        "r = solve(q)\n"
        "print(repr(r.strength('claim')), repr(r.strength('E1')), r.steps)\n"
    )
    out = subprocess.run([sys.executable, "-c", script],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.split() == ["0.4561658617950185", "0.0864354860269248", "42"]

"""Gradual semantics and the continuous strength solver.

Strengths start at the base scores and evolve under
``dsigma/dt = target(a, sigma) - sigma(a)`` until the largest
derivative falls below ``epsilon`` or ``max_time`` is reached. The
target function is selected by the semantics: quadratic energy (qe),
product aggregation (dfquad), or exponential (euler).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .errors import InvalidParams, RangeViolation, UnknownId
from .qbaf import QBAF


class Semantics(str, Enum):
    QE = "qe"
    DFQUAD = "dfquad"
    EULER = "euler"


_KERNEL_CODE = {
    Semantics.QE: _kernels.QE,
    Semantics.DFQUAD: _kernels.DFQUAD,
    Semantics.EULER: _kernels.EULER,
}


def _coerce_semantics(value) -> Semantics:
    try:
        return Semantics(value)
    except ValueError:
        raise InvalidParams(f"unknown semantics {value!r}") from None


@dataclass(frozen=True)
class SolverParams:
    """RK4 integration parameters."""

    step: float = 0.1
    epsilon: float = 0.001
    max_time: float = 100.0

    def __post_init__(self):
        for name in ("step", "epsilon", "max_time"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InvalidParams(f"{name} must be a number, got {value!r}")
            if not math.isfinite(value):
                raise InvalidParams(f"{name} must be finite, got {value!r}")
        if self.step <= 0:
            raise InvalidParams(f"step must be positive, got {self.step}")
        if self.epsilon <= 0:
            raise InvalidParams(f"epsilon must be positive, got {self.epsilon}")
        if self.max_time < self.step:
            raise InvalidParams(
                f"max_time must be at least one step, got {self.max_time} < {self.step}"
            )


def _check_unit(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise RangeViolation(f"{name} must be a number, got {value!r}")
    if not 0.0 <= value <= 1.0:
        raise RangeViolation(f"{name} must lie in [0, 1], got {value!r}")
    return float(value)


def energy(qbaf: QBAF, strengths: Mapping[str, float], arg_id: str) -> float:
    """Signed aggregate: supporter strengths minus attacker strengths."""
    qbaf.argument(arg_id)
    try:
        total = 0.0
        for b in qbaf.supporters(arg_id):
            total += strengths[b]
        for b in qbaf.attackers(arg_id):
            total -= strengths[b]
    except KeyError as exc:
        raise UnknownId(f"no strength given for neighbor {exc.args[0]!r}") from None
    return total


def qe_target(base: float, energy: float) -> float:
    """Quadratic-energy target: base shifted by the saturating h(energy)."""
    b = _check_unit("base", base)
    e = float(energy)
    if e > 0.0:
        return b + (1.0 - b) * (e * e / (1.0 + e * e))
    if e < 0.0:
        return b - b * (e * e / (1.0 + e * e))
    return b


def dfquad_target(
    base: float,
    attacker_strengths: Iterable[float],
    supporter_strengths: Iterable[float],
) -> float:
    """Product-aggregation target over the two neighbor sets."""
    b = _check_unit("base", base)
    pa = 1.0
    for s in attacker_strengths:
        pa *= 1.0 - _check_unit("attacker strength", s)
    ps = 1.0
    for s in supporter_strengths:
        ps *= 1.0 - _check_unit("supporter strength", s)
    va = 1.0 - pa
    vs = 1.0 - ps
    if va >= vs:
        return b - b * (va - vs)
    return b + (1.0 - b) * (vs - va)


def euler_target(base: float, energy: float) -> float:
    """Exponential target; returns base exactly at zero energy."""
    b = _check_unit("base", base)
    e = float(energy)
    if e == 0.0:
        return b
    return 1.0 - (1.0 - b * b) / (1.0 + b * math.exp(e))


@dataclass(frozen=True, eq=False)
class SolveResult:
    """Final strengths plus the sampled trajectory that produced them.

    ``steps`` counts trajectory samples; row 0 holds the base scores,
    so a run that converges without stepping reports steps == 1.
    """

    ids: tuple[str, ...]
    strengths: dict[str, float]
    converged: bool
    steps: int
    trajectory: np.ndarray
    step_size: float
    max_clamp: float

    def strength(self, arg_id: str) -> float:
        try:
            return self.strengths[arg_id]
        except KeyError:
            raise UnknownId(f"unknown argument id {arg_id!r}") from None

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.steps) * self.step_size

    def to_dict(self) -> dict:
        return {
            "strengths": {a: self.strengths[a] for a in self.ids},
            "converged": self.converged,
            "steps": self.steps,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def trajectory_csv(result: SolveResult) -> str:
    """CSV export: header ``t,<ids sorted>``, one row per sample."""
    lines = ["t," + ",".join(result.ids)]
    for row_no in range(result.steps):
        t = row_no * result.step_size
        cells = [repr(float(t))]
        for col in range(len(result.ids)):
            cells.append(repr(float(result.trajectory[row_no, col])))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _adjacency(qbaf: QBAF, ids: tuple[str, ...], index: dict[str, int]):
    sup_ptr = np.zeros(len(ids) + 1, dtype=np.int32)
    att_ptr = np.zeros(len(ids) + 1, dtype=np.int32)
    sup_cols: list[int] = []
    att_cols: list[int] = []
    for i, arg_id in enumerate(ids):
        for b in qbaf.supporters(arg_id):
            sup_cols.append(index[b])
        sup_ptr[i + 1] = len(sup_cols)
        for b in qbaf.attackers(arg_id):
            att_cols.append(index[b])
        att_ptr[i + 1] = len(att_cols)
    sup_idx = np.asarray(sup_cols, dtype=np.int32)
    att_idx = np.asarray(att_cols, dtype=np.int32)
    return sup_ptr, sup_idx, att_ptr, att_idx


def solve(qbaf: QBAF, semantics=Semantics.QE, params: SolverParams | None = None) -> SolveResult:
    """Integrate the strength dynamics of ``qbaf`` to (near) fixed point."""
    sem = _coerce_semantics(semantics)
    if params is None:
        params = SolverParams()

    ids = qbaf.ids
    index = {a: i for i, a in enumerate(ids)}
    n = len(ids)
    base = np.array([qbaf.argument(a).base_score for a in ids], dtype=np.float64)
    sup_ptr, sup_idx, att_ptr, att_idx = _adjacency(qbaf, ids, index)

    max_steps = int(params.max_time / params.step + 1e-9)
    traj = np.zeros((max_steps + 1, n), dtype=np.float64)
    rows, converged, max_clamp = _kernels.integrate(
        base,
        sup_ptr,
        sup_idx,
        att_ptr,
        att_idx,
        _KERNEL_CODE[sem],
        params.step,
        params.epsilon,
        max_steps,
        traj,
    )

    trajectory = traj[:rows].copy()
    trajectory.setflags(write=False)
    strengths = {a: float(trajectory[rows - 1, i]) for i, a in enumerate(ids)}
    return SolveResult(
        ids=ids,
        strengths=strengths,
        converged=bool(converged),
        steps=int(rows),
        trajectory=trajectory,
        step_size=float(params.step),
        max_clamp=float(max_clamp),
    )

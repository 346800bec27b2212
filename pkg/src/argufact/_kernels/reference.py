"""Pure-Python integration kernel.

Reference implementation of the classical RK4 loop used to drive
argument strengths to their fixed point. The compiled kernel in
``_rk4.pyx`` mirrors this code operation for operation so that both
backends produce bit-identical trajectories; keep them in sync.

Semantics codes: 0 = quadratic energy, 1 = product aggregation
(Df-QuAD style), 2 = exponential (Euler style).
"""

from __future__ import annotations

from math import exp

QE = 0
DFQUAD = 1
EULER = 2


def _rhs(n, base, sup_ptr, sup_idx, att_ptr, att_idx, semantics, s, cs, k):
    # Neighbor influences are read from a clipped copy of the state so
    # mid-step RK4 excursions outside [0, 1] cannot corrupt the targets;
    # the relaxation term uses the raw state.
    for i in range(n):
        x = s[i]
        cs[i] = 0.0 if x < 0.0 else (1.0 if x > 1.0 else x)
    for i in range(n):
        b = base[i]
        if semantics == DFQUAD:
            pa = 1.0
            for j in range(att_ptr[i], att_ptr[i + 1]):
                pa *= 1.0 - cs[att_idx[j]]
            ps = 1.0
            for j in range(sup_ptr[i], sup_ptr[i + 1]):
                ps *= 1.0 - cs[sup_idx[j]]
            va = 1.0 - pa
            vs = 1.0 - ps
            if va >= vs:
                tgt = b - b * (va - vs)
            else:
                tgt = b + (1.0 - b) * (vs - va)
        else:
            ssup = 0.0
            for j in range(sup_ptr[i], sup_ptr[i + 1]):
                ssup += cs[sup_idx[j]]
            satt = 0.0
            for j in range(att_ptr[i], att_ptr[i + 1]):
                satt += cs[att_idx[j]]
            e = ssup - satt
            if semantics == QE:
                if e > 0.0:
                    tgt = b + (1.0 - b) * (e * e / (1.0 + e * e))
                elif e < 0.0:
                    tgt = b - b * (e * e / (1.0 + e * e))
                else:
                    tgt = b
            else:
                # Zero influence must return the base score exactly;
                # the closed form only does so up to rounding.
                if e == 0.0:
                    tgt = b
                else:
                    tgt = 1.0 - (1.0 - b * b) / (1.0 + b * exp(e))
        k[i] = tgt - s[i]


def integrate(base, sup_ptr, sup_idx, att_ptr, att_idx, semantics, delta, epsilon, max_steps, traj):
    """Fill ``traj`` with strength samples; row 0 is the base scores.

    Returns ``(rows, converged, max_clamp)`` where ``rows`` is the
    number of trajectory rows written. Convergence is checked before
    each step: the run stops once the largest time derivative falls
    below ``epsilon``, or after ``max_steps`` steps otherwise.
    """
    n = len(base)
    base = list(base)
    sup_ptr = list(sup_ptr)
    sup_idx = list(sup_idx)
    att_ptr = list(att_ptr)
    att_idx = list(att_idx)

    cur = base[:]
    for i in range(n):
        traj[0, i] = cur[i]

    k1 = [0.0] * n
    k2 = [0.0] * n
    k3 = [0.0] * n
    k4 = [0.0] * n
    stage = [0.0] * n
    cs = [0.0] * n

    half = delta * 0.5
    sixth = delta / 6.0
    steps_taken = 0
    converged = False
    max_clamp = 0.0

    while True:
        _rhs(n, base, sup_ptr, sup_idx, att_ptr, att_idx, semantics, cur, cs, k1)
        maxk = 0.0
        for i in range(n):
            a = k1[i] if k1[i] >= 0.0 else -k1[i]
            if a > maxk:
                maxk = a
        if maxk < epsilon:
            converged = True
            break
        if steps_taken >= max_steps:
            break

        for i in range(n):
            stage[i] = cur[i] + half * k1[i]
        _rhs(n, base, sup_ptr, sup_idx, att_ptr, att_idx, semantics, stage, cs, k2)
        for i in range(n):
            stage[i] = cur[i] + half * k2[i]
        _rhs(n, base, sup_ptr, sup_idx, att_ptr, att_idx, semantics, stage, cs, k3)
        for i in range(n):
            stage[i] = cur[i] + delta * k3[i]
        _rhs(n, base, sup_ptr, sup_idx, att_ptr, att_idx, semantics, stage, cs, k4)

        for i in range(n):
            x = cur[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            if x < 0.0:
                if -x > max_clamp:
                    max_clamp = -x
                x = 0.0
            elif x > 1.0:
                if x - 1.0 > max_clamp:
                    max_clamp = x - 1.0
                x = 1.0
            cur[i] = x
        steps_taken += 1
        for i in range(n):
            traj[steps_taken, i] = cur[i]

    return steps_taken + 1, converged, max_clamp

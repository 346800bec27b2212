# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled integration kernel.

Operation-for-operation twin of ``reference.py``; the two must stay in
sync so trajectories agree bit for bit across backends. The extension
is built with contraction disabled for exactly that reason.
"""

import numpy as np

from libc.math cimport exp

DEF QE = 0
DEF DFQUAD = 1
DEF EULER = 2


cdef void _rhs(Py_ssize_t n, const double[::1] base,
               const int[::1] sup_ptr, const int[::1] sup_idx,
               const int[::1] att_ptr, const int[::1] att_idx,
               int semantics, double[::1] s, double[::1] cs,
               double[::1] k) noexcept:
    cdef Py_ssize_t i, j
    cdef double x, b, pa, ps, va, vs, ssup, satt, e, tgt
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
                if e == 0.0:
                    tgt = b
                else:
                    tgt = 1.0 - (1.0 - b * b) / (1.0 + b * exp(e))
        k[i] = tgt - s[i]


def integrate(const double[::1] base,
              const int[::1] sup_ptr, const int[::1] sup_idx,
              const int[::1] att_ptr, const int[::1] att_idx,
              int semantics, double delta, double epsilon,
              int max_steps, double[:, ::1] traj):
    """Same contract as the reference kernel's ``integrate``."""
    cdef Py_ssize_t n = base.shape[0]
    cdef Py_ssize_t i

    work = np.empty((7, max(n, 1)), dtype=np.float64)
    cdef double[::1] k1 = work[0]
    cdef double[::1] k2 = work[1]
    cdef double[::1] k3 = work[2]
    cdef double[::1] k4 = work[3]
    cdef double[::1] stage = work[4]
    cdef double[::1] cs = work[5]
    cdef double[::1] cur = work[6]

    for i in range(n):
        cur[i] = base[i]
        traj[0, i] = cur[i]

    cdef double half = delta * 0.5
    cdef double sixth = delta / 6.0
    cdef int steps_taken = 0
    cdef bint converged = False
    cdef double max_clamp = 0.0
    cdef double maxk, a, x

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

"""Pure-numpy fixed-point kernels; restarts are batched as matrix columns."""

from __future__ import annotations

import numpy as np

MAX_ITER = 500
VALUE_TOL = 1e-12


def _phase(z: np.ndarray) -> np.ndarray:
    a = np.abs(z)
    out = np.zeros_like(z)
    np.divide(z, a, out=out, where=a > 0)
    return out


def _pnorm_cols(z: np.ndarray, p: float) -> np.ndarray:
    """Column-wise p-norms, max-factored for stability; p in (0, inf]."""
    a = np.abs(z)
    m = a.max(axis=0)
    if np.isinf(p):
        return m
    safe = np.where(m > 0, m, 1.0)
    return m * np.sum((a / safe) ** p, axis=0) ** (1.0 / p)


def _dual_cols(z: np.ndarray, ball_exp: float) -> np.ndarray:
    """Unit ball_exp-norm columns maximizing Re<col, z_col>, ball_exp in (1, 2]."""
    e = 1.0 / (ball_exp - 1.0)
    a = np.abs(z)
    m = a.max(axis=0, keepdims=True)
    empty = m[0] == 0
    safe = np.where(m > 0, m, 1.0)
    v = _phase(z) * (a / safe) ** e
    if np.any(empty):
        v[0, empty] = 1.0
    nrm = _pnorm_cols(v, ball_exp)
    return v / nrm


def omega_ascent(u, r, s, w0, max_iter=MAX_ITER, tol=VALUE_TOL):
    """Alternating dual-map ascent for sup |v^H U w| over B_r x B_s.

    u: (d, d) complex; r, s in (1, 2]; w0: (d, k) start columns.
    Returns (values, V, W, iters, converged) with per-column entries.
    """
    u = np.ascontiguousarray(u, dtype=np.complex128)
    w = np.asarray(w0, dtype=np.complex128)
    if w.ndim == 1:
        w = w[:, None]
    w = w / _pnorm_cols(w, s)
    uh = u.conj().T
    k = w.shape[1]
    vals = np.full(k, -1.0)
    iters = np.zeros(k, dtype=np.int64)
    conv = np.zeros(k, dtype=bool)
    v = np.zeros_like(w)
    active = np.ones(k, dtype=bool)
    for it in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        wa = w[:, idx]
        va = _dual_cols(u @ wa, r)
        y = uh @ va
        wa = _dual_cols(y, s)
        new_vals = np.abs(np.einsum("ij,ij->j", y.conj(), wa))
        v[:, idx] = va
        w[:, idx] = wa
        done = np.abs(new_vals - vals[idx]) < tol
        vals[idx] = new_vals
        iters[idx] = it
        conv[idx[done]] = True
        active[idx[done]] = False
        if not active.any():
            break
    return vals, v, w, iters, conv


def pq_ascent(u, p, q, phi0, max_iter=MAX_ITER, tol=VALUE_TOL):
    """Power-type ascent for sup ||U phi||_q / ||phi||_p.

    p in (1, inf], q in [1, inf); phi0: (d, k) start columns.  Tracks the
    best witnessed value per column (the iteration need not be monotone
    outside p <= 2 <= q).
    """
    u = np.ascontiguousarray(u, dtype=np.complex128)
    phi = np.asarray(phi0, dtype=np.complex128)
    if phi.ndim == 1:
        phi = phi[:, None]
    phi = phi / _pnorm_cols(phi, p)
    uh = u.conj().T
    k = phi.shape[1]
    q_exp = q - 1.0
    pull_exp = 0.0 if np.isinf(p) else 1.0 / (p - 1.0)
    best_vals = np.full(k, -1.0)
    best_phi = phi.copy()
    last_vals = np.full(k, -1.0)
    iters = np.zeros(k, dtype=np.int64)
    conv = np.zeros(k, dtype=bool)
    active = np.ones(k, dtype=bool)
    for it in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        pa = phi[:, idx]
        psi = u @ pa
        vals = _pnorm_cols(psi, q)
        improved = vals > best_vals[idx]
        best_vals[idx[improved]] = vals[improved]
        best_phi[:, idx[improved]] = pa[:, improved]
        # dual direction of the q-norm, then pull back through U^dag
        a = np.abs(psi)
        m = a.max(axis=0, keepdims=True)
        safe = np.where(m > 0, m, 1.0)
        g = _phase(psi) * (a / safe) ** q_exp
        z = uh @ g
        a = np.abs(z)
        m = a.max(axis=0, keepdims=True)
        safe = np.where(m > 0, m, 1.0)
        nxt = _phase(z) * (a / safe) ** pull_exp
        nxt = nxt / _pnorm_cols(nxt, p)
        phi[:, idx] = nxt
        done = np.abs(vals - last_vals[idx]) < tol
        last_vals[idx] = vals
        iters[idx] = it
        conv[idx[done]] = True
        active[idx[done]] = False
        if not active.any():
            break
    return best_vals, best_phi, iters, conv

"""Pure-python Jacobi eigensolver: the fallback backend.

Cyclic Jacobi with the round-robin (chess tournament) ordering: every
round rotates a maximal set of disjoint (p, q) planes at once, so each
round is a handful of vectorized numpy operations on index-gathered row
and column blocks instead of one python-level loop per rotation. Disjoint
plane rotations commute, which keeps this mathematically identical to
applying them one by one.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


class JacobiConvergenceError(RuntimeError):
    """Off-diagonal norm failed to reach the target within max_sweeps."""


@lru_cache(maxsize=None)
def _round_robin_schedule(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    players = list(range(n))
    if n % 2:
        players.append(-1)  # bye
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            x, y = players[i], players[m - 1 - i]
            if x != -1 and y != -1:
                ps.append(min(x, y))
                qs.append(max(x, y))
        rounds.append((np.asarray(ps, dtype=np.intp), np.asarray(qs, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(a: np.ndarray, tol: float = 1e-13, max_sweeps: int = 100):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.

    Sweeps until the off-diagonal Frobenius norm is <= tol * ||a||_F.
    Hermiticity is the caller's responsibility (no symmetrization here).
    """
    a = np.array(a, dtype=complex if np.iscomplexobj(a) else float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    v = np.eye(n, dtype=a.dtype)
    if n == 1:
        return a.real.diagonal().copy(), v

    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return np.zeros(n), v
    target = tol * norm
    schedule = _round_robin_schedule(n)

    # entries this small can never lift the off-norm above target, and
    # skipping them keeps tau = diff/(2r) finite
    floor = 1e-5 * target
    for _ in range(max_sweeps):
        if _off_norm(a) <= target:
            break
        for p, q in schedule:
            apq = a[p, q]
            r = np.abs(apq)
            active = r > floor
            if not np.any(active):
                continue
            r_safe = np.where(active, r, 1.0)
            tau = (a[q, q].real - a[p, p].real) / (2.0 * r_safe)
            t = np.sign(tau) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            t = np.where(np.sign(tau) == 0.0, 1.0 / (np.abs(tau) + np.sqrt(1.0 + tau * tau)), t)
            c = 1.0 / np.sqrt(1.0 + t * t)
            st = (t * c) * (apq / r_safe)  # rotation sine with the off-diagonal phase
            c = np.where(active, c, 1.0)
            st = np.where(active, st, 0.0)

            cols_p, cols_q = a[:, p].copy(), a[:, q]
            a[:, p] = c * cols_p - np.conj(st) * cols_q
            a[:, q] = st * cols_p + c * cols_q
            rows_p, rows_q = a[p, :].copy(), a[q, :]
            a[p, :] = c[:, None] * rows_p - st[:, None] * rows_q
            a[q, :] = np.conj(st)[:, None] * rows_p + c[:, None] * rows_q
            vcols_p, vcols_q = v[:, p].copy(), v[:, q]
            v[:, p] = c * vcols_p - np.conj(st) * vcols_q
            v[:, q] = st * vcols_p + c * vcols_q
            # The rotated pairs are zero analytically; make them exact.
            a[p, q] = 0.0
            a[q, p] = 0.0
    else:
        raise JacobiConvergenceError(
            f"jacobi failed to reach off-norm {target:.3e} in {max_sweeps} sweeps"
        )

    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]

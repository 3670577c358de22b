"""Backend selection for the hot eigensolver kernel.

The compiled extension ``nlcavity._jacobi`` (classic sequential cyclic
Jacobi in C) is preferred; when it is absent or was not built, the
vectorized pure-numpy implementation takes over with identical semantics:
eigenvalues ascending, orthonormal eigenvector columns, off-diagonal norm
driven below tol * ||a||_F.

``python -m nlcavity.kernels`` prints which backend is active;
``benchmarks/bench_jacobi.py`` times both against each other.
"""

from __future__ import annotations

import numpy as np

from . import _jacobi_py

try:
    from . import _jacobi as _compiled
except ImportError:  # extension not built: pure-python fallback
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "pure-python"


def _compiled_eigh(a: np.ndarray, tol: float, max_sweeps: int):
    n = a.shape[0]
    if np.iscomplexobj(a):
        work = np.array(a, dtype=np.complex128, order="C")
        v = np.eye(n, dtype=np.complex128, order="C")
        w = np.empty(n, dtype=np.float64)
        sweeps = _compiled.jacobi_eigh_complex(work, v, w, tol, max_sweeps)
    else:
        work = np.array(a, dtype=np.float64, order="C")
        v = np.eye(n, dtype=np.float64, order="C")
        w = np.empty(n, dtype=np.float64)
        sweeps = _compiled.jacobi_eigh_real(work, v, w, tol, max_sweeps)
    if sweeps < 0:
        raise _jacobi_py.JacobiConvergenceError(
            f"jacobi failed to converge in {max_sweeps} sweeps"
        )
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def jacobi_eigh(a: np.ndarray, tol: float = 1e-13, max_sweeps: int = 100):
    """Eigenvalues (ascending) and eigenvectors of a Hermitian/symmetric matrix."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if _compiled is not None:
        return _compiled_eigh(a, tol, max_sweeps)
    return _jacobi_py.jacobi_eigh(a, tol=tol, max_sweeps=max_sweeps)


if __name__ == "__main__":
    print(f"nlcavity eigensolver backend: {BACKEND}")

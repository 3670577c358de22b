"""The three entanglement measures.

- von Neumann entropy of the two-atom reduced matrix (equals the field
  entropy for the pure global state), through two routes: the rank-3
  closed form via the cubic solver, and a generic eigendecomposition.
- tangle of one atom against everything else: 2 [1 - Tr rho^2] of the
  2x2 single-atom matrix.
- Wootters concurrence of the two-atom matrix via the spin-flipped
  product, evaluated on the Hermitian sqrt(rho) rho~ sqrt(rho) form so
  the one Jacobi solver covers it.

Natural logarithms throughout, so the entropy of the rank-3 family tops
out at ln 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .cubic import solve_cubic, solve_quadratic
from .density import DensityMatrix

# Eigenvalues of a density matrix below this are treated as genuine
# negativity (an error) rather than roundoff.
_NEGATIVITY_FLOOR = -1e-10

_SYMMETRY_TOL = 1e-8

# sigma_y (x) sigma_y in the |ee>,|eg>,|ge>,|gg> product basis; real.
_SIGMA_YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


@dataclass
class MeasureSample:
    """One time point of a sweep; unselected measures stay None."""

    t: float
    entropy: float | None
    tangle: float | None
    concurrence: float | None
    trace_tail: float


def _as_matrix(m) -> np.ndarray:
    return m.matrix if isinstance(m, DensityMatrix) else np.asarray(m)


def hermitian_eigen(m, tol: float = 1e-13):
    """Ascending eigenvalues and orthonormal eigenvectors via cyclic Jacobi.

    Rejects inputs whose Hermiticity defect exceeds 1e-10 (relative to the
    largest entry); the symmetrized average is what gets decomposed.
    """
    a = _as_matrix(m)
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
    defect = float(np.max(np.abs(a - a.conj().T)))
    if defect > 1e-10 * scale:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
    a = 0.5 * (a + a.conj().T)
    return kernels.jacobi_eigh(a, tol=tol)


def _clamp_probabilities(w: np.ndarray) -> np.ndarray:
    if np.any(w < _NEGATIVITY_FLOOR):
        raise ValueError(f"density matrix eigenvalue below {_NEGATIVITY_FLOOR}: {w.min():.3e}")
    return np.clip(w, 0.0, 1.0)


def _entropy_of(w: np.ndarray) -> float:
    w = _clamp_probabilities(np.asarray(w, dtype=float))
    positive = w[w > 0.0]
    return float(-np.sum(positive * np.log(positive))) + 0.0  # kill -0.0


def entropy_generic(rho: DensityMatrix) -> float:
    """-sum lambda ln lambda over the full eigendecomposition (any dimension)."""
    w, _ = hermitian_eigen(rho)
    return _entropy_of(w)


def _rank3_eigenvalues(xi1: float, xi2: float, xi3: float) -> np.ndarray:
    """Roots of the rank-3 characteristic cubic, deflation-refined.

    Near a pure state two eigenvalues form a near-double root at zero where
    the trigonometric form alone is only ~1e-9 accurate; dividing out the
    well-separated largest root and solving the remaining quadratic brings
    the small pair down to roundoff, so the strict negativity floor stays
    meaningful.
    """
    mu = solve_cubic(xi1, xi2, xi3).mu
    big = max(mu, key=abs)
    if big == 0.0:
        return np.zeros(3)
    p = xi1 + big
    q = -xi3 / big
    try:
        small = solve_quadratic(1.0, p, q)
    except ValueError:
        # roundoff-level complex pair: collapse onto the vertex double root
        small = (-0.5 * p, -0.5 * p)
    return np.array([big, *small])


def entropy_cardano(rho4: DensityMatrix) -> float:
    """Entropy via the rank-3 closed form of the two-atom matrix.

    The antisymmetric one-flip state is never populated, so one eigenvalue
    is exactly zero and the remaining three come from a real cubic whose
    coefficients are short polynomials in the matrix entries. Requires the
    model symmetry (rho12 = rho13, rho22 = rho23 = rho33, rho24 = rho34);
    violations beyond 1e-8 are rejected.
    """
    m = _as_matrix(rho4)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    defect = max(
        abs(m[0, 1] - m[0, 2]),
        abs(m[1, 1] - m[2, 2]),
        abs(m[1, 2] - m[1, 1]),
        abs(m[1, 3] - m[2, 3]),
    )
    if defect > _SYMMETRY_TOL:
        raise ValueError(f"model symmetry violated (defect {defect:.3e})")

    r11, r22, r44 = m[0, 0].real, m[1, 1].real, m[3, 3].real
    r12, r14, r24 = m[0, 1], m[0, 3], m[1, 3]
    r21, r41, r42 = np.conj(r12), np.conj(r14), np.conj(r24)
    xi1 = -r11 - 2.0 * r22 - r44
    xi2 = (-2.0 * r12 * r21 - r14 * r41 - 2.0 * r24 * r42 + 2.0 * r22 * r44
           + r11 * (2.0 * r22 + r44)).real
    xi3 = (2.0 * (r14 * (r22 * r41 - r21 * r42)
                  + r12 * (r21 * r44 - r24 * r41)
                  + r11 * (r24 * r42 - r22 * r44))).real
    lam = np.append(_rank3_eigenvalues(xi1, xi2, xi3), 0.0)
    return _entropy_of(lam)


def tangle(rho2: DensityMatrix) -> float:
    """2 [1 - Tr rho^2] of the single-atom matrix; 0 pure, 1 maximally mixed."""
    m = _as_matrix(rho2)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    purity = float(np.sum(np.abs(m) ** 2))
    return min(1.0, max(0.0, 2.0 * (1.0 - purity)))


def concurrence(rho4: DensityMatrix) -> float:
    """Wootters concurrence of the two-atom matrix.

    Works on the Hermitian product sqrt(rho) rho~ sqrt(rho), whose
    eigenvalues equal those of rho rho~, so the plain Hermitian solver
    applies; lambda_j are their square roots.
    """
    m = _as_matrix(rho4)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    flipped = _SIGMA_YY @ m.conj() @ _SIGMA_YY
    w, v = hermitian_eigen(m)
    sqrt_rho = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    product = sqrt_rho @ flipped @ sqrt_rho
    w2 = np.clip(hermitian_eigen(product)[0], 0.0, None)
    if w2.max() > 0.0:
        # exact rank deficiencies leave ~1e-17 roundoff eigenvalues whose
        # square roots would pollute the sum at the 1e-9 level
        w2[w2 < 1e-13 * w2.max()] = 0.0
    lam = np.sqrt(w2)
    return max(0.0, float(2.0 * lam.max() - lam.sum()))

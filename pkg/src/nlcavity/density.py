"""Reduced density matrices of the two atoms and of a single atom.

Two routes produce the 4x4 two-atom matrix: a generic partial trace over
the field applied to an assembled StateVector, and a direct transcription
of the literal element sums (rho_11 = sum |A|^2, rho_12 = sum A B* e^{i R t},
...) with the residual phases R. The two must agree wherever the second
form applies (theta = 0 exactly; theta > 0 up to the low-photon remainder
blocks the summed form ignores), which is one of the package's standing
cross-checks.

Basis ordering everywhere: |ee>, |eg>, |ge>, |gg>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import residual_phase
from .dynamics import ClosedFormEvolution, StateVector, TruncationPlan, amplitudes_at
from .model import ModelParams


@dataclass
class DensityMatrix:
    """Square complex Hermitian matrix plus the trace it had before renormalization."""

    matrix: np.ndarray
    raw_trace: float = 1.0

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))


def _finalize(matrix: np.ndarray, renormalize: bool) -> DensityMatrix:
    raw = float(np.trace(matrix).real)
    if renormalize and raw > 0.0:
        matrix = matrix / raw
    return DensityMatrix(matrix=matrix, raw_trace=raw)


def partial_trace_field(state: StateVector, renormalize: bool = True) -> DensityMatrix:
    """Tr_F |psi><psi| as a 4x4 matrix in the product basis.

    The eg_sym amplitude is the per-component value, so |eg> and |ge> each
    carry it verbatim: rho_22 = rho_33 = rho_23 = sum |B|^2 and the first
    row couples identically to both one-flip columns.
    """
    a, b, c = state.ee, state.eg_sym, state.gg
    r11 = np.vdot(a, a)
    r12 = np.vdot(b, a)  # sum_m a[m] conj(b[m])
    r14 = np.vdot(c, a)
    r22 = np.vdot(b, b)
    r24 = np.vdot(c, b)
    r44 = np.vdot(c, c)
    rho = np.array(
        [
            [r11, r12, r12, r14],
            [np.conj(r12), r22, r22, r24],
            [np.conj(r12), r22, r22, r24],
            [np.conj(r14), np.conj(r24), np.conj(r24), r44],
        ],
        dtype=complex,
    )
    return _finalize(rho, renormalize)


def atoms_density_summed(
    params: ModelParams,
    plan: TruncationPlan,
    t: float,
    renormalize: bool = True,
) -> DensityMatrix:
    """The 4x4 two-atom matrix from the literal element sums.

    Independent of the partial-trace route: amplitudes A, B, C are summed
    at matched photon number with the residual phase factors e^{i R(m) t}
    (e^{2 i R(m) t} for the ee-gg corner), never building the state vector.
    Exact for theta = 0; for theta > 0 it omits the m < 4k remainder
    blocks and is accurate to their weight.
    """
    k2, k4 = 2 * params.k, 4 * params.k
    if plan.n_max < k4:
        raise ValueError(f"plan.n_max={plan.n_max} smaller than 4k={k4}")
    params.deformation.check_coverage(plan.n_max)

    size = plan.n_max + 1
    A = np.zeros(size, dtype=complex)
    B = np.zeros(size, dtype=complex)
    C = np.zeros(size, dtype=complex)
    engine = ClosedFormEvolution(params, plan)
    for sol in engine.solutions:
        if sol is None:
            continue
        a_val, b_val, c_val = amplitudes_at(sol, t)
        A[sol.n] = a_val
        B[sol.n + k2] = b_val
        C[sol.n + k4] = c_val

    phase = np.zeros(size, dtype=complex)
    for m in range(k2, size):
        phase[m] = np.exp(1j * residual_phase(params, m) * t)

    r11 = np.sum(np.abs(A) ** 2)
    r22 = np.sum(np.abs(B) ** 2)
    r44 = np.sum(np.abs(C) ** 2)
    r12 = np.sum(A * np.conj(B) * phase)
    r14 = np.sum(A * np.conj(C) * phase**2)
    r24 = np.sum(B * np.conj(C) * phase)
    rho = np.array(
        [
            [r11, r12, r12, r14],
            [np.conj(r12), r22, r22, r24],
            [np.conj(r12), r22, r22, r24],
            [np.conj(r14), np.conj(r24), np.conj(r24), r44],
        ],
        dtype=complex,
    )
    return _finalize(rho, renormalize)


def partial_trace_atom2(rho4: DensityMatrix) -> DensityMatrix:
    """Trace out the second atom: the standard 2x2 reduction.

    y11 = rho11 + rho22, y12 = rho13 + rho24, y22 = rho33 + rho44. Under
    the model symmetry rho12 = rho13 and rho22 = rho33 this coincides with
    the summed-form expressions written in terms of rho12 and rho22.
    """
    if rho4.dim != 4:
        raise ValueError(f"expected a 4x4 matrix, got dim={rho4.dim}")
    m = rho4.matrix
    y11 = m[0, 0] + m[1, 1]
    y12 = m[0, 2] + m[1, 3]
    y22 = m[2, 2] + m[3, 3]
    reduced = np.array([[y11, y12], [np.conj(y12), y22]], dtype=complex)
    return DensityMatrix(matrix=reduced, raw_trace=rho4.raw_trace)

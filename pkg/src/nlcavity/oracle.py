"""Brute-force Fock-space evolution used to certify the closed form.

Builds the effective Hamiltonian in the full product basis
{|ee>, |eg>, |ge>, |gg>} x {|0> .. |n_max>} (real symmetric: every
coupling is real once g is), diagonalizes it once per configuration with
the Jacobi kernel, and evolves any initial vector by phase rotation in
the eigenbasis. The partial traces over field and atoms provide the
independent density matrices, and for a pure global state the two reduced
entropies must coincide, which is the package's entropy balance check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .algebra import hop_element, kerr_weight, stark_factor
from .density import DensityMatrix, _finalize
from .dynamics import StateVector, coherent_weights
from .model import ModelParams

LEVEL_ORDER = ("ee", "eg", "ge", "gg")

# Atomic contribution to the conserved excitation (number of excited atoms).
_EXCITED_COUNT = (2, 1, 1, 0)


@dataclass
class FockHamiltonian:
    """Effective Hamiltonian on the truncated basis, with a cached eigensystem."""

    n_max: int
    k: int
    matrix: np.ndarray
    _eig: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return 4 * (self.n_max + 1)

    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        if self._eig is None:
            self._eig = kernels.jacobi_eigh(self.matrix)
        return self._eig


def _index(level: int, m: int, n_max: int) -> int:
    return level * (n_max + 1) + m


def build_hamiltonian(params: ModelParams, n_max: int) -> FockHamiltonian:
    """Assemble the real symmetric effective Hamiltonian up to photon n_max.

    The interaction picture drops the free-evolution diagonal; the
    include-free-phase picture adds it back. For the undeformed rule the
    free term is constant on every conserved-excitation sector, making
    that variant exactly the sector-phase dressing of the default one;
    for deformed rules it is a genuinely different (also valid)
    Hamiltonian, so cross-picture fidelity comparisons are only meaningful
    with f = 1.
    """
    k = params.k
    if n_max < 4 * k:
        raise ValueError(f"n_max={n_max} must be at least 4k={4 * k}")
    params.deformation.check_coverage(n_max)
    f = params.deformation
    nph = n_max + 1
    h = np.zeros((4 * nph, 4 * nph))

    include_free = params.picture == "include-free-phase"
    for m in range(nph):
        stark = stark_factor(f, k, m)
        kerr = params.chi * kerr_weight(f, m)
        diag = (
            params.delta + 2.0 * params.beta1 * stark + kerr,
            (params.beta1 + params.beta2) * stark + kerr,
            (params.beta1 + params.beta2) * stark + kerr,
            -params.delta + 2.0 * params.beta2 * stark + kerr,
        )
        for level, value in enumerate(diag):
            if include_free:
                nf2 = m * f.value(m) ** 2 if m >= 1 else 0.0
                value += params.free_frequency * (nf2 + k * (_EXCITED_COUNT[level] * 2 - 2))
            h[_index(level, m, n_max), _index(level, m, n_max)] = value

    # 2k-photon hop: one atomic flip absorbs/releases 2k quanta.
    for m in range(2 * k, nph):
        hop = hop_element(params, m - 2 * k)
        for upper, lower in ((0, 1), (0, 2), (1, 3), (2, 3)):
            i = _index(upper, m - 2 * k, n_max)
            j = _index(lower, m, n_max)
            h[i, j] = hop
            h[j, i] = hop
    return FockHamiltonian(n_max=n_max, k=k, matrix=h)


def initial_state(params: ModelParams, n_max: int) -> np.ndarray:
    """Truncated (atoms) x (coherent field) product state, normalized."""
    nph = n_max + 1
    q = coherent_weights(params.alpha, n_max)
    psi = np.zeros(4 * nph, dtype=complex)
    psi[0:nph] = math.cos(params.theta / 2.0) * q
    psi[3 * nph : 4 * nph] = math.sin(params.theta / 2.0) * q
    return psi / np.linalg.norm(psi)


def evolve(H: FockHamiltonian, psi0: np.ndarray, t: float) -> np.ndarray:
    """exp(-i H t) psi0 through the cached eigendecomposition."""
    if psi0.shape != (H.dim,):
        raise ValueError(f"state has shape {psi0.shape}, expected ({H.dim},)")
    w, v = H.eigensystem()
    return v @ (np.exp(-1j * w * t) * (v.T @ psi0))


def reduce_atoms(psi: np.ndarray, renormalize: bool = True) -> DensityMatrix:
    """4x4 two-atom matrix from the pure state: trace over the field."""
    r = psi.reshape(4, -1)
    return _finalize(r @ r.conj().T, renormalize)


def reduce_field(psi: np.ndarray, renormalize: bool = True) -> DensityMatrix:
    """(n_max+1)^2 field matrix from the pure state: trace over the atoms."""
    r = psi.reshape(4, -1)
    return _finalize(r.T @ r.conj(), renormalize)


def excitation_operator(n_max: int, k: int) -> np.ndarray:
    """Conserved N = n_photons + 2k * n_excited, diagonal in this basis."""
    nph = n_max + 1
    diag = np.empty(4 * nph)
    for level, excited in enumerate(_EXCITED_COUNT):
        diag[level * nph : (level + 1) * nph] = np.arange(nph) + 2 * k * excited
    return np.diag(diag)


def state_to_vector(state: StateVector, n_max: int) -> np.ndarray:
    """Map an analytic StateVector onto the oracle basis.

    The stored eg_sym value is the per-component amplitude, so |eg> and
    |ge> both receive it verbatim; equivalently the normalized symmetric
    combination carries sqrt(2) times the stored value.
    """
    if state.n_max > n_max:
        raise ValueError(f"basis-size mismatch: state has n_max={state.n_max} > {n_max}")
    nph = n_max + 1
    out = np.zeros(4 * nph, dtype=complex)
    upto = state.n_max + 1
    out[0:upto] = state.ee
    out[nph : nph + upto] = state.eg_sym
    out[2 * nph : 2 * nph + upto] = state.eg_sym
    out[3 * nph : 3 * nph + upto] = state.gg
    return out


def fidelity(psi_a: np.ndarray, psi_b: np.ndarray) -> float:
    """|<a|b>| with both vectors normalized first (truncation tails accounted)."""
    if psi_a.shape != psi_b.shape:
        raise ValueError(f"basis-size mismatch: {psi_a.shape} vs {psi_b.shape}")
    na, nb = np.linalg.norm(psi_a), np.linalg.norm(psi_b)
    if na == 0.0 or nb == 0.0:
        raise ValueError("cannot compute fidelity of a zero vector")
    return float(abs(np.vdot(psi_a, psi_b)) / (na * nb))

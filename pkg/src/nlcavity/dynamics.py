"""Closed-form time evolution of the full atoms+field state.

The effective Hamiltonian conserves n_photons + 2k * n_excited, so the
Hilbert space splits into independent 3-state manifolds
{|ee,n>, sym|eg,n+2k>, |gg,n+4k>}. Within each manifold the amplitudes
A, B, C obey three coupled linear ODEs whose characteristic cubic is
solved in closed form; the b_m weights follow from the initial conditions
(atoms in cos(theta/2)|ee> + sin(theta/2)|gg>, field coherent).

Amplitude bookkeeping convention: a stored amplitude is indexed by its own
photon number m, and the symmetric one-flip slot ("eg_sym") stores the
per-component amplitude B, i.e. each of |eg,m> and |ge,m> carries the
stored value, so norms weight that slot by 2.

Initial |gg,m> components with m < 4k have no complete manifold above
them; they evolve in 1- or 2-state blocks handled exactly by
``solve_incomplete_manifolds``. They vanish for theta = 0 but are required
for unitarity (and oracle equivalence) once theta > 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    ManifoldCoefficients,
    gamma_phases,
    hop_element,
    kerr_weight,
    manifold_coefficients,
    stark_factor,
)
from .cubic import CubicRoots, solve_cubic, solve_quadratic
from .model import ModelParams

LEVELS = ("ee", "eg_sym", "gg")

_TRUNCATION_HARD_CAP = 100_000


class DegenerateManifoldError(ValueError):
    """Two characteristic roots coincide; the b_m formula divides by the gap."""


def coherent_weight(alpha: complex, n: int) -> complex:
    """Coherent-state coefficient q_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!).

    Evaluated through logarithms so that large n and large |alpha| do not
    overflow intermediate factors.
    """
    if n < 0:
        raise ValueError(f"photon number must be >= 0, got {n}")
    if alpha == 0:
        return 1.0 + 0.0j if n == 0 else 0.0j
    log_mag = -0.5 * abs(alpha) ** 2 + n * math.log(abs(alpha)) - 0.5 * math.lgamma(n + 1)
    return cmath.exp(complex(log_mag, n * cmath.phase(complex(alpha))))


def coherent_weights(alpha: complex, n_max: int) -> np.ndarray:
    """q_0 .. q_{n_max} as one complex array."""
    return np.array([coherent_weight(alpha, n) for n in range(n_max + 1)], dtype=complex)


@dataclass(frozen=True)
class TruncationPlan:
    """Fock cutoff for a run: amplitudes are kept for photon numbers <= n_max.

    n_max already includes the +4k headroom needed by the |gg> branch, so
    complete manifolds run over bases n <= n_max - 4k. tail_mass is the
    coherent-state probability beyond n_max.
    """

    n_max: int
    tail_mass: float


def plan_truncation(alpha: complex, tol: float, k: int) -> TruncationPlan:
    """Smallest cutoff capturing all but tol of the coherent weight, plus 4k.

    The manifold sweep needs every ee-seed up to the 1-tol coverage point M;
    the gg branch of manifold M reaches photon M+4k, hence the extension.
    """
    if not (0.0 < tol < 1.0):
        raise ValueError(f"truncation tolerance must be in (0, 1), got {tol!r}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    nbar = abs(alpha) ** 2
    if nbar == 0.0:
        return TruncationPlan(n_max=4 * k, tail_mass=0.0)
    # Poisson masses by upward recurrence; no factorials.
    mass = math.exp(-nbar)
    cumulative = mass
    n = 0
    while cumulative < 1.0 - tol:
        n += 1
        if n > _TRUNCATION_HARD_CAP:
            raise ValueError("truncation did not converge; |alpha|^2 too large for tol")
        mass *= nbar / n
        cumulative += mass
    n_max = n + 4 * k
    for j in range(n + 1, n_max + 1):
        mass *= nbar / j
        cumulative += mass
    return TruncationPlan(n_max=n_max, tail_mass=max(0.0, 1.0 - cumulative))


@dataclass(frozen=True)
class ManifoldSolution:
    """Closed-form data of one complete manifold: coefficients, roots, b_m."""

    n: int
    coeffs: ManifoldCoefficients
    mu: CubicRoots
    b: np.ndarray  # 3 complex weights


def _b_weights(mu, V1, V2, q_top, q_bot, cos_half, sin_half, n=-1) -> np.ndarray:
    """The three b_m from the initial conditions; symmetric under root relabelling."""
    gap_scale = max(1.0, max(abs(m) for m in mu))
    b = np.empty(3, dtype=complex)
    for m in range(3):
        k_idx, l_idx = [j for j in range(3) if j != m]
        gap_k = mu[m] - mu[k_idx]
        gap_l = mu[m] - mu[l_idx]
        if min(abs(gap_k), abs(gap_l)) < 1e-10 * gap_scale:
            raise DegenerateManifoldError(
                f"degenerate manifold spectrum at n={n}: roots {tuple(mu)} too close"
            )
        b[m] = (
            2.0 * V1 * V2 * q_top * cos_half
            + (2.0 * V2 * V2 + mu[k_idx] * mu[l_idx]) * q_bot * sin_half
        ) / (gap_k * gap_l)
    return b


def solve_manifold(params: ModelParams, n: int) -> ManifoldSolution:
    """Characteristic roots and b_m weights for the manifold based at n."""
    coeffs = manifold_coefficients(params, n)
    eta, sig = coeffs.eta, coeffs.sigma_s
    V1, V2 = coeffs.V1, coeffs.V2
    x1 = -eta - 2.0 * sig
    x2 = sig * (sig + eta) - 2.0 * (V1 * V1 + V2 * V2)
    x3 = 2.0 * V2 * V2 * (eta + sig)
    roots = solve_cubic(x1, x2, x3)

    b = _b_weights(
        roots.mu,
        V1,
        V2,
        coherent_weight(params.alpha, n),
        coherent_weight(params.alpha, n + 4 * params.k),
        math.cos(params.theta / 2.0),
        math.sin(params.theta / 2.0),
        n=n,
    )
    return ManifoldSolution(n=n, coeffs=coeffs, mu=roots, b=b)


def amplitudes_at(sol: ManifoldSolution, t: float) -> tuple[complex, complex, complex]:
    """(A, B, C) of the manifold at time t (units of 1/g).

    A lives at photon number n, B at n+2k, C at n+4k. The diagonal
    gamma phases are *not* included here; state assembly applies them.
    """
    c = sol.coeffs
    eta, sig, V1, V2 = c.eta, c.sigma_s, c.V1, c.V2
    A = 0.0j
    B = 0.0j
    C = 0.0j
    for m in range(3):
        mu_m = sol.mu.mu[m]
        phase = cmath.exp(1j * mu_m * t)
        A += sol.b[m] * (mu_m * mu_m - sig * mu_m - 2.0 * V2 * V2) * phase
        B += sol.b[m] * mu_m * phase
        C += sol.b[m] * phase
    A *= cmath.exp(-1j * (eta + sig) * t) / (2.0 * V1 * V2)
    B *= -cmath.exp(-1j * sig * t) / (2.0 * V2)
    return A, B, C


def solve_incomplete_manifolds(params: ModelParams, t: float) -> list[tuple[str, int, complex]]:
    """Exact evolution of the initial |gg,m> components with m < 4k.

    Returns (level, photon number, amplitude) contributions in the stored
    convention (the eg_sym entry is the per-component amplitude, i.e. the
    symmetric-state amplitude divided by sqrt(2)). Empty for theta = 0.
    """
    sin_half = math.sin(params.theta / 2.0)
    if sin_half == 0.0:
        return []
    f, k, chi = params.deformation, params.k, params.chi
    contributions: list[tuple[str, int, complex]] = []

    def e_sym(m: int) -> float:
        return (params.beta1 + params.beta2) * stark_factor(f, k, m) + chi * kerr_weight(f, m)

    def e_gg(m: int) -> float:
        return -params.delta + 2.0 * params.beta2 * stark_factor(f, k, m) + chi * kerr_weight(f, m)

    for m in range(0, 4 * k):
        amp0 = coherent_weight(params.alpha, m) * sin_half
        if amp0 == 0.0:
            continue
        if m < 2 * k:
            # No one-flip partner below: pure diagonal phase.
            contributions.append(("gg", m, amp0 * cmath.exp(-1j * e_gg(m) * t)))
            continue
        # 2-state block spanned by {sym|eg, m-2k>, |gg, m>}.
        a = e_sym(m - 2 * k)
        d = e_gg(m)
        w = math.sqrt(2.0) * hop_element(params, m - 2 * k)
        lam1, lam2 = solve_quadratic(1.0, -(a + d), a * d - w * w)
        c_sym = 0.0j
        c_gg = 0.0j
        for lam in (lam1, lam2):
            v = np.array([w, lam - a])
            v /= math.hypot(*v)
            weight = v[1] * amp0 * cmath.exp(-1j * lam * t)
            c_sym += weight * v[0]
            c_gg += weight * v[1]
        contributions.append(("eg_sym", m - 2 * k, c_sym / math.sqrt(2.0)))
        contributions.append(("gg", m, c_gg))
    return contributions


@dataclass
class StateVector:
    """Complete system state over {ee, eg_sym, gg} x photon number.

    Convention "symmetric-subspace": the eg_sym array holds the amplitude
    carried by each of |eg,m> and |ge,m> individually, so the norm weights
    it by 2 and the normalized symmetric state (|eg>+|ge>)/sqrt(2) carries
    sqrt(2) times the stored value.
    """

    k: int
    n_max: int
    ee: np.ndarray
    eg_sym: np.ndarray
    gg: np.ndarray
    convention: str = "symmetric-subspace"

    def amplitude(self, level: str, m: int) -> complex:
        if level not in LEVELS:
            raise ValueError(f"unknown level {level!r}")
        if not (0 <= m <= self.n_max):
            return 0.0j
        return complex(getattr(self, level)[m])

    def norm_squared(self) -> float:
        return float(
            np.sum(np.abs(self.ee) ** 2)
            + 2.0 * np.sum(np.abs(self.eg_sym) ** 2)
            + np.sum(np.abs(self.gg) ** 2)
        )


class ClosedFormEvolution:
    """All per-manifold solutions for one parameter set, evaluated at any t.

    Solving the manifolds once and reusing them across a time grid is what
    makes 500-point sweeps cheap. Degenerate manifolds either raise (the
    default) or are dropped with a report, in which case their weight is
    missing from the state and shows up in the trace tail.
    """

    def __init__(self, params: ModelParams, plan: TruncationPlan, on_degenerate: str = "raise"):
        if on_degenerate not in ("raise", "skip"):
            raise ValueError(f"on_degenerate must be 'raise' or 'skip', got {on_degenerate!r}")
        k4 = 4 * params.k
        if plan.n_max < k4:
            raise ValueError(f"plan.n_max={plan.n_max} smaller than 4k={k4}")
        params.deformation.check_coverage(plan.n_max)
        self.params = params
        self.plan = plan
        self.manifold_cutoff = plan.n_max - k4
        self.skipped: list[tuple[int, str]] = []

        count = self.manifold_cutoff + 1
        self._mu = np.zeros((count, 3))
        self._wA = np.zeros((count, 3), dtype=complex)
        self._wB = np.zeros((count, 3), dtype=complex)
        self._wC = np.zeros((count, 3), dtype=complex)
        self._eta = np.zeros(count)
        self._sig = np.zeros(count)
        self._gammas = np.zeros((count, 3))
        self.solutions: list[ManifoldSolution | None] = []

        for n in range(count):
            try:
                sol = solve_manifold(params, n)
            except DegenerateManifoldError as exc:
                if on_degenerate == "raise":
                    raise
                self.skipped.append((n, str(exc)))
                self.solutions.append(None)
                continue
            self.solutions.append(sol)
            c = sol.coeffs
            mu = np.array(sol.mu.mu)
            self._mu[n] = mu
            self._wA[n] = sol.b * (mu * mu - c.sigma_s * mu - 2.0 * c.V2**2) / (2.0 * c.V1 * c.V2)
            self._wB[n] = -sol.b * mu / (2.0 * c.V2)
            self._wC[n] = sol.b
            self._eta[n] = c.eta
            self._sig[n] = c.sigma_s
            self._gammas[n] = (c.gamma1, c.gamma2, c.gamma3)

    def state_at(self, t: float) -> StateVector:
        params, plan = self.params, self.plan
        k2, k4 = 2 * params.k, 4 * params.k
        count = self.manifold_cutoff + 1

        phases = np.exp(1j * t * self._mu)
        A = (self._wA * phases).sum(axis=1) * np.exp(-1j * (self._eta + self._sig) * t)
        B = (self._wB * phases).sum(axis=1) * np.exp(-1j * self._sig * t)
        C = (self._wC * phases).sum(axis=1)

        ee = np.zeros(plan.n_max + 1, dtype=complex)
        eg = np.zeros(plan.n_max + 1, dtype=complex)
        gg = np.zeros(plan.n_max + 1, dtype=complex)
        ee[:count] = A * np.exp(-1j * self._gammas[:, 0] * t)
        eg[k2 : k2 + count] = B * np.exp(-1j * self._gammas[:, 1] * t)
        gg[k4 : k4 + count] = C * np.exp(-1j * self._gammas[:, 2] * t)

        for level, m, amp in solve_incomplete_manifolds(params, t):
            if level == "eg_sym":
                eg[m] += amp
            else:
                gg[m] += amp

        if params.picture == "include-free-phase":
            self._apply_free_phase(t, ee, eg, gg)
        return StateVector(k=params.k, n_max=plan.n_max, ee=ee, eg_sym=eg, gg=gg)

    def _apply_free_phase(self, t: float, ee, eg, gg) -> None:
        # Prefactor exp[-i w t (n f^2(n) + k sum sigma_z)]: field part
        # n f^2(n) per photon number, atomic part +2k / 0 / -2k.
        params = self.params
        f = params.deformation
        nf2 = np.array(
            [0.0] + [m * f.value(m) ** 2 for m in range(1, self.plan.n_max + 1)]
        )
        w = params.free_frequency
        field_phase = np.exp(-1j * w * t * nf2)
        ee *= field_phase * cmath.exp(-1j * w * t * 2 * params.k)
        eg *= field_phase
        gg *= field_phase * cmath.exp(1j * w * t * 2 * params.k)


def assemble_state(params: ModelParams, plan: TruncationPlan, t: float) -> StateVector:
    """Full state at time t; one-shot wrapper around ClosedFormEvolution."""
    return ClosedFormEvolution(params, plan).state_at(t)

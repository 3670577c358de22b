"""Scalar coefficient functions of the model.

Everything downstream (closed-form dynamics, the reduced density matrix in
its literal summed form, the brute-force Hamiltonian) is built from a small
set of scalar functions of the photon number: deformed factorial ratios,
the 2k-photon hop element, the three diagonal phase frequencies gamma1..3
of a manifold, and the residual phase left in the off-diagonal density
matrix elements after the Kerr contributions cancel.

All products are accumulated incrementally in floating point (never via raw
factorials) so the functions stay finite and accurate for photon numbers in
the hundreds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import DeformationFunction, ModelParams


def f_factorial_ratio(f: DeformationFunction, n: int, m: int) -> float:
    """[f(n)]!/[f(m)]! = f(n) f(n-1) ... f(m+1), requires n >= m >= 0."""
    if m < 0 or n < m:
        raise ValueError(f"f-factorial ratio needs n >= m >= 0, got n={n}, m={m}")
    out = 1.0
    for j in range(m + 1, n + 1):
        out *= f.value(j)
    return out


def falling_ratio(n: int, m: int) -> float:
    """n!/m! as an incremental product; 0 when m < 0.

    The m < 0 branch encodes that the k-fold annihilator wipes out states
    with fewer than k photons.
    """
    if n < 0:
        raise ValueError(f"falling_ratio needs n >= 0, got n={n}")
    if m < 0:
        return 0.0
    if m > n:
        out = 1.0
        for j in range(n + 1, m + 1):
            out *= j
        return 1.0 / out
    out = 1.0
    for j in range(m + 1, n + 1):
        out *= j
    return out


def hop_element(params: ModelParams, m: int) -> float:
    """2k-photon transition element g * sqrt((m+2k)!/m!) * [f(m+2k)]!/[f(m)]!.

    This is the Hamiltonian matrix element connecting photon numbers m and
    m+2k through a single atomic flip.
    """
    k2 = 2 * params.k
    rad = falling_ratio(m + k2, m)
    return params.g * rad**0.5 * f_factorial_ratio(params.deformation, m + k2, m)


def couplings(params: ModelParams, n: int) -> tuple[float, float]:
    """(V1, V2) for the manifold based at photon number n >= 0."""
    if n < 0:
        raise ValueError(f"manifold base must be >= 0, got {n}")
    return hop_element(params, n), hop_element(params, n + 2 * params.k)


def stark_factor(f: DeformationFunction, k: int, n: int) -> float:
    """Diagonal Stark weight (n!/(n-k)!) * ([f(n)]!/[f(n-k)]!)^2, 0 for n < k."""
    if n < k:
        return 0.0
    return falling_ratio(n, n - k) * f_factorial_ratio(f, n, n - k) ** 2


def kerr_weight(f: DeformationFunction, n: int) -> float:
    """Deformed Kerr diagonal n(n-1) f^2(n) f^2(n-1); 0 for n < 2."""
    if n < 2:
        return 0.0
    return n * (n - 1) * f.value(n) ** 2 * f.value(n - 1) ** 2


def gamma_phases(params: ModelParams, n: int) -> tuple[float, float, float]:
    """Diagonal phase frequencies (gamma1, gamma2, gamma3) of manifold n.

    gamma1 belongs to |ee, n>, gamma2 to the symmetric one-flip state at
    n+2k, gamma3 to |gg, n+4k>.
    """
    f, k = params.deformation, params.k
    g1 = params.delta + params.chi * kerr_weight(f, n) + 2.0 * params.beta1 * stark_factor(f, k, n)
    g2 = params.chi * kerr_weight(f, n + 2 * k) + (params.beta1 + params.beta2) * stark_factor(
        f, k, n + 2 * k
    )
    g3 = (
        -params.delta
        + params.chi * kerr_weight(f, n + 4 * k)
        + 2.0 * params.beta2 * stark_factor(f, k, n + 4 * k)
    )
    return g1, g2, g3


def residual_phase(params: ModelParams, m: int) -> float:
    """Phase frequency surviving in off-diagonal rho elements at matched photon m.

    -delta + (beta2 - beta1) * (m!/(m-k)!) * ([f(m)]!/[f(m-k)]!)^2 for
    m >= k. The same expression serves both off-diagonal families: it is
    evaluated at m = n+2k for the ee/one-flip elements and at m = n+4k for
    the ones involving |gg>. The defining identity (tested) is that this
    equals the matched-manifold gamma difference, the Kerr terms cancelling
    exactly, which also fixes the time dependence to exp(i * phase * t).
    """
    if m < params.k:
        raise ValueError(f"residual phase needs m >= k, got m={m}, k={params.k}")
    return -params.delta + (params.beta2 - params.beta1) * stark_factor(
        params.deformation, params.k, m
    )


@dataclass(frozen=True)
class ManifoldCoefficients:
    """All scalar coefficients of one 3-state manifold."""

    n: int
    V1: float
    V2: float
    gamma1: float
    gamma2: float
    gamma3: float
    eta: float
    sigma_s: float


def manifold_coefficients(params: ModelParams, n: int) -> ManifoldCoefficients:
    V1, V2 = couplings(params, n)
    g1, g2, g3 = gamma_phases(params, n)
    return ManifoldCoefficients(
        n=n, V1=V1, V2=V2, gamma1=g1, gamma2=g2, gamma3=g3, eta=g2 - g1, sigma_s=g3 - g2
    )

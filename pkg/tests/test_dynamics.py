import math

import numpy as np
import pytest

from nlcavity import dynamics
from nlcavity.dynamics import (
    ClosedFormEvolution,
    DegenerateManifoldError,
    _b_weights,
    amplitudes_at,
    assemble_state,
    coherent_weight,
    coherent_weights,
    plan_truncation,
    solve_incomplete_manifolds,
    solve_manifold,
)
from nlcavity.model import DeformationFunction, ModelParams, scenario_preset

UNITY = DeformationFunction.unity()
SQRTN = DeformationFunction.sqrt_n()


# ---------------------------------------------------------------- coherent


def test_coherent_weight_vacuum():
    assert coherent_weight(0.0, 0) == 1.0
    assert coherent_weight(0.0, 5) == 0.0


def test_coherent_weight_mode_at_mean_25():
    q = np.abs(coherent_weights(5.0, 120)) ** 2
    peak = int(np.argmax(q))
    assert peak in (24, 25)  # Poisson(25) pmf ties at 24 and 25
    assert abs(q[24] - q[25]) <= 1e-12


def test_coherent_weights_normalize():
    for alpha in (0.7, 2.0, 5.0, 3.0 + 4.0j):
        q = coherent_weights(alpha, 250)
        assert np.sum(np.abs(q) ** 2) == pytest.approx(1.0, abs=1e-12)


def test_coherent_weight_complex_phase():
    alpha = 2.0 * np.exp(1j * 0.8)
    q3 = coherent_weight(alpha, 3)
    assert np.angle(q3) == pytest.approx(3 * 0.8, abs=1e-12)


def test_coherent_weight_rejects_negative_n():
    with pytest.raises(ValueError):
        coherent_weight(1.0, -1)


# ---------------------------------------------------------------- truncation


def test_plan_vacuum():
    plan = plan_truncation(0.0, 1e-12, k=2)
    assert plan.n_max == 8
    assert plan.tail_mass == 0.0


def test_plan_alpha25():
    plan = plan_truncation(5.0, 1e-12, k=1)
    assert plan.tail_mass <= 1e-12
    # independent check: cumulative Poisson mass at the unextended cutoff
    q = np.abs(coherent_weights(5.0, plan.n_max)) ** 2
    assert q[: plan.n_max - 4 + 1].sum() >= 1.0 - 1e-12
    assert q[: plan.n_max - 4].sum() < 1.0 - 1e-12  # minimality of the cutoff
    assert 60 <= plan.n_max <= 110


def test_plan_alpha1():
    plan = plan_truncation(1.0, 1e-10, k=1)
    assert plan.n_max <= 25
    assert plan.tail_mass <= 1e-10


def test_plan_bad_inputs():
    with pytest.raises(ValueError):
        plan_truncation(1.0, 0.0, 1)
    with pytest.raises(ValueError):
        plan_truncation(1.0, 1.5, 1)
    with pytest.raises(ValueError):
        plan_truncation(1.0, 1e-12, 0)


# ---------------------------------------------------------------- manifolds


def test_resonant_undeformed_roots():
    params = ModelParams(k=1, g=1.0, deformation=UNITY, alpha=1.0)
    sol = solve_manifold(params, 0)
    expected = math.sqrt(28.0)  # 2 (V1^2 + V2^2) = 2 (2 + 12)
    assert np.allclose(sol.mu.mu, (-expected, 0.0, expected), atol=1e-10)


def test_b_sum_is_initial_C():
    rng = np.random.default_rng(1)
    for _ in range(20):
        params = scenario_preset("e").to_params(
            k=int(rng.integers(1, 3)), theta=float(rng.uniform(0, np.pi)), alpha=np.sqrt(2)
        )
        n = int(rng.integers(0, 12))
        sol = solve_manifold(params, n)
        expected = coherent_weight(params.alpha, n + 4 * params.k) * math.sin(params.theta / 2)
        assert sol.b.sum() == pytest.approx(expected, abs=1e-12)


def test_initial_conditions_reconstructed():
    for label in "ace":
        for theta in (0.0, 1.1):
            params = scenario_preset(label).to_params(k=1, theta=theta, alpha=2.0)
            for n in (0, 3, 9):
                sol = solve_manifold(params, n)
                A0, B0, C0 = amplitudes_at(sol, 0.0)
                q_top = coherent_weight(params.alpha, n)
                q_bot = coherent_weight(params.alpha, n + 4)
                assert abs(A0 - q_top * math.cos(theta / 2)) <= 1e-10
                assert abs(B0) <= 1e-10
                assert abs(C0 - q_bot * math.sin(theta / 2)) <= 1e-10


def test_theta_zero_b_form():
    params = scenario_preset("b").to_params(k=1, theta=0.0, alpha=2.0)
    sol = solve_manifold(params, 2)
    c = sol.coeffs
    q = coherent_weight(params.alpha, 2)
    mu = sol.mu.mu
    for m in range(3):
        k_idx, l_idx = [j for j in range(3) if j != m]
        expected = 2 * c.V1 * c.V2 * q / ((mu[m] - mu[k_idx]) * (mu[m] - mu[l_idx]))
        assert sol.b[m] == pytest.approx(expected, rel=1e-12)


def test_root_relabelling_invariance():
    params = scenario_preset("e").to_params(k=1, theta=0.9, alpha=1.5)
    sol = solve_manifold(params, 4)
    c = sol.coeffs
    q_top = coherent_weight(params.alpha, 4)
    q_bot = coherent_weight(params.alpha, 8)
    ref = amplitudes_at(sol, 1.7)
    for perm in ((1, 0, 2), (2, 1, 0), (1, 2, 0)):
        mu_p = tuple(sol.mu.mu[i] for i in perm)
        b_p = _b_weights(
            mu_p, c.V1, c.V2, q_top, q_bot,
            math.cos(params.theta / 2), math.sin(params.theta / 2),
        )
        permuted = dynamics.ManifoldSolution(
            n=4, coeffs=c, mu=dynamics.CubicRoots(mu=mu_p, discriminant_margin=0.0), b=b_p
        )
        got = amplitudes_at(permuted, 1.7)
        assert np.allclose(got, ref, atol=1e-10)


def test_per_manifold_probability_conserved():
    params = scenario_preset("d").to_params(k=2, theta=0.7, alpha=np.sqrt(3))
    for n in (0, 2, 6):
        sol = solve_manifold(params, n)
        p0 = None
        for t in np.linspace(0.0, 8.0, 17):
            A, B, C = amplitudes_at(sol, float(t))
            p = abs(A) ** 2 + 2 * abs(B) ** 2 + abs(C) ** 2
            if p0 is None:
                p0 = p
                q_top = coherent_weight(params.alpha, n)
                q_bot = coherent_weight(params.alpha, n + 8)
                expected = abs(q_top * math.cos(params.theta / 2)) ** 2 + abs(
                    q_bot * math.sin(params.theta / 2)
                ) ** 2
                assert p0 == pytest.approx(expected, abs=1e-12)
            assert p == pytest.approx(p0, abs=1e-10)


def _ode_residual(sol, t, h=1e-4):
    c = sol.coeffs
    A0, B0, C0 = amplitudes_at(sol, t)
    Am, Bm, Cm = amplitudes_at(sol, t - h)
    Ap, Bp, Cp = amplitudes_at(sol, t + h)
    dA, dB, dC = (Ap - Am) / (2 * h), (Bp - Bm) / (2 * h), (Cp - Cm) / (2 * h)
    r1 = 1j * dA - 2 * c.V1 * B0 * np.exp(-1j * c.eta * t)
    r2 = 1j * dB - (c.V1 * A0 * np.exp(1j * c.eta * t) + c.V2 * C0 * np.exp(-1j * c.sigma_s * t))
    r3 = 1j * dC - 2 * c.V2 * B0 * np.exp(1j * c.sigma_s * t)
    scale = max(abs(dA), abs(dB), abs(dC), 1e-30)
    return max(abs(r1), abs(r2), abs(r3)) / scale


def test_ode_residual_small_manifolds():
    # Central differences at h=1e-4 are a valid derivative oracle only while
    # the phase frequencies stay modest; small n qualifies for both rules.
    for deformation, n_hi in ((UNITY, 6), (SQRTN, 2)):
        for label in "ab":
            params = scenario_preset(label).to_params(
                k=1, theta=0.6, alpha=1.0, deformation=deformation
            )
            for n in range(n_hi + 1):
                sol = solve_manifold(params, n)
                for t in (0.3, 1.9, 4.4):
                    assert _ode_residual(sol, t) <= 1e-5


# ------------------------------------------------------- incomplete blocks


def test_incomplete_empty_for_theta_zero():
    params = scenario_preset("a").to_params(k=1, theta=0.0, alpha=2.0)
    assert solve_incomplete_manifolds(params, 1.3) == []


def test_incomplete_frozen_vacuum_block():
    params = scenario_preset("b").to_params(k=1, theta=np.pi, alpha=0.0)
    for t in (0.0, 0.7, 5.0):
        contributions = solve_incomplete_manifolds(params, t)
        assert len(contributions) == 1
        level, m, amp = contributions[0]
        assert (level, m) == ("gg", 0)
        assert abs(amp) == pytest.approx(1.0, abs=1e-12)


def test_incomplete_two_block_unitarity():
    params = scenario_preset("e").to_params(k=2, theta=2.0, alpha=1.3)
    reference = None
    for t in np.linspace(0.0, 6.0, 13):
        total = {}
        for level, m, amp in solve_incomplete_manifolds(params, float(t)):
            weight = 2.0 if level == "eg_sym" else 1.0
            total[("blk", m if level == "gg" else m + 2 * params.k)] = (
                total.get(("blk", m if level == "gg" else m + 2 * params.k), 0.0)
                + weight * abs(amp) ** 2
            )
        if reference is None:
            reference = total
        for key, value in total.items():
            assert value == pytest.approx(reference[key], abs=1e-10)


# ------------------------------------------------------------- full state


def test_assemble_initial_product_state():
    params = scenario_preset("c").to_params(k=1, theta=0.8, alpha=2.0)
    plan = plan_truncation(params.alpha, 1e-12, 1)
    state = assemble_state(params, plan, 0.0)
    q = coherent_weights(params.alpha, plan.n_max)
    cos_half, sin_half = math.cos(0.4), math.sin(0.4)
    assert np.max(np.abs(state.ee[: plan.n_max - 3] - cos_half * q[: plan.n_max - 3])) <= 1e-10
    assert np.max(np.abs(state.gg - sin_half * q)) <= 1e-10
    assert np.max(np.abs(state.eg_sym)) <= 1e-10


def test_assemble_single_manifold_support():
    params = scenario_preset("a").to_params(k=2, theta=0.0, alpha=0.0)
    plan = plan_truncation(params.alpha, 1e-12, 2)
    state = assemble_state(params, plan, 2.3)
    assert abs(state.ee[0]) > 0
    assert abs(state.eg_sym[4]) > 0
    assert abs(state.gg[8]) > 0
    support = (
        [m for m in range(9) if abs(state.ee[m]) > 1e-14 and m != 0]
        + [m for m in range(9) if abs(state.eg_sym[m]) > 1e-14 and m != 4]
        + [m for m in range(9) if abs(state.gg[m]) > 1e-14 and m != 8]
    )
    assert support == []


def test_norm_conserved_on_grid():
    params = scenario_preset("e").to_params(k=1, theta=1.2, alpha=np.sqrt(2))
    plan = plan_truncation(params.alpha, 1e-12, 1)
    engine = ClosedFormEvolution(params, plan)
    norms = [engine.state_at(float(t)).norm_squared() for t in np.linspace(0, 10, 40)]
    assert max(norms) - min(norms) <= 1e-10
    assert abs(norms[0] - (1.0 - plan.tail_mass)) <= 1e-10


def test_engine_matches_assemble_and_amplitudes():
    params = scenario_preset("d").to_params(k=1, theta=0.5, alpha=1.0)
    plan = plan_truncation(params.alpha, 1e-10, 1)
    engine = ClosedFormEvolution(params, plan)
    t = 2.71
    state = engine.state_at(t)
    sol = solve_manifold(params, 3)
    A, B, C = amplitudes_at(sol, t)
    c = sol.coeffs
    assert state.ee[3] == pytest.approx(A * np.exp(-1j * c.gamma1 * t), abs=1e-12)
    assert state.eg_sym[5] == pytest.approx(B * np.exp(-1j * c.gamma2 * t), abs=1e-12)
    assert state.gg[7] == pytest.approx(C * np.exp(-1j * c.gamma3 * t), abs=1e-12)


def test_degenerate_manifolds_skip_with_report(monkeypatch):
    params = scenario_preset("a").to_params(k=1, theta=0.0, alpha=1.0)
    plan = plan_truncation(params.alpha, 1e-10, 1)
    real_solve = dynamics.solve_manifold

    def failing(params_, n):
        if n == 2:
            raise DegenerateManifoldError("degenerate manifold spectrum at n=2 (forced)")
        return real_solve(params_, n)

    monkeypatch.setattr(dynamics, "solve_manifold", failing)
    with pytest.raises(DegenerateManifoldError):
        ClosedFormEvolution(params, plan)
    engine = ClosedFormEvolution(params, plan, on_degenerate="skip")
    assert [n for n, _ in engine.skipped] == [2]
    state = engine.state_at(1.0)
    assert abs(state.ee[2]) == 0.0


def test_tabulated_table_checked_at_assembly():
    short = DeformationFunction.tabulated([1.0] * 5)
    params = scenario_preset("a").to_params(k=1, theta=0.0, alpha=2.0, deformation=short)
    plan = plan_truncation(params.alpha, 1e-10, 1)
    with pytest.raises(ValueError, match="too short"):
        assemble_state(params, plan, 0.0)

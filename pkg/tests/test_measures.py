import math

import numpy as np
import pytest

from nlcavity.density import DensityMatrix, partial_trace_atom2, partial_trace_field
from nlcavity.dynamics import ClosedFormEvolution, plan_truncation
from nlcavity.measures import (
    concurrence,
    entropy_cardano,
    entropy_generic,
    hermitian_eigen,
    tangle,
)
from nlcavity.model import scenario_preset


def dm(matrix):
    return DensityMatrix(matrix=np.asarray(matrix, dtype=complex))


# ------------------------------------------------------------- eigensolver


def test_hermitian_eigen_examples():
    w, _ = hermitian_eigen(dm(np.diag([3.0, 1.0, 2.0])))
    assert np.allclose(w, [1.0, 2.0, 3.0])
    w, _ = hermitian_eigen(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(w, [-1.0, 1.0])


def test_hermitian_eigen_reconstruction():
    rng = np.random.default_rng(2)
    x = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    a = (x + x.conj().T) / 2
    w, v = hermitian_eigen(a)
    assert np.max(np.abs((v * w) @ v.conj().T - a)) <= 1e-12 * max(1.0, np.max(np.abs(w)))


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(ValueError, match="not Hermitian"):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


# ----------------------------------------------------------------- entropy


def test_entropy_cardano_pure_state():
    assert entropy_cardano(dm(np.diag([1.0, 0.0, 0.0, 0.0]))) == pytest.approx(0.0, abs=1e-12)


def symmetric_rank3(p_ee, p_sym, p_gg):
    """Diagonal-spectrum matrix realized inside the symmetric subspace.

    The one-flip weight sits on (|eg>+|ge>)/sqrt(2), i.e. rho22 = rho23 =
    rho33 = p_sym/2, which is the structure the closed form requires (a
    literal diag(. , p, p, .) would populate the antisymmetric state).
    """
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = p_ee
    m[1, 1] = m[2, 2] = m[1, 2] = m[2, 1] = p_sym / 2.0
    m[3, 3] = p_gg
    return dm(m)


def test_entropy_cardano_uniform_rank3():
    rho = symmetric_rank3(1 / 3, 1 / 3, 1 / 3)
    assert entropy_cardano(rho) == pytest.approx(math.log(3.0), abs=1e-10)
    assert entropy_generic(rho) == pytest.approx(math.log(3.0), abs=1e-10)


def test_entropy_cardano_hand_value():
    rho = symmetric_rank3(0.5, 0.25, 0.25)
    assert entropy_cardano(rho) == pytest.approx(1.5 * math.log(2.0), abs=1e-10)


def test_entropy_cardano_rejects_symmetry_violation():
    m = np.diag([0.5, 0.25, 0.25, 0.0]).astype(complex)
    m[0, 1] = 0.1  # rho12 != rho13
    m[1, 0] = 0.1
    with pytest.raises(ValueError, match="symmetry"):
        entropy_cardano(dm(m))


def test_entropy_generic_examples():
    assert entropy_generic(dm(np.eye(2) / 2)) == pytest.approx(math.log(2.0), abs=1e-12)
    assert entropy_generic(dm(np.diag([1.0, 0.0, 0.0, 0.0]))) == pytest.approx(0.0, abs=1e-12)


def test_entropy_rejects_genuine_negativity():
    with pytest.raises(ValueError, match="eigenvalue"):
        entropy_generic(dm(np.diag([1.1, -0.1])))


def test_entropy_dual_path_on_model_states():
    params = scenario_preset("b").to_params(k=1, theta=0.4, alpha=2.0)
    plan = plan_truncation(params.alpha, 1e-12, 1)
    engine = ClosedFormEvolution(params, plan)
    for t in np.linspace(0.0, 6.0, 13):
        rho = partial_trace_field(engine.state_at(float(t)))
        assert abs(entropy_cardano(rho) - entropy_generic(rho)) <= 1e-9


# ------------------------------------------------------------------ tangle


def test_tangle_pure():
    assert tangle(dm(np.diag([1.0, 0.0]))) == 0.0
    plus = np.full((2, 2), 0.5)
    assert tangle(dm(plus)) == pytest.approx(0.0, abs=1e-12)


def test_tangle_maximally_mixed():
    assert tangle(dm(np.eye(2) / 2)) == pytest.approx(1.0, abs=1e-12)


def test_tangle_hand_value():
    assert tangle(dm(np.diag([0.75, 0.25]))) == pytest.approx(0.75, abs=1e-12)


def test_tangle_rejects_wrong_dim():
    with pytest.raises(ValueError):
        tangle(dm(np.eye(4) / 4))


# ------------------------------------------------------------- concurrence


def bell_phi_plus():
    psi = np.zeros(4)
    psi[0] = psi[3] = 1 / math.sqrt(2)
    return np.outer(psi, psi)


def test_concurrence_bell():
    assert concurrence(dm(bell_phi_plus())) == pytest.approx(1.0, abs=1e-10)


def test_concurrence_product():
    assert concurrence(dm(np.diag([1.0, 0.0, 0.0, 0.0]))) == 0.0


def test_concurrence_werner():
    for p, expected in ((0.5, 0.25), (0.2, 0.0), (1.0, 1.0), (1 / 3, 0.0)):
        rho = p * bell_phi_plus() + (1 - p) * np.eye(4) / 4
        assert concurrence(dm(rho)) == pytest.approx(expected, abs=1e-10)


def test_concurrence_pure_superposition():
    for theta in (0.3, 1.0, np.pi / 2, 2.4):
        psi = np.zeros(4)
        psi[0] = math.cos(theta / 2)
        psi[3] = math.sin(theta / 2)
        rho = dm(np.outer(psi, psi))
        assert concurrence(rho) == pytest.approx(abs(math.sin(theta)), abs=1e-10)


def test_concurrence_half_angle_initial_state():
    # (|ee> + |gg>)/sqrt(2) x coherent: maximally atom-atom entangled up to
    # the weight of the photon numbers below 4k
    params = scenario_preset("a").to_params(k=1, theta=np.pi / 2)
    plan = plan_truncation(params.alpha, 1e-12, 1)
    rho = partial_trace_field(ClosedFormEvolution(params, plan).state_at(0.0))
    assert concurrence(rho) == pytest.approx(1.0, abs=5e-7)


# --------------------------------------------------- local-unitary freedom


def test_measures_invariant_under_local_phases():
    params = scenario_preset("e").to_params(k=1, theta=0.9, alpha=np.sqrt(2))
    plan = plan_truncation(params.alpha, 1e-12, 1)
    rho = partial_trace_field(ClosedFormEvolution(params, plan).state_at(2.2))
    rng = np.random.default_rng(4)
    s0, t0, c0 = (
        entropy_generic(rho),
        tangle(partial_trace_atom2(rho)),
        concurrence(rho),
    )
    for _ in range(5):
        phi1, phi2 = rng.uniform(0, 2 * np.pi, 2)
        u = np.kron(np.diag([np.exp(-1j * phi1), np.exp(1j * phi1)]),
                    np.diag([np.exp(-1j * phi2), np.exp(1j * phi2)]))
        rotated = DensityMatrix(matrix=u @ rho.matrix @ u.conj().T)
        assert abs(entropy_generic(rotated) - s0) <= 1e-12
        assert abs(tangle(partial_trace_atom2(rotated)) - t0) <= 1e-12
        assert abs(concurrence(rotated) - c0) <= 1e-12

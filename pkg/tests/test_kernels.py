import numpy as np
import pytest

from nlcavity import _jacobi_py, kernels

BACKENDS = [("pure-python", _jacobi_py.jacobi_eigh)]
if kernels.BACKEND == "compiled":
    BACKENDS.append(("compiled", lambda a, **kw: kernels.jacobi_eigh(a, **kw)))


def random_hermitian(rng, n, complex_valued=True):
    if complex_valued:
        x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    else:
        x = rng.normal(size=(n, n))
    return (x + x.conj().T) / 2.0


@pytest.mark.parametrize("name,eigh", BACKENDS)
def test_against_numpy_random(name, eigh):
    rng = np.random.default_rng(123)
    for n in (1, 2, 3, 4, 5, 8, 17, 40):
        for complex_valued in (False, True):
            a = random_hermitian(rng, n, complex_valued)
            w, v = eigh(a)
            ref = np.linalg.eigvalsh(a)
            scale = max(1.0, np.max(np.abs(ref)))
            assert np.max(np.abs(w - ref)) <= 1e-11 * scale
            assert np.all(np.diff(w) >= -1e-12 * scale)
            assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 1e-12
            recon = (v * w) @ v.conj().T
            assert np.max(np.abs(recon - a)) <= 1e-11 * scale


@pytest.mark.parametrize("name,eigh", BACKENDS)
def test_off_diagonal_target(name, eigh):
    rng = np.random.default_rng(7)
    a = random_hermitian(rng, 25)
    w, v = eigh(a, tol=1e-13)
    # residual of the similarity transform, not just eigenvalues
    d = v.conj().T @ a @ v
    off = d - np.diag(np.diag(d))
    assert np.linalg.norm(off) <= 5e-13 * np.linalg.norm(a)


@pytest.mark.parametrize("name,eigh", BACKENDS)
def test_trivial_cases(name, eigh):
    w, v = eigh(np.zeros((3, 3)))
    assert np.all(w == 0.0)
    assert np.allclose(v, np.eye(3))
    w, v = eigh(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(w, [1.0, 2.0, 3.0])
    w, v = eigh(np.array([[2.5]]))
    assert np.allclose(w, [2.5])


def test_backends_agree():
    if kernels.BACKEND != "compiled":
        pytest.skip("compiled backend not built")
    rng = np.random.default_rng(99)
    for n in (4, 9, 33):
        a = random_hermitian(rng, n)
        w_pure, _ = _jacobi_py.jacobi_eigh(a)
        w_comp, _ = kernels.jacobi_eigh(a)
        assert np.max(np.abs(w_pure - w_comp)) <= 1e-12 * max(1.0, np.max(np.abs(w_pure)))


def test_rejects_non_square():
    with pytest.raises(ValueError):
        kernels.jacobi_eigh(np.zeros((2, 3)))


def test_graded_matrix_small_eigenvalues():
    # Diagonals spanning many decades: small eigenvalues must stay accurate,
    # which is the regime the brute-force Hamiltonian lives in.
    rng = np.random.default_rng(17)
    d = np.array([1e-3, 1.0, 10.0, 1e3, 1e5, 3e6])
    a = np.diag(d) + 1e-2 * random_hermitian(rng, 6, complex_valued=False)
    w, _ = kernels.jacobi_eigh(a)
    ref = np.linalg.eigvalsh(a)
    # the LAPACK reference itself carries ~u*||A|| absolute error, so only
    # agreement at that level can be demanded
    assert np.max(np.abs(w - ref) / np.maximum(np.abs(ref), 1e-3)) <= 1e-8

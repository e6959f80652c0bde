import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import random_hermitian
from qcommunity import spectral_decompose, toy_hamiltonian, validate_hermitian
from qcommunity.errors import HermiticityError, NonSquareMatrixError


def test_validate_symmetrizes_within_tolerance():
    M = np.array([[0, 1 + 1e-14], [1, 0]])
    out = validate_hermitian(M, tol=1e-12)
    assert out[0, 1] == pytest.approx(1 + 5e-15, abs=5e-16)
    assert out[0, 1] == out[1, 0]


def test_validate_rejects_asymmetry():
    with pytest.raises(HermiticityError) as info:
        validate_hermitian(np.array([[0, 1], [0.5, 0]]))
    assert info.value.max_asymmetry == pytest.approx(0.5)
    assert "0.5" in str(info.value) or "5.000e-01" in str(info.value)


@pytest.mark.parametrize("M", [np.zeros((2, 3)), np.zeros(4), np.zeros((0, 0))])
def test_validate_rejects_non_square(M):
    with pytest.raises(NonSquareMatrixError):
        validate_hermitian(M)


def test_validate_rejects_complex_diagonal():
    with pytest.raises(HermiticityError):
        validate_hermitian(np.array([[1j, 0], [0, 0]]))


def test_pauli_x_decomposition(pauli_x):
    D = spectral_decompose(pauli_x)
    np.testing.assert_allclose(D.eigenvalues, [-1, 1], atol=1e-15)
    np.testing.assert_allclose(D.projectors[0], 0.5 * np.array([[1, -1], [-1, 1]]), atol=1e-15)
    np.testing.assert_allclose(D.projectors[1], 0.5 * np.array([[1, 1], [1, 1]]), atol=1e-15)


def test_disconnected_cliques_have_block_projectors():
    D = spectral_decompose(toy_hamiltonian("a"))
    # spectrum {-1 (x4), 2 (x2)}
    np.testing.assert_allclose(D.eigenvalues, [-1, 2], atol=1e-12)
    cross = D.projectors[:, :3, 3:]
    assert np.max(np.abs(cross)) < 1e-12


def test_degenerate_identity_is_one_space():
    D = spectral_decompose(np.eye(4))
    assert D.n_spaces == 1
    np.testing.assert_allclose(D.projectors[0], np.eye(4), atol=1e-15)


def test_real_input_gives_symmetric_projectors():
    D = spectral_decompose(toy_hamiltonian("d"))
    for P in D.projectors:
        assert np.array_equal(P, P.T)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(1, 12), seed=st.integers(0, 2**32 - 1), complex_=st.booleans())
def test_projector_identities(n, seed, complex_):
    H = random_hermitian(np.random.default_rng(seed), n, complex_)
    D = spectral_decompose(H)
    P = D.projectors
    np.testing.assert_allclose(P.sum(axis=0), np.eye(n), atol=1e-10)
    np.testing.assert_allclose(D.reconstruct(), H, atol=1e-10)
    for j in range(D.n_spaces):
        np.testing.assert_allclose(P[j] @ P[j], P[j], atol=1e-10)
        np.testing.assert_allclose(P[j], P[j].conj().T, atol=1e-14)
        for k in range(j + 1, D.n_spaces):
            assert np.max(np.abs(P[j] @ P[k])) < 1e-10
    assert np.all(np.diff(D.eigenvalues) > D.gap_tol)


def test_degeneracy_tolerance_merges_close_levels():
    H = np.diag([0.0, 1e-12, 1.0])
    assert spectral_decompose(H).n_spaces == 2
    assert spectral_decompose(H, degeneracy_tol=0.0).n_spaces == 3

# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

import numpy as np
import pytest

from luq.equivalence import (
    StateDomainException,
    ToleranceContext,
    Unitary2,
    apply_layer,
    eig_hermitian2,
    eigh2,
    haar_layer,
    haar_state,
    haar_unitary,
    partial_trace,
)


def random_hermitian(rng):
    a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    return a + a.conj().T


def test_descending_diagonal_gives_identity():
    spectrum = eig_hermitian2(np.diag([0.7, 0.3]))
    assert spectrum.lambda1 == pytest.approx(0.7)
    assert spectrum.lambda2 == pytest.approx(0.3)
    assert np.allclose(spectrum.diagonalizer.matrix, np.eye(2))
    assert not spectrum.degenerate


def test_ascending_diagonal_gives_bit_flip():
    spectrum = eig_hermitian2(np.diag([0.25, 0.75]))
    assert np.allclose(spectrum.diagonalizer.matrix, Unitary2.pauli_x().matrix)


def test_equal_magnitude_components_fix_the_first_one():
    spectrum = eig_hermitian2(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(spectrum.diagonalizer.matrix, Unitary2.hadamard().matrix)


def test_identity_is_degenerate():
    spectrum = eig_hermitian2(np.eye(2) / 2)
    assert spectrum.degenerate
    assert spectrum.gap == 0.0
    assert np.allclose(spectrum.diagonalizer.matrix, np.eye(2))


def test_degeneracy_follows_tolerance():
    matrix = np.diag([0.5 + 1e-7, 0.5 - 1e-7])
    assert not eig_hermitian2(matrix).degenerate
    assert eig_hermitian2(matrix, ToleranceContext(degeneracy=1e-6)).degenerate


@pytest.mark.parametrize("seed", range(20))
def test_random_hermitian_is_diagonalized(seed):
    rng = np.random.default_rng(seed)
    matrix = random_hermitian(rng)
    spectrum = eig_hermitian2(matrix)
    w = spectrum.diagonalizer.matrix
    assert np.allclose(w @ w.conj().T, np.eye(2))
    assert np.allclose(w @ matrix @ w.conj().T, np.diag([spectrum.lambda1, spectrum.lambda2]))
    assert np.allclose([spectrum.lambda1, spectrum.lambda2], np.linalg.eigvalsh(matrix)[::-1])


@pytest.mark.parametrize("seed", range(20))
def test_eigenvector_phase_convention(seed):
    rng = np.random.default_rng(seed)
    _, _, w = eigh2(random_hermitian(rng))
    for row in w:
        vector = row.conj()
        pivot = int(np.argmax(np.abs(vector)))
        assert vector[pivot].imag == pytest.approx(0.0, abs=1e-12)
        assert vector[pivot].real > 0.0


def test_eigh2_is_deterministic(rng):
    matrix = random_hermitian(rng)
    first, second = eigh2(matrix), eigh2(matrix.copy())
    assert first[0] == second[0] and first[1] == second[1]
    assert np.array_equal(first[2], second[2])


def test_accepts_reduced_state(rng):
    rho = partial_trace(haar_state(3, rng), [2])
    spectrum = eig_hermitian2(rho)
    assert spectrum.lambda1 + spectrum.lambda2 == pytest.approx(1.0)
    assert spectrum.lambda1 >= spectrum.lambda2 >= 0.0


def test_rejects_non_hermitian():
    with pytest.raises(StateDomainException, match="not Hermitian"):
        eig_hermitian2(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_rejects_wrong_shape():
    with pytest.raises(StateDomainException, match="2x2"):
        eig_hermitian2(np.eye(3))


def test_spectrum_to_dict():
    assert eig_hermitian2(np.diag([1.0, 0.0])).to_dict() == {
        "lambda1": 1.0,
        "lambda2": 0.0,
        "degenerate": False,
    }


@pytest.mark.parametrize("seed", range(5))
def test_diagonalizer_follows_a_change_of_basis(seed):
    rng = np.random.default_rng(seed)
    h = random_hermitian(rng)
    u = haar_unitary(seed).matrix
    w = eig_hermitian2(h).diagonalizer.matrix
    w_rotated = eig_hermitian2(u @ h @ u.conj().T).diagonalizer.matrix
    # W' = D W U^dagger with D a diagonal phase
    d = w_rotated @ u @ w.conj().T
    assert np.allclose(d, np.diag(np.diag(d)), atol=1e-10)
    assert np.allclose(np.abs(np.diag(d)), 1.0)


@pytest.mark.slow
def test_reduced_state_diagonalizers_follow_layers():
    rng = np.random.default_rng(1000)
    for _ in range(1000):
        n = int(rng.integers(2, 5))
        phi = haar_state(n, rng)
        layer = haar_layer(n, rng)
        psi = apply_layer(layer, phi)
        k = int(rng.integers(1, n + 1))
        w_phi = eig_hermitian2(partial_trace(phi, [k]).matrix).diagonalizer.matrix
        w_psi = eig_hermitian2(partial_trace(psi, [k]).matrix).diagonalizer.matrix
        d = w_psi @ layer.factors[k - 1].matrix @ w_phi.conj().T
        assert np.allclose(d, np.diag(np.diag(d)), atol=1e-8)
        assert np.allclose(np.abs(np.diag(d)), 1.0, atol=1e-8)

# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

import numpy as np
import pytest

from luq.equivalence import (
    StateDomainException,
    bell_state,
    ghz_state,
    haar_layer,
    haar_state,
    haar_unitary,
    linear_cluster_state,
    product_state,
    random_layer_image,
    w_state,
)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_ghz_state(n):
    state = ghz_state(n)
    assert state.amp[0] == pytest.approx(1 / np.sqrt(2))
    assert state.amp[-1] == pytest.approx(1 / np.sqrt(2))
    assert np.count_nonzero(state.amp) == 2


def test_w_state():
    state = w_state(3)
    assert np.flatnonzero(state.amp).tolist() == [1, 2, 4]
    assert np.allclose(state.amp[[1, 2, 4]], 1 / np.sqrt(3))


def test_bell_state():
    assert np.allclose(bell_state().amp, [1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2)])


def test_product_state_bits():
    assert product_state(3, bits=[1, 0, 1]).amp[0b101] == 1.0
    assert product_state(2).amp[0] == 1.0


def test_product_state_bit_count():
    with pytest.raises(StateDomainException, match="Expected 3 bits"):
        product_state(3, bits=[1, 0])


def test_linear_cluster_signs():
    state = linear_cluster_state(3)
    signs = np.sign(state.amp.real).astype(int).tolist()
    # a minus sign for every neighbouring pair of ones
    assert signs == [1, 1, 1, -1, 1, 1, -1, 1]
    assert np.allclose(np.abs(state.amp), 1 / np.sqrt(8))


@pytest.mark.parametrize("factory", [ghz_state, w_state, linear_cluster_state])
def test_entangled_fixtures_need_two_qubits(factory):
    with pytest.raises(StateDomainException):
        factory(1)


def test_size_limit():
    with pytest.raises(StateDomainException):
        haar_state(13, 0)


def test_haar_state_is_reproducible():
    assert np.array_equal(haar_state(4, 123).amp, haar_state(4, 123).amp)
    assert not np.array_equal(haar_state(4, 123).amp, haar_state(4, 124).amp)


def test_haar_state_draws_real_parts_first():
    raw = np.random.default_rng(5).standard_normal(8)
    state = haar_state(2, 5)
    expected = raw[:4] + 1j * raw[4:]
    assert np.allclose(state.amp, expected / np.linalg.norm(expected))
    assert state.original_norm == pytest.approx(np.linalg.norm(expected))


def test_haar_state_accepts_generator():
    assert np.array_equal(
        haar_state(3, np.random.default_rng(9)).amp, haar_state(3, 9).amp
    )


def test_haar_unitary_is_unitary():
    u = haar_unitary(4).matrix
    assert np.allclose(u @ u.conj().T, np.eye(2))


def test_haar_layer():
    layer = haar_layer(3, 8)
    assert layer.n == 3
    assert layer.global_phase == 0.0
    assert np.allclose(layer.to_matrix(), haar_layer(3, 8).to_matrix())


def test_random_layer_image_preserves_norm(ghz3):
    image = random_layer_image(ghz3, 2)
    assert np.linalg.norm(image.amp) == pytest.approx(1.0)
    assert not np.allclose(image.amp, ghz3.amp)

# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

import numpy as np
import pytest

from luq.equivalence import (
    LocalUnitaryLayer,
    PreconditionException,
    StateDomainException,
    Unitary2,
    VerdictKind,
    apply_layer,
    check_generic_equivalence,
    fix_phases,
    haar_state,
    haar_unitary,
    partial_trace,
    schmidt_coefficients,
    sorted_trace_decomposition,
    standard_form,
    support_structure,
    trace_decomposition,
    verify_certificate,
)

from .states import from_dense, layer_image, phase_layer, w_w_conjugate


def assert_locally_diagonal(state, atol=1e-10):
    for k in range(1, state.n + 1):
        rho = partial_trace(state, [k]).matrix
        assert abs(rho[0, 1]) < atol


class TestTraceDecomposition:
    def test_reduced_states_become_diagonal(self, rng):
        state = haar_state(4, rng)
        assert_locally_diagonal(trace_decomposition(state).canonical)

    def test_sorted_decomposition_is_descending(self, rng):
        state = haar_state(3, rng)
        canonical = sorted_trace_decomposition(state).canonical
        for k in (1, 2, 3):
            diagonal = np.real(np.diag(partial_trace(canonical, [k]).matrix))
            assert diagonal[0] >= diagonal[1]

    def test_degenerate_qubits_are_flagged(self, ghz3):
        result = sorted_trace_decomposition(ghz3)
        assert not result.generic
        assert result.degenerate_qubits == (1, 2, 3)


class TestStandardForm:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_canonical_form_is_invariant_under_layers(self, n, seed):
        state = haar_state(n, seed)
        reference = standard_form(state)
        assert reference.generic
        for offset in range(5):
            image, _ = layer_image(state, 100 * seed + offset)
            canonical = standard_form(image).canonical.amp
            assert np.allclose(canonical, reference.canonical.amp, atol=1e-8)

    def test_layer_maps_input_onto_canonical(self, rng):
        state = haar_state(3, rng)
        result = standard_form(state)
        assert np.allclose(apply_layer(result.layer, state).amp, result.canonical.amp)

    def test_phase_rows_are_real_and_positive(self, rng):
        result = standard_form(haar_state(4, rng))
        support = result.support
        for index in (support.i0,) + support.S_bar:
            amplitude = result.canonical.amp[index]
            assert amplitude.real > 0.0
            assert amplitude.imag == pytest.approx(0.0, abs=1e-10)

    def test_canonical_input_gives_identity_layer(self, rng):
        canonical = standard_form(haar_state(3, rng)).canonical
        again = standard_form(canonical)
        assert np.allclose(again.layer.to_matrix(), np.eye(8), atol=1e-8)

    def test_ghz_is_not_generic(self, ghz3):
        result = standard_form(ghz3)
        assert not result.generic
        assert np.allclose(apply_layer(result.layer, ghz3).amp, result.canonical.amp)

    @pytest.mark.parametrize("seed", range(25))
    def test_two_qubit_form_matches_schmidt_coefficients(self, seed):
        state = haar_state(2, seed)
        canonical = standard_form(state).canonical.amp
        coefficients = schmidt_coefficients(state)
        assert canonical[0] == pytest.approx(coefficients[0], abs=1e-10)
        assert canonical[3] == pytest.approx(coefficients[1], abs=1e-10)
        assert abs(canonical[1]) < 1e-10 and abs(canonical[2]) < 1e-10

    @pytest.mark.slow
    def test_two_qubit_schmidt_sweep(self):
        rng = np.random.default_rng(2027)
        for _ in range(1000):
            state = haar_state(2, rng)
            canonical = standard_form(state).canonical.amp
            assert np.allclose(canonical[[0, 3]], schmidt_coefficients(state), atol=1e-10)
            assert np.allclose(canonical[[1, 2]], 0.0, atol=1e-10)

    @pytest.mark.slow
    def test_canonicality_sweep(self):
        rng = np.random.default_rng(2026)
        for _ in range(200):
            n = int(rng.integers(2, 7))
            state = haar_state(n, rng)
            reference = standard_form(state).canonical.amp
            for _ in range(5):
                image, _ = layer_image(state, int(rng.integers(2**32)))
                assert np.allclose(standard_form(image).canonical.amp, reference, atol=1e-8)


class TestSupportStructure:
    def test_ghz(self, ghz3):
        support = support_structure(ghz3)
        assert support.S == (0, 7)
        assert support.S_bar == (7,)
        assert support.i0 == 0

    def test_generic_support_selects_unit_bitstrings(self, rng):
        support = support_structure(haar_state(3, rng))
        assert support.S == tuple(range(8))
        assert support.S_bar == (1, 2, 4)
        assert support.i0 == 0

    def test_all_independent_uses_first_element(self):
        state = from_dense([0, 1, 1, 0])
        support = support_structure(state)
        assert support.S == (1, 2)
        assert support.S_bar == (1, 2)
        assert support.i0 == 1


def test_fix_phases_returns_the_applied_phases(rng):
    state = haar_state(3, rng)
    fixed, phases = fix_phases(state)
    assert np.allclose(apply_layer(phases.to_layer(), state).amp, fixed.amp)
    assert fixed.amp[0].real > 0.0
    assert not any(phases.free_mask)


class TestAffinelyDependentAnchor:
    # 1101 = 1011 - 0010 + 0100, coefficients summing to one
    SUPPORT = (0b0001, 0b0010, 0b0100, 0b1011, 0b1101)

    @pytest.fixture
    def state(self, rng):
        amp = np.zeros(16, dtype=np.complex128)
        moduli = [0.6, 0.5, 0.4, 0.35, 0.3]
        phases = rng.uniform(0.0, 2.0 * np.pi, size=5)
        amp[list(self.SUPPORT)] = np.multiply(moduli, np.exp(1j * phases))
        return from_dense(amp)

    def test_support(self, state):
        support = support_structure(state)
        assert support.S_bar == (0b0001, 0b0010, 0b0100, 0b1011)
        assert support.i0 == 0b1101

    def test_every_S_bar_amplitude_is_made_real(self, state):
        fixed, _ = fix_phases(state)
        for index in support_structure(state).S_bar:
            assert fixed.amp[index].real > 0.0
            assert fixed.amp[index].imag == pytest.approx(0.0, abs=1e-10)

    def test_anchor_keeps_its_invariant_phase(self, state):
        fixed, _ = fix_phases(state)
        arg = np.angle(state.amp)
        invariant = arg[0b1101] - arg[0b1011] + arg[0b0010] - arg[0b0100]
        assert np.exp(1j * np.angle(fixed.amp[0b1101])) == pytest.approx(
            np.exp(1j * invariant), abs=1e-10
        )

    def test_layer_images_share_the_form(self, state):
        reference = fix_phases(state)[0].amp
        for seed in range(3):
            alphas = np.random.default_rng(seed).uniform(0.0, 2.0 * np.pi, size=5)
            image = apply_layer(phase_layer(alphas[0], alphas[1:]), state)
            assert np.allclose(fix_phases(image)[0].amp, reference, atol=1e-10)


class TestGenericEquivalence:
    @pytest.mark.parametrize("seed", range(10))
    def test_equivalent_pairs(self, seed):
        phi = haar_state(3, seed)
        psi, _ = layer_image(phi, seed + 1000)
        verdict = check_generic_equivalence(psi, phi)
        assert verdict.kind is VerdictKind.EQUIVALENT
        assert verdict.residual <= 1e-8
        assert verify_certificate(psi, phi, verdict.certificate) <= 1e-8

    @pytest.mark.parametrize("seed", range(10))
    def test_independent_pairs_are_separated(self, seed):
        verdict = check_generic_equivalence(haar_state(3, seed), haar_state(3, seed + 500))
        assert verdict.kind is VerdictKind.NOT_EQUIVALENT
        assert verdict.witness.margin > 10.0

    def test_non_generic_input_is_refused(self, ghz3, rng):
        with pytest.raises(PreconditionException, match="decide_lu_equivalence"):
            check_generic_equivalence(ghz3, haar_state(3, rng))

    def test_size_mismatch(self, rng):
        with pytest.raises(StateDomainException):
            check_generic_equivalence(haar_state(2, rng), haar_state(3, rng))

    @pytest.mark.slow
    def test_generic_sweep(self):
        for seed in range(100):
            phi = haar_state(2 + seed % 4, seed)
            psi, _ = layer_image(phi, seed + 7)
            assert check_generic_equivalence(psi, phi).is_equivalent
            other = haar_state(phi.n, seed + 10_000)
            assert check_generic_equivalence(other, phi).is_not_equivalent


class TestVerifyCertificate:
    def test_identity_on_equal_states(self, rng):
        state = haar_state(3, rng)
        assert verify_certificate(state, state, LocalUnitaryLayer.identity(3)) == pytest.approx(
            0.0, abs=1e-14
        )

    def test_bit_flips_preserve_bell_state(self, bell):
        layer = LocalUnitaryLayer(0.0, (Unitary2.pauli_x(), Unitary2.pauli_x()))
        assert verify_certificate(bell, bell, layer) == pytest.approx(0.0, abs=1e-14)

    @pytest.mark.parametrize("seed", range(100))
    def test_bell_state_symmetry(self, bell, seed):
        layer = w_w_conjugate(haar_unitary(seed))
        assert verify_certificate(bell, bell, layer) <= 1e-10

    def test_unequal_states(self, ghz3, w3):
        assert verify_certificate(ghz3, w3, LocalUnitaryLayer.identity(3)) == pytest.approx(1.0)

    def test_size_mismatch(self, bell, ghz3):
        with pytest.raises(StateDomainException, match="Sizes differ"):
            verify_certificate(ghz3, ghz3, LocalUnitaryLayer.identity(2))


def test_schmidt_coefficients_need_two_qubits(ghz3):
    with pytest.raises(StateDomainException, match="two-qubit"):
        schmidt_coefficients(ghz3)

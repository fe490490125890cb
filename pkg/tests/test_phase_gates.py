# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

import numpy as np
import pytest

from luq.equivalence import (
    PhaseVector,
    StateDomainException,
    UnsupportedSizeException,
    VerdictKind,
    apply_layer,
    best_phase_fit,
    complete_state,
    condition_ii_fourcopy,
    condition_ii_pairwise,
    ghz_state,
    haar_state,
    project_to_support,
    solve_phase_gates,
    support_complement,
    verify_certificate,
)

from .states import from_dense, phase_layer


class TestPhaseVector:
    def test_angles_are_wrapped(self):
        phases = PhaseVector(-0.5, (7.0, -np.pi), (False, False, False))
        assert phases.alpha0 == pytest.approx(2 * np.pi - 0.5)
        assert phases.alpha == pytest.approx((7.0 - 2 * np.pi, np.pi))

    def test_affine_form(self):
        phases = PhaseVector(0.1, (0.2, 0.3), (False,) * 3)
        assert phases.affine([0, 1, 2, 3]) == pytest.approx([0.1, 0.4, 0.3, 0.6])

    def test_zero(self):
        phases = PhaseVector.zero(3)
        assert phases.n == 3
        assert np.allclose(phases.to_layer().to_matrix(), np.eye(8))


class TestSolvePhaseGates:
    def test_planted_phases_are_recovered(self, rng):
        phi = haar_state(3, rng)
        psi = apply_layer(phase_layer(0.4, [0.3, 1.2, 2.5]), phi)
        verdict = solve_phase_gates(psi, phi)
        assert verdict.kind is VerdictKind.EQUIVALENT
        assert verdict.phases.alpha0 == pytest.approx(0.4)
        assert verdict.phases.alpha == pytest.approx((0.3, 1.2, 2.5))
        assert not any(verdict.phases.free_mask)
        assert verify_certificate(psi, phi, verdict.certificate) <= 1e-10

    def test_partial_support_leaves_phases_free(self, ghz3):
        psi = apply_layer(phase_layer(0.0, [0.5, 0.7, 0.9]), ghz3)
        verdict = solve_phase_gates(psi, ghz3)
        assert verdict.is_equivalent
        assert verdict.phases.free_mask == (False, False, True, True)
        assert verdict.phases.alpha[0] == pytest.approx(2.1)
        assert verify_certificate(psi, ghz3, verdict.certificate) <= 1e-10

    def test_different_supports(self):
        verdict = solve_phase_gates(from_dense([1, 0, 0, 1]), from_dense([1, 1, 0, 0]))
        assert verdict.kind is VerdictKind.NOT_EQUIVALENT
        assert verdict.witness.condition == "support"
        assert "|01>" in verdict.witness.description

    def test_different_moduli(self):
        verdict = solve_phase_gates(from_dense([0.8, 0.6]), from_dense([0.6, 0.8]))
        assert verdict.is_not_equivalent
        assert verdict.witness.condition == "moduli"
        assert verdict.witness.margin > 10.0

    def test_phases_without_affine_fit(self):
        verdict = solve_phase_gates(from_dense([1, 1, 1, -1]), from_dense([1, 1, 1, 1]))
        assert verdict.is_not_equivalent
        assert verdict.witness.condition == "phase"
        assert "|11>" in verdict.witness.description

    def test_violation_within_ten_tolerances_is_undetermined(self):
        t, d = np.pi / 4, 5e-8
        verdict = solve_phase_gates(
            from_dense([np.cos(t), np.sin(t)]), from_dense([np.cos(t + d), np.sin(t + d)])
        )
        assert verdict.kind is VerdictKind.UNDETERMINED
        assert "within ten times tolerance" in verdict.diagnostics["reason"]

    def test_size_mismatch(self, bell, ghz3):
        with pytest.raises(StateDomainException):
            solve_phase_gates(bell, ghz3)


class TestCompletion:
    def test_support_complement(self, bell):
        assert support_complement(bell) == (1, 2)

    def test_zero_completion(self, ghz3):
        completion = complete_state(ghz3)
        assert completion.K == (1, 2, 3, 4, 5, 6)
        assert np.allclose(completion.vector[list(completion.K)], 1.0)
        assert completion.vector[0] == pytest.approx(ghz3.amp[0])

    def test_completion_follows_phases(self, ghz3):
        phases = PhaseVector(0.0, (0.5, 0.0, 0.0), (False,) * 4)
        completion = complete_state(ghz3, phases)
        assert completion.vector[0b100] == pytest.approx(np.exp(-0.5j))
        assert completion.vector[0b001] == pytest.approx(1.0)

    def test_completed_state_is_normalized(self, ghz3):
        assert np.linalg.norm(complete_state(ghz3).as_state().amp) == pytest.approx(1.0)

    def test_projection_recovers_the_state(self, ghz3):
        restored = project_to_support(complete_state(ghz3))
        assert np.allclose(restored.amp, ghz3.amp)

    def test_phase_count_must_match(self, ghz3):
        with pytest.raises(StateDomainException, match="Completion phases"):
            complete_state(ghz3, PhaseVector.zero(2))


class TestConditionII:
    @pytest.mark.parametrize("qubit", [1, 2, 3])
    def test_holds_for_phase_images(self, rng, qubit):
        phi = haar_state(3, rng)
        psi = apply_layer(phase_layer(1.0, [0.2, 2.2, 4.0]), phi)
        assert condition_ii_pairwise(psi, phi, qubit)
        assert condition_ii_fourcopy(psi, phi, qubit)

    @pytest.mark.parametrize("seed", range(5))
    @pytest.mark.parametrize("qubit", [1, 2, 3])
    def test_pairwise_and_fourcopy_forms_agree(self, seed, qubit):
        psi, phi = haar_state(3, seed), haar_state(3, seed + 50)
        assert condition_ii_pairwise(psi, phi, qubit) == condition_ii_fourcopy(psi, phi, qubit)
        assert not condition_ii_pairwise(psi, phi, qubit)

    def test_two_qubit_forms_agree(self, rng):
        psi, phi = haar_state(2, rng), haar_state(2, rng)
        assert condition_ii_pairwise(psi, phi, 1) == condition_ii_fourcopy(psi, phi, 1)

    @pytest.mark.parametrize("qubit", [1, 2, 3])
    def test_ghz_and_completed_w_fail(self, ghz3, w3, qubit):
        psi = complete_state(ghz3).as_state()
        phi = complete_state(w3).as_state()
        assert not condition_ii_pairwise(psi, phi, qubit)
        assert not condition_ii_fourcopy(psi, phi, qubit)

    def test_pairs_with_a_vanishing_phi_amplitude_are_skipped(self, rng):
        psi = haar_state(2, rng)
        phi = from_dense([1, 1, 1, 0])
        assert condition_ii_pairwise(psi, phi, 1)
        assert condition_ii_fourcopy(psi, phi, 1)

    def test_vanishing_psi_amplitudes_are_not_skipped(self, rng):
        psi = from_dense([1, 1, 1, 0])
        phi = haar_state(2, rng)
        assert not condition_ii_pairwise(psi, phi, 1)
        assert not condition_ii_fourcopy(psi, phi, 1)

    def test_fourcopy_size_limit(self):
        state = ghz_state(4)
        with pytest.raises(UnsupportedSizeException) as exception_info:
            condition_ii_fourcopy(state, state, 1)
        assert exception_info.value.operation == "condition_ii_fourcopy"

    @pytest.mark.parametrize("qubit", [0, 4])
    def test_qubit_out_of_range(self, ghz3, qubit):
        with pytest.raises(StateDomainException, match="outside"):
            condition_ii_pairwise(ghz3, ghz3, qubit)

    def test_single_qubit_states_are_rejected(self):
        state = from_dense([1, 0])
        with pytest.raises(StateDomainException, match="two qubits"):
            condition_ii_pairwise(state, state, 1)


class TestBestPhaseFit:
    def test_phase_image_reaches_unit_fidelity(self, rng):
        phi = haar_state(3, rng)
        psi = apply_layer(phase_layer(2.0, [0.1, 3.0, 5.0]), phi)
        fidelity, phases = best_phase_fit(psi.amp, phi.amp, 3)
        assert fidelity == pytest.approx(1.0, abs=1e-12)
        mapped = apply_layer(phases.to_layer(), phi)
        assert complex(np.vdot(psi.amp, mapped.amp)) == pytest.approx(1.0, abs=1e-10)

    def test_fidelity_matches_returned_phases(self, rng):
        psi, phi = haar_state(3, rng), haar_state(3, rng)
        fidelity, phases = best_phase_fit(psi.amp, phi.amp, 3)
        overlap = complex(np.vdot(psi.amp, apply_layer(phases.to_layer(), phi).amp))
        assert fidelity <= 1.0 + 1e-12
        assert overlap.real == pytest.approx(fidelity)
        assert overlap.imag == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal_states(self):
        fidelity, _ = best_phase_fit(np.array([1, 0]), np.array([0, 1]), 1)
        assert fidelity == 0.0


@pytest.mark.slow
class TestPhaseGateSweeps:
    def test_condition_ii_forms_agree_on_completed_pairs(self):
        rng = np.random.default_rng(1000)
        for trial in range(1000):
            n = int(rng.integers(2, 4))
            amp = haar_state(n, rng).amp * (rng.uniform(size=2**n) > 0.3)
            if not np.any(amp):
                amp[0] = 1.0
            angles = rng.uniform(0.0, 2.0 * np.pi, size=n + 1)
            completion = PhaseVector(angles[0], tuple(angles[1:]), (False,) * (n + 1))
            phi = complete_state(from_dense(amp), completion).as_state()
            if trial % 2:
                planted = rng.uniform(0.0, 2.0 * np.pi, size=n + 1)
                psi = apply_layer(phase_layer(planted[0], planted[1:]), phi)
            else:
                psi = complete_state(haar_state(n, rng)).as_state()
            for qubit in range(1, n + 1):
                pairwise = condition_ii_pairwise(psi, phi, qubit)
                assert pairwise == condition_ii_fourcopy(psi, phi, qubit)
                if trial % 2:
                    assert pairwise

    def test_planted_phases_are_recovered(self):
        rng = np.random.default_rng(1001)
        for _ in range(1000):
            n = int(rng.integers(2, 6))
            phi = haar_state(n, rng)
            planted = rng.uniform(0.0, 2.0 * np.pi, size=n + 1)
            psi = apply_layer(phase_layer(planted[0], planted[1:]), phi)
            verdict = solve_phase_gates(psi, phi)
            assert verdict.is_equivalent
            expected = PhaseVector(planted[0], tuple(planted[1:]), (False,) * (n + 1))
            indices = list(range(2**n))
            assert np.allclose(
                np.exp(1j * np.asarray(verdict.phases.affine(indices))),
                np.exp(1j * np.asarray(expected.affine(indices))),
                atol=1e-9,
            )

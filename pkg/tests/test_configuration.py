# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

import numpy as np
import pytest

from luq.equivalence import DEFAULT_TOLERANCES, SolverConfiguration, ToleranceContext
from luq.equivalence._util import (
    angle_residual,
    bits_of,
    bitstring,
    greedy_independent_rows,
    index_of,
    solve_affine_phases,
    wrap_angle,
)



class TestToleranceContext:
    def test_defaults(self):
        assert DEFAULT_TOLERANCES.norm == 1e-10
        assert DEFAULT_TOLERANCES.degeneracy == 1e-8
        assert DEFAULT_TOLERANCES.fidelity_accept == 1e-8

    @pytest.mark.parametrize("name", ["norm", "hermitian", "unitary", "degeneracy", "phase"])
    def test_tolerances_must_be_positive(self, name):
        with pytest.raises(ValueError, match=name):
            ToleranceContext(**{name: 0.0})

    def test_replace_skips_none(self):
        replaced = DEFAULT_TOLERANCES.replace(fidelity_accept=1e-6, degeneracy=None)
        assert replaced.fidelity_accept == 1e-6
        assert replaced.degeneracy == DEFAULT_TOLERANCES.degeneracy
        assert DEFAULT_TOLERANCES.fidelity_accept == 1e-8


class TestSolverConfiguration:
    def test_defaults(self):
        output = SolverConfiguration().to_dict()
        assert output["restarts"] == 64
        assert output["max_iterations"] == 2000
        assert output["seed"] == 0
        assert output["workers"] == 1
        assert output["max_flip_patterns"] == 64
        assert output["max_conditioning"] == 3
        assert output["tolerances"]["phase"] == 1e-8

    def test_from_dict_inverts_to_dict(self):
        configuration = SolverConfiguration(
            tolerances=ToleranceContext(degeneracy=1e-7), restarts=8, seed=42, workers=3
        )
        restored = SolverConfiguration.from_dict(configuration.to_dict())
        assert restored.to_dict() == configuration.to_dict()
        assert restored.tolerances == configuration.tolerances

    def test_from_dict_fills_defaults(self):
        restored = SolverConfiguration.from_dict({"seed": 5})
        assert restored.seed == 5
        assert restored.tolerances is DEFAULT_TOLERANCES

    def test_from_dict_rejects_bad_tolerances(self):
        with pytest.raises(ValueError, match="tolerances"):
            SolverConfiguration.from_dict({"tolerances": [1e-8]})

    @pytest.mark.parametrize(
        "kwargs", [{"restarts": 0}, {"workers": 0}, {"seed": -1}, {"seed": 2**64}]
    )
    def test_invalid_values(self, kwargs):
        with pytest.raises(ValueError):
            SolverConfiguration(**kwargs)

    def test_repr(self):
        assert repr(SolverConfiguration(restarts=3, seed=9)) == (
            "<SolverConfiguration restarts: 3, seed: 9>"
        )


@pytest.mark.parametrize(
    "angle, expected", [(-0.5, 2 * np.pi - 0.5), (2 * np.pi, 0.0), (7.0, 7.0 - 2 * np.pi)]
)
def test_wrap_angle(angle, expected):
    assert wrap_angle(angle) == pytest.approx(expected)
    assert 0.0 <= wrap_angle(angle) < 2 * np.pi


def test_angle_residual():
    assert angle_residual(2 * np.pi + 0.1) == pytest.approx(0.1)
    assert angle_residual(-0.1) == pytest.approx(-0.1)


def test_bits_use_first_qubit_as_most_significant():
    assert bits_of(0b110, 3) == (1, 1, 0)
    assert index_of((1, 1, 0)) == 6
    assert bitstring(5, 4) == "0101"


def test_greedy_independent_rows():
    rows = np.array([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]], dtype=float)
    assert greedy_independent_rows(rows) == [0, 1, 3]


def test_affine_phases_with_dependent_row():
    bits = np.array([[0, 0], [0, 1], [1, 0], [1, 1]], dtype=float)
    solution = solve_affine_phases(bits, [0.1, 0.3, 0.6, 0.8])
    assert solution.values == pytest.approx((0.1, 0.5, 0.2))
    assert solution.skipped == (3,)
    assert not any(solution.free_mask)


def test_affine_phases_pin_free_unknowns():
    bits = np.array([[0, 0, 0], [1, 1, 1]], dtype=float)
    solution = solve_affine_phases(bits, [0.0, 1.0])
    assert solution.free_mask == (False, False, True, True)
    assert solution.values == pytest.approx((0.0, 1.0, 0.0, 0.0))

# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

import pytest

from luq.equivalence import (
    PreconditionException,
    StateDomainException,
    StateFileException,
    ToleranceWarning,
    UnsupportedSizeException,
)


@pytest.mark.parametrize("exception_type", [StateDomainException, PreconditionException])
def test_domain_exception_repr(exception_type):
    exception = exception_type("Qubit index 4 is outside 1..3.")
    exception_from_repr = eval(repr(exception))
    assert type(exception_from_repr) == type(exception)
    assert exception_from_repr.message == exception.message
    assert str(exception) == exception.message


def test_precondition_is_a_domain_exception():
    assert issubclass(PreconditionException, StateDomainException)
    assert issubclass(StateDomainException, ValueError)


def test_unsupported_size_repr():
    exception = UnsupportedSizeException(4, 3, "condition_ii_fourcopy")
    exception_from_repr = eval(repr(exception))
    assert type(exception_from_repr) == type(exception)
    assert (exception_from_repr.n, exception_from_repr.limit) == (4, 3)
    assert exception_from_repr.operation == "condition_ii_fourcopy"
    assert "at most 3 qubits, got 4" in str(exception)


def test_state_file_exception_repr():
    exception = StateFileException("states/psi.json", "n: Input should be a valid integer", 2, 8)
    exception_from_repr = eval(repr(exception))
    assert type(exception_from_repr) == type(exception)
    assert exception_from_repr.path == exception.path
    assert exception_from_repr.reason == exception.reason
    assert (exception_from_repr.line, exception_from_repr.column) == (2, 8)


@pytest.mark.parametrize(
    "line, column, expected",
    [
        (None, None, "psi.json: broken"),
        (3, None, "psi.json:3: broken"),
        (3, 14, "psi.json:3:14: broken"),
    ],
)
def test_state_file_exception_str(line, column, expected):
    assert str(StateFileException("psi.json", "broken", line, column)) == expected


def test_tolerance_warning():
    message = "Dependency chain needs 3 variables, more than 2 for 4 qubits."

    tolerance_warning = ToleranceWarning(message)
    warning_from_repr = eval(repr(tolerance_warning))
    assert type(warning_from_repr) == type(tolerance_warning)
    assert warning_from_repr.message == tolerance_warning.message

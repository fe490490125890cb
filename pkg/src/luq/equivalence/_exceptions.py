# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

from typing import Optional


class StateDomainException(ValueError):
    """
    Provides the exception to raise when an operation receives arguments outside its domain.

    Typical causes are a qubit index outside ``1..n``, a layer whose size does not match the
    state, or an amplitude vector whose length is not a power of two.

    Parameters
    ----------
    message : str
        Description of the violated domain condition.
    """

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message

    def __repr__(self) -> str:
        """Printable representation of the object."""
        return f"{type(self).__name__}('{self.message}')"


class PreconditionException(StateDomainException):
    """
    Provides the exception to raise when an operation is called outside its precondition.

    The input is well formed but the operation is not defined for it, for example a
    non-generic state passed to the generic equivalence check. The message names the
    operation the caller should use instead.

    Parameters
    ----------
    message : str
        Description of the precondition failure.
    """


class UnsupportedSizeException(StateDomainException):
    """
    Provides the exception to raise when a qubit count is outside the supported range.

    Parameters
    ----------
    n : int
        Requested number of qubits.
    limit : int
        Largest number of qubits the operation supports.
    operation : str, optional
        Name of the operation that refused the size. The default is ``"state"``.
    """

    def __init__(self, n: int, limit: int, operation: str = "state") -> None:
        self.n = n
        self.limit = limit
        self.operation = operation
        super().__init__(f"{operation} supports at most {limit} qubits, got {n}.")

    def __repr__(self) -> str:
        """Printable representation of the object."""
        return f"UnsupportedSizeException({self.n}, {self.limit}, '{self.operation}')"


class StateFileException(ValueError):
    """
    Provides the exception to raise when a state, layer or certificate file cannot be parsed.

    For more information about the failure, inspect ``.path``, ``.line`` and ``.column``.

    Parameters
    ----------
    path : str
        Path of the offending file.
    reason : str
        Description of the problem.
    line : int, optional
        One-based line number of the failure. The default is ``None``.
    column : int, optional
        One-based column number of the failure. The default is ``None``.
    """

    path: str
    reason: str
    line: Optional[int]
    column: Optional[int]

    def __init__(
        self,
        path: str,
        reason: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        self.path = path
        self.reason = reason
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        """Printable description of the object."""
        location = self.path
        if self.line is not None:
            location += f":{self.line}"
            if self.column is not None:
                location += f":{self.column}"
        return f"{location}: {self.reason}"

    def __repr__(self) -> str:
        """Printable representation of the object."""
        return f"StateFileException('{self.path}', '{self.reason}', {self.line}, {self.column})"


class ToleranceWarning(UserWarning):
    """
    Provides a warning for results that sit close to a numerical tolerance boundary.

    Emitted by the dependency chain in two cases. Either a reduced state sits between
    ``tol.degeneracy`` and ten times it from the maximally mixed state, and the verdict becomes
    undetermined. Or the chain needs more variables than half the qubit count, rounded up.

    Parameters
    ----------
    message : str
        Cause of the warning and the quantity involved.
    """

    def __init__(self, message: str) -> None:
        self.message = message

    def __repr__(self) -> str:
        """Printable representation of the object."""
        return f"ToleranceWarning('{self.message}')"

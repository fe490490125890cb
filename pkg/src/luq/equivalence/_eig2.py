# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

"""Closed-form eigendecomposition of 2x2 Hermitian matrices with a fixed phase convention."""

from dataclasses import dataclass
import math
from typing import Dict, Tuple, Union

import numpy as np
import numpy.typing as npt

from ._base import ComplexArray, ResultBase, SerializedType
from ._exceptions import StateDomainException
from ._state import HermitianReduced, Unitary2
from ._util import DEFAULT_TOLERANCES, ToleranceContext

_EQUAL_MAGNITUDE = 1e-12


@dataclass(frozen=True, eq=False)
class Spectrum2(ResultBase):
    """Eigenvalues ``lambda1 >= lambda2`` and a unitary ``W`` diagonalizing the matrix.

    ``W H W^dagger = diag(lambda1, lambda2)``; ``degenerate`` is set when the gap is at or below
    ``tol.degeneracy``.
    """

    lambda1: float
    lambda2: float
    diagonalizer: Unitary2
    degenerate: bool

    @property
    def gap(self) -> float:
        """Eigenvalue gap ``lambda1 - lambda2``."""
        return self.lambda1 - self.lambda2

    def to_dict(self) -> Dict[str, SerializedType]:
        """Return the eigenvalues and the degeneracy flag."""
        return {"lambda1": self.lambda1, "lambda2": self.lambda2, "degenerate": self.degenerate}


def _fix_phase(vector: ComplexArray) -> ComplexArray:
    # largest-magnitude component real positive; the first one on ties
    magnitudes = np.abs(vector)
    tied = abs(magnitudes[0] - magnitudes[1]) <= _EQUAL_MAGNITUDE
    pivot = 0 if tied else int(np.argmax(magnitudes))
    return vector * (abs(vector[pivot]) / vector[pivot])  # type: ignore[no-any-return]


def eigh2(matrix: npt.ArrayLike) -> Tuple[float, float, ComplexArray]:
    """Eigenvalues and diagonalizer of a raw 2x2 Hermitian matrix, without validation.

    Writing ``H = [[a, b], [conj(b), d]]`` with ``t = (a + d) / 2``, ``z = (a - d) / 2`` and
    ``r = sqrt(z**2 + |b|**2)``, the eigenvalues are ``t + r`` and ``t - r``. The top eigenvector is
    taken from whichever row of ``H - (t + r)`` avoids cancellation.

    Returns
    -------
    tuple
        ``(lambda1, lambda2, W)`` where the rows of ``W`` are the conjugated eigenvectors.
    """
    h = np.asarray(matrix, dtype=np.complex128)
    a = float(h[0, 0].real)
    d = float(h[1, 1].real)
    b = complex(0.5 * (h[0, 1] + np.conj(h[1, 0])))
    t = 0.5 * (a + d)
    z = 0.5 * (a - d)
    r = math.hypot(z, abs(b))
    if r == 0.0:
        return t, t, np.eye(2, dtype=np.complex128)
    if z >= 0.0:
        top = np.array([z + r, np.conj(b)], dtype=np.complex128)
    else:
        top = np.array([b, r - z], dtype=np.complex128)
    top = _fix_phase(top / np.linalg.norm(top))
    bottom = _fix_phase(np.array([-np.conj(top[1]), np.conj(top[0])]))
    return t + r, t - r, np.vstack([top.conj(), bottom.conj()])


def eig_hermitian2(
    h: Union[HermitianReduced, npt.ArrayLike], tol: ToleranceContext = DEFAULT_TOLERANCES
) -> Spectrum2:
    """Diagonalize a 2x2 Hermitian matrix deterministically.

    Each eigenvector is scaled so that its largest-magnitude component is real and positive; when
    both components have equal magnitude (within ``1e-12``) the first component is made real and
    positive. The rows of the diagonalizer are the conjugated eigenvectors in descending
    eigenvalue order, so ``W @ H @ W^dagger`` is diagonal.

    Parameters
    ----------
    h : HermitianReduced or array_like
        Single-qubit reduced state or raw 2x2 Hermitian matrix.
    tol : ToleranceContext, optional
        Tolerances for the Hermiticity check and the degeneracy flag.

    Returns
    -------
    Spectrum2
        Eigenvalues, diagonalizer and degeneracy flag (gap at or below ``tol.degeneracy``).

    Raises
    ------
    StateDomainException
        If the matrix is not 2x2 or not Hermitian within ``tol.hermitian``.
    """
    matrix = np.asarray(h.matrix if isinstance(h, HermitianReduced) else h, dtype=np.complex128)
    if matrix.shape != (2, 2):
        raise StateDomainException(f"Expected a 2x2 matrix, got shape {matrix.shape}.")
    deviation = float(np.max(np.abs(matrix - matrix.conj().T)))
    if deviation > tol.hermitian * (1.0 + float(np.max(np.abs(matrix)))):
        raise StateDomainException(f"Matrix is not Hermitian (deviation {deviation:.3e}).")
    lambda1, lambda2, w = eigh2(matrix)
    return Spectrum2(lambda1, lambda2, Unitary2(w), lambda1 - lambda2 <= tol.degeneracy)

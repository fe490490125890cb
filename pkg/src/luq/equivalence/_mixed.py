# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

"""Local-unitary equivalence of mixed states through a non-degenerate eigenvector pair."""

from typing import Dict, List, Optional

import numpy as np

from ._base import RealArray
from ._exceptions import StateDomainException
from ._logger import logger
from ._solver import decide_lu_equivalence
from ._state import HermitianReduced, PureState, apply_layer_to_density
from ._util import SolverConfiguration, ToleranceContext
from ._verdict import Verdict

MIXED_RESIDUAL = 1e-8


def _check_density(rho: HermitianReduced, tol: ToleranceContext) -> None:
    if abs(rho.trace - 1.0) > tol.hermitian * rho.matrix.shape[0]:
        raise StateDomainException(f"Density matrix has trace {rho.trace!r}, expected 1.")


def _non_degenerate(values: RealArray, threshold: float) -> List[int]:
    # positions of the descending spectrum separated from both neighbours
    gaps = np.abs(np.diff(values))
    isolated = []
    for m in range(values.size):
        left = gaps[m - 1] if m > 0 else np.inf
        right = gaps[m] if m < gaps.size else np.inf
        if min(left, right) > threshold:
            isolated.append(m)
    return isolated


def mixed_state_criterion(
    rho: HermitianReduced,
    sigma: HermitianReduced,
    configuration: Optional[SolverConfiguration] = None,
) -> Verdict:
    """Decide whether ``rho = L sigma L^dagger`` for a layer of single-qubit unitaries.

    A local-unitary layer relating the two density matrices must map the eigenvector of every
    non-degenerate eigenvalue of ``sigma`` onto the matching eigenvector of ``rho``. The pure-state
    decision is therefore run on such an eigenvector pair, largest eigenvalue first, and any
    certificate it returns is checked against the full matrices.

    Parameters
    ----------
    rho, sigma : HermitianReduced
        Full-system density matrices of equal dimension ``2**n``.
    configuration : SolverConfiguration, optional
        Tolerances and search parameters for the pure-state decisions.

    Returns
    -------
    Verdict
        Equivalent when a certificate maps ``sigma`` onto ``rho`` with Frobenius residual at most
        ``1e-8``; NotEquivalent when the spectra or an eigenvector pair are provably different;
        Undetermined when no eigenvalue is non-degenerate or no certificate passes the check.

    Raises
    ------
    StateDomainException
        If the matrices have different sizes or are not normalized.
    """
    configuration = configuration or SolverConfiguration(tolerances=rho.tol)
    tol = configuration.tolerances
    if rho.matrix.shape != sigma.matrix.shape:
        raise StateDomainException(
            f"Cannot compare density matrices of shapes {rho.matrix.shape} and "
            f"{sigma.matrix.shape}."
        )
    _check_density(rho, tol)
    _check_density(sigma, tol)

    values_rho, vectors_rho = np.linalg.eigh(rho.matrix)
    values_sigma, vectors_sigma = np.linalg.eigh(sigma.matrix)
    values_rho, vectors_rho = values_rho[::-1], vectors_rho[:, ::-1]
    values_sigma, vectors_sigma = values_sigma[::-1], vectors_sigma[:, ::-1]

    gaps = np.abs(values_rho - values_sigma)
    worst = int(np.argmax(gaps))
    if gaps[worst] > tol.degeneracy:
        margin = float(gaps[worst] / tol.degeneracy)
        description = (
            f"density matrix spectra differ at eigenvalue {worst + 1}: "
            f"{values_rho[worst]:.6g} vs {values_sigma[worst]:.6g}"
        )
        if margin > 10.0:
            return Verdict.not_equivalent("spectra", description, margin)
        return Verdict.undetermined(f"{description} (within ten times tolerance)")

    candidates = [
        m
        for m in _non_degenerate(values_rho, tol.degeneracy)
        if m in _non_degenerate(values_sigma, tol.degeneracy)
    ]
    if not candidates:
        return Verdict.undetermined("criterion inapplicable: no non-degenerate eigenvalue")

    attempts: List[Dict[str, object]] = []
    for m in candidates:
        psi = PureState.from_amplitudes(vectors_rho[:, m], tol)
        phi = PureState.from_amplitudes(vectors_sigma[:, m], tol)
        verdict = decide_lu_equivalence(psi, phi, configuration)
        logger.debug(f"Eigenvector pair {m + 1}: {verdict.kind.value}")
        if verdict.is_not_equivalent:
            return verdict.with_diagnostics(eigenvalue=float(values_rho[m]))
        if not verdict.is_equivalent or verdict.certificate is None:
            attempts.append({"eigenvalue": float(values_rho[m]), "verdict": verdict.kind.value})
            continue
        mapped = apply_layer_to_density(verdict.certificate, sigma)
        residual = float(np.linalg.norm(rho.matrix - mapped.matrix))
        attempts.append({"eigenvalue": float(values_rho[m]), "frobenius_residual": residual})
        if residual <= MIXED_RESIDUAL:
            logger.info(f"Density matrices are equivalent (Frobenius residual {residual:.3e})")
            return Verdict.equivalent(
                verdict.certificate,
                residual,
                eigenvalue=float(values_rho[m]),
                eigenvector_residual=verdict.residual,
            )
    return Verdict.undetermined(
        "no eigenvector certificate maps the density matrices onto each other", attempts=attempts
    )

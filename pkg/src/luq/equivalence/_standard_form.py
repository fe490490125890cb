# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt

from ._base import ResultBase
from ._eig2 import Spectrum2, eig_hermitian2
from ._exceptions import PreconditionException, StateDomainException
from ._logger import logger
from ._phase_gates import PhaseVector
from ._state import (
    LocalUnitaryLayer,
    PureState,
    Unitary2,
    apply_layer,
    overlap,
    partial_trace,
)
from ._util import bit_matrix, bitstring, greedy_independent_rows, solve_affine_phases
from ._verdict import Verdict

NEAR_DEGENERATE_FACTOR = 10.0


@dataclass(frozen=True)
class SupportStructure(ResultBase):
    """Support of a state and the rows used to fix its phases.

    Attributes
    ----------
    S : tuple of int
        Basis indices with modulus above ``tol.norm``, in lexicographic order.
    S_bar : tuple of int
        Greedy lexicographic selection of elements of ``S`` whose bitstrings are linearly
        independent as real 0/1 vectors.
    i0 : int
        Anchor index for the global phase: the first element of ``S`` that is linearly dependent
        on earlier ones, or the first element of ``S`` when all of them are independent.
    """

    S: Tuple[int, ...]
    S_bar: Tuple[int, ...]
    i0: int


@dataclass(frozen=True, eq=False)
class StandardFormResult(ResultBase):
    """A representative of the local-unitary class of a state and the layer reaching it.

    ``apply_layer(layer, input)`` equals ``canonical``. ``generic`` is set when no single-qubit
    reduced state is degenerate, and only then is ``canonical`` unique within the class.

    The amplitudes of ``canonical`` at ``S_bar`` are real and positive. The amplitude at ``i0`` is
    too, unless its bitstring is an affine combination of those in ``S_bar``; its phase is then
    fixed by the ``S_bar`` amplitudes. The all-zeros anchor is never such a combination.
    """

    canonical: PureState
    layer: LocalUnitaryLayer
    spectra: Tuple[Spectrum2, ...]
    generic: bool
    phases: Optional[PhaseVector] = None
    support: Optional[SupportStructure] = field(default=None, repr=False)

    @property
    def degenerate_qubits(self) -> Tuple[int, ...]:
        """One-based labels of the qubits whose reduced state is degenerate."""
        return tuple(k + 1 for k, s in enumerate(self.spectra) if s.degenerate)


def _local_spectra(state: PureState) -> Tuple[Spectrum2, ...]:
    return tuple(
        eig_hermitian2(partial_trace(state, [k]), state.tol) for k in range(1, state.n + 1)
    )


def trace_decomposition(state: PureState) -> StandardFormResult:
    """Rotate every qubit into the eigenbasis of its reduced state.

    The layer factors are the :func:`eig_hermitian2` diagonalizers, so every single-qubit reduced
    state of the result is diagonal in the computational basis. No phases are fixed.
    """
    spectra = _local_spectra(state)
    layer = LocalUnitaryLayer(0.0, tuple(s.diagonalizer for s in spectra))
    canonical = apply_layer(layer, state)
    generic = not any(s.degenerate for s in spectra)
    return StandardFormResult(canonical, layer, spectra, generic)


def sorted_trace_decomposition(state: PureState) -> StandardFormResult:
    """Trace decomposition with the diagonal of every reduced state in descending order.

    A qubit whose diagonal comes out ascending is flipped with a Pauli X. Degenerate qubits are
    flagged on the spectra and clear the ``generic`` flag.
    """
    decomposition = trace_decomposition(state)
    flips = []
    for k in range(1, state.n + 1):
        diagonal = np.real(np.diag(partial_trace(decomposition.canonical, [k]).matrix))
        flips.append(diagonal[1] > diagonal[0] + state.tol.degeneracy)
    if not any(flips):
        return decomposition
    flip_layer = LocalUnitaryLayer(
        0.0, tuple(Unitary2.pauli_x() if f else Unitary2.identity() for f in flips)
    )
    layer = flip_layer.compose(decomposition.layer)
    return StandardFormResult(
        apply_layer(layer, state), layer, decomposition.spectra, decomposition.generic
    )


def support_structure(state: PureState) -> SupportStructure:
    """Compute the support ``S``, its independent subset ``S_bar`` and the anchor ``i0``."""
    S = tuple(int(i) for i in np.flatnonzero(np.abs(state.amp) > state.tol.norm))
    selected = greedy_independent_rows(bit_matrix(S, state.n))
    S_bar = tuple(S[r] for r in selected)
    dependent = [i for i in S if i not in S_bar]
    i0 = dependent[0] if dependent else S[0]
    return SupportStructure(S, S_bar, i0)


def fix_phases(state: PureState) -> Tuple[PureState, PhaseVector]:
    """Remove the phase-gate freedom left after a sorted trace decomposition.

    Solves ``arg(c_i) + alpha_0 + sum_k alpha_k * i_k = 0 (mod 2*pi)`` on the rows ``S_bar`` and
    then ``i0``, so the amplitudes there become real and positive. Angles the rows leave
    undetermined are pinned to zero. The ``S_bar`` rows are linearly independent and are always
    imposed. When the row of ``i0`` is an affine combination of them, with coefficients summing to
    one, the phase of ``c_i0`` is unchanged by every phase layer and is left as it is.

    Returns
    -------
    tuple
        The phase-fixed state and the phases applied to reach it.
    """
    support = support_structure(state)
    rows = list(support.S_bar) + ([support.i0] if support.i0 not in support.S_bar else [])
    targets = [-float(np.angle(state.amp[i])) for i in rows]
    solution = solve_affine_phases(bit_matrix(rows, state.n), targets)
    if solution.skipped:
        logger.debug(
            f"Anchor {bitstring(support.i0, state.n)} is affinely dependent on S_bar, its phase "
            "is a phase-gate invariant"
        )
    phases = PhaseVector(solution.values[0], solution.values[1:], solution.free_mask)
    return apply_layer(phases.to_layer(), state), phases


def standard_form(state: PureState) -> StandardFormResult:
    """Compute the standard form of a state.

    Composes :func:`sorted_trace_decomposition` with :func:`fix_phases`. For generic states the
    result depends only on the local-unitary class of the input; for non-generic states it is a
    valid representative but not a unique one.

    Parameters
    ----------
    state : PureState
        Input state.

    Returns
    -------
    StandardFormResult
        Canonical state, the layer mapping the input onto it, the local spectra and the
        genericity flag.
    """
    decomposition = sorted_trace_decomposition(state)
    canonical, phases = fix_phases(decomposition.canonical)
    layer = phases.to_layer().compose(decomposition.layer)
    logger.debug(
        f"Standard form on {state.n} qubits, degenerate qubits {decomposition.degenerate_qubits}"
    )
    return StandardFormResult(
        canonical,
        layer,
        decomposition.spectra,
        decomposition.generic,
        phases,
        support_structure(decomposition.canonical),
    )


def _near_degenerate(spectra: Tuple[Spectrum2, ...], threshold: float) -> Tuple[int, ...]:
    return tuple(
        k + 1
        for k, s in enumerate(spectra)
        if threshold < s.gap <= NEAR_DEGENERATE_FACTOR * threshold
    )


def check_generic_equivalence(psi: PureState, phi: PureState) -> Verdict:
    """Decide local-unitary equivalence of two generic states by comparing standard forms.

    The certificate is ``(layer_psi)^-1 . layer_phi`` and maps ``phi`` onto ``psi``.

    Returns
    -------
    Verdict
        Equivalent with a verified certificate, NotEquivalent when a local spectrum or a canonical
        amplitude differs by more than ten times its tolerance, Undetermined otherwise (including
        spectra whose gap sits within ten times the degeneracy threshold).

    Raises
    ------
    StateDomainException
        If the states have different qubit counts.
    PreconditionException
        If either state has a degenerate single-qubit reduced state.
    """
    if psi.n != phi.n:
        raise StateDomainException(f"Cannot compare states on {psi.n} and {phi.n} qubits.")
    tol = psi.tol
    form_psi = standard_form(psi)
    form_phi = standard_form(phi)
    if not (form_psi.generic and form_phi.generic):
        raise PreconditionException(
            "check_generic_equivalence needs generic states; use decide_lu_equivalence instead."
        )
    borderline = _near_degenerate(form_psi.spectra, tol.degeneracy) + _near_degenerate(
        form_phi.spectra, tol.degeneracy
    )
    if borderline:
        return Verdict.undetermined(
            f"local spectra of qubits {sorted(set(borderline))} are nearly degenerate"
        )

    gaps = np.array(
        [abs(a.lambda1 - b.lambda1) for a, b in zip(form_psi.spectra, form_phi.spectra)]
    )
    worst = int(np.argmax(gaps))
    if gaps[worst] > tol.degeneracy:
        a, b = form_psi.spectra[worst], form_phi.spectra[worst]
        description = (
            f"spectra of qubit {worst + 1} differ: ({a.lambda1:.6g}, {a.lambda2:.6g}) vs "
            f"({b.lambda1:.6g}, {b.lambda2:.6g})"
        )
        margin = float(gaps[worst] / tol.degeneracy)
        if margin > NEAR_DEGENERATE_FACTOR:
            return Verdict.not_equivalent("spectra", description, margin)
        return Verdict.undetermined(f"{description} (within ten times tolerance)")

    differences = np.abs(form_psi.canonical.amp - form_phi.canonical.amp)
    mismatched = np.flatnonzero(differences > NEAR_DEGENERATE_FACTOR * tol.phase)
    if mismatched.size:
        index = int(mismatched[0])
        description = (
            f"standard forms differ at |{bitstring(index, psi.n)}>: "
            f"{_format_amplitude(form_psi.canonical.amp[index])} vs "
            f"{_format_amplitude(form_phi.canonical.amp[index])}"
        )
        return Verdict.not_equivalent(
            "standard_form", description, float(differences[index] / tol.phase)
        )
    if float(np.max(differences)) > tol.phase:
        return Verdict.undetermined(
            f"standard forms agree only within ten times tolerance "
            f"(largest difference {float(np.max(differences)):.3e})"
        )

    certificate = form_psi.layer.inverse().compose(form_phi.layer)
    residual = verify_certificate(psi, phi, certificate)
    if residual > tol.fidelity_accept:
        return Verdict.undetermined(
            "standard forms agree but the certificate residual exceeds the acceptance threshold",
            residual,
        )
    logger.info(f"Generic states are equivalent (residual {residual:.3e})")
    return Verdict.equivalent(certificate, residual, path="generic")


def verify_certificate(psi: PureState, phi: PureState, layer: LocalUnitaryLayer) -> float:
    """Return ``1 - |<psi|L|phi>|``, clipped at zero."""
    if psi.n != phi.n or layer.n != psi.n:
        raise StateDomainException(
            f"Sizes differ: states on {psi.n} and {phi.n} qubits, layer on {layer.n}."
        )
    return max(0.0, 1.0 - abs(overlap(psi, apply_layer(layer, phi))))


def schmidt_coefficients(state: PureState) -> npt.NDArray[np.float64]:
    """Descending Schmidt coefficients of a two-qubit state.

    Raises
    ------
    StateDomainException
        If the state is not on two qubits.
    """
    if state.n != 2:
        raise StateDomainException(f"Schmidt coefficients need a two-qubit state, got n={state.n}.")
    return np.linalg.svd(state.amp.reshape(2, 2), compute_uv=False)  # type: ignore[no-any-return]


def _format_amplitude(value: complex) -> str:
    return f"{value.real:+.6g}{value.imag:+.6g}j"

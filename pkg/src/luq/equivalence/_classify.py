# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from ._base import RealArray, ResultBase
from ._exceptions import StateDomainException
from ._logger import logger
from ._state import PureState, partial_trace
from ._util import ToleranceContext
from ._verdict import Verdict

WITNESS_MARGIN = 10.0
MAX_CLASS_CONDITIONING = 2


@dataclass(frozen=True)
class EntanglementClass(ResultBase):
    """Which reduced states of a state are proportional to the identity.

    Attributes
    ----------
    maximally_mixed : tuple of bool
        Per qubit, whether ``rho_i`` is proportional to the identity within ``tol.degeneracy``.
    mixed_pairs : tuple of tuple
        One-based pairs ``(i, j)``, ``i < j``, whose ``rho_ij`` is proportional to the identity.
    borderline : tuple of tuple
        Subsets whose distance from the identity lies within ten times the threshold. Decisions
        resting on these flags are reported as undetermined.
    roles : tuple of str
        Per qubit, ``"determined"``, ``"variable"`` or ``"pending"``, filled in by the dependency
        chain.
    """

    maximally_mixed: Tuple[bool, ...]
    mixed_pairs: Tuple[Tuple[int, int], ...]
    borderline: Tuple[Tuple[int, ...], ...] = ()
    roles: Tuple[str, ...] = ()

    @property
    def n(self) -> int:
        """Number of qubits."""
        return len(self.maximally_mixed)

    def pair_mixed(self, i: int, j: int) -> bool:
        """Whether ``rho_ij`` is proportional to the identity."""
        return (min(i, j), max(i, j)) in self.mixed_pairs

    def flags(self) -> Tuple[Tuple[bool, ...], Tuple[Tuple[int, int], ...]]:
        """The flags alone, without chain metadata. Equal for states related by a layer."""
        return self.maximally_mixed, self.mixed_pairs

    def with_roles(self, roles: Tuple[str, ...]) -> "EntanglementClass":
        """Return a copy carrying the chain roles."""
        return EntanglementClass(self.maximally_mixed, self.mixed_pairs, self.borderline, roles)


def classify(state: PureState) -> EntanglementClass:
    """Flag the single-qubit and two-qubit reduced states proportional to the identity.

    A reduced state ``rho`` is proportional to the identity when
    ``max |rho - (tr(rho) / d) * 1| <= tol.degeneracy``.
    """
    threshold = state.tol.degeneracy
    borderline: List[Tuple[int, ...]] = []

    def mixed(qubits: Tuple[int, ...]) -> bool:
        distance = partial_trace(state, qubits).distance_from_identity()
        if threshold < distance <= WITNESS_MARGIN * threshold:
            borderline.append(qubits)
        return distance <= threshold

    single = tuple(mixed((k,)) for k in range(1, state.n + 1))
    pairs = tuple(pair for pair in combinations(range(1, state.n + 1), 2) if mixed(pair))
    return EntanglementClass(single, pairs, tuple(borderline), ("pending",) * state.n)


def _compare(a: RealArray, b: RealArray, threshold: float) -> Tuple[float, bool]:
    difference = float(np.max(np.abs(a - b))) if a.size else 0.0
    return difference, difference > threshold


def _subsets(n: int, size: int) -> Iterator[Tuple[int, ...]]:
    return combinations(range(1, n + 1), size)


def _conditional_identity_distances(state: PureState) -> Dict[Tuple[Tuple[int, ...], int], float]:
    # Frobenius distance of rho_{C,k} from rho_C (x) 1/2, k being the last factor
    distances = {}
    for size in range(1, min(MAX_CLASS_CONDITIONING, state.n - 1) + 1):
        for conditioning in _subsets(state.n, size):
            rho_c = partial_trace(state, conditioning).matrix
            for k in range(1, state.n + 1):
                if k in conditioning:
                    continue
                joint = partial_trace(state, conditioning + (k,)).matrix
                product = np.kron(rho_c, np.eye(2) / 2.0)
                distances[(conditioning, k)] = float(np.linalg.norm(joint - product))
    return distances


def invariant_witness(psi: PureState, phi: PureState) -> Optional[Verdict]:
    """Compare local-unitary invariants of two states.

    The single-qubit spectra, the two-qubit marginal spectra and the flags
    ``rho_{C,k} = rho_C (x) 1/2`` for conditioning sets of one or two qubits are all unchanged by
    local unitaries. The first invariant that differs by more than ten times ``tol.degeneracy`` is
    returned as a NotEquivalent verdict. A difference within ten times the tolerance returns an
    undetermined verdict. ``None`` means every invariant agrees.
    """
    if psi.n != phi.n:
        raise StateDomainException(f"Cannot compare states on {psi.n} and {phi.n} qubits.")
    tol: ToleranceContext = psi.tol
    threshold = tol.degeneracy
    borderline: Optional[str] = None

    for size in (1, 2):
        if size > psi.n:
            break
        for qubits in _subsets(psi.n, size):
            a = partial_trace(psi, qubits).eigenvalues()
            b = partial_trace(phi, qubits).eigenvalues()
            difference, differs = _compare(a, b, threshold)
            if not differs:
                continue
            label = "single-qubit" if size == 1 else "two-qubit marginal"
            description = (
                f"{label} spectra of qubits {list(qubits)} differ: "
                f"{_format_spectrum(a)} vs {_format_spectrum(b)}"
            )
            margin = difference / threshold
            if margin > WITNESS_MARGIN:
                logger.info(f"Invariant witness: {description}")
                return Verdict.not_equivalent("spectra", description, margin)
            borderline = borderline or description

    if psi.n >= 3:
        distances_psi = _conditional_identity_distances(psi)
        distances_phi = _conditional_identity_distances(phi)
        for key, d_psi in distances_psi.items():
            d_phi = distances_phi[key]
            low, high = min(d_psi, d_phi), max(d_psi, d_phi)
            if low > threshold or high <= threshold:
                continue
            conditioning, k = key
            description = (
                f"class flags differ: rho_{{{_label(conditioning)},{k}}} = "
                f"rho_{{{_label(conditioning)}}} (x) 1/2 holds for "
                f"{'the first' if d_psi <= threshold else 'the second'} state only"
            )
            margin = high / threshold
            if margin > WITNESS_MARGIN:
                logger.info(f"Invariant witness: {description}")
                return Verdict.not_equivalent("class", description, margin)
            borderline = borderline or description

    if borderline is not None:
        return Verdict.undetermined(f"{borderline} (within ten times tolerance)")
    return None


def _label(qubits: Tuple[int, ...]) -> str:
    return "".join(str(q) for q in qubits)


def _format_spectrum(values: RealArray) -> str:
    return "(" + ", ".join(f"{v:.6g}" for v in np.clip(values, 0.0, None)) + ")"

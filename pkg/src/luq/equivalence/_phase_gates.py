# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

"""Decide whether two states differ only by local phase gates and a global phase."""

from dataclasses import dataclass
import string
from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt

from ._base import ComplexArray, ResultBase
from ._exceptions import StateDomainException, UnsupportedSizeException
from ._logger import logger
from ._state import LocalUnitaryLayer, PureState, Unitary2, project_systems
from ._util import (
    ToleranceContext,
    angle_residual,
    bit_matrix,
    bitstring,
    solve_affine_phases,
    wrap_angle,
)
from ._verdict import Verdict

FOURCOPY_MAX_QUBITS = 3
PRODUCT_TOLERANCE = 1e-10
_ASCENT_SWEEPS = 50


@dataclass(frozen=True)
class PhaseVector(ResultBase):
    """Global phase ``alpha0`` and one phase-gate angle per qubit, all in ``[0, 2*pi)``.

    ``free_mask`` has ``n + 1`` entries (the global phase first) and marks the angles that the
    support left undetermined; those were pinned to zero.
    """

    alpha0: float
    alpha: Tuple[float, ...]
    free_mask: Tuple[bool, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha0", wrap_angle(self.alpha0))
        object.__setattr__(self, "alpha", tuple(wrap_angle(a) for a in self.alpha))
        object.__setattr__(self, "free_mask", tuple(bool(f) for f in self.free_mask))

    @classmethod
    def zero(cls, n: int) -> "PhaseVector":
        """All-zero phases on ``n`` qubits."""
        return cls(0.0, (0.0,) * n, (False,) * (n + 1))

    @property
    def n(self) -> int:
        """Number of qubits."""
        return len(self.alpha)

    def affine(self, indices: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Evaluate ``alpha0 + sum_k alpha_k * i_k`` at the given basis indices."""
        rows = bit_matrix(np.ravel(indices).tolist(), self.n)
        return self.alpha0 + rows @ np.array(self.alpha)  # type: ignore[no-any-return]

    def to_layer(self) -> LocalUnitaryLayer:
        """Layer ``exp(i*alpha0) U(alpha_1) (x) ... (x) U(alpha_n)``, ``U(a) = diag(1, e^{ia})``."""
        return LocalUnitaryLayer(self.alpha0, tuple(Unitary2.phase_gate(a) for a in self.alpha))


@dataclass(frozen=True, eq=False)
class PhaseCompletion:
    """A state whose vanishing amplitudes have been filled in with unit-modulus phases.

    ``vector`` equals the base amplitudes on the support and
    ``exp(-i*(abar_0 + sum_k abar_k * k_k))`` on every index of ``K``. The vector is not normalized.
    """

    base: PureState
    K: Tuple[int, ...]
    phases: PhaseVector
    vector: ComplexArray

    def as_state(self) -> PureState:
        """Normalized completed vector, for use with the condition (ii) checks."""
        return PureState.from_amplitudes(self.vector, self.base.tol)


def _support_mask(amp: ComplexArray, tol: ToleranceContext) -> npt.NDArray[np.bool_]:
    return np.abs(amp) > tol.norm  # type: ignore[no-any-return]


def support_complement(state: PureState) -> Tuple[int, ...]:
    """Basis indices whose amplitude modulus is at or below ``tol.norm``, in lexicographic order.

    Use :func:`bitstring` to render the indices as labels.
    """
    return tuple(int(i) for i in np.flatnonzero(~_support_mask(state.amp, state.tol)))


def complete_state(state: PureState, phases: Optional[PhaseVector] = None) -> PhaseCompletion:
    """Fill the support complement of a state with unit-modulus phases.

    Parameters
    ----------
    state : PureState
        State to complete.
    phases : PhaseVector, optional
        Completion phases ``abar``. The default is ``None``, which gives the all-zero completion
        used for the left-hand state when comparing completions.
    """
    phases = phases or PhaseVector.zero(state.n)
    if phases.n != state.n:
        raise StateDomainException(
            f"Completion phases cover {phases.n} qubits, state has {state.n}."
        )
    K = support_complement(state)
    vector = np.array(state.amp, dtype=np.complex128)
    if K:
        vector[list(K)] = np.exp(-1j * phases.affine(K))
    return PhaseCompletion(state, K, phases, vector)


def project_to_support(completion: PhaseCompletion) -> PureState:
    """Zero the completed entries again, recovering the base state."""
    vector = np.array(completion.vector)
    vector[list(completion.K)] = 0.0
    return PureState(completion.base.n, vector, completion.base.tol)


def solve_phase_gates(psi: PureState, phi: PureState) -> Verdict:
    """Find phases with ``psi = exp(i*alpha0) U(alpha_1) (x) ... (x) U(alpha_n) phi``.

    The supports and the moduli of the two states are compared first. The phase differences on the
    support are then fitted by an affine form in the bits: the system is solved exactly on a
    maximal independent set of rows, taken in order of decreasing modulus, and every other support
    row is checked modulo ``2*pi``. Residuals are measured in amplitude units, that is the modulus
    times the wrapped angle error.

    Returns
    -------
    Verdict
        Equivalent with the :class:`PhaseVector` as ``phases`` and the corresponding layer as
        certificate; NotEquivalent naming the violated condition when it fails by more than ten
        times ``tol.phase``; Undetermined otherwise.

    Raises
    ------
    StateDomainException
        If the states have different qubit counts.
    """
    if psi.n != phi.n:
        raise StateDomainException(f"Cannot compare states on {psi.n} and {phi.n} qubits.")
    tol = psi.tol
    n = psi.n
    mod_psi = np.abs(psi.amp)
    mod_phi = np.abs(phi.amp)
    moduli_gap = np.abs(mod_psi - mod_phi)
    worst = int(np.argmax(moduli_gap))
    if moduli_gap[worst] > tol.phase:
        in_psi = mod_psi[worst] > tol.norm
        in_phi = mod_phi[worst] > tol.norm
        condition = "support" if in_psi != in_phi else "moduli"
        margin = float(moduli_gap[worst] / tol.phase)
        description = (
            f"{condition} differ at |{bitstring(worst, n)}>: "
            f"{mod_psi[worst]:.6g} vs {mod_phi[worst]:.6g}"
        )
        if margin > 10.0:
            return Verdict.not_equivalent(condition, description, margin)
        return Verdict.undetermined(f"{description} (within ten times tolerance)")

    support = np.flatnonzero((mod_psi > tol.norm) & (mod_phi > tol.norm))
    order = support[np.argsort(-mod_psi[support], kind="stable")]
    targets = np.angle(psi.amp[order] / phi.amp[order])
    solution = solve_affine_phases(bit_matrix(order.tolist(), n), targets.tolist())
    phases = PhaseVector(solution.values[0], solution.values[1:], solution.free_mask)

    fitted = np.exp(1j * phases.affine(np.arange(2**n))) * phi.amp
    residual_vector = np.abs(psi.amp - fitted)
    worst = int(np.argmax(residual_vector))
    deviation = float(residual_vector[worst])
    if deviation > tol.phase:
        angle = abs(angle_residual(float(np.angle(psi.amp[worst] / fitted[worst]))))
        description = (
            f"phase differences admit no affine fit: residual {angle:.3e} rad "
            f"at |{bitstring(worst, n)}>"
        )
        margin = deviation / tol.phase
        if margin > 10.0:
            return Verdict.not_equivalent("phase", description, margin)
        return Verdict.undetermined(f"{description} (within ten times tolerance)")

    layer = phases.to_layer()
    residual = max(0.0, 1.0 - abs(complex(np.vdot(psi.amp, fitted))))
    logger.debug(f"Phase gates fitted with amplitude deviation {deviation:.3e}")
    return Verdict.equivalent(layer, residual, phases, max_deviation=deviation)


def _branch_pair(
    psi: PureState, phi: PureState, qubit: int
) -> Tuple[ComplexArray, ComplexArray, ComplexArray, ComplexArray]:
    if psi.n != phi.n:
        raise StateDomainException(f"Cannot compare states on {psi.n} and {phi.n} qubits.")
    if psi.n < 2:
        raise StateDomainException("Condition (ii) needs at least two qubits.")
    if not 1 <= qubit <= psi.n:
        raise StateDomainException(f"Qubit index {qubit} is outside 1..{psi.n}.")
    axis = [qubit - 1]
    return (
        project_systems(psi.amp, psi.n, axis, [0]),
        project_systems(psi.amp, psi.n, axis, [1]),
        project_systems(phi.amp, phi.n, axis, [0]),
        project_systems(phi.amp, phi.n, axis, [1]),
    )


def _sides_agree(
    lhs: ComplexArray,
    rhs: ComplexArray,
    phi0: ComplexArray,
    phi1: ComplexArray,
    tol: ToleranceContext,
) -> bool:
    """Compare the two sides of condition (ii) entry by entry, ``(k, l)`` in row-major order.

    A pair is checked only when the four moduli of ``x_kl = <0k|phi><1l|phi><1k|phi><0l|phi>``
    are all at least ``tol.norm``. The tolerance is ``PRODUCT_TOLERANCE`` scaled by the larger of
    the two sides and ``|x_kl|``.
    """
    lhs, rhs = np.ravel(lhs), np.ravel(rhs)
    present = (np.abs(phi0) >= tol.norm) & (np.abs(phi1) >= tol.norm)
    checked = np.outer(present, present).ravel()
    weight = np.abs(phi0 * phi1)
    scale = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), np.outer(weight, weight).ravel())
    agree = np.abs(lhs - rhs) <= PRODUCT_TOLERANCE * scale
    return bool(np.all(agree | ~checked))


def condition_ii_pairwise(psi: PureState, phi: PureState, qubit: int) -> bool:
    """Check ``<0k|psi><1l|psi><1k|phi><0l|phi> = <1k|psi><0l|psi><0k|phi><1l|phi>`` for all k, l.

    ``k`` and ``l`` run over the bitstrings of the qubits other than ``qubit``. Both sides are
    outer products of two vectors, so the check is done on ``2**(n-1) x 2**(n-1)`` matrices.
    Pairs where one of ``<0k|phi>``, ``<1k|phi>``, ``<0l|phi>``, ``<1l|phi>`` is below
    ``tol.norm`` impose nothing.
    """
    psi0, psi1, phi0, phi1 = _branch_pair(psi, phi, qubit)
    u = psi0 * phi1
    v = psi1 * phi0
    return _sides_agree(np.outer(u, v), np.outer(v, u), phi0, phi1, psi.tol)


def _fourcopy_subscripts(n: int, qubit: int) -> str:
    letters = iter(string.ascii_lowercase[: 2 * n])
    k_axes = [next(letters) for _ in range(n)]
    l_axes = [next(letters) for _ in range(n)]
    i = qubit - 1
    copies = []
    for axes, bra in ((k_axes, "W"), (l_axes, "X"), (k_axes, "Y"), (l_axes, "Z")):
        copy = list(axes)
        copy[i] = bra
        copies.append("".join(copy))
    out = "".join(k for j, k in enumerate(k_axes) if j != i)
    out += "".join(m for j, m in enumerate(l_axes) if j != i)
    return f"{''.join(copies)},WXYZ->{out}"


def condition_ii_fourcopy(psi0: PureState, phi_abar: PureState, qubit: int) -> bool:
    """Literal four-copy form of condition (ii) for states on at most three qubits.

    Builds ``|psi0>_A |psi0>_B |phi>_C |phi>_D``, matches the indices of A with C and of B with D on
    every qubit except ``qubit``, and contracts ``qubit`` of the four copies against
    ``<0110| - <1001|``. The condition holds when every component of the resulting vector vanishes,
    with the same pairs skipped as in :func:`condition_ii_pairwise`.

    Raises
    ------
    UnsupportedSizeException
        If the states have more than three qubits.
    """
    if psi0.n > FOURCOPY_MAX_QUBITS:
        raise UnsupportedSizeException(psi0.n, FOURCOPY_MAX_QUBITS, "condition_ii_fourcopy")
    _, _, phi0, phi1 = _branch_pair(psi0, phi_abar, qubit)
    n = psi0.n
    copies = np.einsum("a,b,c,d->abcd", psi0.amp, psi0.amp, phi_abar.amp, phi_abar.amp)
    tensor = copies.reshape((2,) * (4 * n))
    subscripts = _fourcopy_subscripts(n, qubit)
    sides = []
    for bra in ((0, 1, 1, 0), (1, 0, 0, 1)):
        functional = np.zeros((2, 2, 2, 2))
        functional[bra] = 1.0
        sides.append(np.einsum(subscripts, tensor, functional).reshape(-1))
    return _sides_agree(sides[0], sides[1], phi0, phi1, psi0.tol)


def best_phase_fit(
    psi_amp: ComplexArray, phi_amp: ComplexArray, n: int
) -> Tuple[float, PhaseVector]:
    """Maximize ``|<psi| exp(i*alpha0) U(alpha_1) (x) ... (x) U(alpha_n) |phi>|`` over the phases.

    Starts from the exact affine fit on the heaviest support rows and improves it by coordinate
    ascent: with every other angle fixed, the overlap is ``A + exp(i*alpha_k) B`` and its modulus
    peaks at ``alpha_k = arg A - arg B``.

    Returns
    -------
    tuple
        Best fidelity ``|<psi|D|phi>|`` and the phases achieving it, with ``alpha0`` chosen so that
        the overlap is real and positive.
    """
    weights = np.conj(psi_amp) * phi_amp
    moduli = np.abs(weights)
    bits = bit_matrix(range(2**n), n)
    order = np.argsort(-moduli, kind="stable")
    order = order[moduli[order] > 1e-14]
    alpha = np.zeros(n)
    if order.size:
        start = solve_affine_phases(bits[order], (-np.angle(weights[order])).tolist())
        alpha = np.array(start.values[1:])
    theta = bits @ alpha
    best = abs(complex(np.sum(weights * np.exp(1j * theta))))
    for _ in range(_ASCENT_SWEEPS):
        previous = best
        for k in range(n):
            rest = weights * np.exp(1j * (theta - alpha[k] * bits[:, k]))
            a = complex(np.sum(rest[bits[:, k] == 0]))
            b = complex(np.sum(rest[bits[:, k] == 1]))
            if abs(a) > 0.0 and abs(b) > 0.0:
                alpha[k] = np.angle(a) - np.angle(b)
            theta = bits @ alpha
        best = abs(complex(np.sum(weights * np.exp(1j * theta))))
        if best - previous <= 1e-15:
            break
    total = complex(np.sum(weights * np.exp(1j * theta)))
    alpha0 = -float(np.angle(total)) if total != 0 else 0.0
    free = (False,) + tuple(bool(np.all(bits[order, k] == 0)) for k in range(n))
    return abs(total), PhaseVector(alpha0, tuple(alpha.tolist()), free)

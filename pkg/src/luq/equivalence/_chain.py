# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

"""Dependency chains: how each local unitary is pinned down by the ones before it."""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
import math
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union
import warnings

import numpy as np

from ._base import ComplexArray, ResultBase, SerializedType
from ._classify import WITNESS_MARGIN, EntanglementClass, classify
from ._eig2 import Spectrum2, eig_hermitian2
from ._exceptions import PreconditionException, StateDomainException, ToleranceWarning
from ._logger import logger
from ._state import ConditionalBranch, PureState, Unitary2, apply_factors, conditional_state
from ._state import partial_trace
from ._util import DEFAULT_TOLERANCES, SolverConfiguration, ToleranceContext, bitstring
from ._verdict import Verdict, Witness


class ChainRole(Enum):
    """How a qubit's local unitary enters the chain."""

    DETERMINED = "determined"
    VARIABLE = "variable"


@dataclass(frozen=True, eq=False)
class CrossBlockOperator(ResultBase):
    """Hermitian parts of a cross block ``X = tr_{not k}(<i|phi><phi|j>)``.

    ``source`` and ``target`` are basis indices over the ``conditioning`` qubits (one-based labels,
    first qubit most significant). ``Y = X + X^dagger`` and ``Z = iX - iX^dagger``.
    """

    conditioning: Tuple[int, ...]
    source: int
    target: int
    qubit: int
    Y: ComplexArray
    Z: ComplexArray

    @staticmethod
    def spread(operator: ComplexArray) -> float:
        """Spectral-norm distance of a 2x2 Hermitian operator from ``(tr/2) * 1``."""
        a = float(operator[0, 0].real)
        d = float(operator[1, 1].real)
        return math.hypot(0.5 * (a - d), abs(operator[0, 1]))

    @property
    def choice(self) -> str:
        """``"Y"`` when it is further from the identity than ``Z``, otherwise ``"Z"``."""
        return "Y" if self.spread(self.Y) > self.spread(self.Z) else "Z"

    @property
    def chosen(self) -> ComplexArray:
        """The operator named by :attr:`choice`."""
        return self.Y if self.choice == "Y" else self.Z

    def usable(self, tol: ToleranceContext = DEFAULT_TOLERANCES) -> bool:
        """Whether the chosen operator is far enough from the identity to fix a basis."""
        return self.spread(self.chosen) > tol.degeneracy

    def to_dict(self) -> Dict[str, SerializedType]:
        """Return the provenance of the operator."""
        size = len(self.conditioning)
        return {
            "conditioning": list(self.conditioning),
            "source": bitstring(self.source, size),
            "target": bitstring(self.target, size),
            "qubit": self.qubit,
            "operator": self.choice,
        }


def _cross_blocks(
    amp: ComplexArray, n: int, conditioning: Sequence[int], qubit: int
) -> ComplexArray:
    # X[i, j] for every pair of conditioning outcomes, zero-based axes
    rest = [a for a in range(n) if a != qubit and a not in conditioning]
    tensor = np.transpose(amp.reshape((2,) * n), list(conditioning) + [qubit] + rest)
    blocks = tensor.reshape(2 ** len(conditioning), 2, 2 ** len(rest))
    return np.einsum("iar,jbr->ijab", blocks, blocks.conj())  # type: ignore[no-any-return]


def _operator(
    blocks: ComplexArray, conditioning: Tuple[int, ...], i: int, j: int, qubit: int
) -> CrossBlockOperator:
    x = blocks[i, j]
    return CrossBlockOperator(
        conditioning, i, j, qubit, x + x.conj().T, 1j * x - 1j * x.conj().T
    )


def _check_systems(n: int, conditioning: Sequence[int], qubit: int) -> None:
    for q in list(conditioning) + [qubit]:
        if not 1 <= q <= n:
            raise StateDomainException(f"Qubit index {q} is outside 1..{n}.")
    if qubit in conditioning or len(set(conditioning)) != len(conditioning):
        raise StateDomainException(
            f"Conditioning systems {tuple(conditioning)} and target {qubit} must be disjoint."
        )


def cross_block_operator(
    phi: PureState, conditioning: Sequence[int], i: int, j: int, qubit: int
) -> CrossBlockOperator:
    """Build the cross-block operators of ``phi`` for one pair of conditioning outcomes.

    Parameters
    ----------
    phi : PureState
        State to take the blocks from.
    conditioning : sequence of int
        One-based labels of the conditioning qubits.
    i, j : int
        Basis indices over the conditioning qubits selecting the two blocks.
    qubit : int
        One-based label of the target qubit kept by the partial trace.

    Raises
    ------
    StateDomainException
        If the qubits are out of range or not disjoint, or ``i``/``j`` are out of range.
    """
    conditioning = tuple(conditioning)
    _check_systems(phi.n, conditioning, qubit)
    size = 2 ** len(conditioning)
    if not (0 <= i < size and 0 <= j < size):
        raise StateDomainException(f"Block indices must lie in 0..{size - 1}, got ({i}, {j}).")
    blocks = _cross_blocks(phi.amp, phi.n, [c - 1 for c in conditioning], qubit - 1)
    return _operator(blocks, conditioning, i, j, qubit)


@dataclass(frozen=True)
class WkEvaluation:
    """Result of evaluating one chain entry on the state being matched."""

    w_bar: Unitary2
    flip_allowed: bool
    witness: Optional[Witness] = None


def _spectrum_witness(
    label: str, psi_side: Spectrum2, phi_side: Spectrum2, tol: ToleranceContext
) -> Tuple[float, Optional[Witness]]:
    mismatch = max(
        abs(psi_side.lambda1 - phi_side.lambda1), abs(psi_side.lambda2 - phi_side.lambda2)
    )
    margin = mismatch / tol.degeneracy
    if margin <= WITNESS_MARGIN:
        return margin, None
    description = (
        f"eigenvalues of {label} differ: ({psi_side.lambda1:.6g}, {psi_side.lambda2:.6g}) vs "
        f"({phi_side.lambda1:.6g}, {phi_side.lambda2:.6g})"
    )
    return margin, Witness("eigenvalues", description, margin)


def _describe_operator(op: CrossBlockOperator) -> str:
    size = len(op.conditioning)
    return (
        f"{op.choice} on qubit {op.qubit} for blocks <{bitstring(op.source, size)}|, "
        f"<{bitstring(op.target, size)}| of qubits {list(op.conditioning)}"
    )


def evaluate_Wk(
    op: CrossBlockOperator,
    psi: PureState,
    assignment: Mapping[int, Unitary2],
    tol: Optional[ToleranceContext] = None,
) -> WkEvaluation:
    """Diagonalize the operator matching ``op`` on ``psi`` after undoing the conditioning unitaries.

    ``assignment`` maps each conditioning qubit to the unitary applied to ``psi`` on that qubit:
    the diagonalizer ``W_bar`` for determined qubits and ``U^dagger`` for variables. The returned
    ``W_bar`` diagonalizes the resulting operator. When its eigenvalues differ from those of ``op``
    by more than ten times ``tol.degeneracy`` a witness is attached.

    Raises
    ------
    StateDomainException
        If the assignment does not cover exactly the conditioning qubits.
    """
    tol = tol or psi.tol
    if set(assignment) != set(op.conditioning):
        raise StateDomainException(
            f"Assignment covers qubits {sorted(assignment)}, expected {list(op.conditioning)}."
        )
    amp = apply_factors(psi.amp, psi.n, {q - 1: u.matrix for q, u in assignment.items()})
    blocks = _cross_blocks(amp, psi.n, [c - 1 for c in op.conditioning], op.qubit - 1)
    mirror = _operator(blocks, op.conditioning, op.source, op.target, op.qubit)
    psi_side = eig_hermitian2(mirror.Y if op.choice == "Y" else mirror.Z, tol)
    phi_side = eig_hermitian2(op.chosen, tol)
    _, witness = _spectrum_witness(_describe_operator(op), psi_side, phi_side, tol)
    flip_allowed = phi_side.gap <= WITNESS_MARGIN * tol.degeneracy
    return WkEvaluation(psi_side.diagonalizer, flip_allowed, witness)


@dataclass(frozen=True, eq=False)
class ChainEntry(ResultBase):
    """How the local unitary of one qubit is obtained.

    ``v_bar`` diagonalizes the reference side. ``w_bar`` is the fixed diagonalizer of the matched
    side, or ``None`` when it depends on the variable unitaries and is evaluated per assignment.
    """

    qubit: int
    role: ChainRole
    v_bar: Unitary2
    flip_allowed: bool = False
    operator: Optional[CrossBlockOperator] = None
    w_bar: Optional[Unitary2] = None
    variable_index: Optional[int] = None

    @property
    def provenance(self) -> str:
        """Readable account of how the entry was determined."""
        if self.role is ChainRole.VARIABLE:
            return f"variable {self.variable_index}"
        if self.operator is None:
            return "single-qubit spectrum"
        return _describe_operator(self.operator)

    def to_dict(self) -> Dict[str, SerializedType]:
        """Return the entry without its matrices."""
        return {
            "qubit": self.qubit,
            "role": self.role.value,
            "flip_allowed": self.flip_allowed,
            "provenance": self.provenance,
        }


@dataclass(frozen=True, eq=False)
class DependencyChain(ResultBase):
    """Ordered record of how every local unitary is determined.

    Entries appear in the order they were resolved, so evaluating them front to back always finds
    the unitaries an entry depends on already computed.
    """

    n: int
    entries: Tuple[ChainEntry, ...]
    classification: EntanglementClass

    def entry(self, qubit: int) -> ChainEntry:
        """Chain entry of a one-based qubit label."""
        for item in self.entries:
            if item.qubit == qubit:
                return item
        raise StateDomainException(f"Qubit {qubit} has no chain entry.")

    @property
    def variables(self) -> Tuple[int, ...]:
        """Qubits whose unitaries are free variables, in variable order."""
        return tuple(e.qubit for e in self.entries if e.role is ChainRole.VARIABLE)

    @property
    def determined(self) -> Tuple[int, ...]:
        """Qubits whose unitaries are determined, in chain order."""
        return tuple(e.qubit for e in self.entries if e.role is ChainRole.DETERMINED)

    @property
    def flip_qubits(self) -> Tuple[int, ...]:
        """Qubits whose eigenbasis order must be enumerated in the final match."""
        return tuple(sorted(e.qubit for e in self.entries if e.flip_allowed))

    def v_bars(self) -> Tuple[Unitary2, ...]:
        """Reference-side diagonalizers in qubit order."""
        return tuple(self.entry(q).v_bar for q in range(1, self.n + 1))

    def w_bars(self, psi: PureState, variables: Sequence[Unitary2] = ()) -> Tuple[Unitary2, ...]:
        """Matched-side diagonalizers in qubit order for an assignment of the variable unitaries.

        Parameters
        ----------
        psi : PureState
            State being matched.
        variables : sequence of Unitary2
            One unitary ``U_v`` per variable, in variable order. Variable qubits get
            ``W_bar = U_v^dagger``.
        """
        if len(variables) != len(self.variables):
            raise StateDomainException(
                f"Chain has {len(self.variables)} variables, got {len(variables)} unitaries."
            )
        known: Dict[int, Unitary2] = {}
        for item in self.entries:
            if item.role is ChainRole.VARIABLE:
                assert item.variable_index is not None
                known[item.qubit] = variables[item.variable_index].dagger()
            elif item.w_bar is not None:
                known[item.qubit] = item.w_bar
            else:
                assert item.operator is not None
                assignment = {c: known[c] for c in item.operator.conditioning}
                known[item.qubit] = evaluate_Wk(item.operator, psi, assignment).w_bar
        return tuple(known[q] for q in range(1, self.n + 1))

    def describe(self) -> str:
        """One line per chain entry, in chain order."""
        return "\n".join(f"qubit {e.qubit}: {e.role.value}, {e.provenance}" for e in self.entries)

    def to_dict(self) -> Dict[str, SerializedType]:
        """Return the chain summary used in verdict diagnostics."""
        return {
            "variables": list(self.variables),
            "determined": list(self.determined),
            "entries": [e.to_dict() for e in self.entries],
        }


@dataclass(frozen=True)
class BranchPair:
    """Matching conditional branches of the two states for one outcome of a measured qubit."""

    outcome: int
    psi: ConditionalBranch
    phi: ConditionalBranch


def project_and_reduce(
    psi: PureState, phi: PureState, qubit: int, w_bar: Unitary2, v_bar: Unitary2
) -> Tuple[BranchPair, BranchPair]:
    """Rotate ``qubit`` into its eigenbasis on both sides and project it onto each outcome.

    When the states are equivalent, ``<l| W_bar psi`` and ``<l| V_bar phi`` are related by the same
    layer on the remaining qubits for both outcomes ``l``, up to one phase per outcome.

    Raises
    ------
    PreconditionException
        If the reduced state of ``qubit`` in ``phi`` is degenerate.
    """
    if psi.n != phi.n:
        raise StateDomainException(f"Cannot compare states on {psi.n} and {phi.n} qubits.")
    spectrum = eig_hermitian2(partial_trace(phi, [qubit]), phi.tol)
    if spectrum.degenerate:
        raise PreconditionException(
            f"Reduced state of qubit {qubit} is degenerate; treat it as a variable instead."
        )
    rotated_psi = psi.with_amplitudes(apply_factors(psi.amp, psi.n, {qubit - 1: w_bar.matrix}))
    rotated_phi = phi.with_amplitudes(apply_factors(phi.amp, phi.n, {qubit - 1: v_bar.matrix}))
    pairs = tuple(
        BranchPair(
            outcome,
            conditional_state(rotated_psi, qubit, outcome),
            conditional_state(rotated_phi, qubit, outcome),
        )
        for outcome in (0, 1)
    )
    return pairs[0], pairs[1]


def _branch_witness(pair: BranchPair, qubit: int, tol: ToleranceContext) -> Optional[Verdict]:
    # local spectra of the two branches are invariant under the remaining layer
    if pair.psi.empty != pair.phi.empty:
        margin = max(pair.psi.weight, pair.phi.weight) / tol.degeneracy
        if margin > WITNESS_MARGIN:
            return Verdict.not_equivalent(
                "branch",
                f"branch <{pair.outcome}| of qubit {qubit} is empty for one state only",
                margin,
            )
        return None
    if pair.psi.state is None or pair.phi.state is None:
        return None
    for q in range(1, pair.psi.state.n + 1):
        a = partial_trace(pair.psi.state, [q]).eigenvalues()
        b = partial_trace(pair.phi.state, [q]).eigenvalues()
        margin = float(np.max(np.abs(a - b))) / tol.degeneracy
        if margin > WITNESS_MARGIN:
            return Verdict.not_equivalent(
                "branch",
                f"after measuring qubit {qubit} with outcome {pair.outcome}, local spectra of "
                f"the remaining qubit {q} differ: ({a[0]:.6g}, {a[1]:.6g}) vs "
                f"({b[0]:.6g}, {b[1]:.6g})",
                margin,
            )
    return None


class _ChainBuilder:
    """Mutable state of one chain construction."""

    def __init__(self, psi: PureState, phi: PureState, configuration: SolverConfiguration):
        self.psi = psi
        self.phi = phi
        self.n = phi.n
        self.tol = configuration.tolerances
        self.max_conditioning = configuration.max_conditioning
        self.entries: List[ChainEntry] = []
        self.known: Dict[int, ChainEntry] = {}

    @property
    def pending(self) -> List[int]:
        return [q for q in range(1, self.n + 1) if q not in self.known]

    def add(self, entry: ChainEntry) -> None:
        self.entries.append(entry)
        self.known[entry.qubit] = entry

    def phi_work(self, conditioning: Sequence[int]) -> ComplexArray:
        factors = {c - 1: self.known[c].v_bar.matrix for c in conditioning}
        return apply_factors(self.phi.amp, self.n, factors)

    def fixed_assignment(self, conditioning: Sequence[int]) -> Optional[Dict[int, Unitary2]]:
        """Matched-side diagonalizers of the conditioning qubits, if none depends on a variable."""
        assignment = {}
        for c in conditioning:
            w_bar = self.known[c].w_bar
            if w_bar is None:
                return None
            assignment[c] = w_bar
        return assignment

    def psi_work(self, conditioning: Sequence[int]) -> Optional[ComplexArray]:
        assignment = self.fixed_assignment(conditioning)
        if assignment is None:
            return None
        factors = {c - 1: u.matrix for c, u in assignment.items()}
        return apply_factors(self.psi.amp, self.n, factors)

    def allowed_pairs(
        self, conditioning: Tuple[int, ...], roles: Optional[Mapping[int, ChainRole]] = None
    ) -> List[Tuple[int, int]]:
        # determined members carry an unknown phase gate, which cancels only on equal bits
        roles = roles or {}
        size = len(conditioning)
        mask = 0
        for position, c in enumerate(conditioning):
            role = roles[c] if c in roles else self.known[c].role
            if role is ChainRole.DETERMINED:
                mask |= 1 << (size - 1 - position)
        return [
            (i, j)
            for i in range(2**size)
            for j in range(i, 2**size)
            if (i & mask) == (j & mask)
        ]

    def first_usable(
        self, conditioning: Tuple[int, ...], qubit: int, candidates: Mapping[int, ChainRole]
    ) -> Optional[CrossBlockOperator]:
        # candidates maps hypothetical members to their role for variable selection
        factors = {c - 1: self.known[c].v_bar.matrix for c in conditioning if c in self.known}
        blocks = _cross_blocks(
            apply_factors(self.phi.amp, self.n, factors),
            self.n,
            [c - 1 for c in conditioning],
            qubit - 1,
        )
        for i, j in self.allowed_pairs(conditioning, candidates):
            op = _operator(blocks, conditioning, i, j, qubit)
            if op.usable(self.tol):
                return op
        return None

    @property
    def members(self) -> List[int]:
        # qubits with an ambiguous eigenbasis order cannot condition others
        return sorted(q for q, e in self.known.items() if not e.flip_allowed)

    def extend(self, qubit: int) -> Optional[CrossBlockOperator]:
        members = self.members
        for size in range(1, min(self.max_conditioning, len(members)) + 1):
            for conditioning in combinations(members, size):
                op = self.first_usable(conditioning, qubit, {})
                if op is not None:
                    return op
        return None

    def reach(self, candidate: int) -> int:
        """Number of pending qubits that become extendable once ``candidate`` is a variable."""
        members = self.members
        count = 0
        for qubit in self.pending:
            if qubit == candidate:
                continue
            found = False
            for size in range(0, min(self.max_conditioning - 1, len(members)) + 1):
                for others in combinations(members, size):
                    conditioning = tuple(sorted(others + (candidate,)))
                    roles = {candidate: ChainRole.VARIABLE}
                    if self.first_usable(conditioning, qubit, roles) is not None:
                        found = True
                        break
                if found:
                    break
            count += found
        return count

    def rejection_tests(self, conditioning: Tuple[int, ...], qubit: int) -> Optional[Verdict]:
        """Compare every usable block operator of both states on a variable-free conditioning."""
        psi_amp = self.psi_work(conditioning)
        if psi_amp is None:
            return None
        axes = [c - 1 for c in conditioning]
        blocks_phi = _cross_blocks(self.phi_work(conditioning), self.n, axes, qubit - 1)
        blocks_psi = _cross_blocks(psi_amp, self.n, axes, qubit - 1)
        for i, j in self.allowed_pairs(conditioning):
            ref = _operator(blocks_phi, conditioning, i, j, qubit)
            mirror = _operator(blocks_psi, conditioning, i, j, qubit)
            for name, a, b in (("Y", mirror.Y, ref.Y), ("Z", mirror.Z, ref.Z)):
                if CrossBlockOperator.spread(b) <= self.tol.degeneracy and (
                    CrossBlockOperator.spread(a) <= self.tol.degeneracy
                ):
                    continue
                label = (
                    f"{name} on qubit {qubit} for blocks ({i}, {j}) "
                    f"of qubits {list(conditioning)}"
                )
                _, witness = _spectrum_witness(
                    label, eig_hermitian2(a, self.tol), eig_hermitian2(b, self.tol), self.tol
                )
                if witness is not None:
                    return Verdict.not_equivalent(
                        witness.condition, witness.description, witness.margin
                    )
        return None


def _single_qubit_entry(builder: _ChainBuilder, qubit: int) -> Union[ChainEntry, Verdict]:
    tol = builder.tol
    s_psi = eig_hermitian2(partial_trace(builder.psi, [qubit]), tol)
    s_phi = eig_hermitian2(partial_trace(builder.phi, [qubit]), tol)
    margin, witness = _spectrum_witness(f"rho_{qubit}", s_psi, s_phi, tol)
    if witness is not None:
        return Verdict.not_equivalent("spectra", witness.description, witness.margin)
    if margin > 1.0:
        return Verdict.undetermined(
            f"spectra of qubit {qubit} agree only within ten times tolerance"
        )
    flip_allowed = s_phi.gap <= WITNESS_MARGIN * tol.degeneracy
    entry = ChainEntry(
        qubit, ChainRole.DETERMINED, s_phi.diagonalizer, flip_allowed, w_bar=s_psi.diagonalizer
    )
    if builder.n >= 2 and not flip_allowed:
        for pair in project_and_reduce(
            builder.psi, builder.phi, qubit, s_psi.diagonalizer, s_phi.diagonalizer
        ):
            verdict = _branch_witness(pair, qubit, tol)
            if verdict is not None:
                return verdict
    return entry


def build_chain(
    psi: PureState, phi: PureState, configuration: Optional[SolverConfiguration] = None
) -> Union[DependencyChain, Verdict]:
    """Work out how every local unitary mapping ``phi`` onto ``psi`` is determined.

    Qubits whose reduced state is not maximally mixed are fixed by their own eigenbasis. Every
    other qubit is fixed, where possible, by a cross-block operator conditioned on at most
    ``max_conditioning`` qubits resolved earlier. When no pending qubit can be resolved, the
    pending qubit that unlocks the most others becomes a variable (the lowest label on ties).

    Returns
    -------
    DependencyChain or Verdict
        The chain, or a NotEquivalent verdict when a spectrum comparison along the way fails by
        more than ten times ``tol.degeneracy`` (an Undetermined verdict if only within that).
        A reduced state of either input whose distance from the maximally mixed state lies
        between ``tol.degeneracy`` and ten times it also gives an Undetermined verdict, and a
        :class:`ToleranceWarning`.
    """
    if psi.n != phi.n:
        raise StateDomainException(f"Cannot compare states on {psi.n} and {phi.n} qubits.")
    configuration = configuration or SolverConfiguration(tolerances=phi.tol)
    builder = _ChainBuilder(psi, phi, configuration)
    classification = classify(phi)
    borderline = sorted(set(classification.borderline) | set(classify(psi).borderline))
    if borderline:
        message = (
            f"reduced states of qubits {[list(q) for q in borderline]} lie within ten times "
            f"tol.degeneracy of the maximally mixed state"
        )
        warnings.warn(message, ToleranceWarning)
        return Verdict.undetermined(message, borderline=[list(q) for q in borderline])

    for qubit in range(1, phi.n + 1):
        if classification.maximally_mixed[qubit - 1]:
            continue
        result = _single_qubit_entry(builder, qubit)
        if isinstance(result, Verdict):
            return result
        builder.add(result)

    variable_count = 0
    while builder.pending:
        progress = True
        while progress and builder.pending:
            progress = False
            for qubit in builder.pending:
                op = builder.extend(qubit)
                if op is None:
                    continue
                verdict = builder.rejection_tests(op.conditioning, qubit)
                if verdict is not None:
                    return verdict
                v_bar = eig_hermitian2(op.chosen, builder.tol).diagonalizer
                w_bar: Optional[Unitary2] = None
                flip_allowed = eig_hermitian2(op.chosen, builder.tol).gap <= (
                    WITNESS_MARGIN * builder.tol.degeneracy
                )
                assignment = builder.fixed_assignment(op.conditioning)
                if assignment is not None:
                    evaluation = evaluate_Wk(op, psi, assignment, builder.tol)
                    if evaluation.witness is not None:
                        w = evaluation.witness
                        return Verdict.not_equivalent(w.condition, w.description, w.margin)
                    w_bar = evaluation.w_bar
                builder.add(
                    ChainEntry(qubit, ChainRole.DETERMINED, v_bar, flip_allowed, op, w_bar)
                )
                logger.debug(f"Qubit {qubit} determined by {_describe_operator(op)}")
                progress = True
        if not builder.pending:
            break
        reach = {q: builder.reach(q) for q in builder.pending}
        candidate = max(builder.pending, key=lambda q: (reach[q], -q))
        builder.add(
            ChainEntry(
                candidate,
                ChainRole.VARIABLE,
                Unitary2.identity(),
                variable_index=variable_count,
            )
        )
        logger.debug(f"Qubit {candidate} introduced as variable {variable_count}")
        variable_count += 1

    limit = math.ceil(phi.n / 2)
    if variable_count > limit:
        warnings.warn(
            f"Dependency chain needs {variable_count} variables, more than {limit} for "
            f"{phi.n} qubits.",
            ToleranceWarning,
        )
    roles = tuple(builder.known[q].role.value for q in range(1, phi.n + 1))
    chain = DependencyChain(phi.n, tuple(builder.entries), classification.with_roles(roles))
    logger.info(
        f"Dependency chain: {len(chain.determined)} determined, variables {list(chain.variables)}"
    )
    return chain

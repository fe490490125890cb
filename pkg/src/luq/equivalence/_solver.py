# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

from dataclasses import dataclass
from itertools import islice, product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ._base import ComplexArray, RealArray, ResultBase
from ._chain import DependencyChain, build_chain
from ._classify import invariant_witness
from ._eig2 import eig_hermitian2
from ._exceptions import StateDomainException
from ._logger import logger
from ._phase_gates import PhaseVector, best_phase_fit, solve_phase_gates
from ._search import EulerZXZ, euler_matrices, multi_start_minimize
from ._standard_form import check_generic_equivalence, verify_certificate
from ._state import LocalUnitaryLayer, PureState, Unitary2, apply_factors, partial_trace
from ._util import SolverConfiguration
from ._verdict import Verdict, VerdictKind

_PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)


def _is_generic(state: PureState) -> bool:
    return all(
        not eig_hermitian2(partial_trace(state, [k]), state.tol).degenerate
        for k in range(1, state.n + 1)
    )


def _flip_patterns(chain: DependencyChain, limit: int) -> Tuple[List[Tuple[int, ...]], bool]:
    # flipped qubits of each pattern, the unflipped pattern first
    qubits = chain.flip_qubits
    every = (
        tuple(q for q, bit in zip(qubits, bits) if bit)
        for bits in product((0, 1), repeat=len(qubits))
    )
    patterns = list(islice(every, limit))
    return patterns, len(patterns) < 2 ** len(qubits)


def _assemble_certificate(
    w_bars: Sequence[Unitary2],
    v_bars: Sequence[Unitary2],
    flips: Tuple[int, ...],
    phases: PhaseVector,
) -> LocalUnitaryLayer:
    """Layer with factors ``W_bar^dagger U(alpha) X^flip V_bar`` and global phase ``alpha0``."""
    factors = []
    for q, (w_bar, v_bar) in enumerate(zip(w_bars, v_bars), start=1):
        middle = Unitary2.phase_gate(phases.alpha[q - 1])
        if q in flips:
            middle = middle @ Unitary2.pauli_x()
        factors.append(w_bar.dagger() @ middle @ v_bar)
    return LocalUnitaryLayer(phases.alpha0, tuple(factors))


class _FinalMatch:
    """Matched and reference states rotated into the chain's eigenbases."""

    def __init__(self, psi: PureState, phi: PureState, chain: DependencyChain, limit: int):
        self.psi = psi
        self.n = psi.n
        self.chain = chain
        self.v_bars = chain.v_bars()
        reference = apply_factors(
            phi.amp, self.n, {q: v.matrix for q, v in enumerate(self.v_bars)}
        )
        self.patterns, self.truncated = _flip_patterns(chain, limit)
        self.references = [
            apply_factors(reference, self.n, {q - 1: _PAULI_X for q in flips})
            for flips in self.patterns
        ]

    def rotated(self, w_bars: Sequence[Unitary2]) -> ComplexArray:
        return apply_factors(self.psi.amp, self.n, {q: w.matrix for q, w in enumerate(w_bars)})

    def exact(self) -> Verdict:
        """Phase-gate check for every flip pattern of a chain without variables."""
        w_bars = self.chain.w_bars(self.psi)
        rotated = self.psi.with_amplitudes(self.rotated(w_bars))
        failures: List[Verdict] = []
        for flips, reference in zip(self.patterns, self.references):
            verdict = solve_phase_gates(rotated, self.psi.with_amplitudes(reference))
            if verdict.is_equivalent and verdict.phases is not None:
                logger.debug(f"Phase gates matched with flipped qubits {list(flips)}")
                return Verdict.equivalent(
                    _assemble_certificate(w_bars, self.v_bars, flips, verdict.phases),
                    0.0,
                    verdict.phases,
                    flips=list(flips),
                )
            failures.append(verdict)
        witnesses = [v for v in failures if v.is_not_equivalent]
        if len(witnesses) == len(failures) and not self.truncated:
            best = min(witnesses, key=lambda v: v.witness.margin if v.witness else 0.0)
            assert best.witness is not None
            return Verdict.not_equivalent(
                best.witness.condition,
                f"no flip pattern matches; {best.witness.description}",
                best.witness.margin,
                flip_patterns=len(failures),
            )
        reason = "flip pattern enumeration truncated" if self.truncated else (
            "phase-gate match within ten times tolerance"
        )
        return Verdict.undetermined(reason, flip_patterns=len(failures))

    def residual(self, variables: Sequence[Unitary2]) -> Tuple[float, int, PhaseVector]:
        """Smallest ``1 - fidelity`` over the flip patterns after the best phase fit."""
        rotated = self.rotated(self.chain.w_bars(self.psi, variables))
        best: Tuple[float, int, Optional[PhaseVector]] = (np.inf, 0, None)
        for index, reference in enumerate(self.references):
            fidelity, phases = best_phase_fit(rotated, reference, self.n)
            if 1.0 - fidelity < best[0]:
                best = (1.0 - fidelity, index, phases)
        assert best[2] is not None
        return best[0], best[1], best[2]


def _variables_from(x: RealArray) -> List[Unitary2]:
    return [Unitary2(m) for m in euler_matrices(np.reshape(x, (-1, 3)))]


def _search_variables(
    match: _FinalMatch, configuration: SolverConfiguration
) -> Verdict:
    tol = configuration.tolerances
    count = len(match.chain.variables)
    outcome = multi_start_minimize(
        lambda x: match.residual(_variables_from(x))[0],
        3 * count,
        configuration,
        tol.fidelity_accept,
    )
    diagnostics: Dict[str, object] = {
        "restarts_run": outcome.restarts_run,
        "evaluations": outcome.evaluations,
        "best_residual": outcome.value,
        "variables": list(match.chain.variables),
    }
    if outcome.value > tol.fidelity_accept:
        logger.info(f"Variable search ended with residual {outcome.value:.3e}")
        return Verdict.undetermined(
            "variable search did not reach the acceptance residual", **diagnostics
        )
    variables = _variables_from(outcome.x)
    _, index, phases = match.residual(variables)
    certificate = _assemble_certificate(
        match.chain.w_bars(match.psi, variables), match.v_bars, match.patterns[index], phases
    )
    angles = [EulerZXZ.from_vector(v).to_dict() for v in np.reshape(outcome.x, (-1, 3))]
    return Verdict.equivalent(certificate, outcome.value, phases, angles=angles, **diagnostics)


def _with_tolerances(state: PureState, configuration: SolverConfiguration) -> PureState:
    if state.tol == configuration.tolerances:
        return state
    return PureState(state.n, state.amp, configuration.tolerances)


def _accepted(verdict: Verdict, psi: PureState, phi: PureState, tolerance: float) -> Verdict:
    # every certificate is replayed before it leaves the solver
    if not verdict.is_equivalent or verdict.certificate is None:
        return verdict
    residual = verify_certificate(psi, phi, verdict.certificate)
    if residual > tolerance:
        return Verdict.undetermined(
            "certificate failed verification", residual, **verdict.diagnostics
        )
    return Verdict(
        VerdictKind.EQUIVALENT,
        verdict.certificate,
        residual,
        None,
        verdict.diagnostics,
        verdict.phases,
    )


def decide_lu_equivalence(
    psi: PureState, phi: PureState, configuration: Optional[SolverConfiguration] = None
) -> Verdict:
    """Decide whether a layer of single-qubit unitaries maps ``phi`` onto ``psi``.

    The pipeline compares local-unitary invariants first. Two generic states are decided by their
    standard forms. Otherwise a dependency chain fixes as many local unitaries as possible; without
    free variables the remaining phase gates and eigenbasis flips are matched exactly, and with
    free variables a seeded multi-start search over their Euler angles looks for a certificate.

    Parameters
    ----------
    psi, phi : PureState
        States on the same number of qubits.
    configuration : SolverConfiguration, optional
        Tolerances and search parameters. The default is ``None``, which uses the tolerances of
        ``psi`` and default search parameters.

    Returns
    -------
    Verdict
        Equivalent verdicts carry a certificate ``L`` with ``psi ~ L phi`` whose residual
        ``1 - |<psi|L|phi>|`` was checked against ``tol.fidelity_accept``.

    Raises
    ------
    StateDomainException
        If the states have different qubit counts.
    """
    if psi.n != phi.n:
        raise StateDomainException(f"Cannot compare states on {psi.n} and {phi.n} qubits.")
    configuration = configuration or SolverConfiguration(tolerances=psi.tol)
    psi = _with_tolerances(psi, configuration)
    phi = _with_tolerances(phi, configuration)
    tol = configuration.tolerances

    witness = invariant_witness(psi, phi)
    if witness is not None:
        return witness.with_diagnostics(path="invariants")

    if _is_generic(psi) and _is_generic(phi):
        logger.info("Both states are generic, comparing standard forms")
        verdict = check_generic_equivalence(psi, phi)
        return _accepted(verdict, psi, phi, tol.fidelity_accept).with_diagnostics(path="generic")

    chain = build_chain(psi, phi, configuration)
    if isinstance(chain, Verdict):
        return chain.with_diagnostics(path="chain")
    match = _FinalMatch(psi, phi, chain, configuration.max_flip_patterns)
    if not chain.variables:
        verdict = match.exact()
        path = "exact"
    else:
        logger.info(f"Searching over {len(chain.variables)} variable unitaries")
        verdict = _search_variables(match, configuration)
        path = "search"
    verdict = _accepted(verdict, psi, phi, tol.fidelity_accept)
    logger.info(f"Verdict: {verdict.kind.value}")
    return verdict.with_diagnostics(path=path, chain=chain.to_dict())


@dataclass(frozen=True, eq=False)
class OracleResult(ResultBase):
    """Best layer found by direct minimization and its residual ``1 - |<psi|L|phi>|``."""

    residual: float
    layer: LocalUnitaryLayer
    restarts_run: int


def brute_force_oracle(
    psi: PureState,
    phi: PureState,
    restarts: int = 64,
    seed: int = 0,
    configuration: Optional[SolverConfiguration] = None,
) -> OracleResult:
    """Minimize ``1 - |<psi| U_1 (x) ... (x) U_n |phi>|`` directly over all ``3n`` Euler angles.

    Intended as an independent check of the solver on small states. Deterministic for a fixed
    ``seed``; ``configuration`` supplies the iteration cap and worker count.
    """
    if psi.n != phi.n:
        raise StateDomainException(f"Cannot compare states on {psi.n} and {phi.n} qubits.")
    base = configuration or SolverConfiguration(tolerances=psi.tol)
    search = SolverConfiguration(
        tolerances=base.tolerances,
        restarts=restarts,
        max_iterations=base.max_iterations,
        seed=seed,
        workers=base.workers,
    )
    n = psi.n

    def layer_amp(x: RealArray) -> ComplexArray:
        matrices = euler_matrices(np.reshape(x, (n, 3)))
        return apply_factors(phi.amp, n, {q: matrices[q] for q in range(n)})

    def objective(x: RealArray) -> float:
        return 1.0 - abs(complex(np.vdot(psi.amp, layer_amp(x))))

    outcome = multi_start_minimize(objective, 3 * n, search, 1e-14)
    matrices = euler_matrices(np.reshape(outcome.x, (n, 3)))
    amplitude = complex(np.vdot(psi.amp, layer_amp(outcome.x)))
    layer = LocalUnitaryLayer(
        -float(np.angle(amplitude)), tuple(Unitary2(m) for m in matrices)
    )
    logger.debug(f"Oracle residual {outcome.value:.3e} after {outcome.restarts_run} restarts")
    return OracleResult(max(0.0, outcome.value), layer, outcome.restarts_run)

# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

from dataclasses import asdict, dataclass, field
import math
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, TypedDict

import numpy as np
import numpy.typing as npt

TWO_PI = 2.0 * math.pi
MAX_QUBITS = 12
"""Largest qubit count any operation accepts (amplitude vectors of 4096 entries)."""


@dataclass(frozen=True)
class ToleranceContext:
    """Numerical thresholds shared by every operation.

    Parameters
    ----------
    norm : float, optional
        Norm and support threshold. Amplitudes with modulus at or below this value are treated as
        zero. The default is ``1e-10``.
    hermitian : float, optional
        Largest entrywise distance between a matrix and its conjugate transpose. The default is
        ``1e-10``.
    unitary : float, optional
        Largest entrywise distance between ``U @ U^dagger`` and the identity. The default is
        ``1e-9``.
    degeneracy : float, optional
        Absolute eigenvalue gap at or below which a 2x2 spectrum is degenerate, and the distance
        below which a reduced state is proportional to the identity. The default is ``1e-8``.
    phase : float, optional
        Residual allowed when matching phases and moduli. The default is ``1e-8``.
    fidelity_accept : float, optional
        A certificate is accepted when ``1 - |<psi|L|phi>|`` is at most this value. The default is
        ``1e-8``.
    """

    norm: float = 1e-10
    hermitian: float = 1e-10
    unitary: float = 1e-9
    degeneracy: float = 1e-8
    phase: float = 1e-8
    fidelity_accept: float = 1e-8

    def __post_init__(self) -> None:
        for name, value in asdict(self).items():
            if not value > 0.0:
                raise ValueError(f"Tolerance '{name}' must be strictly positive, not '{value}'.")

    def replace(self, **overrides: Optional[float]) -> "ToleranceContext":
        """Return a copy with the non-``None`` overrides applied."""
        values = asdict(self)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return ToleranceContext(**values)


DEFAULT_TOLERANCES = ToleranceContext()


class SolverDictionary(TypedDict):
    """Dictionary form of the solver configuration."""

    tolerances: Dict[str, float]
    restarts: int
    max_iterations: int
    seed: int
    workers: int
    max_flip_patterns: int
    max_conditioning: int


class SolverConfiguration:
    """Provides configuration for the equivalence decision pipeline.

    Parameters
    ----------
    tolerances : ToleranceContext, optional
        Numerical thresholds. The default is ``None``, in which case the default tolerances are
        used.
    restarts : int, optional
        Number of multi-start runs of the variable search. The default is ``64``.
    max_iterations : int, optional
        Iteration cap of each local simplex minimization. The default is ``2000``.
    seed : int, optional
        Seed of the random stream that draws the search starting points. The default is ``0``.
    workers : int, optional
        Number of threads used to run search restarts concurrently. The default is ``1``.
    max_flip_patterns : int, optional
        Largest number of eigenbasis flip patterns enumerated in the final matching step. The
        default is ``64``.
    max_conditioning : int, optional
        Largest number of systems a dependency chain entry may be conditioned on. The default is
        ``3``.
    """

    def __init__(
        self,
        tolerances: Optional[ToleranceContext] = None,
        restarts: int = 64,
        max_iterations: int = 2000,
        seed: int = 0,
        workers: int = 1,
        max_flip_patterns: int = 64,
        max_conditioning: int = 3,
    ) -> None:
        if restarts < 1:
            raise ValueError(f"Invalid 'restarts'. Must be at least 1, not '{restarts}'.")
        if workers < 1:
            raise ValueError(f"Invalid 'workers'. Must be at least 1, not '{workers}'.")
        if not 0 <= seed < 2**64:
            raise ValueError(f"Invalid 'seed'. Must be an unsigned 64-bit integer, not '{seed}'.")
        self.tolerances = tolerances or DEFAULT_TOLERANCES
        self.restarts = restarts
        self.max_iterations = max_iterations
        self.seed = seed
        self.workers = workers
        self.max_flip_patterns = max_flip_patterns
        self.max_conditioning = max_conditioning

    def __repr__(self) -> str:
        """Printable representation of the object."""
        return f"<SolverConfiguration restarts: {self.restarts}, seed: {self.seed}>"

    def to_dict(self) -> SolverDictionary:
        """Retrieve the configuration as a plain dictionary, suitable for JSON diagnostics."""
        output: SolverDictionary = {
            "tolerances": asdict(self.tolerances),
            "restarts": self.restarts,
            "max_iterations": self.max_iterations,
            "seed": self.seed,
            "workers": self.workers,
            "max_flip_patterns": self.max_flip_patterns,
            "max_conditioning": self.max_conditioning,
        }
        return output

    @classmethod
    def from_dict(cls, configuration_dict: SolverDictionary) -> "SolverConfiguration":
        """
        Create a :class:`SolverConfiguration` object from its dictionary form.

        This is the inverse of the :meth:`.to_dict` method.

        Parameters
        ----------
        configuration_dict : dict
            Dictionary form of the solver parameters.
        """
        tolerances = configuration_dict.get("tolerances")
        if tolerances is not None and not isinstance(tolerances, dict):
            raise ValueError(
                f"Invalid 'tolerances' field. Must be dict, not '{type(tolerances)}'."
            )
        return cls(
            tolerances=ToleranceContext(**tolerances) if tolerances else None,
            restarts=configuration_dict.get("restarts", 64),
            max_iterations=configuration_dict.get("max_iterations", 2000),
            seed=configuration_dict.get("seed", 0),
            workers=configuration_dict.get("workers", 1),
            max_flip_patterns=configuration_dict.get("max_flip_patterns", 64),
            max_conditioning=configuration_dict.get("max_conditioning", 3),
        )


def wrap_angle(angle: float) -> float:
    """Map an angle onto ``[0, 2*pi)``."""
    wrapped = math.fmod(angle, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    # fmod can hand back exactly 2*pi after the shift
    return 0.0 if wrapped >= TWO_PI else wrapped


def angle_residual(angle: float) -> float:
    """Return the signed distance of an angle to the nearest multiple of ``2*pi``."""
    return math.remainder(angle, TWO_PI)


def bits_of(index: int, n: int) -> Tuple[int, ...]:
    """Split a basis index into its bitstring, qubit 1 being the most significant bit."""
    return tuple((index >> (n - 1 - k)) & 1 for k in range(n))


def index_of(bits: Sequence[int]) -> int:
    """Inverse of :func:`bits_of`."""
    index = 0
    for bit in bits:
        index = (index << 1) | int(bit)
    return index


def bitstring(index: int, n: int) -> str:
    """Render a basis index as a bitstring label such as ``'011'``."""
    return format(index, f"0{n}b") if n > 0 else ""


def bit_matrix(indices: Iterable[int], n: int) -> npt.NDArray[np.float64]:
    """Stack the bitstrings of the given indices as rows of a real 0/1 matrix."""
    rows = [bits_of(i, n) for i in indices]
    return np.array(rows, dtype=float).reshape(len(rows), n)


def greedy_independent_rows(rows: npt.NDArray[np.float64]) -> List[int]:
    """Select, in order, the rows that increase the real rank of the rows selected so far."""
    selected: List[int] = []
    basis = np.zeros((0, rows.shape[1]))
    for position, row in enumerate(rows):
        candidate = np.vstack([basis, row])
        if np.linalg.matrix_rank(candidate) > basis.shape[0]:
            basis = candidate
            selected.append(position)
    return selected


@dataclass(frozen=True)
class AffinePhaseSolution:
    """Exact solution of an affine phase system ``b_r = x_0 + sum_k x_k * bit_rk (mod 2*pi)``.

    ``free_mask`` marks the unknowns that the selected rows left undetermined; they are pinned
    to zero. ``skipped`` lists rows dependent on earlier rows, which were not imposed.
    """

    values: Tuple[float, ...]
    free_mask: Tuple[bool, ...]
    skipped: Tuple[int, ...] = field(default_factory=tuple)


def solve_affine_phases(
    bits: npt.NDArray[np.float64], targets: Sequence[float]
) -> AffinePhaseSolution:
    """Solve the affine phase system on the given rows by exact elimination.

    Each row ``r`` imposes ``x_0 + sum_k x_k * bits[r, k] = targets[r]``. Rows are imposed in order;
    a row linearly dependent on the rows imposed before it is skipped. Unknowns left free by the
    imposed rows are pinned to zero and the remaining square system is solved directly, so the
    imposed rows hold exactly over the reals and therefore modulo ``2*pi``.

    Parameters
    ----------
    bits : numpy.ndarray
        Real 0/1 matrix with one row per imposed bitstring and one column per qubit.
    targets : sequence of float
        Right-hand side angle of every row.

    Returns
    -------
    AffinePhaseSolution
        Solved angles ``(x_0, x_1, ..., x_n)`` wrapped onto ``[0, 2*pi)``.
    """
    n = bits.shape[1]
    augmented = np.hstack([np.ones((bits.shape[0], 1)), bits])
    kept = greedy_independent_rows(augmented)
    skipped = tuple(r for r in range(bits.shape[0]) if r not in kept)
    if not kept:
        return AffinePhaseSolution((0.0,) * (n + 1), (True,) * (n + 1), skipped)
    system = augmented[kept]
    pivots = greedy_independent_rows(system.T)
    rhs = np.array([targets[r] for r in kept], dtype=float)
    solution = np.zeros(n + 1)
    solution[pivots] = np.linalg.solve(system[:, pivots], rhs)
    free_mask = tuple(column not in pivots for column in range(n + 1))
    return AffinePhaseSolution(tuple(wrap_angle(x) for x in solution), free_mask, skipped)

# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

"""Multi-start derivative-free minimization shared by the variable search and the oracle."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math
from typing import Callable, List, Tuple

import numpy as np
from scipy.optimize import minimize

from ._base import ComplexArray, RealArray, ResultBase
from ._logger import logger
from ._state import Unitary2
from ._util import SolverConfiguration

Objective = Callable[[RealArray], float]


@dataclass(frozen=True)
class EulerZXZ(ResultBase):
    """Angles of the single-qubit unitary ``exp(-i*gamma*Z) exp(-i*beta*X) exp(-i*alpha*Z)``.

    Every single-qubit unitary is of this form up to a global phase.
    """

    gamma: float
    beta: float
    alpha: float

    @classmethod
    def from_vector(cls, angles: RealArray) -> "EulerZXZ":
        """Read ``(gamma, beta, alpha)`` from a length-3 vector."""
        return cls(float(angles[0]), float(angles[1]), float(angles[2]))

    def to_unitary(self) -> Unitary2:
        """Reconstructed unitary."""
        return Unitary2(euler_matrices(np.array([[self.gamma, self.beta, self.alpha]]))[0])

    def w_bar(self) -> Unitary2:
        """Inverse ``exp(i*alpha*Z) exp(i*beta*X) exp(i*gamma*Z)``, applied to the matched state."""
        return self.to_unitary().dagger()


def euler_matrices(angles: RealArray) -> ComplexArray:
    """Stack of ZXZ Euler unitaries for an ``(m, 3)`` array of ``(gamma, beta, alpha)`` rows."""
    angles = np.asarray(angles, dtype=float).reshape(-1, 3)
    gamma, beta, alpha = angles[:, 0], angles[:, 1], angles[:, 2]
    c, s = np.cos(beta), np.sin(beta)
    # diag(e^{-ig}, e^{ig}) [[c, -is], [-is, c]] diag(e^{-ia}, e^{ia})
    out = np.empty((angles.shape[0], 2, 2), dtype=np.complex128)
    out[:, 0, 0] = np.exp(-1j * (gamma + alpha)) * c
    out[:, 0, 1] = -1j * np.exp(-1j * (gamma - alpha)) * s
    out[:, 1, 0] = -1j * np.exp(1j * (gamma - alpha)) * s
    out[:, 1, 1] = np.exp(1j * (gamma + alpha)) * c
    return out


@dataclass(frozen=True)
class SearchOutcome:
    """Best point of a multi-start minimization and the work spent finding it."""

    x: RealArray
    value: float
    restarts_run: int
    evaluations: int


def starting_points(dimension: int, configuration: SolverConfiguration) -> RealArray:
    """Starting points drawn from the seeded PCG64 stream; the first one is the origin."""
    rng = np.random.default_rng(configuration.seed)
    starts = rng.uniform(0.0, 2.0 * math.pi, size=(configuration.restarts, dimension))
    starts[0] = 0.0
    return starts  # type: ignore[no-any-return]


def _local_minimum(
    objective: Objective, start: RealArray, configuration: SolverConfiguration, target: float
) -> Tuple[RealArray, float, int]:
    value = objective(start)
    if value <= target:
        return start, value, 1
    result = minimize(
        objective,
        start,
        method="Nelder-Mead",
        options={
            "maxiter": configuration.max_iterations,
            "xatol": 1e-10,
            "fatol": 1e-15,
            "adaptive": start.size > 4,
        },
    )
    return np.asarray(result.x), float(result.fun), int(result.nfev) + 1


def multi_start_minimize(
    objective: Objective,
    dimension: int,
    configuration: SolverConfiguration,
    target: float,
) -> SearchOutcome:
    """Minimize ``objective`` from ``configuration.restarts`` seeded starting points.

    Restarts run in batches of ``configuration.workers`` threads. Results are reduced in restart
    order and the search stops after the first batch containing a value at or below ``target``,
    so the outcome does not depend on the number of workers.
    """
    starts = starting_points(dimension, configuration)
    best: Tuple[RealArray, float] = (starts[0], math.inf)
    evaluations = 0
    run = 0
    batch_size = configuration.workers
    executor = ThreadPoolExecutor(max_workers=batch_size) if batch_size > 1 else None
    try:
        for offset in range(0, len(starts), batch_size):
            batch = starts[offset : offset + batch_size]
            if executor is None:
                results: List[Tuple[RealArray, float, int]] = [
                    _local_minimum(objective, batch[0], configuration, target)
                ]
            else:
                results = list(
                    executor.map(
                        lambda x0: _local_minimum(objective, x0, configuration, target), batch
                    )
                )
            for x, value, count in results:
                run += 1
                evaluations += count
                if value < best[1]:
                    best = (x, value)
                if value <= target:
                    break
            logger.debug(f"Search restarts {offset}..{offset + len(batch) - 1}: best {best[1]:.3e}")
            if best[1] <= target:
                break
    finally:
        if executor is not None:
            executor.shutdown()
    return SearchOutcome(best[0], best[1], run, evaluations)

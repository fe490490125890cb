# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

"""Named fixture states and seeded random states and layers.

Random draws use a :class:`numpy.random.Generator` (PCG64). Passing an integer seed or a
generator seeded with the same value reproduces every amplitude bit for bit.
"""

import math
from typing import Optional, Sequence, Union

import numpy as np
from scipy.stats import unitary_group

from ._exceptions import StateDomainException
from ._state import LocalUnitaryLayer, PureState, Unitary2, apply_factors
from ._util import DEFAULT_TOLERANCES, MAX_QUBITS, ToleranceContext

Seed = Union[None, int, np.random.Generator]


def _generator(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _check_size(n: int, minimum: int = 1) -> None:
    if not minimum <= n <= MAX_QUBITS:
        raise StateDomainException(f"Expected {minimum} <= n <= {MAX_QUBITS}, got n={n}.")


def ghz_state(n: int, tol: ToleranceContext = DEFAULT_TOLERANCES) -> PureState:
    """``(|0...0> + |1...1>) / sqrt(2)`` on ``n >= 2`` qubits."""
    _check_size(n, 2)
    amp = np.zeros(2**n, dtype=np.complex128)
    amp[0] = amp[-1] = 1.0 / math.sqrt(2.0)
    return PureState(n, amp, tol)


def w_state(n: int, tol: ToleranceContext = DEFAULT_TOLERANCES) -> PureState:
    """Equal superposition of the ``n`` basis states of Hamming weight one."""
    _check_size(n, 2)
    amp = np.zeros(2**n, dtype=np.complex128)
    amp[[1 << k for k in range(n)]] = 1.0 / math.sqrt(n)
    return PureState(n, amp, tol)


def bell_state(tol: ToleranceContext = DEFAULT_TOLERANCES) -> PureState:
    """``(|00> + |11>) / sqrt(2)``."""
    return ghz_state(2, tol)


def product_state(
    n: int, bits: Optional[Sequence[int]] = None, tol: ToleranceContext = DEFAULT_TOLERANCES
) -> PureState:
    """Computational basis state, ``|0...0>`` unless ``bits`` is given."""
    _check_size(n)
    bits = list(bits) if bits is not None else [0] * n
    if len(bits) != n:
        raise StateDomainException(f"Expected {n} bits, got {len(bits)}.")
    return PureState.basis(bits, tol)


def linear_cluster_state(n: int, tol: ToleranceContext = DEFAULT_TOLERANCES) -> PureState:
    """Controlled-Z chain between neighbouring qubits applied to ``|+>^n``."""
    _check_size(n, 2)
    indices = np.arange(2**n)
    bits = (indices[:, None] >> np.arange(n - 1, -1, -1)) & 1
    edges = np.sum(bits[:, :-1] & bits[:, 1:], axis=1)
    amp = np.where(edges % 2, -1.0, 1.0) / math.sqrt(2**n)
    return PureState(n, amp.astype(np.complex128), tol)


def haar_state(n: int, seed: Seed = None, tol: ToleranceContext = DEFAULT_TOLERANCES) -> PureState:
    """Haar-random state: independent complex normal amplitudes, normalized.

    The real parts of all ``2**n`` amplitudes are drawn first, then the imaginary parts.
    """
    _check_size(n)
    rng = _generator(seed)
    real = rng.standard_normal(2**n)
    imag = rng.standard_normal(2**n)
    return PureState.from_amplitudes(real + 1j * imag, tol)


def haar_unitary(seed: Seed = None) -> Unitary2:
    """Haar-random single-qubit unitary."""
    return Unitary2(unitary_group.rvs(dim=2, random_state=_generator(seed)))


def haar_layer(n: int, seed: Seed = None) -> LocalUnitaryLayer:
    """Layer of ``n`` independent Haar-random single-qubit unitaries, drawn qubit by qubit."""
    _check_size(n)
    rng = _generator(seed)
    return LocalUnitaryLayer(0.0, tuple(haar_unitary(rng) for _ in range(n)))


def random_layer_image(state: PureState, seed: Seed = None) -> PureState:
    """Apply a seeded :func:`haar_layer` to ``state``."""
    layer = haar_layer(state.n, seed)
    amp = apply_factors(state.amp, state.n, {k: u.matrix for k, u in enumerate(layer.factors)})
    return state.with_amplitudes(amp)

# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

"""n-qubit pure states, local unitary layers and the tensor primitives built on them.

Bitstring convention: qubit 1 is the most significant bit, so the amplitude of
``|i_1 ... i_n>`` sits at index ``sum_k i_k * 2**(n - k)`` and lexicographic order on
bitstrings equals numeric order on indices.
"""

from dataclasses import dataclass, field
import math
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from ._base import ComplexArray, ResultBase, SerializedType
from ._exceptions import StateDomainException, UnsupportedSizeException
from ._util import DEFAULT_TOLERANCES, MAX_QUBITS, ToleranceContext, wrap_angle


def _frozen(array: npt.ArrayLike) -> ComplexArray:
    output = np.array(array, dtype=np.complex128, copy=True)
    output.setflags(write=False)
    return output


@dataclass(frozen=True, eq=False)
class Unitary2:
    """Single-qubit unitary, stored as a read-only 2x2 complex matrix."""

    matrix: ComplexArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", _frozen(self.matrix))
        if self.matrix.shape != (2, 2):
            raise StateDomainException(f"Expected a 2x2 matrix, got shape {self.matrix.shape}.")

    @classmethod
    def from_matrix(
        cls, matrix: npt.ArrayLike, tol: ToleranceContext = DEFAULT_TOLERANCES
    ) -> "Unitary2":
        """Create a :class:`Unitary2` after checking ``U @ U^dagger = 1`` within ``tol.unitary``.

        Raises
        ------
        StateDomainException
            If the matrix is not unitary within tolerance.
        """
        candidate = cls(np.asarray(matrix, dtype=np.complex128))
        deviation = np.max(np.abs(candidate.matrix @ candidate.matrix.conj().T - np.eye(2)))
        if deviation > tol.unitary:
            raise StateDomainException(f"Matrix is not unitary (deviation {deviation:.3e}).")
        return candidate

    @classmethod
    def identity(cls) -> "Unitary2":
        """Identity gate."""
        return cls(np.eye(2))

    @classmethod
    def pauli_x(cls) -> "Unitary2":
        """Pauli X (bit flip) gate."""
        return cls(np.array([[0, 1], [1, 0]]))

    @classmethod
    def hadamard(cls) -> "Unitary2":
        """Hadamard gate."""
        return cls(np.array([[1, 1], [1, -1]]) / math.sqrt(2.0))

    @classmethod
    def phase_gate(cls, alpha: float) -> "Unitary2":
        """Phase gate ``diag(1, exp(i*alpha))``."""
        return cls(np.diag([1.0, np.exp(1j * alpha)]))

    def dagger(self) -> "Unitary2":
        """Conjugate transpose."""
        return Unitary2(self.matrix.conj().T)

    def conjugate(self) -> "Unitary2":
        """Entrywise complex conjugate."""
        return Unitary2(self.matrix.conj())

    def __matmul__(self, other: "Unitary2") -> "Unitary2":
        """Matrix product ``self @ other``."""
        return Unitary2(self.matrix @ other.matrix)

    def __repr__(self) -> str:
        """Printable representation of the object."""
        return f"Unitary2({self.matrix.tolist()})"


@dataclass(frozen=True, eq=False)
class LocalUnitaryLayer(ResultBase):
    """Global phase together with one single-qubit unitary per qubit.

    The layer acts as ``exp(i*global_phase) * U_1 (x) ... (x) U_n``. It is the currency of every
    certificate the solver emits.
    """

    global_phase: float
    factors: Tuple[Unitary2, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "global_phase", wrap_angle(self.global_phase))
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def n(self) -> int:
        """Number of qubits the layer acts on."""
        return len(self.factors)

    @classmethod
    def identity(cls, n: int) -> "LocalUnitaryLayer":
        """Identity layer on ``n`` qubits."""
        return cls(0.0, tuple(Unitary2.identity() for _ in range(n)))

    @classmethod
    def from_matrices(
        cls,
        matrices: Iterable[npt.ArrayLike],
        global_phase: float = 0.0,
        tol: ToleranceContext = DEFAULT_TOLERANCES,
    ) -> "LocalUnitaryLayer":
        """Create a layer from raw 2x2 matrices, checking each one for unitarity."""
        return cls(global_phase, tuple(Unitary2.from_matrix(m, tol) for m in matrices))

    def compose(self, other: "LocalUnitaryLayer") -> "LocalUnitaryLayer":
        """Return the layer that applies ``other`` first and then ``self``."""
        if other.n != self.n:
            raise StateDomainException(f"Cannot compose layers on {self.n} and {other.n} qubits.")
        return LocalUnitaryLayer(
            self.global_phase + other.global_phase,
            tuple(a @ b for a, b in zip(self.factors, other.factors)),
        )

    def inverse(self) -> "LocalUnitaryLayer":
        """Return the inverse layer."""
        return LocalUnitaryLayer(-self.global_phase, tuple(u.dagger() for u in self.factors))

    def to_matrix(self) -> ComplexArray:
        """Return the full ``2**n x 2**n`` operator. Only supported for ``n <= 6``."""
        if self.n > 6:
            raise UnsupportedSizeException(self.n, 6, "LocalUnitaryLayer.to_matrix")
        output = np.array([[np.exp(1j * self.global_phase)]])
        for factor in self.factors:
            output = np.kron(output, factor.matrix)
        return output

    def to_dict(self) -> Dict[str, SerializedType]:
        """Return the layer in the certificate file layout."""
        return {
            "global_phase": self.global_phase,
            "unitaries": [
                [[[float(z.real), float(z.imag)] for z in row] for row in u.matrix]
                for u in self.factors
            ],
        }


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized n-qubit pure state.

    Parameters
    ----------
    n : int
        Number of qubits, ``1 <= n <= 12``.
    amp : numpy.ndarray
        Complex amplitude vector of length ``2**n``.
    tol : ToleranceContext, optional
        Numerical tolerances carried with the state.
    original_norm : float, optional
        Norm of the amplitudes before normalization, as recorded by :meth:`from_amplitudes`.
    """

    n: int
    amp: ComplexArray
    tol: ToleranceContext = field(default=DEFAULT_TOLERANCES, repr=False)
    original_norm: float = 1.0

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_QUBITS:
            if self.n > MAX_QUBITS:
                raise UnsupportedSizeException(self.n, MAX_QUBITS)
            raise StateDomainException(f"A state needs at least one qubit, got n={self.n}.")
        object.__setattr__(self, "amp", _frozen(np.ravel(self.amp)))
        if self.amp.shape[0] != 2**self.n:
            raise StateDomainException(
                f"Expected {2 ** self.n} amplitudes for {self.n} qubits, got {self.amp.shape[0]}."
            )
        if not np.all(np.isfinite(self.amp)):
            raise StateDomainException("Amplitudes must be finite.")
        norm = float(np.linalg.norm(self.amp))
        if abs(norm - 1.0) > self.tol.norm:
            raise StateDomainException(f"State is not normalized (norm {norm!r}).")

    @classmethod
    def from_amplitudes(
        cls,
        amplitudes: npt.ArrayLike,
        tol: ToleranceContext = DEFAULT_TOLERANCES,
        normalize: bool = True,
    ) -> "PureState":
        """Create a state from raw amplitudes, normalizing them unless told otherwise.

        Parameters
        ----------
        amplitudes : array_like
            Complex amplitudes in basis-index order.
        tol : ToleranceContext, optional
            Tolerances to attach to the state.
        normalize : bool, optional
            Whether to rescale the amplitudes to unit norm. The default is ``True``.

        Raises
        ------
        StateDomainException
            If the length is not a power of two or the vector is zero.
        """
        vector = np.ravel(np.asarray(amplitudes, dtype=np.complex128))
        length = vector.shape[0]
        if length < 2 or length & (length - 1):
            raise StateDomainException(
                f"Amplitude count must be a power of two >= 2, got {length}."
            )
        n = length.bit_length() - 1
        norm = float(np.linalg.norm(vector))
        if norm <= tol.norm:
            raise StateDomainException("Cannot build a state from a zero vector.")
        if normalize:
            vector = vector / norm
        return cls(n, vector, tol, norm)

    @classmethod
    def basis(cls, bits: Sequence[int], tol: ToleranceContext = DEFAULT_TOLERANCES) -> "PureState":
        """Computational basis state ``|bits>``."""
        n = len(bits)
        vector = np.zeros(2**n, dtype=np.complex128)
        vector[int("".join(str(int(b)) for b in bits), 2)] = 1.0
        return cls(n, vector, tol)

    def tensor(self) -> ComplexArray:
        """Amplitudes reshaped to one axis per qubit."""
        return self.amp.reshape((2,) * self.n)

    def with_amplitudes(self, amplitudes: npt.ArrayLike) -> "PureState":
        """Return a state on the same qubits and tolerances with new (normalized) amplitudes."""
        return PureState(self.n, np.asarray(amplitudes), self.tol)

    def __repr__(self) -> str:
        """Printable representation of the object."""
        return f"<PureState n: {self.n}>"


@dataclass(frozen=True, eq=False)
class HermitianReduced:
    """Reduced density matrix on an ordered subset of qubits.

    ``qubits`` holds one-based qubit labels in the order the matrix is indexed by.
    """

    qubits: Tuple[int, ...]
    matrix: ComplexArray
    tol: ToleranceContext = field(default=DEFAULT_TOLERANCES, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "qubits", tuple(self.qubits))
        object.__setattr__(self, "matrix", _frozen(self.matrix))
        dim = 2 ** len(self.qubits)
        if self.matrix.shape != (dim, dim):
            raise StateDomainException(
                f"Expected a {dim}x{dim} matrix for qubits {self.qubits}, got {self.matrix.shape}."
            )
        deviation = float(np.max(np.abs(self.matrix - self.matrix.conj().T)))
        scale = 1.0 + float(np.max(np.abs(self.matrix)))
        if deviation > self.tol.hermitian * scale:
            raise StateDomainException(f"Matrix is not Hermitian (deviation {deviation:.3e}).")

    @property
    def trace(self) -> float:
        """Real trace of the matrix."""
        return float(np.trace(self.matrix).real)

    def eigenvalues(self) -> npt.NDArray[np.float64]:
        """Eigenvalues in descending order."""
        return np.linalg.eigvalsh(self.matrix)[::-1]  # type: ignore[no-any-return]

    def distance_from_identity(self) -> float:
        """Largest entrywise distance between the matrix and ``(tr/d) * 1``."""
        dim = self.matrix.shape[0]
        return float(np.max(np.abs(self.matrix - self.trace / dim * np.eye(dim))))


@dataclass(frozen=True)
class ConditionalBranch:
    """Result of projecting one qubit of a state onto a computational basis outcome.

    ``state`` is ``None`` when the branch is empty (weight at or below ``tol.norm``).
    """

    state: Optional[PureState]
    weight: float

    @property
    def empty(self) -> bool:
        """Whether the projected branch has no weight."""
        return self.state is None


def _check_qubit(n: int, qubit: int) -> None:
    if not 1 <= qubit <= n:
        raise StateDomainException(f"Qubit index {qubit} is outside 1..{n}.")


def apply_factors(amp: ComplexArray, n: int, factors: Mapping[int, ComplexArray]) -> ComplexArray:
    """Apply single-qubit matrices to raw amplitudes.

    Parameters
    ----------
    amp : numpy.ndarray
        Amplitude vector of length ``2**n``.
    n : int
        Number of qubits.
    factors : mapping
        Zero-based qubit axis to 2x2 matrix. Missing axes are left untouched.
    """
    tensor = amp.reshape((2,) * n)
    for axis, matrix in factors.items():
        tensor = np.moveaxis(np.tensordot(matrix, tensor, axes=([1], [axis])), 0, axis)
    return np.ascontiguousarray(tensor).reshape(-1)


def project_systems(
    amp: ComplexArray, n: int, systems: Sequence[int], bits: Sequence[int]
) -> ComplexArray:
    """Return the unnormalized block ``<bits|_systems |psi>`` over the remaining qubits.

    ``systems`` holds zero-based axes; the remaining qubits keep their relative order.
    """
    tensor = amp.reshape((2,) * n)
    index = [slice(None)] * n
    for axis, bit in zip(systems, bits):
        index[axis] = bit
    return np.ascontiguousarray(tensor[tuple(index)]).reshape(-1)


def reduced_matrix(amp: ComplexArray, n: int, keep: Sequence[int]) -> ComplexArray:
    """Reduced density matrix of raw amplitudes on zero-based axes ``keep``.

    The amplitudes need not be normalized, which lets callers trace unnormalized blocks.
    """
    rest = [axis for axis in range(n) if axis not in keep]
    grouped = np.transpose(amp.reshape((2,) * n), list(keep) + rest)
    matrix = grouped.reshape(2 ** len(keep), 2 ** len(rest))
    return matrix @ matrix.conj().T  # type: ignore[no-any-return]


def partial_trace(state: PureState, keep: Sequence[int]) -> HermitianReduced:
    """Trace out every qubit not in ``keep``.

    The kept and discarded index groups are separated by a transpose and the trace is the
    double sum over the discarded group, written as a matrix product.

    Parameters
    ----------
    state : PureState
        State to reduce.
    keep : sequence of int
        Ordered, distinct, one-based qubit labels to keep.

    Returns
    -------
    HermitianReduced
        Reduced state indexed in the order of ``keep``.

    Raises
    ------
    StateDomainException
        If ``keep`` is empty, repeats a qubit or names a qubit outside ``1..n``.
    """
    keep = tuple(keep)
    if not keep:
        raise StateDomainException("At least one qubit must be kept.")
    if len(set(keep)) != len(keep):
        raise StateDomainException(f"Kept qubits must be distinct, got {keep}.")
    for qubit in keep:
        _check_qubit(state.n, qubit)
    matrix = reduced_matrix(state.amp, state.n, [q - 1 for q in keep])
    return HermitianReduced(keep, matrix, state.tol)


def apply_layer(layer: LocalUnitaryLayer, state: PureState) -> PureState:
    """Apply ``exp(i*alpha_0) U_1 (x) ... (x) U_n`` to a state.

    Raises
    ------
    StateDomainException
        If the layer size differs from the state size.
    """
    if layer.n != state.n:
        raise StateDomainException(f"Layer acts on {layer.n} qubits, state has {state.n}.")
    amp = apply_factors(state.amp, state.n, {k: u.matrix for k, u in enumerate(layer.factors)})
    return PureState(state.n, np.exp(1j * layer.global_phase) * amp, state.tol)


def overlap(a: PureState, b: PureState) -> complex:
    """Return the inner product ``<a|b>``.

    Raises
    ------
    StateDomainException
        If the states have different qubit counts.
    """
    if a.n != b.n:
        raise StateDomainException(f"Cannot overlap states on {a.n} and {b.n} qubits.")
    return complex(np.vdot(a.amp, b.amp))


def conditional_state(state: PureState, qubit: int, outcome: int) -> ConditionalBranch:
    """Project qubit ``qubit`` onto ``|outcome>`` and renormalize.

    Parameters
    ----------
    state : PureState
        State on ``n >= 2`` qubits.
    qubit : int
        One-based qubit label.
    outcome : int
        Basis outcome, 0 or 1.

    Returns
    -------
    ConditionalBranch
        Normalized ``(n - 1)``-qubit branch and its weight ``|| <outcome|_qubit psi ||**2``.
        A branch with weight at or below ``tol.norm`` is empty and reported with weight 0.
    """
    if state.n < 2:
        raise StateDomainException("Conditioning needs at least two qubits.")
    _check_qubit(state.n, qubit)
    if outcome not in (0, 1):
        raise StateDomainException(f"Outcome must be 0 or 1, got {outcome}.")
    block = project_systems(state.amp, state.n, [qubit - 1], [outcome])
    weight = float(np.vdot(block, block).real)
    if math.sqrt(weight) <= state.tol.norm:
        return ConditionalBranch(None, 0.0)
    return ConditionalBranch(PureState(state.n - 1, block / math.sqrt(weight), state.tol), weight)


def density_matrix(state: PureState) -> HermitianReduced:
    """Projector ``|psi><psi|`` on all qubits."""
    return HermitianReduced(
        tuple(range(1, state.n + 1)), np.outer(state.amp, state.amp.conj()), state.tol
    )


def apply_layer_to_density(layer: LocalUnitaryLayer, rho: HermitianReduced) -> HermitianReduced:
    """Return ``L rho L^dagger`` for a full-system density matrix.

    The global phase cancels. Factors are contracted axis by axis, so the full layer operator is
    never formed.
    """
    n = len(rho.qubits)
    if layer.n != n:
        raise StateDomainException(f"Layer acts on {layer.n} qubits, matrix on {n}.")
    tensor = rho.matrix.reshape((2,) * (2 * n))
    for k, u in enumerate(layer.factors):
        tensor = np.moveaxis(np.tensordot(u.matrix, tensor, axes=([1], [k])), 0, k)
        tensor = np.moveaxis(np.tensordot(u.matrix.conj(), tensor, axes=([1], [n + k])), 0, n + k)
    return HermitianReduced(rho.qubits, tensor.reshape(2**n, 2**n), rho.tol)

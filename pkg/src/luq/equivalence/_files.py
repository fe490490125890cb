# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

"""JSON state, layer and certificate files.

Files are validated with pydantic models on the way in and written with sorted keys on the way
out, so that repeated runs produce byte-identical output.
"""

import json
import os
from pathlib import Path
import re
from typing import Any, Dict, List, Literal, Optional, Tuple, Type, TypeVar, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ._exceptions import StateDomainException, StateFileException
from ._logger import logger
from ._state import LocalUnitaryLayer, PureState
from ._util import DEFAULT_TOLERANCES, MAX_QUBITS, ToleranceContext
from ._verdict import Verdict

PathLike = Union[str, "os.PathLike[str]"]
Complex = Tuple[float, float]
Matrix2 = Tuple[Tuple[Complex, Complex], Tuple[Complex, Complex]]

_Model = TypeVar("_Model", bound=BaseModel)


class StateFileModel(BaseModel):
    """State file: qubit count and ``2**n`` amplitudes as ``[re, im]`` pairs in index order."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    n: int = Field(ge=1, le=MAX_QUBITS)
    amplitudes: List[Complex]

    @model_validator(mode="after")
    def _amplitude_count(self) -> "StateFileModel":
        if len(self.amplitudes) != 2**self.n:
            raise ValueError(
                f"expected {2 ** self.n} amplitudes for n={self.n}, got {len(self.amplitudes)}"
            )
        return self

    def to_state(self, tol: ToleranceContext = DEFAULT_TOLERANCES) -> PureState:
        """Normalized state, recording the norm found in the file."""
        return PureState.from_amplitudes([complex(re, im) for re, im in self.amplitudes], tol)


class LayerFileModel(BaseModel):
    """Layer file: global phase and one 2x2 complex matrix per qubit."""

    model_config = ConfigDict(extra="ignore", allow_inf_nan=False)

    global_phase: float = 0.0
    unitaries: List[Matrix2] = Field(min_length=1)

    def to_layer(self, tol: ToleranceContext = DEFAULT_TOLERANCES) -> LocalUnitaryLayer:
        """Layer after checking every factor for unitarity within ``tol.unitary``."""
        matrices = [
            [[complex(re, im) for re, im in row] for row in matrix] for matrix in self.unitaries
        ]
        return LocalUnitaryLayer.from_matrices(matrices, self.global_phase, tol)


class CertificateModel(BaseModel):
    """Certificate file written by the ``check`` command."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    verdict: Literal["equivalent", "not_equivalent", "undetermined"]
    global_phase: Optional[float] = None
    unitaries: Optional[List[Matrix2]] = None
    residual: Optional[float] = None
    witness: Optional[str] = None
    diagnostics: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _layer_complete(self) -> "CertificateModel":
        if (self.global_phase is None) != (self.unitaries is None):
            raise ValueError("global_phase and unitaries must be given together")
        return self

    def to_layer(self, tol: ToleranceContext = DEFAULT_TOLERANCES) -> Optional[LocalUnitaryLayer]:
        """Certificate layer, or ``None`` for verdicts that carry none."""
        if self.unitaries is None or self.global_phase is None:
            return None
        return LayerFileModel(global_phase=self.global_phase, unitaries=self.unitaries).to_layer(
            tol
        )


def _locate(
    text: str, location: Tuple[Union[int, str], ...]
) -> Tuple[Optional[int], Optional[int]]:
    # position of the deepest named key in the error location
    for key in reversed(location):
        if isinstance(key, str):
            match = re.search(rf'"{re.escape(key)}"\s*:', text)
            if match:
                line = text.count("\n", 0, match.start()) + 1
                column = match.start() - (text.rfind("\n", 0, match.start()) + 1) + 1
                return line, column
    return None, None


def _parse(path: PathLike, model: Type[_Model]) -> _Model:
    name = os.fspath(path)
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exception:
        raise StateFileException(name, exception.msg, exception.lineno, exception.colno) from None
    try:
        return model.model_validate(data)
    except ValidationError as exception:
        error = exception.errors()[0]
        where = ".".join(str(part) for part in error["loc"]) or "<root>"
        line, column = _locate(text, tuple(error["loc"]))
        raise StateFileException(name, f"{where}: {error['msg']}", line, column) from None


def _write(path: PathLike, payload: Any) -> None:
    Path(path).write_text(dumps(payload), encoding="utf-8")
    logger.debug(f"Wrote {os.fspath(path)}")


def dumps(payload: Any) -> str:
    """Serialize to JSON with sorted keys and two-space indentation, ending in a newline."""
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"


def state_to_dict(state: PureState) -> Dict[str, Any]:
    """State in the state file layout."""
    return {
        "n": state.n,
        "amplitudes": [[float(z.real), float(z.imag)] for z in np.asarray(state.amp)],
    }


def load_state(path: PathLike, tol: ToleranceContext = DEFAULT_TOLERANCES) -> PureState:
    """Read and normalize a state file.

    Parameters
    ----------
    path : str or os.PathLike
        File to read.
    tol : ToleranceContext, optional
        Tolerances to attach to the state.

    Raises
    ------
    StateFileException
        If the file is not valid JSON, does not match the state layout, or holds a zero vector.
    """
    model = _parse(path, StateFileModel)
    try:
        return model.to_state(tol)
    except StateDomainException as exception:
        raise StateFileException(os.fspath(path), str(exception)) from None


def save_state(state: PureState, path: PathLike) -> None:
    """Write a state file."""
    _write(path, state_to_dict(state))


def load_layer(path: PathLike, tol: ToleranceContext = DEFAULT_TOLERANCES) -> LocalUnitaryLayer:
    """Read a layer file. Certificate files are accepted as long as they carry a layer."""
    model = _parse(path, LayerFileModel)
    try:
        return model.to_layer(tol)
    except StateDomainException as exception:
        raise StateFileException(os.fspath(path), str(exception)) from None


def save_layer(layer: LocalUnitaryLayer, path: PathLike) -> None:
    """Write a layer file."""
    _write(path, layer.to_dict())


def load_certificate(path: PathLike) -> CertificateModel:
    """Read a certificate file."""
    return _parse(path, CertificateModel)


def save_certificate(verdict: Verdict, path: PathLike) -> None:
    """Write a verdict in the certificate layout."""
    _write(path, verdict.to_dict())

# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

from ._base import ResultBase, SerializedType, serialize_value
from ._state import LocalUnitaryLayer

TYPE_CHECKING = False
if TYPE_CHECKING:
    from ._phase_gates import PhaseVector


class VerdictKind(Enum):
    """Outcome of an equivalence decision."""

    EQUIVALENT = "equivalent"
    """A certificate layer maps one state onto the other within the accepted residual."""

    NOT_EQUIVALENT = "not_equivalent"
    """An invariant differs between the states by more than ten times its tolerance."""

    UNDETERMINED = "undetermined"
    """Neither a certificate nor an invariant witness was found."""

    @property
    def exit_code(self) -> int:
        """Process exit code of the ``check`` command for this outcome."""
        return {"equivalent": 0, "not_equivalent": 1, "undetermined": 2}[self.value]


@dataclass(frozen=True)
class Witness(ResultBase):
    """Evidence that two states are not local-unitary equivalent.

    ``margin`` is the size of the violation in units of the tolerance that decides it; a
    :class:`Verdict` only carries a witness whose margin exceeds 10.
    """

    condition: str
    description: str
    margin: float


@dataclass(frozen=True, eq=False)
class Verdict(ResultBase):
    """Three-valued result of an equivalence decision.

    Use the :meth:`equivalent`, :meth:`not_equivalent` and :meth:`undetermined` constructors rather
    than building instances directly.
    """

    kind: VerdictKind
    certificate: Optional[LocalUnitaryLayer] = None
    residual: Optional[float] = None
    witness: Optional[Witness] = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    phases: Optional["PhaseVector"] = None

    @classmethod
    def equivalent(
        cls,
        certificate: LocalUnitaryLayer,
        residual: float,
        phases: Optional["PhaseVector"] = None,
        **diagnostics: Any,
    ) -> "Verdict":
        """Build an equivalent verdict carrying its certificate layer."""
        return cls(VerdictKind.EQUIVALENT, certificate, residual, None, diagnostics, phases)

    @classmethod
    def not_equivalent(
        cls, condition: str, description: str, margin: float, **diagnostics: Any
    ) -> "Verdict":
        """Build a not-equivalent verdict carrying the violated invariant."""
        return cls(
            VerdictKind.NOT_EQUIVALENT,
            witness=Witness(condition, description, margin),
            diagnostics=diagnostics,
        )

    @classmethod
    def undetermined(
        cls, reason: str, best_residual: Optional[float] = None, **diagnostics: Any
    ) -> "Verdict":
        """Build an undetermined verdict with the reason and search diagnostics."""
        diagnostics["reason"] = reason
        return cls(VerdictKind.UNDETERMINED, residual=best_residual, diagnostics=diagnostics)

    @property
    def is_equivalent(self) -> bool:
        """Whether the verdict is :attr:`VerdictKind.EQUIVALENT`."""
        return self.kind is VerdictKind.EQUIVALENT

    @property
    def is_not_equivalent(self) -> bool:
        """Whether the verdict is :attr:`VerdictKind.NOT_EQUIVALENT`."""
        return self.kind is VerdictKind.NOT_EQUIVALENT

    @property
    def is_undetermined(self) -> bool:
        """Whether the verdict is :attr:`VerdictKind.UNDETERMINED`."""
        return self.kind is VerdictKind.UNDETERMINED

    def with_diagnostics(self, **diagnostics: Any) -> "Verdict":
        """Return a copy with additional diagnostics merged in."""
        merged = dict(self.diagnostics)
        merged.update(diagnostics)
        return Verdict(
            self.kind, self.certificate, self.residual, self.witness, merged, self.phases
        )

    def to_dict(self) -> Dict[str, SerializedType]:
        """Return the verdict in the certificate file layout."""
        layer = self.certificate.to_dict() if self.certificate is not None else {}
        diagnostics = serialize_value(self.diagnostics)
        assert isinstance(diagnostics, dict)
        if self.witness is not None:
            diagnostics["witness_condition"] = self.witness.condition
            diagnostics["witness_margin"] = self.witness.margin
        return {
            "verdict": self.kind.value,
            "global_phase": layer.get("global_phase"),
            "unitaries": layer.get("unitaries"),
            "residual": self.residual,
            "witness": self.witness.description if self.witness is not None else None,
            "diagnostics": diagnostics,
        }

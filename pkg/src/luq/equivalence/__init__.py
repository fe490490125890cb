# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

"""Decides whether two multi-qubit pure states are related by local unitaries."""

from importlib import metadata as metadata

__version__ = metadata.version("luq-equivalence")

from ._chain import (
    BranchPair,
    ChainEntry,
    ChainRole,
    CrossBlockOperator,
    DependencyChain,
    WkEvaluation,
    build_chain,
    cross_block_operator,
    evaluate_Wk,
    project_and_reduce,
)
from ._classify import EntanglementClass, classify, invariant_witness
from ._eig2 import Spectrum2, eig_hermitian2, eigh2
from ._exceptions import (
    PreconditionException,
    StateDomainException,
    StateFileException,
    ToleranceWarning,
    UnsupportedSizeException,
)
from ._files import (
    CertificateModel,
    LayerFileModel,
    StateFileModel,
    load_certificate,
    load_layer,
    load_state,
    save_certificate,
    save_layer,
    save_state,
)
from ._mixed import mixed_state_criterion
from ._phase_gates import (
    PhaseCompletion,
    PhaseVector,
    best_phase_fit,
    complete_state,
    condition_ii_fourcopy,
    condition_ii_pairwise,
    project_to_support,
    solve_phase_gates,
    support_complement,
)
from ._random import (
    bell_state,
    ghz_state,
    haar_layer,
    haar_state,
    haar_unitary,
    linear_cluster_state,
    product_state,
    random_layer_image,
    w_state,
)
from ._search import EulerZXZ
from ._solver import OracleResult, brute_force_oracle, decide_lu_equivalence
from ._standard_form import (
    StandardFormResult,
    SupportStructure,
    check_generic_equivalence,
    fix_phases,
    schmidt_coefficients,
    sorted_trace_decomposition,
    standard_form,
    support_structure,
    trace_decomposition,
    verify_certificate,
)
from ._state import (
    ConditionalBranch,
    HermitianReduced,
    LocalUnitaryLayer,
    PureState,
    Unitary2,
    apply_layer,
    apply_layer_to_density,
    conditional_state,
    density_matrix,
    overlap,
    partial_trace,
)
from ._util import DEFAULT_TOLERANCES, SolverConfiguration, ToleranceContext
from ._verdict import Verdict, VerdictKind, Witness

__all__ = [
    "PureState",
    "Unitary2",
    "LocalUnitaryLayer",
    "HermitianReduced",
    "ConditionalBranch",
    "ToleranceContext",
    "DEFAULT_TOLERANCES",
    "SolverConfiguration",
    "partial_trace",
    "apply_layer",
    "overlap",
    "conditional_state",
    "density_matrix",
    "apply_layer_to_density",
    "Spectrum2",
    "eig_hermitian2",
    "eigh2",
    "StandardFormResult",
    "SupportStructure",
    "trace_decomposition",
    "sorted_trace_decomposition",
    "support_structure",
    "fix_phases",
    "standard_form",
    "check_generic_equivalence",
    "verify_certificate",
    "schmidt_coefficients",
    "PhaseVector",
    "PhaseCompletion",
    "support_complement",
    "complete_state",
    "project_to_support",
    "solve_phase_gates",
    "condition_ii_pairwise",
    "condition_ii_fourcopy",
    "best_phase_fit",
    "EntanglementClass",
    "classify",
    "invariant_witness",
    "ChainRole",
    "CrossBlockOperator",
    "WkEvaluation",
    "ChainEntry",
    "DependencyChain",
    "BranchPair",
    "cross_block_operator",
    "evaluate_Wk",
    "project_and_reduce",
    "build_chain",
    "EulerZXZ",
    "Verdict",
    "VerdictKind",
    "Witness",
    "decide_lu_equivalence",
    "OracleResult",
    "brute_force_oracle",
    "mixed_state_criterion",
    "ghz_state",
    "w_state",
    "bell_state",
    "product_state",
    "linear_cluster_state",
    "haar_state",
    "haar_unitary",
    "haar_layer",
    "random_layer_image",
    "StateFileModel",
    "LayerFileModel",
    "CertificateModel",
    "load_state",
    "save_state",
    "load_layer",
    "save_layer",
    "load_certificate",
    "save_certificate",
    "StateDomainException",
    "PreconditionException",
    "UnsupportedSizeException",
    "StateFileException",
    "ToleranceWarning",
]

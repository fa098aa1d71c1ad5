"""Coherence measures and cohering/decohering powers of quantum channels."""

from .channels import KrausChannel, apply_channel, extend_channel, identity_channel
from .coherence import (
    Measure,
    QIDecomposition,
    c_l1,
    c_rel_entropy,
    coherence,
    is_incoherent,
    max_coherence,
    qi_coherence_additivity_check,
    qi_state,
)
from .entropy import binary_entropy, relative_entropy, shannon_entropy, von_neumann_entropy
from .errors import DimensionError, FormatError, InvariantError
from .optimize import (
    MixedStateFamily,
    OptimizationOutcome,
    OptimizerConfig,
    ProductFamily,
    PureStateFamily,
    SeparableMixtureFamily,
    bipartite_mixed,
    bipartite_pure,
    decode,
    maximize,
)
from .powers import (
    PowerKind,
    PowerReport,
    cgen_upper_bound,
    cohering_power,
    complete_cohering_power,
    complete_decohering_power,
    decohering_power,
    default_k_max,
    generalized_cohering_power,
    generalized_decohering_power,
    psi_phi_asymmetry,
    separable_complete_decohering_power,
)
from .states import (
    DensityMatrix,
    PureState,
    basis_state,
    dephase,
    dephase_subsystem,
    fourier_entangled_state,
    max_coherent,
    maximally_mixed,
    partial_trace,
    tensor,
)
from .zoo import ChannelSpec, build

__version__ = "0.1.0"

__all__ = [
    "ChannelSpec",
    "DensityMatrix",
    "DimensionError",
    "FormatError",
    "InvariantError",
    "KrausChannel",
    "Measure",
    "MixedStateFamily",
    "OptimizationOutcome",
    "OptimizerConfig",
    "PowerKind",
    "PowerReport",
    "ProductFamily",
    "PureState",
    "PureStateFamily",
    "QIDecomposition",
    "SeparableMixtureFamily",
    "apply_channel",
    "basis_state",
    "binary_entropy",
    "bipartite_mixed",
    "bipartite_pure",
    "build",
    "c_l1",
    "c_rel_entropy",
    "cgen_upper_bound",
    "coherence",
    "cohering_power",
    "complete_cohering_power",
    "complete_decohering_power",
    "decode",
    "decohering_power",
    "default_k_max",
    "dephase",
    "dephase_subsystem",
    "extend_channel",
    "fourier_entangled_state",
    "generalized_cohering_power",
    "generalized_decohering_power",
    "identity_channel",
    "is_incoherent",
    "max_coherence",
    "max_coherent",
    "maximally_mixed",
    "maximize",
    "partial_trace",
    "psi_phi_asymmetry",
    "qi_coherence_additivity_check",
    "qi_state",
    "relative_entropy",
    "separable_complete_decohering_power",
    "shannon_entropy",
    "tensor",
    "von_neumann_entropy",
]

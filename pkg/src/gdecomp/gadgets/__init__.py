"""Explicit constructions: transformers, absorbers, shifters, movers,
parity templates, the regulariser, and extremal instance generators."""

from .absorbers import build_absorber, build_loop_transformer
from .core import (
    GadgetCertificate,
    IdentificationMap,
    SpaceBuilder,
    canonical_pattern_edge,
    check_identification,
    expand_edge,
    identify_vertices,
    loop_chain,
    loop_graph,
    pattern_regularity,
    split_to_regular,
)
from .extremal import (
    CliqueBlowupCertificate,
    ComponentCertificate,
    ExtremalInstance,
    PartResidueCertificate,
    complete_bipartite,
    extremal_kr,
    extremal_tripartite,
    extremal_two_cliques,
)
from .movers import MoverParts, edge_residue_unit, mover_parts
from .parity import ParityGraphTemplate, ParitySlot, parity_template
from .regularise import LiftedGadget, Regulariser, lifted_gadget, regularise
from .shifters import (
    Shifter,
    build_shifter,
    shifter_degeneracy,
    shifter_filler_size,
)
from .transformers import (
    build_transformer,
    degeneracy_bound,
    transformer_degeneracy_claim,
)

__all__ = [
    "GadgetCertificate",
    "IdentificationMap",
    "SpaceBuilder",
    "MoverParts",
    "ParityGraphTemplate",
    "ParitySlot",
    "Shifter",
    "Regulariser",
    "LiftedGadget",
    "ExtremalInstance",
    "CliqueBlowupCertificate",
    "ComponentCertificate",
    "PartResidueCertificate",
    "canonical_pattern_edge",
    "check_identification",
    "expand_edge",
    "identify_vertices",
    "loop_chain",
    "loop_graph",
    "pattern_regularity",
    "split_to_regular",
    "build_transformer",
    "build_loop_transformer",
    "build_absorber",
    "build_shifter",
    "shifter_degeneracy",
    "shifter_filler_size",
    "mover_parts",
    "edge_residue_unit",
    "parity_template",
    "regularise",
    "lifted_gadget",
    "complete_bipartite",
    "extremal_kr",
    "extremal_two_cliques",
    "extremal_tripartite",
    "degeneracy_bound",
    "transformer_degeneracy_claim",
]

from .chromatic import ChromaticProfile, chromatic_number, critical_chromatic, gen_bottle, multipartite_classes
from .packing import (
    PackedPiece,
    PackingCert,
    PackingMode,
    PackingReport,
    assemble_collection_cert,
    common_denominator_b,
    factor_Q_with_T,
    q_h_constant,
    t_factor_of_clique,
    verify_packing,
)
from .qgadget import GadgetLayout, QGadget, build_Q, gadget_shape, gadget_vertex_count
from .weighted import WeightedGraph, build_T, scale

__all__ = [
    "ChromaticProfile",
    "GadgetLayout",
    "PackedPiece",
    "PackingCert",
    "PackingMode",
    "PackingReport",
    "QGadget",
    "WeightedGraph",
    "assemble_collection_cert",
    "build_Q",
    "build_T",
    "chromatic_number",
    "common_denominator_b",
    "critical_chromatic",
    "factor_Q_with_T",
    "gadget_shape",
    "gadget_vertex_count",
    "gen_bottle",
    "multipartite_classes",
    "q_h_constant",
    "scale",
    "t_factor_of_clique",
    "verify_packing",
]

"""Cluster and least-common-ancestor analysis of DAGs on a leaf set."""

from .dag import (
    Dag,
    PropertyReport,
    cluster_map,
    cluster_system,
    clusters,
    is_pcc,
    is_phylogenetic,
    is_regular,
    leq,
    recognize_shape,
    remove_shortcuts,
    shortcuts,
    validate,
)
from .documents import export_dot, load, parse_input, serialize
from .errors import (
    ContractViolation,
    InputError,
    LcaDagError,
    NotWellDefinedError,
    ResourceLimitError,
)
from .hasse import build_hasse, hasse_dag, realize_with_property
from .lca import (
    has_i_lca_property,
    i_lca_vertices,
    is_i_lca_relevant,
    lca_property_witness,
    lca_set,
    unique_lca,
)
from .oracle import GenParams, check_corpus, gen_dag, gen_system
from .setsys import (
    SetSystem,
    classify_structure,
    ic_members,
    is_i_ary,
    is_pre_i_ary,
    minimal_supersets,
    validate_system,
)
from .sizes import SizeIndex
from .transform import ominus, simplify, verify_preservation

__version__ = "0.1.0"

__all__ = [
    "Dag", "PropertyReport", "cluster_map", "cluster_system", "clusters", "is_pcc",
    "is_phylogenetic", "is_regular", "leq", "recognize_shape", "remove_shortcuts", "shortcuts",
    "validate", "export_dot", "load", "parse_input", "serialize", "ContractViolation",
    "InputError", "LcaDagError", "NotWellDefinedError", "ResourceLimitError", "build_hasse",
    "hasse_dag", "realize_with_property", "has_i_lca_property", "i_lca_vertices",
    "is_i_lca_relevant", "lca_property_witness", "lca_set", "unique_lca", "GenParams",
    "check_corpus", "gen_dag", "gen_system", "SetSystem", "classify_structure", "ic_members",
    "is_i_ary", "is_pre_i_ary", "minimal_supersets", "validate_system", "SizeIndex", "ominus",
    "simplify", "verify_preservation", "__version__",
]

"""Containers for independent sets in uniform hypergraphs.

A library and CLI for building fingerprint/container maps over the
independent sets of a k-uniform multihypergraph via iterated greedy
degree-order descents, together with the instance builders (arithmetic
progressions, homothetic patterns, copies, blow-ups), exact brute-force
oracles, and contract verification, all in exact rational arithmetic.
"""

from .errors import ContractError, InputError, LimitError, PreconditionError
from .hypergraph import (
    Hypergraph,
    as_mask,
    dump_hypergraph,
    ids_from,
    load_hypergraph,
    mask_from,
)
from .scythe import (
    MaxDegreeOrder,
    ScytheResult,
    ThresholdTable,
    high_degree_sets,
    max_degree_order,
    scythe_step,
    threshold_table,
)
from .containers import (
    ContainerMap,
    ContainerResult,
    DensityFamily,
    DescentParams,
    DescentResult,
    InvariantMonitor,
    MinSizeFamily,
    VerificationReport,
    build_container,
    build_container_family,
    container_count_bound,
    fingerprint_descent,
    shrink_delta,
    size_constant,
    verify_containers,
)
from .instances import (
    ap_hypergraph,
    blowup_copies_hypergraph,
    copies_hypergraph,
    grid_id,
    homothetic_hypergraph,
    minimal_degree_constant,
    poly_ap_hypergraph,
    subset_labels,
    t_density,
    two_density,
)

__version__ = "0.1.0"

__all__ = [
    "ContainerMap",
    "ContainerResult",
    "ContractError",
    "DensityFamily",
    "DescentParams",
    "DescentResult",
    "Hypergraph",
    "InputError",
    "InvariantMonitor",
    "LimitError",
    "MaxDegreeOrder",
    "MinSizeFamily",
    "PreconditionError",
    "ScytheResult",
    "ThresholdTable",
    "VerificationReport",
    "ap_hypergraph",
    "as_mask",
    "blowup_copies_hypergraph",
    "build_container",
    "build_container_family",
    "container_count_bound",
    "copies_hypergraph",
    "dump_hypergraph",
    "fingerprint_descent",
    "grid_id",
    "high_degree_sets",
    "homothetic_hypergraph",
    "ids_from",
    "load_hypergraph",
    "mask_from",
    "max_degree_order",
    "minimal_degree_constant",
    "poly_ap_hypergraph",
    "scythe_step",
    "shrink_delta",
    "size_constant",
    "subset_labels",
    "t_density",
    "threshold_table",
    "two_density",
    "verify_containers",
]

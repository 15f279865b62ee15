"""Quasi-randomness certificates for (partially) oriented graphs."""
from .census import FourCycleCensus, SignCensus, cycle_hom_count, four_cycle_census, sign_census
from .certify import EvaluateOptions, QuasiRandomnessReport, evaluate, verify_implications, verify_structural
from .data import load, read_graph, save, write_graph
from .discrepancy import (
    BiasResult,
    DiscrepancyResult,
    NuLevel,
    bias,
    max_discrepancy_exact,
    max_discrepancy_heuristic,
)
from .generators import GeneratorSpec, blowup, generate, random_orientation, random_tournament
from .graph import (
    JointDegreeTable,
    PartiallyOrientedGraph,
    edge_counts_between,
    joint_degree_table,
    underlying,
)
from .homomorphism import hom_count, hom_deviation
from .patterns import pattern_library
from .spectral import quadruple_sum, spectral_identities_check, spectrum
from .types import EdgeState, VertexSubsetPair

__all__ = [
    "BiasResult",
    "DiscrepancyResult",
    "EdgeState",
    "EvaluateOptions",
    "FourCycleCensus",
    "GeneratorSpec",
    "JointDegreeTable",
    "NuLevel",
    "PartiallyOrientedGraph",
    "QuasiRandomnessReport",
    "SignCensus",
    "VertexSubsetPair",
    "bias",
    "blowup",
    "cycle_hom_count",
    "edge_counts_between",
    "evaluate",
    "four_cycle_census",
    "generate",
    "hom_count",
    "hom_deviation",
    "joint_degree_table",
    "load",
    "max_discrepancy_exact",
    "max_discrepancy_heuristic",
    "pattern_library",
    "quadruple_sum",
    "random_orientation",
    "random_tournament",
    "read_graph",
    "save",
    "sign_census",
    "spectral_identities_check",
    "spectrum",
    "underlying",
    "verify_implications",
    "verify_structural",
    "write_graph",
]

"""Berge hypergraphs: containment of forests, extremal constructions,
Turán bound formulas and exact small-case search."""

from .berge import BergeMatcher, BergeWitness, check_witness, contains, contains_using, find_berge_star, oracle_contains
from .bounds import BoundResult, eval_bound, star_degree_threshold, theorem_ids
from .constructions import ConstructionReport, clique_blocks, hhat, hstar, htilde, partition_regular
from .family import FamilySpec, Graph, Path, Star, matching, parse
from .harness import UnknownSuite, verify_suite
from .hypergraph import Hypergraph, complete, is_connected, link, new, trace
from .search import SearchOptions, SearchOutcome, local_lower_bound, turan_connected, turan_exact

__version__ = "0.1.0"

__all__ = [
    "BergeMatcher",
    "BergeWitness",
    "check_witness",
    "contains",
    "contains_using",
    "find_berge_star",
    "oracle_contains",
    "BoundResult",
    "eval_bound",
    "star_degree_threshold",
    "theorem_ids",
    "ConstructionReport",
    "clique_blocks",
    "hhat",
    "hstar",
    "htilde",
    "partition_regular",
    "FamilySpec",
    "Graph",
    "Path",
    "Star",
    "matching",
    "parse",
    "UnknownSuite",
    "verify_suite",
    "Hypergraph",
    "complete",
    "new",
    "is_connected",
    "link",
    "trace",
    "SearchOptions",
    "SearchOutcome",
    "local_lower_bound",
    "turan_connected",
    "turan_exact",
]

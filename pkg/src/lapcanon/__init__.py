"""Canonized spectral positional encodings for graphs (Maximal Axis Projection)."""
from .basis import BasisOutcome, map_basis, map_basis_strong
from .errors import (
    ConvergenceError,
    DomainError,
    GeneratorError,
    LapCanonError,
    ParseError,
    SizeError,
    ValidationError,
)
from .estimator import MAPEncoder
from .graph import Graph, normalized_adjacency, parse_graph, permutation_matrix
from .oracle import OracleVerdict, basis_canonizable_bruteforce, sign_canonizable_bruteforce
from .pipeline import CanonizedEmbedding, canonize, canonize_spectrum
from .projection import AxisGrouping, project_axes
from .sign import SignOutcome, hash_propagate_sign, map_sign, polynomial_sign
from .spectral import CanonConfig, Spectrum, eigendecompose, group_eigenspaces, rse

__version__ = "0.1.0"

__all__ = [
    "AxisGrouping",
    "BasisOutcome",
    "CanonConfig",
    "CanonizedEmbedding",
    "ConvergenceError",
    "DomainError",
    "GeneratorError",
    "Graph",
    "LapCanonError",
    "MAPEncoder",
    "OracleVerdict",
    "ParseError",
    "SignOutcome",
    "SizeError",
    "Spectrum",
    "ValidationError",
    "basis_canonizable_bruteforce",
    "canonize",
    "canonize_spectrum",
    "eigendecompose",
    "group_eigenspaces",
    "hash_propagate_sign",
    "map_basis",
    "map_basis_strong",
    "map_sign",
    "normalized_adjacency",
    "parse_graph",
    "permutation_matrix",
    "polynomial_sign",
    "project_axes",
    "rse",
    "sign_canonizable_bruteforce",
]

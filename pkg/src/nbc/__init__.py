"""Broken-circuit bases for edge-ordered graphs and acyclic orientation bounds."""

__version__ = "0.1.0"

from .graph import OrderedGraph, parse_graph, format_graph  # noqa: E402
from .algebra import verify_nbc, candidate_basis, NbcCertificate  # noqa: E402
from .chromatic import chromatic_polynomial, f_h_vectors, acyclic_count  # noqa: E402
from .bounds import bound_report, gamma_bound, beta_bound, family_asymptotics  # noqa: E402

__all__ = [
    "OrderedGraph",
    "parse_graph",
    "format_graph",
    "verify_nbc",
    "candidate_basis",
    "NbcCertificate",
    "chromatic_polynomial",
    "f_h_vectors",
    "acyclic_count",
    "bound_report",
    "gamma_bound",
    "beta_bound",
    "family_asymptotics",
]

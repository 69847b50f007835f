"""Induced copy counting, nested blowups and extremal search for the inducibility problem."""

from .counting import count_embeddings, count_induced_copies
from .formulas import equitable_partition, f_value, g_value
from .graph import Graph, graph6_decode, graph6_encode

__all__ = [
    "Graph",
    "count_embeddings",
    "count_induced_copies",
    "equitable_partition",
    "f_value",
    "g_value",
    "graph6_decode",
    "graph6_encode",
]

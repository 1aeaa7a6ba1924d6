"""Exact census of bipartite graphs up to isomorphism of each side."""
from .canonical import canonical_form, orbit_size, stabilizer_order
from .census import Census, IsoClassRecord, enumerate_census, sweep, verify_identity
from .core import BinaryMatrix, BipartiteGraph, Permutation
from .neighborhood import classify

__all__ = [
    "BinaryMatrix",
    "BipartiteGraph",
    "Census",
    "IsoClassRecord",
    "Permutation",
    "canonical_form",
    "classify",
    "enumerate_census",
    "orbit_size",
    "stabilizer_order",
    "sweep",
    "verify_identity",
]

"""Real components of modular curves via the graph of real cusps and arcs."""

from .groups import (Conjugation, Family, Mat2, SubgroupSpec, Vec2, custom_group, family_group,
                     preimage_group)
from .modgraph import ModularGraph, component_stats, isomorphic, product, verify_cyclic
from .xicore import build_xi, classify_edges, compute_xi

__all__ = [
    "Conjugation", "Family", "Mat2", "ModularGraph", "SubgroupSpec", "Vec2", "build_xi",
    "classify_edges", "component_stats", "compute_xi", "custom_group", "family_group",
    "isomorphic", "preimage_group", "product", "verify_cyclic",
]

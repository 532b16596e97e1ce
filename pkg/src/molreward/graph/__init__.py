"""Derived molecular properties: formulas, rings, scaffolds, fingerprints,
similarity, and pattern matching."""

from .environments import (
    DEFAULT_NBITS,
    DEFAULT_RADIUS,
    Fingerprint,
    atom_environments,
    environment_layers,
    fingerprint,
    tanimoto,
)
from .formula import (
    Formula,
    carbon_fraction,
    dataset_filter,
    heavy_atom_count,
    molecular_formula,
    parse_formula,
)
from .patterns import (
    Pattern,
    PatternAtom,
    PatternBond,
    PatternLibrary,
    builtin_library,
    find_embeddings,
    match_pattern,
)
from .rings import perceive_rings, ring_membership
from .scaffold import murcko_scaffold, ring_cut_fragments, ring_systems
from .subgraph import extract_subgraph

__all__ = [
    "DEFAULT_NBITS", "DEFAULT_RADIUS", "Fingerprint", "Formula",
    "Pattern", "PatternAtom", "PatternBond", "PatternLibrary",
    "atom_environments", "builtin_library", "carbon_fraction",
    "dataset_filter", "environment_layers", "extract_subgraph",
    "find_embeddings", "fingerprint", "heavy_atom_count", "match_pattern",
    "molecular_formula", "murcko_scaffold", "parse_formula",
    "perceive_rings", "ring_cut_fragments", "ring_membership",
    "ring_systems", "tanimoto",
]

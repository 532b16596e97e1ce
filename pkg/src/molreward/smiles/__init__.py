"""SMILES parsing, validation, canonicalization, and randomized serialization."""

from .canon import canonical_ranks, permuted, write_canonical, write_random
from .errors import (
    KekulizationError,
    RingClosureError,
    SmilesError,
    StereoError,
    ValenceError,
)
from .model import (
    AROMATIC,
    DOUBLE,
    SINGLE,
    TRIPLE,
    Atom,
    Bond,
    BondStereo,
    Molecule,
    Reaction,
)
from .parser import parse, parse_reaction

__all__ = [
    "AROMATIC", "DOUBLE", "SINGLE", "TRIPLE",
    "Atom", "Bond", "BondStereo", "Molecule", "Reaction",
    "KekulizationError", "RingClosureError", "SmilesError", "StereoError",
    "ValenceError",
    "canonical_ranks", "parse", "parse_reaction", "permuted",
    "write_canonical", "write_random",
]

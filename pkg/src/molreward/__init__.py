"""molreward: verifiable chemistry rewards for reinforcement learning."""

from .smiles import Molecule, Reaction, SmilesError, parse, parse_reaction, write_canonical, write_random

__version__ = "0.1.0"

__all__ = [
    "Molecule", "Reaction", "SmilesError",
    "parse", "parse_reaction", "write_canonical", "write_random",
    "__version__",
]

"""Molecular formulas in Hill notation, plus dataset-level composition filters."""

from __future__ import annotations

from dataclasses import dataclass

from ..smiles import Molecule


@dataclass(frozen=True)
class Formula:
    counts: dict[str, int]

    @property
    def hill_string(self) -> str:
        return format_hill(self.counts)

    @staticmethod
    def from_string(text: str) -> "Formula":
        return Formula(parse_formula(text))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Formula):
            return self.counts == other.counts
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.counts.items()))


def molecular_formula(mol: Molecule) -> Formula:
    """Element counts including implicit and explicit hydrogens."""
    counts: dict[str, int] = {}
    for atom in mol.atoms:
        counts[atom.element] = counts.get(atom.element, 0) + 1
        if atom.total_h:
            counts["H"] = counts.get("H", 0) + atom.total_h
    return Formula({el: n for el, n in counts.items() if n > 0})


def format_hill(counts: dict[str, int]) -> str:
    """Carbon, then hydrogen, then the rest alphabetically; fully alphabetical
    when no carbon is present."""
    parts = []
    if "C" in counts:
        ordered = ["C"] + (["H"] if "H" in counts else []) + sorted(
            el for el in counts if el not in ("C", "H"))
    else:
        ordered = sorted(counts)
    for el in ordered:
        n = counts[el]
        parts.append(el if n == 1 else f"{el}{n}")
    return "".join(parts)


def parse_formula(text: str) -> dict[str, int]:
    """Read a plain formula string like ``C2H6O`` into element counts."""
    counts: dict[str, int] = {}
    i = 0
    while i < len(text):
        if not text[i].isupper():
            raise ValueError(f"bad formula {text!r} at position {i}")
        el = text[i]
        i += 1
        while i < len(text) and text[i].islower():
            el += text[i]
            i += 1
        digits = ""
        while i < len(text) and text[i].isdigit():
            digits += text[i]
            i += 1
        n = int(digits) if digits else 1
        if n <= 0:
            raise ValueError(f"zero count for {el} in formula {text!r}")
        counts[el] = counts.get(el, 0) + n
    if not counts:
        raise ValueError("empty formula")
    return counts


def heavy_atom_count(mol: Molecule) -> int:
    return sum(1 for a in mol.atoms if a.element != "H")


def carbon_fraction(mol: Molecule) -> float:
    heavy = heavy_atom_count(mol)
    if heavy == 0:
        raise ValueError("carbon fraction undefined for a molecule with no heavy atoms")
    carbons = sum(1 for a in mol.atoms if a.element == "C")
    return carbons / heavy


# Composition limits applied when curating training molecules.
MIN_HEAVY_ATOMS = 4
MAX_HEAVY_ATOMS = 100
MIN_CARBON_FRACTION = 0.20


def dataset_filter(mol: Molecule) -> tuple[bool, str | None]:
    """Accept/reject a molecule for dataset inclusion, with a reason."""
    heavy = heavy_atom_count(mol)
    if heavy < MIN_HEAVY_ATOMS:
        return False, f"too few heavy atoms ({heavy} < {MIN_HEAVY_ATOMS})"
    if heavy > MAX_HEAVY_ATOMS:
        return False, f"too many heavy atoms ({heavy} > {MAX_HEAVY_ATOMS})"
    fraction = carbon_fraction(mol)
    if fraction < MIN_CARBON_FRACTION:
        return False, f"carbon fraction {fraction:.2f} < {MIN_CARBON_FRACTION}"
    return True, None

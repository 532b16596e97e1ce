"""Molecular graph model: atoms, bonds, molecules, reactions.

Molecules are immutable once constructed; every operation in this package
treats them as values, so they are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .elements import ORGANIC_SUBSET, allowed_valences
from .errors import SmilesError, ValenceError

# Bond orders. AROMATIC is a first-class order: aromatic rings are kept in
# their aromatic form internally, not as one arbitrary Kekule assignment.
SINGLE = 1
DOUBLE = 2
TRIPLE = 3
AROMATIC = 4

BOND_SYMBOL = {SINGLE: "-", DOUBLE: "=", TRIPLE: "#", AROMATIC: ":"}

# Directional single-bond markers for double-bond stereo, stored relative to
# the bond's (a1 -> a2) orientation.
DIR_UP = 1      # "/"
DIR_DOWN = -1   # "\"

# Placeholder used in tetrahedral neighbour orderings for an implicit H.
IMPLICIT_H = -1

# Tetrahedral parities.
CCW = "@"
CW = "@@"


@dataclass(slots=True, frozen=True)
class Atom:
    element: str
    charge: int = 0
    isotope: int | None = None
    aromatic: bool = False
    explicit_h: int = 0
    implicit_h: int = 0
    stereo: str | None = None              # CCW ("@") or CW ("@@")
    stereo_ref: tuple[int, ...] = ()       # neighbour order the parity refers to
    map_index: int | None = None
    no_implied: bool = False               # bracket-written: H is exactly as given

    @property
    def total_h(self) -> int:
        return self.explicit_h + self.implicit_h

    def uses_implicit_valence(self) -> bool:
        """True when hydrogen count is derived from the normal-valence table."""
        return (
            self.element in ORGANIC_SUBSET
            and self.charge == 0
            and self.isotope is None
            and self.explicit_h == 0
            and not self.no_implied
        )


@dataclass(slots=True, frozen=True)
class BondStereo:
    """Cis/trans configuration of a double bond.

    ``ref1`` neighbours atom ``a1``, ``ref2`` neighbours ``a2``; ``cis`` says
    whether those two reference substituents lie on the same side.
    """
    ref1: int
    ref2: int
    cis: bool


@dataclass(slots=True, frozen=True)
class Bond:
    a1: int
    a2: int
    order: int = SINGLE
    direction: int = 0                 # DIR_UP/DIR_DOWN as read a1 -> a2
    stereo: BondStereo | None = None   # set on stereo double bonds

    def other(self, idx: int) -> int:
        return self.a2 if idx == self.a1 else self.a1


class Molecule:
    """An immutable attributed molecular graph."""

    __slots__ = ("atoms", "bonds", "components", "_adjacency", "_bond_index")

    def __init__(self, atoms: tuple[Atom, ...], bonds: tuple[Bond, ...]):
        self.atoms = atoms
        self.bonds = bonds
        adjacency: list[list[tuple[int, int]]] = [[] for _ in atoms]
        bond_index: dict[tuple[int, int], int] = {}
        for bi, bond in enumerate(bonds):
            if bond.a1 == bond.a2:
                raise SmilesError("bond endpoints must be distinct atoms")
            if not (0 <= bond.a1 < len(atoms) and 0 <= bond.a2 < len(atoms)):
                raise SmilesError("bond references a missing atom")
            key = (min(bond.a1, bond.a2), max(bond.a1, bond.a2))
            if key in bond_index:
                raise SmilesError("duplicate bond between one atom pair")
            bond_index[key] = bi
            adjacency[bond.a1].append((bond.a2, bi))
            adjacency[bond.a2].append((bond.a1, bi))
        self._adjacency = tuple(tuple(n) for n in adjacency)
        self._bond_index = bond_index
        self.components = self._count_components()

    # -- structure access ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.atoms)

    def neighbors(self, idx: int) -> tuple[tuple[int, int], ...]:
        """(atom index, bond index) pairs adjacent to ``idx``."""
        return self._adjacency[idx]

    def bond_between(self, i: int, j: int) -> Bond | None:
        bi = self._bond_index.get((min(i, j), max(i, j)))
        return None if bi is None else self.bonds[bi]

    def degree(self, idx: int) -> int:
        return len(self._adjacency[idx])

    def component_atom_sets(self) -> list[list[int]]:
        seen = [False] * len(self.atoms)
        out: list[list[int]] = []
        for start in range(len(self.atoms)):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                a = stack.pop()
                comp.append(a)
                for nbr, _ in self._adjacency[a]:
                    if not seen[nbr]:
                        seen[nbr] = True
                        stack.append(nbr)
            comp.sort()
            out.append(comp)
        return out

    def _count_components(self) -> int:
        return len(self.component_atom_sets()) if self.atoms else 0

    @staticmethod
    def empty() -> "Molecule":
        return Molecule((), ())

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Molecule({len(self.atoms)} atoms, {len(self.bonds)} bonds)"


def bond_order_sum(mol_atoms: tuple[Atom, ...], bonds_at: list[list[int]],
                   bonds: list[Bond], idx: int) -> int:
    total = 0
    for bi in bonds_at[idx]:
        order = bonds[bi].order
        total += 1 if order == AROMATIC else order
    return total


def perceive_implicit_hydrogens(
    atoms: list[Atom],
    bonds: list[Bond],
    needs_pi: list[bool],
    text: str | None = None,
) -> list[Atom]:
    """Fill in implicit hydrogen counts and validate valences.

    ``needs_pi`` marks aromatic atoms that must carry one double bond in any
    Kekule assignment; their effective valence is degree + 1.
    """
    bonds_at: list[list[int]] = [[] for _ in atoms]
    for bi, bond in enumerate(bonds):
        bonds_at[bond.a1].append(bi)
        bonds_at[bond.a2].append(bi)

    out: list[Atom] = []
    for idx, atom in enumerate(atoms):
        sigma = bond_order_sum(tuple(atoms), bonds_at, bonds, idx)
        used = sigma + (1 if needs_pi[idx] else 0)
        if atom.uses_implicit_valence():
            valences = allowed_valences(atom.element, 0)
            assert valences is not None
            fitting = [v for v in valences if v >= used]
            if not fitting:
                raise ValenceError(
                    f"{atom.element} with bond order sum {used} exceeds allowed "
                    f"valences {valences}", text)
            implied = fitting[0] - used
            # Aromatic N/P donating a lone pair never gain implicit H; an NH
            # pyrrole nitrogen must be written [nH].
            if atom.aromatic and atom.element in ("N", "P") and not needs_pi[idx]:
                implied = 0
            out.append(_with_implicit(atom, implied))
        else:
            # Bracket atom: hydrogens are exactly as written; check the cap.
            valences = allowed_valences(atom.element, atom.charge)
            if valences is not None and used + atom.explicit_h > max(valences):
                raise ValenceError(
                    f"[{atom.element}] charge {atom.charge:+d} with valence "
                    f"{used + atom.explicit_h} exceeds maximum {max(valences)}",
                    text)
            out.append(_with_implicit(atom, 0))
    return out


def _with_implicit(atom: Atom, count: int) -> Atom:
    if count < 0:
        raise ValenceError(f"negative implicit hydrogen count on {atom.element}")
    return Atom(
        element=atom.element, charge=atom.charge, isotope=atom.isotope,
        aromatic=atom.aromatic, explicit_h=atom.explicit_h, implicit_h=count,
        stereo=atom.stereo, stereo_ref=atom.stereo_ref, map_index=atom.map_index,
        no_implied=atom.no_implied,
    )


@dataclass(slots=True, frozen=True)
class Reaction:
    reactants: tuple[Molecule, ...]
    agents: tuple[Molecule, ...] = field(default=())
    products: tuple[Molecule, ...] = field(default=())

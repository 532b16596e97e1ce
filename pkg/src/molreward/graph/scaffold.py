"""Scaffold and ring-system decomposition."""

from __future__ import annotations

from ..smiles import Molecule, SINGLE, write_canonical
from .rings import perceive_rings, ring_membership
from .subgraph import extract_subgraph


def _close_over_multiple_bonds(mol: Molecule, keep: set[int]) -> set[int]:
    """Grow ``keep`` until no double/triple bond crosses its boundary."""
    grown = set(keep)
    changed = True
    while changed:
        changed = False
        for b in mol.bonds:
            if b.order not in (2, 3):
                continue
            if (b.a1 in grown) != (b.a2 in grown):
                grown.add(b.a1)
                grown.add(b.a2)
                changed = True
    return grown


def murcko_scaffold(mol: Molecule) -> Molecule:
    """Ring systems plus the linkers between them.

    Terminal side-chain atoms are pruned iteratively; atoms attached to the
    remaining frame by double or triple bonds stay (a carbonyl on a ring or
    linker belongs to the scaffold). Acyclic molecules give the empty
    molecule.
    """
    in_ring = ring_membership(mol)
    if not any(in_ring):
        return Molecule.empty()

    degree = [mol.degree(i) for i in range(len(mol.atoms))]
    removed = [False] * len(mol.atoms)
    changed = True
    while changed:
        changed = False
        for i in range(len(mol.atoms)):
            if removed[i] or in_ring[i] or degree[i] > 1:
                continue
            removed[i] = True
            changed = True
            for nbr, _ in mol.neighbors(i):
                if not removed[nbr]:
                    degree[nbr] -= 1

    keep = {i for i in range(len(mol.atoms)) if not removed[i]}
    return extract_subgraph(mol, _close_over_multiple_bonds(mol, keep))


def ring_systems(mol: Molecule) -> list[set[int]]:
    """Atom sets of fused/spiro ring systems (rings sharing any atom merge)."""
    rings = perceive_rings(mol)
    systems: list[set[int]] = []
    for ring in rings:
        ring_set = set(ring)
        merged = [s for s in systems if s & ring_set]
        for s in merged:
            systems.remove(s)
            ring_set |= s
        systems.append(ring_set)
    systems.sort(key=min)
    return systems


def ring_cut_fragments(mol: Molecule) -> list[str]:
    """Canonical SMILES of each ring system, cut out along exocyclic single
    bonds with hydrogen caps; exocyclic double-bonded atoms stay attached.
    Deduplicated and sorted."""
    out: set[str] = set()
    for system in ring_systems(mol):
        keep = _close_over_multiple_bonds(mol, set(system))
        fragment = extract_subgraph(mol, keep)
        out.add(write_canonical(fragment))
    return sorted(out)

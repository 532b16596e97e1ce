"""Extraction of capped substructures as standalone molecules."""

from __future__ import annotations

from ..smiles import Molecule, SINGLE
from ..smiles.canon import _pi_requirements
from ..smiles.model import Atom, Bond, perceive_implicit_hydrogens


def extract_subgraph(mol: Molecule, keep: set[int]) -> Molecule:
    """Copy the induced subgraph on ``keep``, capping cut bonds with hydrogen.

    Only single bonds may be cut. Atoms with table-driven hydrogen counts are
    re-perceived; bracket-style atoms get one explicit hydrogen per cut.
    Tetrahedral and double-bond stereo referring to removed atoms is dropped.
    """
    ordered = sorted(keep)
    index = {old: new for new, old in enumerate(ordered)}
    cut_count = {old: 0 for old in keep}
    kept_bonds: list[Bond] = []
    for b in mol.bonds:
        in1, in2 = b.a1 in keep, b.a2 in keep
        if in1 and in2:
            kept_bonds.append(b)
        elif in1 or in2:
            if b.order != SINGLE:
                raise ValueError("cannot cap a non-single bond cut")
            cut_count[b.a1 if in1 else b.a2] += 1

    # Aromatic nitrogens keep their pi role from the parent molecule so that
    # cutting a pyrrole substituent caps to [nH], not a pyridine-type n.
    parent_needs = _pi_requirements(mol)
    needs_pi = [parent_needs[old] for old in ordered]

    atoms: list[Atom] = []
    for old in ordered:
        a = mol.atoms[old]
        stereo, stereo_ref = a.stereo, a.stereo_ref
        if stereo is not None and any(
                r >= 0 and r not in keep for r in stereo_ref):
            stereo, stereo_ref = None, ()
        elif stereo is not None:
            stereo_ref = tuple(r if r < 0 else index[r] for r in stereo_ref)
        explicit_h = a.explicit_h
        if cut_count[old]:
            lone_pair_np = (a.aromatic and a.element in ("N", "P")
                            and not parent_needs[old])
            if lone_pair_np or not a.uses_implicit_valence():
                explicit_h += cut_count[old]
        atoms.append(Atom(
            element=a.element, charge=a.charge, isotope=a.isotope,
            aromatic=a.aromatic, explicit_h=explicit_h, implicit_h=0,
            stereo=stereo, stereo_ref=stereo_ref, map_index=a.map_index,
            no_implied=a.no_implied))

    bonds: list[Bond] = []
    for b in kept_bonds:
        stereo = b.stereo
        if stereo is not None and (stereo.ref1 not in keep or stereo.ref2 not in keep):
            stereo = None
        elif stereo is not None:
            stereo = type(stereo)(ref1=index[stereo.ref1], ref2=index[stereo.ref2],
                                  cis=stereo.cis)
        bonds.append(Bond(a1=index[b.a1], a2=index[b.a2], order=b.order,
                          direction=0, stereo=stereo))

    atoms = perceive_implicit_hydrogens(atoms, bonds, needs_pi)
    return Molecule(tuple(atoms), tuple(bonds))

"""Element symbols and valence data used for hydrogen perception and validation."""

from __future__ import annotations

# Every symbol accepted inside brackets. Bare (organic-subset) atoms are a
# separate, smaller set below.
ELEMENTS = {
    "H", "He",
    "Li", "Be", "B", "C", "N", "O", "F", "Ne",
    "Na", "Mg", "Al", "Si", "P", "S", "Cl", "Ar",
    "K", "Ca", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn",
    "Ga", "Ge", "As", "Se", "Br", "Kr",
    "Rb", "Sr", "Y", "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
    "In", "Sn", "Sb", "Te", "I", "Xe",
    "Cs", "Ba", "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy",
    "Ho", "Er", "Tm", "Yb", "Lu",
    "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt", "Au", "Hg",
    "Tl", "Pb", "Bi", "Po", "At", "Rn",
    "Fr", "Ra", "Ac", "Th", "Pa", "U", "Np", "Pu",
}

# Atoms that may be written without brackets; implicit hydrogens are perceived
# for these from the normal-valence table.
ORGANIC_SUBSET = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}

# Elements with an accepted lowercase aromatic form.
AROMATIC_ELEMENTS = {"B", "C", "N", "O", "P", "S"}

# Normal valences (ascending). Implicit hydrogen count for a bare atom is the
# smallest listed valence >= its bond-order sum, minus that sum.
NORMAL_VALENCES: dict[str, tuple[int, ...]] = {
    "B": (3,),
    "C": (4,),
    "N": (3, 5),
    "O": (2,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "F": (1,),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
    "H": (1,),
    "Si": (4,),
    "Se": (2, 4, 6),
    "As": (3, 5),
    "Te": (2, 4, 6),
}


def allowed_valences(element: str, charge: int) -> tuple[int, ...] | None:
    """Valences an atom may use, adjusted for formal charge.

    Returns None when the element has no table entry (metals and the like);
    such atoms are not valence-checked.
    """
    base = NORMAL_VALENCES.get(element)
    if base is None:
        return None
    if charge == 0:
        return base
    if element in ("B", "C", "Si"):
        # Group 13/14: both cations and anions lose a bonding slot.
        adjusted = tuple(v - abs(charge) for v in base)
    else:
        # Groups 15-17: protonation adds a bond, deprotonation removes one.
        adjusted = tuple(v + charge for v in base)
    valid = tuple(v for v in adjusted if v >= 0)
    return valid if valid else (0,)

#!/usr/bin/env python3
"""Generate the shipped 1,000-molecule test corpus.

Deterministic: hand-picked real molecules plus systematic enumeration over
scaffolds, substituents, chains, stereo variants, and salts. Every entry
parses, canonicalizes, and stays at or under 40 atoms so the VF2 oracle in
the test suite stays fast.

Usage: python3 tools/gen_corpus.py > tests/data/corpus_1000.smi
"""

from __future__ import annotations

import sys

from molreward.smiles import parse, write_canonical

REAL_MOLECULES = [
    "C", "CC", "CCC", "CCCC", "CCCCC", "CCCCCC", "CC(C)C", "CC(C)(C)C",
    "C=C", "C#C", "CC=C", "CC#C", "C=C=C", "CC=CC", "C=CC=C",
    "O", "CO", "CCO", "CCCO", "CC(C)O", "CC(C)(C)O", "OCCO", "OCC(O)CO",
    "N", "CN", "CCN", "CCCN", "CC(C)N", "NCCN", "CNC", "CN(C)C",
    "S", "CS", "CCS", "CSC", "CCSC", "SCCS",
    "CF", "CCl", "CBr", "CI", "FC(F)F", "FC(F)(F)F", "ClC(Cl)Cl", "ClCCl",
    "C=O", "CC=O", "CCC=O", "CC(C)=O", "O=CO", "CC(=O)O",
    "CCC(=O)O", "CC(=O)OC", "CC(=O)OCC", "COC(=O)C",
    "CC(=O)Oc1ccccc1C(=O)O",
    "CN1C=NC2=C1C(=O)N(C)C(=O)N2C",
    "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
    "CC(=O)Nc1ccc(O)cc1",
    "Clc1ccccc1C(=O)O",
    "NC(=O)c1ccccc1",
    "OC(=O)c1ccccc1O",
    "COc1ccc(CC(C)N)cc1",
    "CN(C)CCc1ccccc1",
    "OCC1OC(O)C(O)C(O)C1O",
    "OC[C@H]1OC(O)[C@H](O)[C@@H](O)[C@@H]1O",
    "N[C@@H](C)C(=O)O", "N[C@@H](CC(=O)O)C(=O)O", "N[C@@H](CS)C(=O)O",
    "N[C@@H](CO)C(=O)O", "N[C@@H](Cc1ccccc1)C(=O)O",
    "N[C@@H](Cc1cc[nH]c1)C(=O)O",
    "OC(=O)CC(O)(CC(=O)O)C(=O)O", "OC(=O)C(O)C(O)C(=O)O",
    "OC(=O)/C=C/C(=O)O", "OC(=O)/C=C\\C(=O)O",
    "CC(O)C(=O)O", "OCC(=O)O", "NCC(=O)O",
    "O=C(O)CCC(=O)O", "O=C(O)CCCC(=O)O", "CCCCCC(=O)O", "CCCCCCCC(=O)O",
    "OCCN", "OCCNCCO",
    "C1CCOC1", "C1CCOCC1", "C1CCNC1", "C1CCNCC1", "C1CCSC1",
    "C1COCCN1", "C1CNCCN1", "O1CCOCC1",
    "c1ccccc1", "Cc1ccccc1", "CCc1ccccc1", "Cc1ccccc1C", "Cc1ccc(C)cc1",
    "c1ccncc1", "c1ccoc1", "c1ccsc1", "c1cc[nH]c1", "c1cnc[nH]1",
    "c1ccc2ccccc2c1", "c1ccc2[nH]ccc2c1", "c1ccc2ncccc2c1", "c1ccc2occc2c1",
    "c1ccc2sccc2c1", "c1ccc(-c2ccccc2)cc1", "C1=CC2=CC=CC=C2C=C1",
    "Oc1ccccc1", "Nc1ccccc1", "Clc1ccccc1", "Brc1ccccc1", "Ic1ccccc1",
    "Fc1ccccc1", "COc1ccccc1", "CSc1ccccc1", "O=[N+]([O-])c1ccccc1",
    "N#Cc1ccccc1", "OCc1ccccc1", "NCc1ccccc1", "O=Cc1ccccc1",
    "CC(=O)c1ccccc1", "OC(=O)c1ccccc1",
    "CS(=O)(=O)c1ccccc1", "NS(=O)(=O)c1ccccc1",
    "C1CC1", "C1CCC1", "C1CCCC1", "C1CCCCC1", "C1CCCCCC1",
    "C1CC2CCC1CC2", "C1CC2CCC1C2", "CC12CCC(CC1)CC2", "C1CC2(CC1)CCCC2",
    "OC1CCCCC1", "NC1CCCCC1", "O=C1CCCCC1", "O=C1CCCC1", "CC1CCCCC1",
    "C1=CCCCC1", "C1=CC=CCC1", "OC1CCCC1O",
    "F/C=C/F", "F/C=C\\F", "C/C=C/C", "C/C=C\\C", "C/C=C/C=C/C",
    "Cl/C=C/Cl", "CC/C=C/CC", "C/C=C/C(=O)O",
    "[13CH4]", "[2H]C([2H])([2H])C",
    "[NH4+].[Cl-]", "[Na+].[O-]C(=O)C", "[K+].[O-]C(=O)c1ccccc1",
    "CC(=O)[O-].[NH4+]", "[Ca+2].[O-]C(=O)C.[O-]C(=O)C",
    "C[N+](C)(C)C.[Cl-]", "[O-]S(=O)(=O)[O-].[Na+].[Na+]",
    "[O-]c1ccccc1.[Na+]",
    "CCOC(=O)CC(=O)OCC", "CCOC(=O)C(=O)OCC", "COC(=O)CCC(=O)OC",
    "CNC(=O)c1ccccc1", "CN(C)C(=O)c1ccccc1", "CC(=O)NC",
    "CCOCC", "COC", "CCOC", "COCCOC", "CCOCCO",
    "CC#N", "CCC#N", "N#CCC#N",
    "CCC(C)=O", "CCC(=O)CC", "O=C1CCC(=O)CC1",
    "OO", "CCOO", "COOC",
    "NN", "CNN", "CNNC", "NNC(=O)c1ccccc1",
    "C[N+](C)(C)C", "[NH3+]CC(=O)[O-]", "C[NH2+]C.[Cl-]",
    "S=C=S", "O=C=O", "N=C=O", "CN=C=O", "CN=C=S",
    "CS(C)=O", "CS(=O)(=O)C", "CS(=O)(=O)O", "COS(=O)(=O)OC",
    "NC(=O)N", "NC(=O)NC", "CNC(=O)NC", "NC(=N)N",
    "COP(=O)(OC)OC", "OP(=O)(O)O", "CCOP(=O)(OCC)OCC",
    "c1ccc(cc1)C(c1ccccc1)c1ccccc1", "C(c1ccccc1)c1ccccc1",
    "Oc1ccc(Cl)cc1", "Nc1ccc(C)cc1", "Oc1ccc(cc1)C(=O)O",
    "COc1ccc(C=O)cc1", "Cc1ccc(S(=O)(=O)O)cc1", "Cc1ccc(S(=O)(=O)N)cc1",
    "Clc1ccc(Cl)cc1", "Clc1cccc(Cl)c1", "Clc1ccccc1Cl",
    "O=C(O)c1ccc(O)cc1", "O=C(O)c1ccc(N)cc1", "O=C(O)c1ccc(Cl)cc1",
    "c1ccc(CC2CCCC2)cc1", "c1ccc(CCN2CCCC2)cc1", "c1ccc(N2CCOCC2)cc1",
    "CC(C)(C)OC(=O)N", "CC(C)(C)OC(=O)NC", "CC(C)(C)OC(=O)NCC(=O)O",
    "C1CN(CCN1)c1ccccc1", "O=C(c1ccccc1)N1CCCC1", "c1ccc(OC2CCCC2)cc1",
    "C[C@H](N)C(=O)O", "C[C@@H](N)C(=O)O", "C[C@H](O)CC", "C[C@@H](O)CC",
    "C[C@H]1CC[C@@H](C)CC1", "C[C@H]1CC[C@H](C)CC1",
    "N[C@@H]1CCCC1", "O[C@H]1CCCCC1", "[C@H](N)(C)C(=O)O",
    "CC(Cl)Br", "C(F)(Cl)Br", "FC(Cl)Br",
    "c1ccc2c(c1)CCCC2", "c1ccc2c(c1)CCC2", "c1ccc2c(c1)OCO2",
    "O=C1OC(=O)c2ccccc12", "Cc1ccc2ccccc2c1", "c1ccc2cc3ccccc3cc2c1",
    "OCC(O)C(O)C(O)C(O)CO", "NCCCCN", "NCCCCCCN", "OCCCCO",
    "OC(=O)CCCCCCC(=O)O", "CCCCCCCC=C", "CC(C)CCCC(C)C",
    "C1CC2CCC3CCCC(C1)C23",
]

SUBSTITUENTS = [
    "C", "CC", "CCC", "C(C)C", "O", "OC", "OCC", "N", "NC", "N(C)C",
    "F", "Cl", "Br", "I", "C#N", "C=O", "C(C)=O", "C(=O)O", "C(=O)OC",
    "C(=O)N", "S", "SC", "S(=O)(=O)C", "[N+](=O)[O-]", "C(F)(F)F",
    "OC(=O)C", "NC(=O)C", "CO", "CN", "CCl",
]

AROMATIC_CORES = [
    "c1ccccc1", "c1ccncc1", "c1cccnc1", "c1ccoc1", "c1ccsc1",
    "c1ccc2ccccc2c1",
]

SATURATED_RINGS = ["C1CCCCC1", "C1CCCC1", "C1CCNCC1", "C1CCOC1", "C1CCOCC1"]

CHAIN_ACIDS = ["CC(=O)O", "CCC(=O)O", "CCCC(=O)O", "CCCCC(=O)O"]
CHAIN_ALCOHOLS = ["CO", "CCO", "CCCO", "CCCCO", "CC(C)O"]
CHAIN_AMINES = ["CN", "CCN", "CCCN", "CC(C)N"]


def candidates() -> list[str]:
    out: list[str] = list(REAL_MOLECULES)

    for core in AROMATIC_CORES:
        for sub in SUBSTITUENTS:
            out.append(f"{sub}{core}")

    # disubstituted benzenes in all three arrangements
    for s1 in SUBSTITUENTS[:16]:
        for s2 in SUBSTITUENTS[:16]:
            out.append(f"{s1}c1ccc({s2})cc1")
    for s1 in SUBSTITUENTS[:8]:
        for s2 in SUBSTITUENTS[:8]:
            out.append(f"{s1}c1cccc({s2})c1")
            out.append(f"{s1}c1ccccc1{s2}")

    # disubstituted pyridines
    for s1 in SUBSTITUENTS[:10]:
        for s2 in SUBSTITUENTS[:10]:
            out.append(f"{s1}c1ccc({s2})nc1")

    for ring in SATURATED_RINGS:
        for sub in SUBSTITUENTS:
            out.append(f"{sub}{ring}")

    # esters, amides, ethers from chain pieces
    for acid in CHAIN_ACIDS:
        for alcohol in CHAIN_ALCOHOLS:
            out.append(acid[:-1] + alcohol)
        for amine in CHAIN_AMINES:
            out.append(acid[:-1] + "N" + amine[:-1] if amine != "CN" else acid[:-1] + "NC")
    for a in CHAIN_ALCOHOLS:
        for b in ["C", "CC", "CCC", "c1ccccc1"]:
            out.append(a + b)

    # benzyl / phenethyl families
    for tail in SUBSTITUENTS[:20]:
        out.append(f"c1ccccc1C{tail}")
        out.append(f"c1ccccc1CC{tail}")

    # amides and sulfonamides on anilines
    for acyl in ["CC(=O)", "CCC(=O)", "c1ccccc1C(=O)", "CS(=O)(=O)"]:
        for amine in ["Nc1ccccc1", "NC1CCCCC1", "NCC", "NCc1ccccc1", "N1CCCCC1", "N1CCOCC1"]:
            out.append(acyl + amine)

    # stereo pairs on a common backbone
    for mid in ["[C@H]", "[C@@H]"]:
        for tail in ["C(=O)O", "CO", "CC", "c1ccccc1", "C#N", "CCO", "CCC", "C(=O)N"]:
            out.append(f"C{mid}(N){tail}")
            out.append(f"C{mid}(O){tail}")
            out.append(f"CC{mid}(N){tail}")

    # ring stereo
    for m1 in ["[C@H]", "[C@@H]"]:
        for m2 in ["[C@H]", "[C@@H]"]:
            out.append(f"C{m1}1CC{m2}(O)CC1")
            out.append(f"C{m1}1CC{m2}(N)CCC1")

    # double-bond stereo family
    for d1 in "/\\":
        for x in ["F", "Cl", "C", "CC", "OC", "N#C"]:
            out.append(f"{x}/C=C{d1}{x}")
            out.append(f"{x}/C=C{d1}C")
        for x in ["C", "CC"]:
            out.append(f"{x}/C=C{d1}c1ccccc1")

    # isotopes and charged species
    out.extend([
        "[13CH3]C(=O)O", "[13CH3]c1ccccc1", "[2H]OC([2H])([2H])C",
        "[15NH2]c1ccccc1", "[18OH]C(=O)C",
        "[O-]C(=O)CC[NH3+]", "C[NH+](C)C.[Cl-]",
        "[O-]c1ccc(cc1)[N+](=O)[O-]",
        "[O-]C(=O)c1ccccc1.[Na+]", "[O-]C(=O)CCC[NH3+]",
    ])

    # five-membered heteroaromatic substitutions
    for sub in SUBSTITUENTS[:12]:
        out.append(f"{sub}c1ccco1")
        out.append(f"{sub}c1cccs1")
        out.append(f"Cn1cccc1{sub}")

    # fused and bridged frames
    out.extend([
        "C1CC2CCC(C1)C2", "c1ccc2c(c1)cccc2C",
        "O=C1NC(=O)c2ccccc12", "O=C1OCCO1", "O=C1CCCO1", "O=C1CCCN1",
        "C1CC2CCC1O2", "C1CC2CCC1N2",
    ])

    # long chains and polyfunctional molecules
    for n in range(7, 15):
        out.append("C" * n)
        out.append("C" * (n - 3) + "C(=O)O")
        out.append("C" * (n - 3) + "O")
        out.append("C" * (n - 4) + "N")
    out.extend([
        "NCCCCN", "NCCCCCCN", "OCCCCO",
        "OC(=O)CCCCCCC(=O)O", "CCCCCCCC=C", "CC(C)CCCC(C)C",
    ])

    # macrocycle exercising %nn ring closures
    out.append("C%10CCCCCCCCCCC%10")
    out.append("C1CCCCCCCCCCC1")
    return out


def main() -> int:
    seen: set[str] = set()
    kept: list[str] = []
    for smi in candidates():
        if " " in smi:
            continue
        try:
            mol = parse(smi)
            canonical = write_canonical(mol)
        except Exception:
            continue
        if len(mol.atoms) > 40:
            continue
        if canonical in seen:
            continue
        seen.add(canonical)
        kept.append(smi)
        if len(kept) == 1000:
            break
    if len(kept) < 1000:
        print(f"only {len(kept)} unique molecules generated", file=sys.stderr)
        return 1
    for smi in kept:
        print(smi)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Circular atom environments, hashed fingerprints, and Tanimoto similarity.

Environment codes are 64-bit FNV-1a hashes and are specified bit-exactly so
reference Bloom filters built by other processes stay portable:

- ``code_0(atom)`` hashes ``b"ATOM"`` + the UTF-8 element symbol + ``0x00`` +
  six little-endian fields: charge+128 (u8), isotope or 0 (u32), aromatic flag
  (u8), heavy-atom degree (u8), total hydrogen count (u8).
- ``code_r(atom)`` hashes ``b"ENV"`` + radius (u8) + ``code_{r-1}(atom)``
  (u64 LE) + the sorted list of neighbour pairs, each bond order (u8) followed
  by ``code_{r-1}(neighbour)`` (u64 LE).

FNV-1a runs with offset basis 0xcbf29ce484222325 and prime 0x100000001b3,
truncated to 64 bits.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from ..smiles import Molecule

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = (1 << 64) - 1

DEFAULT_NBITS = 2048
DEFAULT_RADIUS = 2


def _fnv1a(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & _MASK
    return h


def _initial_codes(mol: Molecule) -> list[int]:
    codes = []
    for i, a in enumerate(mol.atoms):
        payload = (b"ATOM" + a.element.encode() + b"\x00" + struct.pack(
            "<BIBBB", a.charge + 128, a.isotope or 0, int(a.aromatic),
            mol.degree(i), a.total_h))
        codes.append(_fnv1a(payload))
    return codes


def environment_layers(mol: Molecule, radius: int = DEFAULT_RADIUS) -> list[list[int]]:
    """Per-radius environment codes: ``layers[r][i]`` for atom ``i``."""
    layers = [_initial_codes(mol)]
    for r in range(1, radius + 1):
        prev = layers[-1]
        nxt = []
        for i in range(len(mol.atoms)):
            pairs = sorted(
                (mol.bonds[bi].order, prev[j]) for j, bi in mol.neighbors(i))
            payload = bytearray(b"ENV")
            payload += struct.pack("<BQ", r, prev[i])
            for order, code in pairs:
                payload += struct.pack("<BQ", order, code)
            nxt.append(_fnv1a(bytes(payload)))
        layers.append(nxt)
    return layers


def atom_environments(mol: Molecule, radius: int = DEFAULT_RADIUS) -> list[int]:
    """One radius-``radius`` environment code per atom."""
    return environment_layers(mol, radius)[-1]


@dataclass(frozen=True)
class Fingerprint:
    bits: int
    nbits: int = DEFAULT_NBITS
    radius: int = DEFAULT_RADIUS

    @property
    def popcount(self) -> int:
        return self.bits.bit_count()


def fingerprint(mol: Molecule, nbits: int = DEFAULT_NBITS,
                radius: int = DEFAULT_RADIUS) -> Fingerprint:
    """Hashed circular fingerprint over environment codes at radii 0..radius."""
    bits = 0
    for layer in environment_layers(mol, radius):
        for code in layer:
            bits |= 1 << (code % nbits)
    return Fingerprint(bits=bits, nbits=nbits, radius=radius)


def tanimoto(a: Fingerprint, b: Fingerprint) -> float:
    """|intersection| / |union| over set bits; 1.0 when both are empty."""
    if a.nbits != b.nbits:
        raise ValueError(f"fingerprint width mismatch: {a.nbits} != {b.nbits}")
    union = (a.bits | b.bits).bit_count()
    if union == 0:
        return 1.0
    return (a.bits & b.bits).bit_count() / union

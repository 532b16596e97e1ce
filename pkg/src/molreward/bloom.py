"""Bloom filters backing the purchasability and plausibility reference sets.

Membership hashing: one 128-bit BLAKE2b digest of (salt as 8 little-endian
bytes, then the item), split into two little-endian 64-bit halves ``h1`` and
``h2``; probe index ``i`` is ``(h1 + i*h2) mod m``.

File format (little-endian): magic ``MRBF``, u16 version=1, u64 m, u32 k,
u64 salt, u64 inserted, the bit array (``ceil(m/8)`` bytes, LSB-first within
each byte), u32 CRC32 over everything before it.
"""

from __future__ import annotations

import hashlib
import math
import struct
import zlib
from dataclasses import dataclass, field
from pathlib import Path

_MAGIC = b"MRBF"
_VERSION = 1
_HEADER = struct.Struct("<4sHQIQQ")


class BloomFormatError(ValueError):
    """A filter file is corrupt, truncated, or from another format version."""


@dataclass
class BloomFilter:
    m: int
    k: int
    salt: int = 0
    inserted: int = 0
    bits: bytearray = field(default_factory=bytearray)

    def __post_init__(self):
        if self.m <= 0 or self.k < 1:
            raise ValueError("need m > 0 and k >= 1")
        if not self.bits:
            self.bits = bytearray((self.m + 7) // 8)

    @staticmethod
    def create(capacity: int, target_fp: float, salt: int = 0) -> "BloomFilter":
        """Size a filter for ``capacity`` items at ``target_fp`` false-positive
        probability: m = ceil(-n ln p / (ln 2)^2), k = round((m/n) ln 2)."""
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        if not 0.0 < target_fp < 1.0:
            raise ValueError("target_fp must be in (0, 1)")
        ln2 = math.log(2.0)
        m = math.ceil(-capacity * math.log(target_fp) / (ln2 * ln2))
        k = max(1, round((m / capacity) * ln2))
        return BloomFilter(m=m, k=k, salt=salt)

    def _indices(self, item: bytes) -> list[int]:
        digest = hashlib.blake2b(
            struct.pack("<Q", self.salt) + item, digest_size=16).digest()
        h1 = int.from_bytes(digest[:8], "little")
        h2 = int.from_bytes(digest[8:], "little")
        return [(h1 + i * h2) % self.m for i in range(self.k)]

    def insert(self, item: bytes | str) -> None:
        if isinstance(item, str):
            item = item.encode()
        for idx in self._indices(item):
            self.bits[idx >> 3] |= 1 << (idx & 7)
        self.inserted += 1

    def __contains__(self, item: bytes | str) -> bool:
        if isinstance(item, str):
            item = item.encode()
        return all(self.bits[idx >> 3] & (1 << (idx & 7))
                   for idx in self._indices(item))

    def popcount(self) -> int:
        return sum(byte.bit_count() for byte in self.bits)

    # -- persistence ---------------------------------------------------------

    def save(self, path: str | Path) -> None:
        header = _HEADER.pack(_MAGIC, _VERSION, self.m, self.k,
                              self.salt, self.inserted)
        body = header + bytes(self.bits)
        crc = zlib.crc32(body) & 0xFFFFFFFF
        Path(path).write_bytes(body + struct.pack("<I", crc))

    @staticmethod
    def load(path: str | Path) -> "BloomFilter":
        blob = Path(path).read_bytes()
        if len(blob) < _HEADER.size + 4:
            raise BloomFormatError("file too short for a bloom filter")
        magic, version, m, k, salt, inserted = _HEADER.unpack_from(blob)
        if magic != _MAGIC:
            raise BloomFormatError(f"bad magic {magic!r}; not a bloom filter file")
        if version != _VERSION:
            raise BloomFormatError(f"unsupported version {version}")
        body, crc_raw = blob[:-4], blob[-4:]
        (crc,) = struct.unpack("<I", crc_raw)
        if zlib.crc32(body) & 0xFFFFFFFF != crc:
            raise BloomFormatError("checksum mismatch; file corrupt or truncated")
        nbytes = (m + 7) // 8
        bits = blob[_HEADER.size:_HEADER.size + nbytes]
        if len(bits) != nbytes:
            raise BloomFormatError("bit array truncated")
        return BloomFilter(m=m, k=k, salt=salt, inserted=inserted,
                           bits=bytearray(bits))

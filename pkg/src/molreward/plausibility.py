"""Reference-backed plausibility checks and the undesirable-motif screen.

A proposed molecule is "reasonable" when every ring system and every radius-2
atom environment already occurs in a catalog of synthesized molecules; both
reference sets live in Bloom filters, so the check can never wrongly reject a
catalog member.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Iterable

from .bloom import BloomFilter
from .graph import atom_environments, ring_cut_fragments
from .graph.patterns import PatternLibrary, _MolView, builtin_library
from .graph.rings import ring_membership
from .smiles import Molecule, SINGLE, SmilesError, parse

_RING_FILE = "rings.bloom"
_FRAGMENT_FILE = "fragments.bloom"
_MANIFEST_FILE = "manifest.json"
_FORMAT_VERSION = 1
DEFAULT_FP_RATE = 0.001


def _env_key(code: int) -> bytes:
    return struct.pack("<Q", code)


@dataclass
class PlausibilityReference:
    ring_filter: BloomFilter
    fragment_filter: BloomFilter
    provenance: dict = field(default_factory=dict)

    def save(self, directory: str | Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        self.ring_filter.save(directory / _RING_FILE)
        self.fragment_filter.save(directory / _FRAGMENT_FILE)
        manifest = dict(self.provenance)
        manifest["format_version"] = _FORMAT_VERSION
        (directory / _MANIFEST_FILE).write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n")

    @staticmethod
    def load(directory: str | Path) -> "PlausibilityReference":
        directory = Path(directory)
        manifest = json.loads((directory / _MANIFEST_FILE).read_text())
        if manifest.get("format_version") != _FORMAT_VERSION:
            raise ValueError(
                f"unsupported reference format {manifest.get('format_version')}")
        return PlausibilityReference(
            ring_filter=BloomFilter.load(directory / _RING_FILE),
            fragment_filter=BloomFilter.load(directory / _FRAGMENT_FILE),
            provenance=manifest)


@dataclass(frozen=True)
class ReasonablenessVerdict:
    ok: bool
    failing_kind: str | None = None    # "ring" or "fragment"
    failing_value: str | None = None   # ring SMILES or environment code hex

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class BuildStats:
    parsed: int = 0
    skipped: int = 0
    rings_inserted: int = 0
    fragments_inserted: int = 0


def build_reference(catalog: Iterable[str], *, fp_rate: float = DEFAULT_FP_RATE,
                    salt: int = 0, source: str = "catalog") -> tuple[PlausibilityReference, BuildStats]:
    """Build ring and fragment filters from a stream of SMILES lines.

    Unparseable lines are counted and skipped. Raises on an empty catalog.
    """
    stats = BuildStats()
    rings: set[str] = set()
    fragments: set[bytes] = set()
    for line in catalog:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            mol = parse(line)
        except SmilesError:
            stats.skipped += 1
            continue
        stats.parsed += 1
        rings.update(ring_cut_fragments(mol))
        fragments.update(_env_key(c) for c in atom_environments(mol))
    if stats.parsed == 0:
        raise ValueError("catalog contained no parseable molecules")

    ring_filter = BloomFilter.create(max(1, len(rings)), fp_rate, salt=salt)
    for smi in sorted(rings):
        ring_filter.insert(smi)
    fragment_filter = BloomFilter.create(max(1, len(fragments)), fp_rate, salt=salt)
    for key in sorted(fragments):
        fragment_filter.insert(key)
    stats.rings_inserted = len(rings)
    stats.fragments_inserted = len(fragments)

    ref = PlausibilityReference(
        ring_filter=ring_filter, fragment_filter=fragment_filter,
        provenance={
            "source": source,
            "build_date": date.today().isoformat(),
            "molecules": stats.parsed,
            "skipped_lines": stats.skipped,
            "rings": stats.rings_inserted,
            "fragments": stats.fragments_inserted,
            "fp_rate": fp_rate,
        })
    return ref, stats


def is_reasonable(mol: Molecule, ref: PlausibilityReference) -> ReasonablenessVerdict:
    """All rings and all radius-2 environments must be in the reference.

    Acyclic molecules skip the ring clause. Reports the first failure.
    """
    for ring_smiles in ring_cut_fragments(mol):
        if ring_smiles not in ref.ring_filter:
            return ReasonablenessVerdict(False, "ring", ring_smiles)
    for code in atom_environments(mol):
        if _env_key(code) not in ref.fragment_filter:
            return ReasonablenessVerdict(False, "fragment", f"{code:016x}")
    return ReasonablenessVerdict(True)


# ---------------------------------------------------------------------------
# quality motifs

QUALITY_FLAGS = (
    "multi_thiol", "peroxide", "hydrazine", "charged_amine", "nitro",
    "long_saturated_chain",
)

LONG_CHAIN_LENGTH = 7


@dataclass(frozen=True)
class QualityReport:
    flags: frozenset[str]

    @property
    def ok(self) -> bool:
        return not self.flags


def quality_flags(mol: Molecule, library: PatternLibrary | None = None) -> QualityReport:
    """Detect the undesirable motifs the quality bonus screens for."""
    library = library or builtin_library()
    view = _MolView(mol)
    flags: set[str] = set()
    if library.count(mol, "thiol", view) >= 2:
        flags.add("multi_thiol")
    if library.count(mol, "peroxide", view) >= 1:
        flags.add("peroxide")
    if library.count(mol, "hydrazine", view) >= 1:
        flags.add("hydrazine")
    if library.count(mol, "charged_amine", view) >= 1:
        flags.add("charged_amine")
    if library.count(mol, "nitro", view) >= 1:
        flags.add("nitro")
    if _longest_saturated_carbon_chain(mol) >= LONG_CHAIN_LENGTH:
        flags.add("long_saturated_chain")
    return QualityReport(frozenset(flags))


def _longest_saturated_carbon_chain(mol: Molecule) -> int:
    """Longest simple path of acyclic sp3 carbons joined by single bonds.

    Qualifying atoms are non-aromatic, non-ring carbons with only single
    bonds; the qualifying subgraph is therefore a forest, so the longest path
    is each tree's diameter.
    """
    in_ring = ring_membership(mol)
    qualifying = set()
    for i, a in enumerate(mol.atoms):
        if a.element != "C" or a.aromatic or in_ring[i]:
            continue
        if all(mol.bonds[bi].order == SINGLE for _, bi in mol.neighbors(i)):
            qualifying.add(i)

    def farthest(start: int) -> tuple[int, int]:
        best = (start, 1)
        stack = [(start, None, 1)]
        while stack:
            node, prev, depth = stack.pop()
            if depth > best[1]:
                best = (node, depth)
            for nbr, _ in mol.neighbors(node):
                if nbr != prev and nbr in qualifying:
                    stack.append((nbr, node, depth + 1))
        return best

    longest = 0
    seen: set[int] = set()
    for i in sorted(qualifying):
        if i in seen:
            continue
        comp = {i}
        stack = [i]
        while stack:
            node = stack.pop()
            for nbr, _ in mol.neighbors(node):
                if nbr in qualifying and nbr not in comp:
                    comp.add(nbr)
                    stack.append(nbr)
        seen |= comp
        tip, _ = farthest(i)
        _, diameter = farthest(tip)
        longest = max(longest, diameter)
    return longest

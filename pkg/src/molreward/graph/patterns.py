"""Predicate-graph substructure patterns and the built-in group library.

A pattern is a small connected query graph. Atom predicates cover element
set, formal charge, aromaticity, degree, hydrogen count (exact or minimum),
ring membership, and saturation (all incident bonds single); bonds match on
order or anything (``~``). This intentionally closed language replaces a full
SMARTS engine: the tasks only ever reference a fixed library of groups, and
the shipped library file is the normative list.

Library file format (tab-separated, ``#`` comments, ``version=1`` header)::

    name<TAB>atom;spec atom;spec ...<TAB>i-j:order ...
    alias<TAB>groupname<TAB>member member ...

Atom specs are ``;``-joined ``key=value`` pairs: ``el`` (``|``-separated
symbols or ``any``), ``chg``, ``arom`` (0/1), ``deg``, ``h`` (``n`` or
``n+``), ``ring`` (0/1), ``sat`` (0/1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..smiles import AROMATIC, DOUBLE, SINGLE, TRIPLE, Molecule
from .rings import ring_membership

_ORDER_TOKEN = {"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC, "~": None}
_TOKEN_ORDER = {v: k for k, v in _ORDER_TOKEN.items()}


@dataclass(frozen=True)
class PatternAtom:
    elements: frozenset[str] | None = None   # None matches any element
    charge: int | None = None
    aromatic: bool | None = None
    degree: int | None = None
    h_min: int | None = None
    h_exact: int | None = None
    in_ring: bool | None = None
    saturated: bool | None = None


@dataclass(frozen=True)
class PatternBond:
    i: int
    j: int
    order: int | None = None    # None matches any order


@dataclass(frozen=True)
class Pattern:
    name: str
    atoms: tuple[PatternAtom, ...]
    bonds: tuple[PatternBond, ...]

    def __post_init__(self):
        if not self.atoms:
            raise ValueError(f"pattern {self.name!r} has no atoms")
        if not _connected(len(self.atoms), self.bonds):
            raise ValueError(f"pattern {self.name!r} is not a connected graph")


def _connected(n: int, bonds: tuple[PatternBond, ...]) -> bool:
    if n == 1:
        return True
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    for b in bonds:
        if not (0 <= b.i < n and 0 <= b.j < n):
            return False
        adj[b.i].add(b.j)
        adj[b.j].add(b.i)
    seen = {0}
    stack = [0]
    while stack:
        for x in adj[stack.pop()]:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return len(seen) == n


class _MolView:
    """Precomputed per-atom facts reused across patterns."""

    def __init__(self, mol: Molecule):
        self.mol = mol
        self.in_ring = ring_membership(mol)
        self.saturated = [
            all(mol.bonds[bi].order == SINGLE for _, bi in mol.neighbors(i))
            for i in range(len(mol.atoms))
        ]

    def atom_ok(self, i: int, q: PatternAtom) -> bool:
        a = self.mol.atoms[i]
        if q.elements is not None and a.element not in q.elements:
            return False
        if q.charge is not None and a.charge != q.charge:
            return False
        if q.aromatic is not None and a.aromatic != q.aromatic:
            return False
        if q.degree is not None and self.mol.degree(i) != q.degree:
            return False
        if q.h_exact is not None and a.total_h != q.h_exact:
            return False
        if q.h_min is not None and a.total_h < q.h_min:
            return False
        if q.in_ring is not None and self.in_ring[i] != q.in_ring:
            return False
        if q.saturated is not None and self.saturated[i] != q.saturated:
            return False
        return True


def find_embeddings(mol: Molecule, pattern: Pattern,
                    view: _MolView | None = None) -> set[frozenset[int]]:
    """Distinct matched atom sets (symmetry-deduplicated)."""
    view = view or _MolView(mol)
    n = len(pattern.atoms)
    order, anchor_bonds = _search_plan(pattern)
    found: set[frozenset[int]] = set()
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def extend(step: int) -> None:
        if step == n:
            found.add(frozenset(assignment.values()))
            return
        p = order[step]
        if step == 0:
            candidates = range(len(mol.atoms))
        else:
            anchor, _ = anchor_bonds[p][0]
            candidates = [j for j, _ in mol.neighbors(assignment[anchor])]
        for cand in candidates:
            if cand in used or not view.atom_ok(cand, pattern.atoms[p]):
                continue
            ok = True
            for other, want in anchor_bonds[p]:
                bond = mol.bond_between(assignment[other], cand)
                if bond is None or (want is not None and bond.order != want):
                    ok = False
                    break
            if ok:
                assignment[p] = cand
                used.add(cand)
                extend(step + 1)
                del assignment[p]
                used.remove(cand)

    extend(0)
    return found


def _search_plan(pattern: Pattern):
    """BFS atom order plus, per atom, bonds back into the matched part."""
    n = len(pattern.atoms)
    adj: dict[int, list[tuple[int, int | None]]] = {i: [] for i in range(n)}
    for b in pattern.bonds:
        adj[b.i].append((b.j, b.order))
        adj[b.j].append((b.i, b.order))
    order = [0]
    placed = {0}
    while len(order) < n:
        nxt = next(i for i in range(n)
                   if i not in placed and any(j in placed for j, _ in adj[i]))
        order.append(nxt)
        placed.add(nxt)
    anchors: dict[int, list[tuple[int, int | None]]] = {}
    seen: set[int] = set()
    for p in order:
        anchors[p] = [(j, o) for j, o in adj[p] if j in seen]
        seen.add(p)
    return order, anchors


def match_pattern(mol: Molecule, pattern: Pattern) -> int:
    """Count of distinct embeddings, deduplicated by matched atom set."""
    return len(find_embeddings(mol, pattern))


class PatternLibrary:
    """Named patterns plus group aliases that union several variants."""

    def __init__(self, patterns: dict[str, Pattern],
                 aliases: dict[str, tuple[str, ...]], version: int):
        self.patterns = patterns
        self.aliases = aliases
        self.version = version

    def __contains__(self, name: str) -> bool:
        return name in self.patterns or name in self.aliases

    def names(self) -> list[str]:
        return sorted(set(self.patterns) | set(self.aliases))

    def resolve(self, name: str) -> list[Pattern]:
        if name in self.aliases:
            return [self.patterns[m] for m in self.aliases[name]]
        if name in self.patterns:
            return [self.patterns[name]]
        raise KeyError(f"unknown pattern or group {name!r}")

    def count(self, mol: Molecule, name: str, view: _MolView | None = None) -> int:
        """Embedding count for a group, union-deduplicated across variants."""
        view = view or _MolView(mol)
        hits: set[frozenset[int]] = set()
        for pattern in self.resolve(name):
            hits |= find_embeddings(mol, pattern, view)
        return len(hits)

    @staticmethod
    def from_text(text: str) -> "PatternLibrary":
        patterns: dict[str, Pattern] = {}
        aliases: dict[str, tuple[str, ...]] = {}
        version: int | None = None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if version is None:
                if not line.startswith("version="):
                    raise ValueError("pattern library must start with version=N")
                version = int(line.split("=", 1)[1])
                continue
            fields = line.split("\t")
            if fields[0] == "alias":
                if len(fields) != 3:
                    raise ValueError(f"line {lineno}: alias needs 3 fields")
                aliases[fields[1]] = tuple(fields[2].split())
                continue
            if len(fields) not in (2, 3):
                raise ValueError(f"line {lineno}: expected 2 or 3 tab fields")
            name = fields[0]
            atoms = tuple(_parse_atom(spec, lineno) for spec in fields[1].split())
            bonds = ()
            if len(fields) == 3 and fields[2].strip():
                bonds = tuple(_parse_bond(spec, lineno) for spec in fields[2].split())
            patterns[name] = Pattern(name=name, atoms=atoms, bonds=bonds)
        if version is None:
            raise ValueError("empty pattern library")
        for group, members in aliases.items():
            for m in members:
                if m not in patterns:
                    raise ValueError(f"alias {group!r} references unknown {m!r}")
        return PatternLibrary(patterns, aliases, version)

    @staticmethod
    def from_file(path: str | Path) -> "PatternLibrary":
        return PatternLibrary.from_text(Path(path).read_text())


def _parse_atom(spec: str, lineno: int) -> PatternAtom:
    kwargs: dict = {}
    for part in spec.split(";"):
        if not part:
            continue
        try:
            key, value = part.split("=", 1)
        except ValueError:
            raise ValueError(f"line {lineno}: bad atom spec {part!r}") from None
        if key == "el":
            kwargs["elements"] = None if value == "any" else frozenset(value.split("|"))
        elif key == "chg":
            kwargs["charge"] = int(value)
        elif key == "arom":
            kwargs["aromatic"] = bool(int(value))
        elif key == "deg":
            kwargs["degree"] = int(value)
        elif key == "h":
            if value.endswith("+"):
                kwargs["h_min"] = int(value[:-1])
            else:
                kwargs["h_exact"] = int(value)
        elif key == "ring":
            kwargs["in_ring"] = bool(int(value))
        elif key == "sat":
            kwargs["saturated"] = bool(int(value))
        else:
            raise ValueError(f"line {lineno}: unknown atom key {key!r}")
    return PatternAtom(**kwargs)


def _parse_bond(spec: str, lineno: int) -> PatternBond:
    try:
        pair, token = spec.split(":")
        i, j = pair.split("-")
        return PatternBond(i=int(i), j=int(j), order=_ORDER_TOKEN[token])
    except (ValueError, KeyError):
        raise ValueError(f"line {lineno}: bad bond spec {spec!r}") from None


def builtin_library() -> PatternLibrary:
    text = resources.files("molreward.graph").joinpath(
        "data/functional_groups.txt").read_text()
    return PatternLibrary.from_text(text)

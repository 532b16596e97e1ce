"""Canonical and randomized SMILES writers.

Canonical form: Morgan-style iterative rank refinement over atom invariants
(element, charge, degree, total hydrogen count, aromaticity, isotope), with
remaining ties resolved by exhaustively writing every tied traversal and
keeping the lexicographically smallest string. The same traversal machinery,
driven by a seeded RNG instead of rank order, produces randomized output.
"""

from __future__ import annotations

import heapq
import random

from .elements import NORMAL_VALENCES
from .errors import SmilesError, StereoError
from .model import (
    AROMATIC,
    CCW,
    CW,
    DIR_UP,
    DOUBLE,
    IMPLICIT_H,
    SINGLE,
    TRIPLE,
    Atom,
    Bond,
    Molecule,
)

_MAX_TRAVERSALS = 20000


def write_canonical(mol: Molecule) -> str:
    """Serialize to a canonical SMILES string, invariant to atom order."""
    if not mol.atoms:
        return ""
    ranks = canonical_ranks(mol)
    ctx = _WriterContext(mol)
    out = []
    for comp in mol.component_atom_sets():
        out.append(_component_min(mol, comp, ranks, ctx))
    out.sort()
    return ".".join(out)


def write_random(mol: Molecule, seed: int) -> str:
    """Serialize with a seeded random root and branch order."""
    if not mol.atoms:
        return ""
    rng = random.Random(seed)
    ctx = _WriterContext(mol)
    comps = mol.component_atom_sets()
    rng.shuffle(comps)
    parts = []
    for comp in comps:
        root = comp[rng.randrange(len(comp))]
        chooser = _RandomChooser(rng)
        parts.append(_emit(mol, root, None, chooser, ctx))
    return ".".join(parts)


def canonical_ranks(mol: Molecule) -> list[int]:
    """Dense atom ranks from iterative neighbourhood refinement."""
    n = len(mol.atoms)
    inv = []
    for i, a in enumerate(mol.atoms):
        inv.append((a.element, a.charge, a.isotope or 0, a.aromatic,
                    mol.degree(i), a.total_h))
    ranks = _dense(inv)
    classes = len(set(ranks))
    while True:
        keys = []
        for i in range(n):
            nbr = sorted((mol.bonds[bi].order, ranks[j]) for j, bi in mol.neighbors(i))
            keys.append((ranks[i], tuple(nbr)))
        new_ranks = _dense(keys)
        new_classes = len(set(new_ranks))
        if new_classes == classes:
            return new_ranks
        ranks, classes = new_ranks, new_classes


def _dense(keys: list) -> list[int]:
    lookup = {k: r for r, k in enumerate(sorted(set(keys)))}
    return [lookup[k] for k in keys]


# ---------------------------------------------------------------------------
# traversal choosers


class _CanonicalChooser:
    """Odometer over the tie-break decision tree of one traversal."""

    def __init__(self) -> None:
        self.decisions: list[int] = []
        self.radix: list[int] = []
        self.pos = 0

    def start_run(self) -> None:
        self.pos = 0
        del self.radix[:]

    def pick(self, n: int) -> int:
        if n == 1:
            return 0
        if self.pos == len(self.decisions):
            self.decisions.append(0)
        choice = self.decisions[self.pos]
        self.radix.append(n)
        self.pos += 1
        return choice

    def advance(self) -> bool:
        """Move to the next decision vector; False when exhausted."""
        while self.decisions:
            last = len(self.decisions) - 1
            if self.decisions[last] + 1 < self.radix[last]:
                self.decisions[last] += 1
                return True
            self.decisions.pop()
            self.radix.pop()
        return False


class _RandomChooser:
    def __init__(self, rng: random.Random):
        self.rng = rng

    def pick(self, n: int) -> int:
        return self.rng.randrange(n) if n > 1 else 0


def _component_min(mol: Molecule, comp: list[int], ranks: list[int],
                   ctx: "_WriterContext") -> str:
    min_rank = min(ranks[a] for a in comp)
    best: str | None = None
    runs = 0
    for root in comp:
        if ranks[root] != min_rank:
            continue
        chooser = _CanonicalChooser()
        while True:
            chooser.start_run()
            runs += 1
            if runs > _MAX_TRAVERSALS:
                raise SmilesError("molecule too symmetric to canonicalize "
                                  "within traversal budget")
            s = _emit(mol, root, ranks, chooser, ctx)
            if best is None or s < best:
                best = s
            if not chooser.advance():
                break
    assert best is not None
    return best


# ---------------------------------------------------------------------------
# one full traversal -> SMILES text


class _WriterContext:
    """Per-molecule precomputation shared by all traversals."""

    def __init__(self, mol: Molecule):
        self.mol = mol
        n = len(mol.atoms)
        self.sigma = [0] * n
        for b in mol.bonds:
            order = 1 if b.order == AROMATIC else b.order
            self.sigma[b.a1] += order
            self.sigma[b.a2] += order
        self.needs_pi = _pi_requirements(mol)
        # Constraint graph for directional (/ \) bonds: bond index ->
        # [(other bond index, relation)] with v_other = relation * v_self.
        self.dir_links: dict[int, list[tuple[int, int]]] = {}
        bond_idx = {}
        for k, b in enumerate(mol.bonds):
            bond_idx[(b.a1, b.a2)] = k
            bond_idx[(b.a2, b.a1)] = k
        for b in mol.bonds:
            if b.order != DOUBLE or b.stereo is None:
                continue
            k1 = bond_idx.get((b.a1, b.stereo.ref1))
            k2 = bond_idx.get((b.a2, b.stereo.ref2))
            if k1 is None or k2 is None:
                continue
            s1 = 1 if mol.bonds[k1].a1 == b.a1 else -1
            s2 = 1 if mol.bonds[k2].a1 == b.a2 else -1
            relation = s1 * s2 * (1 if b.stereo.cis else -1)
            self.dir_links.setdefault(k1, []).append((k2, relation))
            self.dir_links.setdefault(k2, []).append((k1, relation))


def _pi_requirements(mol: Molecule) -> list[bool]:
    has_exo_multiple = [False] * len(mol.atoms)
    for b in mol.bonds:
        if b.order in (DOUBLE, TRIPLE):
            has_exo_multiple[b.a1] = True
            has_exo_multiple[b.a2] = True
    needs = [False] * len(mol.atoms)
    for i, a in enumerate(mol.atoms):
        if not a.aromatic:
            continue
        if a.element == "C":
            needs[i] = a.charge == 0 and not has_exo_multiple[i]
        elif a.element in ("N", "P"):
            needs[i] = a.charge > 0 or (
                a.charge == 0 and a.total_h == 0 and mol.degree(i) == 2)
        elif a.element in ("O", "S"):
            needs[i] = a.charge > 0
    return needs


def _emit(mol: Molecule, root: int, ranks: list[int] | None, chooser,
          ctx: _WriterContext) -> str:
    n = len(mol.atoms)
    visited = [False] * n
    disc = [0] * n
    order: list[int] = []
    children: dict[int, list[tuple[int, int]]] = {}
    ring_at: dict[int, list[tuple[int, int]]] = {}
    used_bond = set()

    # Phase A: plan the spanning tree and ring bonds.
    def plan(u: int) -> None:
        visited[u] = True
        disc[u] = len(order)
        order.append(u)
        children[u] = []
        cands = [(j, bi) for j, bi in mol.neighbors(u) if bi not in used_bond]
        if ranks is None:
            seq = list(cands)
            picked = []
            while seq:
                picked.append(seq.pop(chooser.pick(len(seq))))
        else:
            cands.sort(key=lambda t: (ranks[t[0]], mol.bonds[t[1]].order, t[0]))
            picked = []
            i = 0
            while i < len(cands):
                j = i
                while j < len(cands) and (ranks[cands[j][0]], mol.bonds[cands[j][1]].order) \
                        == (ranks[cands[i][0]], mol.bonds[cands[i][1]].order):
                    j += 1
                group = cands[i:j]
                while group:
                    picked.append(group.pop(chooser.pick(len(group))))
                i = j
        for nbr, bi in picked:
            if bi in used_bond:
                continue
            used_bond.add(bi)
            if visited[nbr]:
                a, b = (nbr, u) if disc[nbr] < disc[u] else (u, nbr)
                ring_at.setdefault(a, []).append((b, bi))
                ring_at.setdefault(b, []).append((a, bi))
            else:
                children[u].append((nbr, bi))
                plan(nbr)

    plan(root)

    for u in ring_at:
        # Closures (earlier partner) before openings, each by partner order.
        ring_at[u].sort(key=lambda t: (disc[t[0]] > disc[u], disc[t[0]]))

    # Phase B: emit text.
    parts: list[str] = []
    digit_of: dict[int, int] = {}
    next_digit = [1]
    freed: list[int] = []
    dir_assigned: dict[int, int] = {}

    def alloc_digit() -> int:
        if freed:
            return heapq.heappop(freed)
        d = next_digit[0]
        next_digit[0] += 1
        if d > 99:
            raise SmilesError("too many simultaneously open rings")
        return d

    def digit_text(d: int) -> str:
        return str(d) if d < 10 else f"%{d:02d}"

    def assign_direction(bi: int, want: int) -> None:
        # Seed this constraint component, then propagate relations.
        stack = [(bi, want)]
        while stack:
            k, v = stack.pop()
            cur = dir_assigned.get(k)
            if cur is not None:
                if cur != v:
                    raise StereoError("inconsistent double-bond stereo network")
                continue
            dir_assigned[k] = v
            for other, rel in ctx.dir_links.get(k, ()):
                stack.append((other, v * rel))

    def bond_text(bi: int, from_atom: int) -> str:
        b = mol.bonds[bi]
        if b.order == DOUBLE:
            return "="
        if b.order == TRIPLE:
            return "#"
        if b.order == AROMATIC:
            return ""
        if bi in ctx.dir_links:
            if bi not in dir_assigned:
                forward = 1 if b.a1 == from_atom else -1
                assign_direction(bi, DIR_UP * forward)
            sign = dir_assigned[bi] if b.a1 == from_atom else -dir_assigned[bi]
            return "/" if sign == DIR_UP else "\\"
        if mol.atoms[b.a1].aromatic and mol.atoms[b.a2].aromatic:
            return "-"
        return ""

    def emit(u: int, parent: int | None, parent_bond: int | None) -> None:
        rings = ring_at.get(u, [])
        refs: list[int] = []
        if parent is not None:
            refs.append(parent)
        atom = mol.atoms[u]
        if atom.stereo is not None and atom.total_h == 1:
            refs.append(IMPLICIT_H)
        refs.extend(p for p, _ in rings)
        refs.extend(c for c, _ in children[u])

        if parent_bond is not None:
            parts.append(bond_text(parent_bond, parent))
        parts.append(_atom_token(mol, u, refs, ctx))
        for partner, bi in rings:
            if disc[partner] > disc[u]:
                d = alloc_digit()
                digit_of[bi] = d
                parts.append(bond_text(bi, u) + digit_text(d))
            else:
                d = digit_of.pop(bi)
                heapq.heappush(freed, d)
                parts.append(digit_text(d))
        kids = children[u]
        for child, bi in kids[:-1]:
            parts.append("(")
            emit(child, u, bi)
            parts.append(")")
        if kids:
            child, bi = kids[-1]
            emit(child, u, bi)

    emit(root, None, None)
    return "".join(parts)


def _atom_token(mol: Molecule, u: int, refs: list[int], ctx: _WriterContext) -> str:
    a = mol.atoms[u]
    stereo_symbol = None
    if a.stereo is not None and len(a.stereo_ref) == 4 and len(refs) == 4 \
            and set(a.stereo_ref) == set(refs):
        flips = _parity(a.stereo_ref, refs)
        if flips % 2 == 0:
            stereo_symbol = a.stereo
        else:
            stereo_symbol = CW if a.stereo == CCW else CCW

    symbol = a.element.lower() if a.aromatic else a.element
    if (stereo_symbol is None and a.charge == 0 and a.isotope is None
            and a.map_index is None and a.element in NORMAL_VALENCES
            and _bare_implied_h(mol, u, ctx) == a.total_h
            and a.element not in ("H", "Si", "Se", "As", "Te")):
        return symbol

    out = ["["]
    if a.isotope is not None:
        out.append(str(a.isotope))
    out.append(symbol)
    if stereo_symbol is not None:
        out.append(stereo_symbol)
    if a.total_h == 1:
        out.append("H")
    elif a.total_h > 1:
        out.append(f"H{a.total_h}")
    if a.charge:
        sign = "+" if a.charge > 0 else "-"
        out.append(sign if abs(a.charge) == 1 else f"{sign}{abs(a.charge)}")
    if a.map_index is not None:
        out.append(f":{a.map_index}")
    out.append("]")
    return "".join(out)


def _bare_implied_h(mol: Molecule, u: int, ctx: _WriterContext) -> int | None:
    """Hydrogens a parser would infer if this atom were written bare."""
    a = mol.atoms[u]
    valences = NORMAL_VALENCES.get(a.element)
    if valences is None:
        return None
    used = ctx.sigma[u] + (1 if ctx.needs_pi[u] else 0)
    fitting = [v for v in valences if v >= used]
    if not fitting:
        return None
    if a.aromatic and a.element in ("N", "P") and not ctx.needs_pi[u]:
        return 0
    return fitting[0] - used


def _parity(ref: tuple[int, ...], out: list[int]) -> int:
    perm = [ref.index(x) for x in out]
    inversions = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inversions += 1
    return inversions


def permuted(mol: Molecule, new_order: list[int]) -> Molecule:
    """Rebuild the molecule with atoms relabelled by ``new_order``.

    ``new_order[k]`` is the old index of the atom that becomes index ``k``.
    Used by tests to check order invariance.
    """
    if sorted(new_order) != list(range(len(mol.atoms))):
        raise ValueError("new_order must be a permutation of atom indices")
    old_to_new = {old: new for new, old in enumerate(new_order)}

    def remap_ref(x: int) -> int:
        return x if x == IMPLICIT_H else old_to_new[x]

    atoms = []
    for old in new_order:
        a = mol.atoms[old]
        atoms.append(Atom(
            element=a.element, charge=a.charge, isotope=a.isotope,
            aromatic=a.aromatic, explicit_h=a.explicit_h, implicit_h=a.implicit_h,
            stereo=a.stereo,
            stereo_ref=tuple(remap_ref(x) for x in a.stereo_ref),
            map_index=a.map_index, no_implied=a.no_implied))
    bonds = []
    for b in mol.bonds:
        stereo = None
        if b.stereo is not None:
            stereo = type(b.stereo)(
                ref1=old_to_new[b.stereo.ref1], ref2=old_to_new[b.stereo.ref2],
                cis=b.stereo.cis)
        bonds.append(Bond(
            a1=old_to_new[b.a1], a2=old_to_new[b.a2], order=b.order,
            direction=b.direction, stereo=stereo))
    bonds.sort(key=lambda b: (min(b.a1, b.a2), max(b.a1, b.a2)))
    return Molecule(tuple(atoms), tuple(bonds))

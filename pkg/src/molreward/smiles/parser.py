"""SMILES reader.

Accepted grammar: the OpenSMILES organic subset plus bracket atoms (isotope,
charge, explicit H, atom maps), tetrahedral ``@``/``@@`` markers, directional
``/`` and ``\\`` bonds, ring closures ``0``-``9`` and ``%nn``, and dot
disconnection. Wildcards, quadruple bonds, and reaction arrows are rejected
here (reactions are split by :func:`parse_reaction`).

Aromatic (lowercase) input is validated by Kekule assignment but kept in
aromatic form internally. Uppercase six-membered rings with strictly
alternating single/double bonds are normalised to the aromatic form so that
the two common ways of writing benzene compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .elements import AROMATIC_ELEMENTS, ELEMENTS, ORGANIC_SUBSET
from .errors import (
    KekulizationError,
    RingClosureError,
    SmilesError,
    StereoError,
)
from .model import (
    AROMATIC,
    CCW,
    CW,
    DIR_DOWN,
    DIR_UP,
    DOUBLE,
    IMPLICIT_H,
    SINGLE,
    TRIPLE,
    Atom,
    Bond,
    BondStereo,
    Molecule,
    Reaction,
    perceive_implicit_hydrogens,
)

_BOND_CHARS = {"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC}
_TWO_LETTER_ORGANIC = ("Cl", "Br")
_AROMATIC_LOWER = {"b": "B", "c": "C", "n": "N", "o": "O", "p": "P", "s": "S"}
_MAX_CHARGE = 4


@dataclass(slots=True)
class _RawAtom:
    element: str
    aromatic: bool = False
    charge: int = 0
    isotope: int | None = None
    explicit_h: int = 0
    stereo: str | None = None
    map_index: int | None = None
    bracket: bool = False
    position: int = 0
    # Neighbour order for tetrahedral parity; ring openings are recorded as
    # ("ring", token) placeholders and resolved at closure.
    refs: list = field(default_factory=list)


@dataclass(slots=True)
class _RawBond:
    a1: int
    a2: int
    order: int | None   # None = implicit, resolved later
    direction: int = 0
    explicit_aromatic: bool = False
    position: int = 0


@dataclass(slots=True)
class _RingOpen:
    atom: int
    order: int | None
    direction: int
    explicit_aromatic: bool
    position: int
    token: int          # unique id for stereo slot resolution


def parse(text: str) -> Molecule:
    """Parse a SMILES string into a validated :class:`Molecule`."""
    if not isinstance(text, str):
        raise SmilesError("SMILES input must be a string")
    if not text or text.strip() != text or not text.strip():
        if not text:
            raise SmilesError("empty SMILES string", text)
        raise SmilesError("leading or trailing whitespace in SMILES", text)
    atoms, bonds = _read(text)
    return _finish(atoms, bonds, text)


def parse_reaction(text: str) -> Reaction:
    """Parse three-part reaction SMILES ``reactants>agents>products``."""
    parts = text.split(">")
    if len(parts) != 3:
        raise SmilesError(
            f"reaction SMILES needs exactly two '>' separators, found {len(parts) - 1}",
            text)
    sides: list[tuple[Molecule, ...]] = []
    for si, part in enumerate(parts):
        mols = []
        if part:
            for chunk in part.split("."):
                if not chunk:
                    raise SmilesError("empty component in reaction SMILES", text)
                mols.append(parse(chunk))
        sides.append(tuple(mols))
    reactants, agents, products = sides
    if not reactants:
        raise SmilesError("reaction has no reactants", text)
    if not products:
        raise SmilesError("reaction has no products", text)
    return Reaction(reactants=reactants, agents=agents, products=products)


# ---------------------------------------------------------------------------
# pass 1: text -> raw atoms/bonds


def _read(text: str) -> tuple[list[_RawAtom], list[_RawBond]]:
    atoms: list[_RawAtom] = []
    bonds: list[_RawBond] = []
    prev: int | None = None
    stack: list[int | None] = []
    pending_order: int | None = None
    pending_dir = 0
    pending_pos = -1
    have_pending = False
    ring_open: dict[int, _RingOpen] = {}
    ring_token = 0
    slot_partner: dict[int, int] = {}
    branch_counts: list[int] = []

    i = 0
    n = len(text)
    while i < n:
        ch = text[i]

        if ch == "(":
            if prev is None:
                raise SmilesError("branch opened before any atom", text, i)
            if have_pending:
                raise SmilesError("bond symbol before '('", text, i)
            stack.append(prev)
            branch_counts.append(len(atoms))
            i += 1
            continue

        if ch == ")":
            if not stack:
                raise SmilesError("unmatched ')'", text, i)
            if have_pending:
                raise SmilesError("dangling bond symbol before ')'", text, i)
            if branch_counts.pop() == len(atoms):
                raise SmilesError("empty branch", text, i)
            prev = stack.pop()
            i += 1
            continue

        if ch in _BOND_CHARS or ch in "/\\":
            if have_pending:
                raise SmilesError("two consecutive bond symbols", text, i)
            if ch in "/\\":
                pending_order = SINGLE
                pending_dir = DIR_UP if ch == "/" else DIR_DOWN
            else:
                pending_order = _BOND_CHARS[ch]
                pending_dir = 0
            pending_pos = i
            have_pending = True
            i += 1
            continue

        if ch == ".":
            if stack:
                raise SmilesError("dot disconnection inside a branch", text, i)
            if have_pending:
                raise SmilesError("bond symbol before '.'", text, i)
            if prev is None:
                raise SmilesError("dot before any atom", text, i)
            prev = None
            i += 1
            continue

        if ch.isdigit() or ch == "%":
            if prev is None:
                raise SmilesError("ring closure before any atom", text, i)
            if ch == "%":
                if i + 2 >= n or not (text[i + 1].isdigit() and text[i + 2].isdigit()):
                    raise SmilesError("'%' must be followed by two digits", text, i)
                number = int(text[i + 1:i + 3])
                width = 3
            else:
                number = int(ch)
                width = 1
            if number in ring_open:
                opened = ring_open.pop(number)
                _close_ring(atoms, bonds, opened, prev, pending_order, pending_dir,
                            have_pending, slot_partner, text, i)
            else:
                ring_token += 1
                ring_open[number] = _RingOpen(
                    atom=prev, order=pending_order if have_pending else None,
                    direction=pending_dir if have_pending else 0,
                    explicit_aromatic=have_pending and pending_order == AROMATIC,
                    position=i, token=ring_token)
                atoms[prev].refs.append(("ring", ring_token))
            have_pending = False
            pending_order = None
            pending_dir = 0
            i += width
            continue

        if ch == "[":
            atom, width = _read_bracket(text, i)
            i += width
        elif ch.isupper():
            if text[i:i + 2] in _TWO_LETTER_ORGANIC:
                symbol, width = text[i:i + 2], 2
            elif ch in ORGANIC_SUBSET:
                symbol, width = ch, 1
            else:
                raise SmilesError(f"element '{ch}' must be written in brackets", text, i)
            atom = _RawAtom(element=symbol, position=i)
            i += width
        elif ch in _AROMATIC_LOWER:
            atom = _RawAtom(element=_AROMATIC_LOWER[ch], aromatic=True, position=i)
            i += 1
        elif ch == "*":
            raise SmilesError("wildcard atoms are not supported", text, i)
        elif ch == "$":
            raise SmilesError("quadruple bonds are not supported", text, i)
        else:
            raise SmilesError(f"unexpected character {ch!r}", text, i)

        atoms.append(atom)
        idx = len(atoms) - 1
        if prev is not None:
            order = pending_order if have_pending else None
            bonds.append(_RawBond(
                a1=prev, a2=idx, order=order,
                direction=pending_dir if have_pending else 0,
                explicit_aromatic=have_pending and order == AROMATIC,
                position=pending_pos if have_pending else atom.position))
            atoms[prev].refs.append(idx)
            atom.refs.append(prev)
        elif have_pending:
            raise SmilesError("bond symbol with no preceding atom", text, pending_pos)
        if atom.bracket and atom.explicit_h and atom.stereo is not None:
            atom.refs.append(IMPLICIT_H)
        have_pending = False
        pending_order = None
        pending_dir = 0
        prev = idx

    if have_pending:
        raise SmilesError("dangling bond symbol at end of input", text, pending_pos)
    if atoms and prev is None:
        raise SmilesError("trailing dot disconnection", text, n - 1)
    if stack:
        raise SmilesError("unclosed branch", text, n - 1)
    if ring_open:
        digits = ", ".join(str(d) for d in sorted(ring_open))
        raise RingClosureError(f"unmatched ring closure digit(s): {digits}", text)
    if not atoms:
        raise SmilesError("no atoms in SMILES", text)

    _resolve_ring_slots(atoms, slot_partner)
    return atoms, bonds


def _close_ring(atoms: list[_RawAtom], bonds: list[_RawBond], opened: _RingOpen,
                closing_atom: int, pending_order: int | None, pending_dir: int,
                have_pending: bool, slot_partner: dict[int, int],
                text: str, pos: int) -> None:
    if opened.atom == closing_atom:
        raise SmilesError("ring closure bonds an atom to itself", text, pos)
    for existing in bonds:
        if {existing.a1, existing.a2} == {opened.atom, closing_atom}:
            raise SmilesError("duplicate bond via ring closure", text, pos)
    close_order = pending_order if have_pending else None
    if opened.order is not None and close_order is not None \
            and opened.order != close_order:
        raise SmilesError("ring closure bond symbols disagree", text, pos)
    order = opened.order if opened.order is not None else close_order
    # Directions are read toward the partner on each side; normalise to the
    # stored (open -> close) orientation.
    direction = opened.direction
    if have_pending and pending_dir:
        normalised = -pending_dir
        if direction and direction != normalised:
            raise StereoError("ring closure directions disagree", text, pos)
        direction = normalised
    bonds.append(_RawBond(
        a1=opened.atom, a2=closing_atom, order=order, direction=direction,
        explicit_aromatic=opened.explicit_aromatic
        or (have_pending and close_order == AROMATIC),
        position=pos))
    atoms[closing_atom].refs.append(opened.atom)
    slot_partner[opened.token] = closing_atom


def _resolve_ring_slots(atoms: list[_RawAtom], slot_partner: dict[int, int]) -> None:
    for atom in atoms:
        for k, ref in enumerate(atom.refs):
            if isinstance(ref, tuple):
                atom.refs[k] = slot_partner[ref[1]]


def _read_bracket(text: str, start: int) -> tuple[_RawAtom, int]:
    i = start + 1
    n = len(text)

    def fail(msg: str) -> SmilesError:
        return SmilesError(msg, text, i)

    isotope = None
    digits = ""
    while i < n and text[i].isdigit():
        digits += text[i]
        i += 1
    if digits:
        isotope = int(digits)
        if isotope == 0 or isotope > 999:
            raise fail("isotope out of range")

    if i >= n:
        raise fail("unterminated bracket atom")
    aromatic = False
    if text[i] in _AROMATIC_LOWER and not (i + 1 < n and text[i + 1].islower()):
        element = _AROMATIC_LOWER[text[i]]
        aromatic = True
        i += 1
    elif text[i].isupper():
        if i + 1 < n and text[i + 1].islower() and text[i:i + 2] in ELEMENTS:
            element = text[i:i + 2]
            i += 2
        elif text[i] in ELEMENTS:
            element = text[i]
            i += 1
        else:
            raise fail(f"unknown element {text[i:i + 2]!r}")
    else:
        raise fail(f"unknown element symbol {text[i]!r}")
    if aromatic and element not in AROMATIC_ELEMENTS:
        raise fail(f"element {element} has no aromatic form")

    stereo = None
    if i < n and text[i] == "@":
        if i + 1 < n and text[i + 1] == "@":
            stereo = CW
            i += 2
        else:
            stereo = CCW
            i += 1

    explicit_h = 0
    if i < n and text[i] == "H":
        i += 1
        digits = ""
        while i < n and text[i].isdigit():
            digits += text[i]
            i += 1
        explicit_h = int(digits) if digits else 1

    charge = 0
    if i < n and text[i] in "+-":
        sign = 1 if text[i] == "+" else -1
        symbol = text[i]
        count = 0
        while i < n and text[i] == symbol:
            count += 1
            i += 1
        if count == 1 and i < n and text[i].isdigit():
            digits = ""
            while i < n and text[i].isdigit():
                digits += text[i]
                i += 1
            count = int(digits)
        charge = sign * count
        if abs(charge) > _MAX_CHARGE:
            raise fail(f"|charge| > {_MAX_CHARGE}")

    map_index = None
    if i < n and text[i] == ":":
        i += 1
        digits = ""
        while i < n and text[i].isdigit():
            digits += text[i]
            i += 1
        if not digits:
            raise fail("atom map ':' without a number")
        map_index = int(digits)

    if i >= n or text[i] != "]":
        raise fail("expected ']'")
    i += 1

    return _RawAtom(
        element=element, aromatic=aromatic, charge=charge, isotope=isotope,
        explicit_h=explicit_h, stereo=stereo, map_index=map_index,
        bracket=True, position=start), i - start


# ---------------------------------------------------------------------------
# pass 2: resolve aromaticity, hydrogens, stereo


def _finish(raw_atoms: list[_RawAtom], raw_bonds: list[_RawBond], text: str) -> Molecule:
    orders = _resolve_bond_orders(raw_atoms, raw_bonds, text)
    needs_pi = _pi_requirements(raw_atoms, raw_bonds, orders, text)
    _check_kekulizable(raw_atoms, raw_bonds, orders, needs_pi, text)

    atoms = [
        Atom(element=a.element, charge=a.charge, isotope=a.isotope,
             aromatic=a.aromatic, explicit_h=a.explicit_h,
             stereo=a.stereo, stereo_ref=(), map_index=a.map_index,
             no_implied=a.bracket)
        for a in raw_atoms
    ]
    bonds = [
        Bond(a1=b.a1, a2=b.a2, order=orders[k], direction=b.direction)
        for k, b in enumerate(raw_bonds)
    ]
    atoms = perceive_implicit_hydrogens(atoms, bonds, needs_pi, text)
    atoms, bonds = _rearomatize_alternating_six_rings(atoms, bonds)
    bonds = _resolve_double_bond_stereo(atoms, bonds, text)
    atoms = _attach_tetrahedral_refs(atoms, raw_atoms, text)
    return Molecule(tuple(atoms), tuple(bonds))


def _resolve_bond_orders(raw_atoms: list[_RawAtom], raw_bonds: list[_RawBond],
                         text: str) -> list[int]:
    orders: list[int] = []
    for b in raw_bonds:
        if b.order is not None:
            if b.order == AROMATIC and not (
                    raw_atoms[b.a1].aromatic and raw_atoms[b.a2].aromatic):
                raise SmilesError("':' bond between non-aromatic atoms",
                                  text, b.position)
            orders.append(b.order)
        elif raw_atoms[b.a1].aromatic and raw_atoms[b.a2].aromatic:
            orders.append(AROMATIC)
        else:
            orders.append(SINGLE)

    # Aromatic bonds must lie on a cycle of the aromatic subgraph. Bridges
    # (e.g. the biphenyl link) fall back to single; an explicit ':' bridge is
    # an error.
    arom_edges = [k for k, o in enumerate(orders) if o == AROMATIC]
    if arom_edges:
        for k in _bridges(len(raw_atoms), [(raw_bonds[k].a1, raw_bonds[k].a2)
                                           for k in arom_edges]):
            edge = arom_edges[k]
            if raw_bonds[edge].explicit_aromatic:
                raise KekulizationError("explicit aromatic bond outside any ring",
                                        text, raw_bonds[edge].position)
            orders[edge] = SINGLE

    # Every aromatic atom must sit in an aromatic ring.
    arom_degree = [0] * len(raw_atoms)
    for k, o in enumerate(orders):
        if o == AROMATIC:
            arom_degree[raw_bonds[k].a1] += 1
            arom_degree[raw_bonds[k].a2] += 1
    for idx, atom in enumerate(raw_atoms):
        if atom.aromatic and arom_degree[idx] < 2:
            raise KekulizationError(
                f"aromatic atom {atom.element.lower()} is not in an aromatic ring",
                text, atom.position)
    return orders


def _bridges(n_atoms: int, edges: list[tuple[int, int]]) -> list[int]:
    """Indices (into ``edges``) of bridge edges, via iterative DFS low-links."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_atoms)]
    for k, (u, v) in enumerate(edges):
        adj[u].append((v, k))
        adj[v].append((u, k))
    disc = [-1] * n_atoms
    low = [0] * n_atoms
    out: list[int] = []
    counter = 0
    for root in range(n_atoms):
        if disc[root] != -1 or not adj[root]:
            continue
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]
        disc[root] = low[root] = counter
        counter += 1
        while stack:
            node, via, ptr = stack.pop()
            if ptr < len(adj[node]):
                stack.append((node, via, ptr + 1))
                nbr, edge = adj[node][ptr]
                if edge == via:
                    continue
                if disc[nbr] == -1:
                    disc[nbr] = low[nbr] = counter
                    counter += 1
                    stack.append((nbr, edge, 0))
                else:
                    low[node] = min(low[node], disc[nbr])
            elif via != -1:
                parent = next(u for u, k in adj[node] if k == via)
                low[parent] = min(low[parent], low[node])
                if low[node] > disc[parent]:
                    out.append(via)
    return out


def _pi_requirements(raw_atoms: list[_RawAtom], raw_bonds: list[_RawBond],
                     orders: list[int], text: str) -> list[bool]:
    """Which aromatic atoms must receive a double bond when kekulized."""
    degree = [0] * len(raw_atoms)
    has_exo_double = [False] * len(raw_atoms)
    for k, b in enumerate(raw_bonds):
        degree[b.a1] += 1
        degree[b.a2] += 1
        if orders[k] in (DOUBLE, TRIPLE):
            has_exo_double[b.a1] = True
            has_exo_double[b.a2] = True

    needs = [False] * len(raw_atoms)
    for idx, atom in enumerate(raw_atoms):
        if not atom.aromatic:
            continue
        el, q = atom.element, atom.charge
        if el == "C":
            needs[idx] = q == 0 and not has_exo_double[idx]
        elif el in ("N", "P"):
            if q > 0:
                needs[idx] = True
            elif q == 0:
                needs[idx] = atom.explicit_h == 0 and degree[idx] == 2
        elif el in ("O", "S"):
            needs[idx] = q > 0
        elif el == "B":
            needs[idx] = False
        else:
            raise KekulizationError(f"aromatic {el} unsupported", text, atom.position)
    return needs


def _check_kekulizable(raw_atoms: list[_RawAtom], raw_bonds: list[_RawBond],
                       orders: list[int], needs_pi: list[bool], text: str) -> None:
    """A perfect matching over pi-requiring atoms must exist."""
    needy = [i for i, need in enumerate(needs_pi) if need]
    if not needy:
        return
    adj: dict[int, list[int]] = {i: [] for i in needy}
    for k, b in enumerate(raw_bonds):
        if orders[k] == AROMATIC and needs_pi[b.a1] and needs_pi[b.a2]:
            adj[b.a1].append(b.a2)
            adj[b.a2].append(b.a1)

    matched: dict[int, int] = {}

    def solve(remaining: frozenset[int]) -> bool:
        if not remaining:
            return True
        # Most-constrained atom first; propagate forced pairs quickly.
        pick = min(remaining, key=lambda a: (sum(1 for x in adj[a] if x in remaining), a))
        options = [x for x in adj[pick] if x in remaining]
        if not options:
            return False
        for partner in options:
            matched[pick] = partner
            matched[partner] = pick
            if solve(remaining - {pick, partner}):
                return True
            del matched[pick], matched[partner]
        return False

    if not solve(frozenset(needy)):
        raise KekulizationError(
            "aromatic system has no valid alternating bond assignment", text)


def _rearomatize_alternating_six_rings(
        atoms: list[Atom], bonds: list[Bond]) -> tuple[list[Atom], list[Bond]]:
    if len(atoms) < 6 or not any(b.order == DOUBLE for b in bonds):
        return atoms, bonds
    bond_at: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in atoms]
    for k, b in enumerate(bonds):
        bond_at[(min(b.a1, b.a2), max(b.a1, b.a2))] = k
        adj[b.a1].append(b.a2)
        adj[b.a2].append(b.a1)

    flip_atoms: set[int] = set()
    flip_bonds: set[int] = set()
    for cycle in _six_cycles(adj):
        if any(atoms[a].aromatic for a in cycle):
            continue
        if any(atoms[a].element not in AROMATIC_ELEMENTS for a in cycle):
            continue
        ring_orders = []
        ring_bonds = []
        ok = True
        for p in range(6):
            u, v = cycle[p], cycle[(p + 1) % 6]
            k = bond_at[(min(u, v), max(u, v))]
            if bonds[k].order not in (SINGLE, DOUBLE):
                ok = False
                break
            ring_orders.append(bonds[k].order)
            ring_bonds.append(k)
        if not ok:
            continue
        if all(ring_orders[p] != ring_orders[(p + 1) % 6] for p in range(6)):
            flip_atoms.update(cycle)
            flip_bonds.update(ring_bonds)

    if not flip_atoms:
        return atoms, bonds
    new_atoms = [
        Atom(element=a.element, charge=a.charge, isotope=a.isotope,
             aromatic=True, explicit_h=a.explicit_h, implicit_h=a.implicit_h,
             stereo=a.stereo, stereo_ref=a.stereo_ref, map_index=a.map_index,
             no_implied=a.no_implied)
        if i in flip_atoms else a
        for i, a in enumerate(atoms)
    ]
    new_bonds = [
        Bond(a1=b.a1, a2=b.a2, order=AROMATIC, direction=0)
        if k in flip_bonds else b
        for k, b in enumerate(bonds)
    ]
    return new_atoms, new_bonds


def _six_cycles(adj: list[list[int]]) -> list[list[int]]:
    """All simple 6-cycles, each reported once with its smallest atom first."""
    cycles: list[list[int]] = []
    seen: set[tuple[int, ...]] = set()
    n = len(adj)
    for start in range(n):
        path = [start]
        on_path = {start}

        def walk(node: int) -> None:
            depth = len(path)
            for nbr in adj[node]:
                if nbr == start and depth == 6:
                    key = tuple(sorted(path))
                    if key not in seen:
                        seen.add(key)
                        cycles.append(list(path))
                elif depth < 6 and nbr > start and nbr not in on_path:
                    path.append(nbr)
                    on_path.add(nbr)
                    walk(nbr)
                    path.pop()
                    on_path.remove(nbr)

        walk(start)
    return cycles


def _resolve_double_bond_stereo(atoms: list[Atom], bonds: list[Bond],
                                text: str) -> list[Bond]:
    adj: list[list[int]] = [[] for _ in atoms]
    for k, b in enumerate(bonds):
        adj[b.a1].append(k)
        adj[b.a2].append(k)

    def side_mark(center: int, bond: Bond) -> int:
        """Direction of ``bond`` read from ``center`` outward (0 if none)."""
        if not bond.direction:
            return 0
        return bond.direction if bond.a1 == center else -bond.direction

    out = list(bonds)
    for k, b in enumerate(bonds):
        if b.order != DOUBLE:
            continue
        marks: list[tuple[int, int]] = []  # per end: (neighbour atom, sign)
        ends: list[int | None] = [None, None]
        for side, center in enumerate((b.a1, b.a2)):
            found: list[tuple[int, int]] = []
            for bk in adj[center]:
                nb = bonds[bk]
                if bk == k or nb.order != SINGLE:
                    continue
                sign = side_mark(center, nb)
                if sign:
                    found.append((nb.other(center), sign))
            if len(found) == 2 and found[0][1] == found[1][1]:
                raise StereoError(
                    "conflicting directional bonds on one double-bond end", text)
            if found:
                found.sort()
                marks.append(found[0])
                ends[side] = found[0][0]
        if len(marks) == 2:
            ref1, s1 = marks[0]
            ref2, s2 = marks[1]
            out[k] = Bond(a1=b.a1, a2=b.a2, order=DOUBLE, direction=0,
                          stereo=BondStereo(ref1=ref1, ref2=ref2, cis=s1 == s2))
    return out


def _attach_tetrahedral_refs(atoms: list[Atom], raw_atoms: list[_RawAtom],
                             text: str) -> list[Atom]:
    out: list[Atom] = []
    for idx, atom in enumerate(atoms):
        if atom.stereo is None:
            out.append(atom)
            continue
        refs = list(raw_atoms[idx].refs)
        if len(refs) != 4:
            # Not a plain tetrahedral centre (three neighbours plus lone pair,
            # or over-specified); the marker is dropped rather than guessed.
            out.append(Atom(
                element=atom.element, charge=atom.charge, isotope=atom.isotope,
                aromatic=atom.aromatic, explicit_h=atom.explicit_h,
                implicit_h=atom.implicit_h, stereo=None, stereo_ref=(),
                map_index=atom.map_index, no_implied=atom.no_implied))
            continue
        out.append(Atom(
            element=atom.element, charge=atom.charge, isotope=atom.isotope,
            aromatic=atom.aromatic, explicit_h=atom.explicit_h,
            implicit_h=atom.implicit_h, stereo=atom.stereo,
            stereo_ref=tuple(refs), map_index=atom.map_index,
            no_implied=atom.no_implied))
    return out

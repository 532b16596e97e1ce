"""Ring perception: a deterministic smallest set of smallest rings.

Horton-style candidate generation (shortest cycle through each vertex/edge
pair) followed by greedy GF(2)-independent selection, smallest rings first,
ties broken by the lexicographically smallest atom-index sequence.
"""

from __future__ import annotations

from collections import deque

from ..smiles import Molecule


def perceive_rings(mol: Molecule) -> list[tuple[int, ...]]:
    """SSSR as atom-index cycles, deterministically ordered."""
    n = len(mol.atoms)
    if n == 0 or not mol.bonds:
        return []
    target = len(mol.bonds) - n + mol.components
    if target <= 0:
        return []

    adj: list[list[int]] = [[] for _ in range(n)]
    edge_id: dict[tuple[int, int], int] = {}
    for k, b in enumerate(mol.bonds):
        adj[b.a1].append(b.a2)
        adj[b.a2].append(b.a1)
        edge_id[(min(b.a1, b.a2), max(b.a1, b.a2))] = k

    candidates: set[tuple[int, ...]] = set()
    for v in range(n):
        parents, dist = _bfs_tree(adj, v)
        for b in mol.bonds:
            x, y = b.a1, b.a2
            if dist[x] < 0 or dist[y] < 0:
                continue
            px = _path_to_root(parents, x)
            py = _path_to_root(parents, y)
            # Paths must be vertex-disjoint except at v for a simple cycle.
            if set(px[:-1]) & set(py[:-1]) or x in py or y in px:
                continue
            cycle = px[:-1] + [v] + list(reversed(py[:-1]))
            if len(cycle) >= 3:
                candidates.add(_canonical_cycle(cycle))

    ordered = sorted(candidates, key=lambda c: (len(c), c))
    chosen: list[tuple[int, ...]] = []
    basis: dict[int, int] = {}  # lowest set bit -> echelon vector
    for cycle in ordered:
        vec = 0
        for i in range(len(cycle)):
            u, w = cycle[i], cycle[(i + 1) % len(cycle)]
            vec |= 1 << edge_id[(min(u, w), max(u, w))]
        while vec:
            low = vec & (-vec)
            if low not in basis:
                basis[low] = vec
                chosen.append(cycle)
                break
            vec ^= basis[low]
        if len(chosen) == target:
            break
    chosen.sort(key=lambda c: (len(c), c))
    return chosen


def _bfs_tree(adj: list[list[int]], root: int) -> tuple[list[int], list[int]]:
    parents = [-1] * len(adj)
    dist = [-1] * len(adj)
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parents[w] = u
                queue.append(w)
    return parents, dist


def _path_to_root(parents: list[int], node: int) -> list[int]:
    path = [node]
    while parents[path[-1]] != -1:
        path.append(parents[path[-1]])
    return path


def _canonical_cycle(cycle: list[int]) -> tuple[int, ...]:
    """Rotate/reflect so the cycle starts at its smallest atom and proceeds
    toward the smaller of that atom's two ring neighbours."""
    k = len(cycle)
    start = cycle.index(min(cycle))
    rotated = cycle[start:] + cycle[:start]
    if rotated[1] > rotated[-1]:
        rotated = [rotated[0]] + list(reversed(rotated[1:]))
    return tuple(rotated)


def ring_membership(mol: Molecule, rings: list[tuple[int, ...]] | None = None) -> list[bool]:
    rings = perceive_rings(mol) if rings is None else rings
    member = [False] * len(mol.atoms)
    for ring in rings:
        for a in ring:
            member[a] = True
    return member


def ring_bond_set(mol: Molecule, rings: list[tuple[int, ...]] | None = None) -> set[tuple[int, int]]:
    rings = perceive_rings(mol) if rings is None else rings
    out: set[tuple[int, int]] = set()
    for ring in rings:
        for i in range(len(ring)):
            u, w = ring[i], ring[(i + 1) % len(ring)]
            out.add((min(u, w), max(u, w)))
    return out

"""Ring perception: a deterministic minimum cycle basis standing in for SSSR.

Candidate cycles are built per BFS root from every non-tree bond, trimmed at
the endpoints' lowest common ancestor so each candidate is a simple cycle;
the basis is picked greedily by (length, atom tuple) under GF(2)
independence over bond incidence vectors. SSSR is famously ambiguous; what
matters here is that the same graph always yields the same rings and that
the basis size equals the cyclomatic number (each root's candidates contain
a full fundamental system, so the greedy pass always completes).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .molgraph import MolGraph


@dataclass(frozen=True)
class RingSystem:
    """One SSSR ring plus the identifier of its fused group (rings sharing
    at least one bond get the same group id)."""

    atom_set: frozenset[int]
    fused_group: int


def sssr_rings(g: MolGraph) -> list[tuple[int, ...]]:
    """SSSR rings as atom-index tuples, each ordered along its cycle.

    Returns exactly cyclomatic-number many rings, deterministically.
    """
    n = g.atom_count
    if n == 0 or g.bond_count == 0:
        return []
    target = g.bond_count - n + len(g.connected_components())
    if target == 0:
        return []

    basis: list[tuple[int, ...]] = []
    pivots: dict[int, int] = {}
    for _, _, cycle, edge_vec in _cycle_candidates(g):
        vec = edge_vec
        while vec:
            top = vec.bit_length() - 1
            if top not in pivots:
                pivots[top] = vec
                basis.append(cycle)
                break
            vec ^= pivots[top]
        if len(basis) == target:
            break
    return basis


def _cycle_candidates(g: MolGraph) -> list[tuple[int, tuple[int, ...], tuple[int, ...], int]]:
    """Simple cycles from per-root BFS trees, sorted by (length, atom tuple)."""
    seen: set[int] = set()
    out = []
    for root in range(g.atom_count):
        parent, dist = _bfs_tree(g, root)
        for bond in g.bonds:
            u, v = bond.a, bond.b
            if u not in dist or v not in dist:
                continue
            if parent[u] == v or parent[v] == u:
                continue
            cycle = _lca_cycle(parent, dist, u, v)
            if len(cycle) < 3:
                continue
            edge_vec = _edge_vector(g, cycle)
            if edge_vec is None or edge_vec in seen:
                continue
            seen.add(edge_vec)
            out.append((len(cycle), tuple(sorted(cycle)), _rotate_min(cycle), edge_vec))
    out.sort(key=lambda item: (item[0], item[1]))
    return out


def _bfs_tree(g: MolGraph, root: int) -> tuple[dict[int, int], dict[int, int]]:
    parent = {root: root}
    dist = {root: 0}
    q = deque([root])
    while q:
        u = q.popleft()
        for v in sorted(g.adjacency[u]):
            if v not in dist:
                dist[v] = dist[u] + 1
                parent[v] = u
                q.append(v)
    return parent, dist


def _lca_cycle(parent: dict[int, int], dist: dict[int, int], u: int, v: int) -> list[int]:
    """Simple cycle: tree path u..lca, lca..v, plus the closing bond (v, u)."""
    pu, pv = [u], [v]
    while dist[pu[-1]] > dist[pv[-1]]:
        pu.append(parent[pu[-1]])
    while dist[pv[-1]] > dist[pu[-1]]:
        pv.append(parent[pv[-1]])
    while pu[-1] != pv[-1]:
        pu.append(parent[pu[-1]])
        pv.append(parent[pv[-1]])
    return pu + list(reversed(pv[:-1]))


def _edge_vector(g: MolGraph, cycle: list[int]) -> int | None:
    vec = 0
    for k in range(len(cycle)):
        bidx = g.adjacency[cycle[k]].get(cycle[(k + 1) % len(cycle)])
        if bidx is None:
            return None
        vec ^= 1 << bidx
    return vec


def _rotate_min(cycle: list[int]) -> tuple[int, ...]:
    """Rotate/flip the cycle so it starts at its minimum atom, smaller
    neighbor second; a canonical tuple for one cycle."""
    k = cycle.index(min(cycle))
    fwd = cycle[k:] + cycle[:k]
    rev = [fwd[0]] + list(reversed(fwd[1:]))
    return tuple(fwd if fwd[1] <= rev[1] else rev)


def ring_systems(g: MolGraph) -> list[RingSystem]:
    """SSSR rings grouped into fused systems (rings sharing a bond)."""
    rings = sssr_rings(g)
    ring_bonds: list[frozenset[int]] = []
    for cycle in rings:
        bonds = {g.adjacency[cycle[k]][cycle[(k + 1) % len(cycle)]]
                 for k in range(len(cycle))}
        ring_bonds.append(frozenset(bonds))

    group = list(range(len(rings)))

    def find(i: int) -> int:
        while group[i] != i:
            group[i] = group[group[i]]
            i = group[i]
        return i

    for i in range(len(rings)):
        for j in range(i + 1, len(rings)):
            if ring_bonds[i] & ring_bonds[j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    group[max(ri, rj)] = min(ri, rj)

    canonical_group: dict[int, int] = {}
    systems = []
    for i, cycle in enumerate(rings):
        root = find(i)
        gid = canonical_group.setdefault(root, len(canonical_group))
        systems.append(RingSystem(atom_set=frozenset(cycle), fused_group=gid))
    return systems

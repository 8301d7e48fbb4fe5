"""Independent verification oracles.

Everything here re-derives expected values through a different route than
the package: exhaustive backtracking matchers, networkx graph algorithms,
and brute-force enumeration. Oracles may reuse the package's *parser* and
*canonical writer* as I/O plumbing (both are validated by their own
permutation/round-trip properties), but never its decision logic for the
quantity being checked.
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx

from scafnav.canon import write_canonical
from scafnav.molgraph import BondOrder, MolGraph


def to_networkx(g: MolGraph) -> nx.Graph:
    G = nx.Graph()
    for i, atom in enumerate(g.atoms):
        G.add_node(i, element=atom.element, charge=atom.formal_charge,
                   aromatic=atom.aromatic)
    for bond in g.bonds:
        G.add_edge(bond.a, bond.b, order=int(bond.order))
    return G


def _atom_sig(g: MolGraph, i: int) -> tuple:
    atom = g.atoms[i]
    return (atom.element, atom.formal_charge, atom.aromatic,
            g.hydrogen_count(i))


def graph_isomorphic(a: MolGraph, b: MolGraph) -> bool:
    """Exhaustive isomorphism check on small graphs (attribute-aware)."""
    if a.atom_count != b.atom_count or a.bond_count != b.bond_count:
        return False
    if sorted(_atom_sig(a, i) for i in range(a.atom_count)) != \
            sorted(_atom_sig(b, i) for i in range(b.atom_count)):
        return False

    used: set[int] = set()
    mapping: dict[int, int] = {}

    def bond_order(g: MolGraph, x: int, y: int):
        bond = g.bond_between(x, y)
        return None if bond is None else bond.order

    def assign(i: int) -> bool:
        if i == a.atom_count:
            return True
        for j in range(b.atom_count):
            if j in used:
                continue
            if _atom_sig(a, i) != _atom_sig(b, j):
                continue
            if a.degree(i) != b.degree(j):
                continue
            ok = True
            for k in range(i):
                if bond_order(a, i, k) != bond_order(b, j, mapping[k]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[i] = j
            used.add(j)
            if assign(i + 1):
                return True
            del mapping[i]
            used.discard(j)
        return False

    return assign(0)


def cyclomatic_number(g: MolGraph) -> int:
    G = to_networkx(g)
    if G.number_of_nodes() == 0:
        return 0
    return (G.number_of_edges() - G.number_of_nodes()
            + nx.number_connected_components(G))


def cycle_basis_size(g: MolGraph) -> int:
    """Ring count via an independently computed cycle basis."""
    return len(nx.cycle_basis(to_networkx(g)))


def murcko_kept_atoms(g: MolGraph) -> frozenset[int]:
    """Framework atom set: 2-core (leaf-strip fixpoint) plus atoms attached
    to it by bonds of order >= 2."""
    G = to_networkx(g)
    core = set(nx.k_core(G, 2).nodes) if G.number_of_nodes() else set()
    reattached = set()
    for bond in g.bonds:
        if bond.order in (BondOrder.DOUBLE, BondOrder.TRIPLE):
            if (bond.a in core) != (bond.b in core):
                reattached.add(bond.b if bond.a in core else bond.a)
    return frozenset(core | reattached)


def fragment_keys(g: MolGraph) -> set[str]:
    """One-ring-removed scaffold keys, re-derived with networkx machinery.

    Uses networkx's minimum cycle basis for ring perception, so inputs for
    comparisons should have an unambiguous basis (no exotic fused systems).
    """
    G = to_networkx(g)
    rings = [frozenset(c) for c in nx.minimum_cycle_basis(G)]
    if len(rings) <= 1:
        return set()
    out: set[str] = set()
    for i, ring in enumerate(rings):
        shared = set()
        for j, other in enumerate(rings):
            if i != j:
                shared |= (ring & other)
        removal = ring - shared
        if not removal:
            continue
        H = G.subgraph(set(G.nodes) - removal)
        core = set(nx.k_core(H, 2).nodes)
        kept = set(core)
        for u, v, data in H.edges(data=True):
            if data["order"] in (int(BondOrder.DOUBLE), int(BondOrder.TRIPLE)):
                if (u in core) != (v in core):
                    kept.add(v if u in core else u)
        if not kept:
            continue
        sub = G.subgraph(kept)
        if not nx.is_connected(sub):
            continue
        if (sub.number_of_edges() - sub.number_of_nodes() + 1) != len(rings) - 1:
            continue
        out.add(write_canonical(g.subgraph(kept)))
    return out


# ---------------------------------------------------------------------------
# Brute-force substructure and MCS
# ---------------------------------------------------------------------------

def embeds_brute(sub: MolGraph, host: MolGraph) -> bool:
    """Naive monomorphism: every bond of sub maps to an equal-order bond of
    host; element/charge/aromatic must match."""
    if sub.atom_count > host.atom_count or sub.bond_count > host.bond_count:
        return False
    order = list(range(sub.atom_count))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def compatible(u: int, v: int) -> bool:
        x, y = sub.atoms[u], host.atoms[v]
        return (x.element == y.element and x.aromatic == y.aromatic
                and x.formal_charge == y.formal_charge)

    def assign(k: int) -> bool:
        if k == len(order):
            return True
        u = order[k]
        for v in range(host.atom_count):
            if v in used or not compatible(u, v):
                continue
            ok = True
            for x, bidx in sub.adjacency[u].items():
                if x in mapping:
                    hb = host.bond_between(v, mapping[x])
                    if hb is None or hb.order != sub.bonds[bidx].order:
                        ok = False
                        break
            if not ok:
                continue
            mapping[u] = v
            used.add(v)
            if assign(k + 1):
                return True
            del mapping[u]
            used.discard(v)
        return False

    return assign(0)


def brute_mcs_size(a: MolGraph, b: MolGraph) -> tuple[int, int]:
    """(bonds, atoms) of the maximum common connected edge subgraph, by
    enumerating edge subsets of the bond-poorer input."""
    base, other = (a, b) if a.bond_count <= b.bond_count else (b, a)

    best_bonds = -1
    best_atoms = 0
    for u in range(base.atom_count):
        for v in range(other.atom_count):
            x, y = base.atoms[u], other.atoms[v]
            if (x.element == y.element and x.aromatic == y.aromatic
                    and x.formal_charge == y.formal_charge):
                best_bonds, best_atoms = 0, 1
                break
        if best_bonds == 0:
            break
    if best_bonds < 0:
        return (0, 0)

    bond_ids = list(range(base.bond_count))
    for k in range(base.bond_count, 0, -1):
        found_atoms = 0
        for subset in combinations(bond_ids, k):
            atoms = set()
            for bidx in subset:
                atoms.add(base.bonds[bidx].a)
                atoms.add(base.bonds[bidx].b)
            if not _edges_connected(base, subset, atoms):
                continue
            sub = _edge_subgraph(base, subset, atoms)
            if embeds_brute(sub, other):
                found_atoms = max(found_atoms, len(atoms))
        if found_atoms:
            return (k, found_atoms)
    return (best_bonds, best_atoms)


def _edges_connected(g: MolGraph, subset, atoms) -> bool:
    if not atoms:
        return False
    adj: dict[int, list[int]] = {a: [] for a in atoms}
    for bidx in subset:
        bond = g.bonds[bidx]
        adj[bond.a].append(bond.b)
        adj[bond.b].append(bond.a)
    start = next(iter(atoms))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(atoms)


def _edge_subgraph(g: MolGraph, subset, atoms) -> MolGraph:
    from dataclasses import replace

    order = sorted(atoms)
    remap = {old: new for new, old in enumerate(order)}
    sub = MolGraph()
    for old in order:
        sub.add_atom(replace(g.atoms[old]))
    for bidx in subset:
        bond = g.bonds[bidx]
        sub.add_bond(remap[bond.a], remap[bond.b], bond.order)
    return sub

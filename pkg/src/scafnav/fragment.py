"""Scaffold fragmentation (predecessor generation) and substructure matching.

Fragmentation removes one SSSR ring at a time: atoms the ring shares with
another ring stay, the rest of the ring goes, and the remainder is pruned
back to a scaffold. Removals that disconnect the remainder or change the
ring count by more than one are skipped, so every fragment sits exactly one
hierarchy level below its parent.
"""

from __future__ import annotations

from .canon import write_canonical
from .errors import BudgetExceeded
from .molgraph import MolGraph, parse_smiles, ring_count
from .rings import sssr_rings
from .scaffold import Scaffold, murcko_atoms, scaffold_from_key

DEFAULT_MATCH_BUDGET = 10**6


def fragment_once(s: Scaffold) -> set[Scaffold]:
    """Immediate predecessor scaffolds of ``s`` (one ring removed).

    Validates the key (InvalidScaffold on non-fixpoint input). 1-ring
    scaffolds fragment to the ring-less sentinel, which is excluded, so the
    result is empty for them.
    """
    s = scaffold_from_key(s.key)
    if s.ring_count < 1:
        return set()
    return fragment_graph(parse_smiles(s.key))


def fragment_graph(g: MolGraph) -> set[Scaffold]:
    """fragment_once on an already-validated scaffold graph."""
    rings = sssr_rings(g)
    if len(rings) <= 1:
        return set()
    membership: dict[int, int] = {}
    for cycle in rings:
        for a in cycle:
            membership[a] = membership.get(a, 0) + 1

    parent_rings = len(rings)
    out: dict[str, Scaffold] = {}
    for cycle in rings:
        removal = {a for a in cycle if membership[a] == 1}
        if not removal:
            continue
        remainder = g.subgraph(set(range(g.atom_count)) - removal)
        core = remainder.subgraph(murcko_atoms(remainder))
        if core.atom_count == 0:
            continue
        if len(core.connected_components()) != 1:
            continue
        n = ring_count(core)
        if n != parent_rings - 1:
            continue
        key = write_canonical(core)
        out[key] = Scaffold(key=key, ring_count=n)
    return set(out.values())


def lower_cone(s: Scaffold) -> set[Scaffold]:
    """Transitive closure of fragment_once; the sentinel stays excluded."""
    s = scaffold_from_key(s.key)
    seen: dict[str, Scaffold] = {}
    frontier = [s]
    while frontier:
        current = frontier.pop()
        if current.ring_count <= 1:
            continue
        for frag in fragment_graph(parse_smiles(current.key)):
            if frag.key not in seen:
                seen[frag.key] = frag
                frontier.append(frag)
    return set(seen.values())


# ---------------------------------------------------------------------------
# Substructure matching (monomorphism with chemical atom compatibility)
# ---------------------------------------------------------------------------

def is_substructure(a: MolGraph, b: MolGraph,
                    budget: int = DEFAULT_MATCH_BUDGET) -> bool:
    """True iff ``a`` embeds injectively into ``b`` preserving element,
    aromatic flag, formal charge, and every bond of ``a`` with its order.

    Raises BudgetExceeded when the node-expansion budget runs out, which is
    reported distinctly from a definite False.
    """
    if a.atom_count == 0:
        return True
    if a.atom_count > b.atom_count or a.bond_count > b.bond_count:
        return False

    order = _match_order(a)
    mapping: dict[int, int] = {}
    used: set[int] = set()
    expansions = [0]

    def candidates(u: int) -> list[int]:
        anchor = next((x for x in a.adjacency[u] if x in mapping), None)
        if anchor is None:
            pool = range(b.atom_count)
        else:
            pool = b.adjacency[mapping[anchor]]
        return sorted(v for v in pool if v not in used)

    def feasible(u: int, v: int) -> bool:
        if not _atoms_compatible(a.atoms[u], b.atoms[v]):
            return False
        if a.degree(u) > b.degree(v):
            return False
        for x, bidx in a.adjacency[u].items():
            if x in mapping:
                other = b.bond_between(v, mapping[x])
                if other is None or other.order != a.bonds[bidx].order:
                    return False
        return True

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        u = order[k]
        for v in candidates(u):
            expansions[0] += 1
            if expansions[0] > budget:
                raise BudgetExceeded(
                    f"substructure search exceeded {budget} expansions"
                )
            if feasible(u, v):
                mapping[u] = v
                used.add(v)
                if extend(k + 1):
                    return True
                del mapping[u]
                used.discard(v)
        return False

    return extend(0)


def _atoms_compatible(x, y) -> bool:
    return (x.element == y.element and x.aromatic == y.aromatic
            and x.formal_charge == y.formal_charge)


def _match_order(a: MolGraph) -> list[int]:
    """Atom visit order: connectivity-first within each component so each
    atom after the first has a mapped anchor."""
    order: list[int] = []
    seen: set[int] = set()
    for comp in a.connected_components():
        start = max(comp, key=lambda i: (a.degree(i), -i))
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            order.append(u)
            for v in sorted(a.adjacency[u], key=lambda j: (-a.degree(j), j)):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return order

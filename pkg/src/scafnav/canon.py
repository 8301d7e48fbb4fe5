"""Canonical and randomized SMILES emission.

Identity strategy: iterative partition refinement over
(element, degree, charge, aromatic, ring membership, hydrogen count) with
neighbor-rank signatures to a fixpoint, then individualization of the
lowest tied class with the lexicographically smallest emitted string taken
over all choices. Isotopes and stereo markers never reach this layer: the
canonical key is structure-only.

The emitter is shared by the canonical and the randomized writers; only the
atom ordering differs.
"""

from __future__ import annotations

import random

from .errors import EmptyGraph
from .molgraph import (
    AROMATIC_ELEMENTS,
    ORGANIC_SUBSET,
    Atom,
    BondOrder,
    MolGraph,
    _implied_hydrogens,
    cyclic_atoms,
)


def write_canonical(g: MolGraph) -> str:
    """Deterministic SMILES, invariant under atom relabeling.

    The empty graph maps to the empty string (the ring-less sentinel key).
    Multi-component graphs emit one canonical part per component, joined by
    '.' in sorted order.
    """
    if g.atom_count == 0:
        return ""
    cyclic = cyclic_atoms(g)
    hydrogens = [g.hydrogen_count(i) for i in range(g.atom_count)]
    parts = [_canonical_component(g, comp, cyclic, hydrogens)
             for comp in g.connected_components()]
    return ".".join(sorted(parts))


def canonicalize(text: str) -> str:
    """Parse then write canonical: the string-level convenience wrapper."""
    from .molgraph import parse_smiles

    return write_canonical(parse_smiles(text))


def randomize_smiles(g: MolGraph, seed: int) -> str:
    """Valid SMILES from a seeded random atom ordering.

    Reparsing yields a graph isomorphic to ``g``; equal seeds give equal
    strings.
    """
    if g.atom_count == 0:
        raise EmptyGraph("cannot randomize an empty graph")
    rng = random.Random(seed)
    perm = list(range(g.atom_count))
    rng.shuffle(perm)
    order = {atom: pos for pos, atom in enumerate(perm)}
    hydrogens = [g.hydrogen_count(i) for i in range(g.atom_count)]
    comps = sorted(g.connected_components(), key=lambda c: min(order[a] for a in c))
    return ".".join(_emit_component(g, comp, order, hydrogens) for comp in comps)


# ---------------------------------------------------------------------------
# Canonical ranking
# ---------------------------------------------------------------------------

def _canonical_component(g: MolGraph, comp: list[int], cyclic: set[int],
                         hydrogens: list[int]) -> str:
    nbrs = {
        i: [(int(g.bonds[bidx].order), j)
            for j, bidx in g.adjacency[i].items()]
        for i in comp
    }
    ranks = _initial_ranks(g, comp, cyclic, hydrogens)
    ranks = _refine(comp, nbrs, ranks)
    return _min_string(g, comp, nbrs, ranks, hydrogens)


def _initial_ranks(g: MolGraph, comp: list[int], cyclic: set[int],
                   hydrogens: list[int]) -> dict[int, int]:
    invariant = {
        i: (
            g.atoms[i].element,
            g.degree(i),
            g.atoms[i].formal_charge,
            g.atoms[i].aromatic,
            i in cyclic,
            hydrogens[i],
        )
        for i in comp
    }
    return _densify(invariant)


def _densify(values: dict[int, object]) -> dict[int, int]:
    ordered = sorted(set(values.values()))
    position = {v: k for k, v in enumerate(ordered)}
    return {i: position[v] for i, v in values.items()}


def _refine(comp: list[int], nbrs: dict[int, list[tuple[int, int]]],
            ranks: dict[int, int]) -> dict[int, int]:
    n_classes = len(set(ranks.values()))
    n = len(comp)
    while n_classes < n:
        signature = {}
        for i in comp:
            row = [(order, ranks[j]) for order, j in nbrs[i]]
            row.sort()
            signature[i] = (ranks[i], tuple(row))
        ranks = _densify(signature)
        new_classes = len(set(ranks.values()))
        if new_classes == n_classes:
            break
        n_classes = new_classes
    return ranks


def _min_string(g: MolGraph, comp: list[int],
                nbrs: dict[int, list[tuple[int, int]]],
                ranks: dict[int, int], hydrogens: list[int]) -> str:
    by_rank: dict[int, list[int]] = {}
    for i in comp:
        by_rank.setdefault(ranks[i], []).append(i)
    tied = [atoms for _, atoms in sorted(by_rank.items()) if len(atoms) > 1]
    if not tied:
        return _emit_component(g, comp, ranks, hydrogens)
    # Individualize each member of the lowest tied class; the minimum over
    # all choices is independent of the input atom labeling.
    best: str | None = None
    for chosen in tied[0]:
        lowered = {i: (r, 1) for i, r in ranks.items()}
        lowered[chosen] = (ranks[chosen], 0)
        refined = _refine(comp, nbrs, _densify(lowered))
        candidate = _min_string(g, comp, nbrs, refined, hydrogens)
        if best is None or candidate < best:
            best = candidate
    return best


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

def _emit_component(g: MolGraph, comp: list[int], order: dict[int, int],
                    hydrogens: list[int]) -> str:
    start = min(comp, key=lambda i: order[i])
    children, ring_pairs, emit_pos = _spanning_tree(g, start, order)

    # ring closures per atom, digits allocated in emission order
    closure_partners: dict[int, list[int]] = {}
    for u, v in ring_pairs:
        closure_partners.setdefault(u, []).append(v)
        closure_partners.setdefault(v, []).append(u)
    for u in closure_partners:
        closure_partners[u].sort(key=lambda w: emit_pos[w])

    digit_of: dict[frozenset[int], int] = {}
    free_digits: list[int] = []
    next_digit = [1]
    out: list[str] = []

    def allocate() -> int:
        if free_digits:
            free_digits.sort()
            return free_digits.pop(0)
        d = next_digit[0]
        next_digit[0] += 1
        return d

    def digit_text(d: int) -> str:
        return str(d) if d < 10 else f"%{d:02d}"

    def render(u: int) -> None:
        out.append(_atom_token(g, u, hydrogens[u]))
        for w in closure_partners.get(u, ()):
            pair = frozenset((u, w))
            if pair not in digit_of:
                digit_of[pair] = allocate()
                out.append(_bond_symbol(g, u, w))
                out.append(digit_text(digit_of[pair]))
            else:
                d = digit_of.pop(pair)
                out.append(_bond_symbol(g, u, w))
                out.append(digit_text(d))
                free_digits.append(d)
        kids = children.get(u, [])
        for k in kids[:-1]:
            out.append("(")
            out.append(_bond_symbol(g, u, k))
            render(k)
            out.append(")")
        if kids:
            out.append(_bond_symbol(g, u, kids[-1]))
            render(kids[-1])

    render(start)
    return "".join(out)


def _spanning_tree(g: MolGraph, start: int, order: dict[int, int]):
    """DFS spanning tree with neighbors taken in `order`; returns children
    lists, non-tree (ring) bonds as (later, earlier) pairs, and emission
    positions."""
    children: dict[int, list[int]] = {}
    ring_pairs: list[tuple[int, int]] = []
    emit_pos = {start: 0}
    seen_edges: set[frozenset[int]] = set()
    stack = [(start, iter(sorted(g.adjacency[start], key=lambda j: order[j])))]
    while stack:
        u, neighbor_iter = stack[-1]
        descended = False
        for v in neighbor_iter:
            edge = frozenset((u, v))
            if edge in seen_edges:
                continue
            seen_edges.add(edge)
            if v in emit_pos:
                ring_pairs.append((u, v))
                continue
            emit_pos[v] = len(emit_pos)
            children.setdefault(u, []).append(v)
            stack.append((v, iter(sorted(g.adjacency[v], key=lambda j: order[j]))))
            descended = True
            break
        if not descended:
            stack.pop()
    return children, ring_pairs, emit_pos


def _bond_symbol(g: MolGraph, a: int, b: int) -> str:
    bond = g.bond_between(a, b)
    if bond.order is BondOrder.SINGLE:
        if g.atoms[a].aromatic and g.atoms[b].aromatic:
            return "-"
        return ""
    if bond.order is BondOrder.DOUBLE:
        return "="
    if bond.order is BondOrder.TRIPLE:
        return "#"
    return ""  # aromatic bonds are implicit between aromatic atoms


def _atom_token(g: MolGraph, i: int, h: int) -> str:
    atom = g.atoms[i]
    symbol = atom.element.lower() if atom.aromatic else atom.element
    if atom.formal_charge == 0 and atom.element in ORGANIC_SUBSET and (
        not atom.aromatic or atom.element in AROMATIC_ELEMENTS
    ):
        if atom.explicit_h is None:
            return symbol
        derived = _implied_hydrogens(
            Atom(atom.element), g._connection_sum(i), atom.aromatic
        )
        if derived == h:
            return symbol
    h_part = "" if h == 0 else ("H" if h == 1 else f"H{h}")
    q = atom.formal_charge
    if q == 0:
        charge_part = ""
    elif q == 1:
        charge_part = "+"
    elif q == -1:
        charge_part = "-"
    else:
        charge_part = f"+{q}" if q > 0 else f"-{-q}"
    return f"[{symbol}{h_part}{charge_part}]"

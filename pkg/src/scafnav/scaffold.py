"""Murcko framework extraction and scaffold identity.

A scaffold is the ring systems of a molecule plus the linkers connecting
them; side chains go, atoms double- or triple-bonded directly to the kept
framework stay. The ring-less scaffold is the reserved empty key and acts
as the sentinel class for acyclic molecules.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canon import write_canonical
from .errors import InvalidScaffold, MultiComponentInput
from .molgraph import BondOrder, MolGraph, largest_component, parse_smiles, ring_count

S0_KEY = ""


@dataclass(frozen=True, order=True)
class Scaffold:
    """Canonical scaffold identity.

    ``key`` is the canonical SMILES of the framework ("" for the ring-less
    sentinel); ``ring_count`` is the hierarchy level; ``virtual`` marks
    scaffolds produced only by fragmentation, never observed directly.
    """

    key: str
    ring_count: int
    virtual: bool = False

    @property
    def is_sentinel(self) -> bool:
        return self.key == S0_KEY


S0 = Scaffold(key=S0_KEY, ring_count=0)


def murcko_atoms(g: MolGraph) -> frozenset[int]:
    """Atom indices of the framework: the leaf-pruned core plus every atom
    attached to it by a double or triple bond."""
    degree = {i: g.degree(i) for i in range(g.atom_count)}
    alive = set(degree)
    queue = [i for i, d in degree.items() if d <= 1]
    while queue:
        u = queue.pop()
        if u not in alive:
            continue
        alive.discard(u)
        for v in g.adjacency[u]:
            if v in alive:
                degree[v] -= 1
                if degree[v] <= 1:
                    queue.append(v)

    reattached = set()
    for bond in g.bonds:
        if bond.order not in (BondOrder.DOUBLE, BondOrder.TRIPLE):
            continue
        if (bond.a in alive) != (bond.b in alive):
            reattached.add(bond.b if bond.a in alive else bond.a)
    return frozenset(alive | reattached)


def murcko_scaffold(g: MolGraph) -> MolGraph:
    """Framework graph of a single-component molecule; acyclic input yields
    the empty graph."""
    if len(g.connected_components()) > 1:
        raise MultiComponentInput("murcko_scaffold requires a single component")
    return g.subgraph(murcko_atoms(g))


def scaffold_key(smiles: str) -> Scaffold:
    """Project a molecule (SMILES) onto its scaffold identity.

    Parses, keeps the largest component, extracts the framework and
    canonicalizes. Total on parseable input; parse errors propagate.
    """
    g = largest_component(parse_smiles(smiles))
    return scaffold_of_graph(g)


def scaffold_of_graph(g: MolGraph) -> Scaffold:
    """Scaffold of an already-parsed single-component molecule graph."""
    core = murcko_scaffold(g)
    return Scaffold(key=write_canonical(core), ring_count=ring_count(core))


def hierarchy_level(s: Scaffold) -> int:
    """Number of rings in the framework: the hierarchy index."""
    return s.ring_count


def scaffold_from_key(key: str, virtual: bool = False) -> Scaffold:
    """Rebuild a Scaffold from a key, verifying the scaffold fixpoint.

    Raises InvalidScaffold when the key is not canonical or not its own
    Murcko framework.
    """
    if key == S0_KEY:
        return Scaffold(key=S0_KEY, ring_count=0, virtual=virtual)
    try:
        g = parse_smiles(key)
    except Exception as exc:
        raise InvalidScaffold(f"unparseable scaffold key {key!r}: {exc}") from exc
    if len(g.connected_components()) > 1:
        raise InvalidScaffold(f"scaffold key {key!r} is not connected")
    if write_canonical(g) != key:
        raise InvalidScaffold(f"scaffold key {key!r} is not canonical")
    core = murcko_scaffold(g)
    if write_canonical(core) != key:
        raise InvalidScaffold(f"scaffold key {key!r} is not a Murcko fixpoint")
    return Scaffold(key=key, ring_count=ring_count(g), virtual=virtual)

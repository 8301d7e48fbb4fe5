"""Molecular graphs and the SMILES parser.

The graph model is deliberately small: atoms carry element, charge,
aromatic flag and (for bracket atoms) an explicit hydrogen count; bonds are
single/double/triple/aromatic. Stereo markers and isotopes are accepted by
the parser, recorded on the atom, and ignored by everything downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import IntEnum

from .errors import (
    SmilesSyntaxError,
    UnclosedRingBond,
    UnsupportedElement,
    ValenceError,
)

# Organic-subset elements may appear bare; bracket atoms may add the rest.
ORGANIC_SUBSET = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}
BRACKET_ONLY = {"H", "Si", "Se", "As"}
SUPPORTED_ELEMENTS = ORGANIC_SUBSET | BRACKET_ONLY

# Elements that may appear lowercase (aromatic) in SMILES input.
AROMATIC_ELEMENTS = {"B", "C", "N", "O", "P", "S", "Se", "As"}

# Allowed valences, lowest first. Charge widens the maximum by |charge|.
VALENCES: dict[str, tuple[int, ...]] = {
    "B": (3,),
    "C": (4,),
    "N": (3,),
    "O": (2,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "F": (1,),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
    "H": (1,),
    "Si": (4,),
    "Se": (2, 4, 6),
    "As": (3, 5),
}


class BondOrder(IntEnum):
    SINGLE = 1
    DOUBLE = 2
    TRIPLE = 3
    AROMATIC = 4

    @property
    def value_sum(self) -> float:
        """Contribution to an atom's bond-order sum."""
        return 1.5 if self is BondOrder.AROMATIC else float(self.value)


_BOND_CHARS = {"-": BondOrder.SINGLE, "=": BondOrder.DOUBLE,
               "#": BondOrder.TRIPLE, ":": BondOrder.AROMATIC}


@dataclass
class Atom:
    element: str
    formal_charge: int = 0
    explicit_h: int | None = None  # None for organic-subset atoms
    aromatic: bool = False
    isotope: int | None = None


@dataclass
class Bond:
    a: int
    b: int
    order: BondOrder

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a


@dataclass
class MolGraph:
    """Attributed undirected molecular graph. Treat as immutable once built."""

    atoms: list[Atom] = field(default_factory=list)
    bonds: list[Bond] = field(default_factory=list)
    # adjacency[i] maps neighbor atom index -> bond index
    adjacency: list[dict[int, int]] = field(default_factory=list)

    def add_atom(self, atom: Atom) -> int:
        self.atoms.append(atom)
        self.adjacency.append({})
        return len(self.atoms) - 1

    def add_bond(self, a: int, b: int, order: BondOrder) -> int:
        if a == b:
            raise SmilesSyntaxError("bond endpoints must be distinct")
        if b in self.adjacency[a]:
            raise SmilesSyntaxError(f"duplicate bond between atoms {a} and {b}")
        self.bonds.append(Bond(a, b, order))
        idx = len(self.bonds) - 1
        self.adjacency[a][b] = idx
        self.adjacency[b][a] = idx
        return idx

    def neighbors(self, i: int) -> list[int]:
        return list(self.adjacency[i])

    def bond_between(self, a: int, b: int) -> Bond | None:
        idx = self.adjacency[a].get(b)
        return None if idx is None else self.bonds[idx]

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    @property
    def atom_count(self) -> int:
        return len(self.atoms)

    @property
    def bond_count(self) -> int:
        return len(self.bonds)

    def bond_order_sum(self, i: int) -> float:
        return sum(self.bonds[bidx].order.value_sum for bidx in self.adjacency[i].values())

    def hydrogen_count(self, i: int) -> int:
        """Total attached hydrogens: explicit for bracket atoms, else implied
        by the lowest allowed valence that accommodates the bond-order sum."""
        atom = self.atoms[i]
        if atom.explicit_h is not None:
            return atom.explicit_h
        return _implied_hydrogens(atom, self._connection_sum(i), self._has_pi_slot(i))

    def _connection_sum(self, i: int) -> int:
        """Bond-order sum with aromatic bonds counted as single connections."""
        total = 0
        for bidx in self.adjacency[i].values():
            order = self.bonds[bidx].order
            total += 1 if order is BondOrder.AROMATIC else int(order)
        return total

    def _has_pi_slot(self, i: int) -> bool:
        return self.atoms[i].aromatic

    def connected_components(self) -> list[list[int]]:
        seen = [False] * self.atom_count
        components: list[list[int]] = []
        for start in range(self.atom_count):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in self.adjacency[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
            components.append(sorted(comp))
        return components

    def subgraph(self, keep: set[int] | frozenset[int]) -> MolGraph:
        """Graph induced on `keep`; atom order follows ascending original index.

        Bracket atoms that lose neighbors gain hydrogens for the severed
        bond orders, so extraction behaves like chemical pruning rather
        than raw vertex deletion."""
        order = sorted(keep)
        remap = {old: new for new, old in enumerate(order)}
        g = MolGraph()
        for old in order:
            atom = replace(self.atoms[old])
            if atom.explicit_h is not None:
                lost = sum(
                    _severed_valence(self.bonds[bidx].order)
                    for j, bidx in self.adjacency[old].items()
                    if j not in remap
                )
                if lost:
                    atom.explicit_h += lost
            g.add_atom(atom)
        for bond in self.bonds:
            if bond.a in remap and bond.b in remap:
                g.add_bond(remap[bond.a], remap[bond.b], bond.order)
        return g

    def copy(self) -> MolGraph:
        return self.subgraph(set(range(self.atom_count)))


def _severed_valence(order: BondOrder) -> int:
    return 1 if order is BondOrder.AROMATIC else int(order)


def _implied_hydrogens(atom: Atom, connections: int, aromatic: bool) -> int:
    """Hydrogens implied for a bare (non-bracket) atom.

    An aromatic atom is assumed to carry one ring double bond when its lowest
    valence leaves room for it (benzene/pyridine carbons and nitrogens);
    otherwise it is treated pyrrole/furan-like with no extra bond.
    """
    valences = VALENCES[atom.element]
    if aromatic:
        base = valences[0]
        if connections + 1 <= base:
            return base - connections - 1
        return max(0, base - connections)
    for v in valences:
        if v >= connections:
            return max(0, v - connections - abs(atom.formal_charge))
    return 0


def ring_count(g: MolGraph) -> int:
    """Cyclomatic number |bonds| - |atoms| + |components| (= SSSR size)."""
    if g.atom_count == 0:
        return 0
    return g.bond_count - g.atom_count + len(g.connected_components())


def largest_component(g: MolGraph) -> MolGraph:
    """Largest connected component by atom count; canonical-string order
    breaks ties so salt stripping is deterministic."""
    comps = g.connected_components()
    if len(comps) <= 1:
        return g
    best = max(comps, key=len)
    tied = [c for c in comps if len(c) == len(best)]
    if len(tied) == 1:
        return g.subgraph(set(best))
    from .canon import write_canonical  # local import: canon depends on this module

    keyed = [(write_canonical(g.subgraph(set(c))), c) for c in tied]
    keyed.sort()
    return g.subgraph(set(keyed[0][1]))


def cyclic_atoms(g: MolGraph) -> set[int]:
    """Atoms lying on at least one cycle (incident to a non-bridge edge)."""
    bridges = _bridge_bonds(g)
    cyclic: set[int] = set()
    for bidx, bond in enumerate(g.bonds):
        if bidx not in bridges:
            cyclic.add(bond.a)
            cyclic.add(bond.b)
    return cyclic


def _bridge_bonds(g: MolGraph) -> set[int]:
    """Bond indices whose removal disconnects their component (iterative Tarjan)."""
    n = g.atom_count
    disc = [-1] * n
    low = [0] * n
    bridges: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        stack: list[tuple[int, int, list[tuple[int, int]], int]] = []
        disc[root] = low[root] = timer
        timer += 1
        stack.append((root, -1, list(g.adjacency[root].items()), 0))
        while stack:
            u, parent_bond, edges, i = stack.pop()
            if i < len(edges):
                stack.append((u, parent_bond, edges, i + 1))
                v, bidx = edges[i]
                if bidx == parent_bond:
                    continue
                if disc[v] == -1:
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append((v, bidx, list(g.adjacency[v].items()), 0))
                else:
                    low[u] = min(low[u], disc[v])
            else:
                if parent_bond != -1:
                    bond = g.bonds[parent_bond]
                    p = bond.other(u)
                    low[p] = min(low[p], low[u])
                    if low[u] > disc[p]:
                        bridges.add(parent_bond)
    return bridges


# ---------------------------------------------------------------------------
# SMILES parsing
# ---------------------------------------------------------------------------

_CHARGE_CHARS = {"+", "-"}


def parse_smiles(text: str) -> MolGraph:
    """Parse SMILES text into a molecular graph.

    Accepts the organic-subset grammar plus bracket atoms (isotope, charge,
    explicit H, @/@@ chirality markers), branches, ring closures including
    %nn, bond symbols - = # : and dot-separated fragments. Chirality and
    cis/trans markers are consumed and dropped; isotopes are recorded.
    """
    text = text.strip()
    if not text:
        raise SmilesSyntaxError("empty SMILES")

    g = MolGraph()
    prev: int | None = None
    pending: BondOrder | None = None
    branch_stack: list[int | None] = []
    # ring number -> (atom index, bond order given at opening or None)
    open_rings: dict[int, tuple[int, BondOrder | None]] = {}

    i = 0
    n = len(text)
    while i < n:
        ch = text[i]

        if ch == "(":
            if prev is None:
                raise SmilesSyntaxError("branch before any atom")
            branch_stack.append(prev)
            i += 1
            continue
        if ch == ")":
            if not branch_stack:
                raise SmilesSyntaxError("unbalanced ')'")
            prev = branch_stack.pop()
            i += 1
            continue
        if ch in _BOND_CHARS:
            if pending is not None:
                raise SmilesSyntaxError("two bond symbols in a row")
            pending = _BOND_CHARS[ch]
            i += 1
            continue
        if ch in "/\\":
            # cis/trans marker: treat as a single bond, geometry dropped
            if pending is not None:
                raise SmilesSyntaxError("bond symbol before stereo bond marker")
            pending = BondOrder.SINGLE
            i += 1
            continue
        if ch == ".":
            if pending is not None:
                raise SmilesSyntaxError("bond symbol before '.'")
            if branch_stack:
                raise SmilesSyntaxError("'.' inside a branch")
            if prev is None:
                raise SmilesSyntaxError("empty fragment before '.'")
            prev = None
            i += 1
            continue
        if ch.isdigit() or ch == "%":
            if prev is None:
                raise SmilesSyntaxError("ring closure before any atom")
            if ch == "%":
                if i + 2 >= n or not text[i + 1 : i + 3].isdigit():
                    raise SmilesSyntaxError("'%' must be followed by two digits")
                num = int(text[i + 1 : i + 3])
                i += 3
            else:
                num = int(ch)
                i += 1
            _handle_ring_digit(g, open_rings, num, prev, pending)
            pending = None
            continue
        if ch == "[":
            end = text.find("]", i)
            if end == -1:
                raise SmilesSyntaxError("unterminated bracket atom")
            atom = _parse_bracket_atom(text[i + 1 : end])
            prev = _attach_atom(g, atom, prev, pending)
            pending = None
            i = end + 1
            continue

        symbol, aromatic, width = _read_bare_symbol(text, i)
        if symbol is None:
            raise SmilesSyntaxError(f"unexpected character {ch!r} at position {i}")
        atom = Atom(element=symbol, aromatic=aromatic)
        prev = _attach_atom(g, atom, prev, pending)
        pending = None
        i += width

    if branch_stack:
        raise SmilesSyntaxError("unbalanced '('")
    if pending is not None:
        raise SmilesSyntaxError("dangling bond symbol")
    if prev is None and g.atom_count > 0:
        raise SmilesSyntaxError("trailing '.'")
    if open_rings:
        nums = ", ".join(str(k) for k in sorted(open_rings))
        raise UnclosedRingBond(f"unclosed ring bond(s): {nums}")

    _normalize_kekule_rings(g)
    demote_acyclic_aromatic_bonds(g)
    _check_valences(g)
    return g


def demote_acyclic_aromatic_bonds(g: MolGraph) -> None:
    """An aromatic-default bond outside every ring is really single (the
    biphenyl case: two lowercase rings joined without an explicit '-')."""
    if not any(b.order is BondOrder.AROMATIC for b in g.bonds):
        return
    bridges = _bridge_bonds(g)
    for bidx in bridges:
        if g.bonds[bidx].order is BondOrder.AROMATIC:
            g.bonds[bidx].order = BondOrder.SINGLE


def _read_bare_symbol(text: str, i: int) -> tuple[str | None, bool, int]:
    """Read an organic-subset atom token at position i."""
    two = text[i : i + 2]
    if two in ("Cl", "Br"):
        return two, False, 2
    ch = text[i]
    if ch in "BCNOPSFI":
        return ch, False, 1
    if ch in "bcnops":
        return ch.upper(), True, 1
    if ch.isalpha():
        raise UnsupportedElement(f"element {ch!r} not allowed outside brackets")
    return None, False, 0


def _parse_bracket_atom(body: str) -> Atom:
    """Parse the inside of a bracket atom: [isotope]symbol[@|@@][H<n>][+|-<n>]."""
    if not body:
        raise SmilesSyntaxError("empty bracket atom")
    i = 0
    n = len(body)

    isotope = None
    start = i
    while i < n and body[i].isdigit():
        i += 1
    if i > start:
        isotope = int(body[start:i])
        if isotope <= 0:
            raise SmilesSyntaxError("isotope must be positive")

    if i >= n:
        raise SmilesSyntaxError(f"bracket atom missing element: [{body}]")
    aromatic = False
    if body[i].isupper():
        symbol = body[i]
        i += 1
        if i < n and body[i].islower():
            two = symbol + body[i]
            if two in SUPPORTED_ELEMENTS:
                symbol = two
                i += 1
            elif two.isalpha():
                raise UnsupportedElement(f"unsupported element {two!r}")
    elif body[i].islower():
        # aromatic lowercase form, possibly two letters (se, as)
        sym2 = body[i : i + 2]
        if sym2 in ("se", "as"):
            symbol = sym2.capitalize()
            i += 2
        else:
            symbol = body[i].upper()
            i += 1
        aromatic = True
        if symbol not in AROMATIC_ELEMENTS:
            raise UnsupportedElement(f"element {symbol!r} cannot be aromatic")
    else:
        raise SmilesSyntaxError(f"bad bracket atom: [{body}]")
    if symbol not in SUPPORTED_ELEMENTS:
        raise UnsupportedElement(f"unsupported element {symbol!r}")

    # chirality markers recorded nowhere: parsed and dropped
    while i < n and body[i] == "@":
        i += 1

    explicit_h = 0
    if i < n and body[i] == "H":
        i += 1
        start = i
        while i < n and body[i].isdigit():
            i += 1
        explicit_h = int(body[start:i]) if i > start else 1

    charge = 0
    if i < n and body[i] in _CHARGE_CHARS:
        sign = 1 if body[i] == "+" else -1
        i += 1
        start = i
        while i < n and body[i].isdigit():
            i += 1
        if i > start:
            charge = sign * int(body[start:i])
        else:
            charge = sign
            while i < n and body[i] == body[i - 1]:
                charge += sign
                i += 1

    # atom-map suffix (:n) tolerated and dropped
    if i < n and body[i] == ":":
        i += 1
        start = i
        while i < n and body[i].isdigit():
            i += 1
        if i == start:
            raise SmilesSyntaxError(f"bad atom map in [{body}]")

    if i != n:
        raise SmilesSyntaxError(f"trailing characters in bracket atom: [{body}]")

    return Atom(element=symbol, formal_charge=charge, explicit_h=explicit_h,
                aromatic=aromatic, isotope=isotope)


def _attach_atom(g: MolGraph, atom: Atom, prev: int | None,
                 pending: BondOrder | None) -> int:
    idx = g.add_atom(atom)
    if prev is not None:
        g.add_bond(prev, idx, _resolve_order(g, prev, idx, pending))
    elif pending is not None:
        raise SmilesSyntaxError("bond symbol with no preceding atom")
    return idx


def _resolve_order(g: MolGraph, a: int, b: int, pending: BondOrder | None) -> BondOrder:
    both_aromatic = g.atoms[a].aromatic and g.atoms[b].aromatic
    if pending is None:
        return BondOrder.AROMATIC if both_aromatic else BondOrder.SINGLE
    if pending is BondOrder.AROMATIC and not both_aromatic:
        raise SmilesSyntaxError("':' bond requires two aromatic atoms")
    return pending


def _handle_ring_digit(g: MolGraph, open_rings: dict[int, tuple[int, BondOrder | None]],
                       num: int, atom: int, pending: BondOrder | None) -> None:
    if num not in open_rings:
        open_rings[num] = (atom, pending)
        return
    other, opening_order = open_rings.pop(num)
    if other == atom:
        raise SmilesSyntaxError(f"ring bond {num} closes on its own atom")
    order = pending if pending is not None else opening_order
    if pending is not None and opening_order is not None and pending != opening_order:
        raise SmilesSyntaxError(f"conflicting bond orders on ring closure {num}")
    g.add_bond(other, atom, _resolve_order(g, other, atom, order))


def _check_valences(g: MolGraph) -> None:
    for i, atom in enumerate(g.atoms):
        if atom.element not in VALENCES:
            raise UnsupportedElement(f"unsupported element {atom.element!r}")
        if atom.aromatic and atom.element not in AROMATIC_ELEMENTS:
            raise UnsupportedElement(f"element {atom.element!r} cannot be aromatic")
        if atom.aromatic:
            occupied = g._connection_sum(i) + (atom.explicit_h or 0)
        else:
            occupied = math.ceil(g.bond_order_sum(i)) + (atom.explicit_h or 0)
        limit = max(VALENCES[atom.element]) + abs(atom.formal_charge)
        if occupied > limit:
            raise ValenceError(
                f"atom {i} ({atom.element}): bond-order sum {occupied} exceeds "
                f"allowed valence {limit}"
            )


def _normalize_kekule_rings(g: MolGraph) -> None:
    """Rewrite Kekulé benzene/pyridine-like rings to aromatic form.

    Only 6-membered rings of non-aromatic C/N whose ring bonds strictly
    alternate single/double are converted; everything else is left as
    written (lowercase input is already trusted as aromatic).
    """
    from .rings import sssr_rings  # local import: rings depends on this module

    if g.bond_count < 6:
        return

    def ring_eligible(i: int) -> bool:
        atom = g.atoms[i]
        return (not atom.aromatic and atom.element in ("C", "N")
                and atom.formal_charge == 0)

    if not any(b.order is BondOrder.DOUBLE
               and ring_eligible(b.a) and ring_eligible(b.b)
               for b in g.bonds):
        return
    # Decide on the pristine orders first so fused Kekulé systems
    # (naphthalene and friends) convert as a whole.
    to_convert: list[list[int]] = []
    for ring in sssr_rings(g):
        if len(ring) != 6:
            continue
        if any(g.atoms[a].aromatic or g.atoms[a].element not in ("C", "N")
               or g.atoms[a].formal_charge != 0 for a in ring):
            continue
        cycle = _ring_cycle_order(g, ring)
        if cycle is None:
            continue
        orders = [g.bond_between(cycle[k], cycle[(k + 1) % 6]).order
                  for k in range(6)]
        if _alternating(orders):
            to_convert.append(cycle)
    for cycle in to_convert:
        for a in cycle:
            g.atoms[a].aromatic = True
        for k in range(6):
            g.bond_between(cycle[k], cycle[(k + 1) % 6]).order = BondOrder.AROMATIC


def _ring_cycle_order(g: MolGraph, ring: tuple[int, ...]) -> list[int] | None:
    """Order ring atoms along the cycle; None if the set is not a simple cycle."""
    members = set(ring)
    start = ring[0]
    cycle = [start]
    prev = -1
    current = start
    for _ in range(len(ring) - 1):
        nexts = [v for v in g.adjacency[current] if v in members and v != prev]
        if not nexts:
            return None
        prev, current = current, min(nexts)
        cycle.append(current)
    if start not in g.adjacency[current]:
        return None
    return cycle


def _alternating(orders: list[BondOrder]) -> bool:
    if any(o not in (BondOrder.SINGLE, BondOrder.DOUBLE) for o in orders):
        return False
    return all(orders[k] != orders[(k + 1) % len(orders)] for k in range(len(orders)))

"""Maximum common substructure: the scaffold intersection operation.

The result is the maximum common *connected edge* subgraph: an atom mapping
between the inputs together with the set of bonds carried by both sides
with equal order. Bond count is maximized first, then atom count; exact
ties are broken by the canonical form of the common graph and then by the
atom mapping, so the result is deterministic. The search is exact
backtracking with include/exclude branching on frontier atom pairs (each
candidate mapping is visited once) and a node-expansion budget; budget
exhaustion is reported in-band, never as an error.

The common graph is raw: an arc cut out of an aromatic ring keeps its
aromatic bonds (containment in both inputs requires the witnessed orders),
so it is not necessarily a valid molecule or scaffold on its own.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .canon import write_canonical
from .molgraph import MolGraph

DEFAULT_MCS_BUDGET = 10**6


@dataclass(frozen=True)
class McsResult:
    common: MolGraph
    map_a: tuple[int, ...]  # common atom i -> atom index in the first input
    map_b: tuple[int, ...]
    exhausted: bool  # False when the budget truncated the search

    @property
    def bond_size(self) -> int:
        return self.common.bond_count

    @property
    def atom_size(self) -> int:
        return self.common.atom_count


def intersection(a: MolGraph, b: MolGraph,
                 budget: int = DEFAULT_MCS_BUDGET) -> McsResult:
    """Maximum common connected edge subgraph of two molecular graphs."""
    finder = _McsFinder(a, b, budget)
    finder.run()
    return finder.result()


def _compatible(x, y) -> bool:
    return (x.element == y.element and x.aromatic == y.aromatic
            and x.formal_charge == y.formal_charge)


class _McsFinder:
    def __init__(self, a: MolGraph, b: MolGraph, budget: int):
        self.a = a
        self.b = b
        self.budget = budget
        self.expansions = 0
        self.exhausted = True
        self.best_pairs: list[tuple[int, int]] = []
        self.best_edges = 0
        self.best_tie: tuple[str, tuple[tuple[int, int], ...]] | None = None

    def run(self) -> None:
        seeds = [
            (u, v)
            for u in range(self.a.atom_count)
            for v in range(self.b.atom_count)
            if _compatible(self.a.atoms[u], self.b.atoms[v])
        ]
        if not seeds:
            return
        self.best_pairs = [seeds[0]]
        self.best_tie = None
        # Seed k is explored with all earlier seeds excluded, so every
        # candidate mapping is reached from exactly one seed.
        for k, (u, v) in enumerate(seeds):
            if self.expansions > self.budget:
                self.exhausted = False
                return
            self._extend([(u, v)], 0, {u: v}, {v: u},
                         frozenset(seeds[:k]),
                         closed_a=0, closed_b=0)

    # -- search --------------------------------------------------------------

    def _extend(self, pairs: list[tuple[int, int]], edges: int,
                fwd: dict[int, int], rev: dict[int, int],
                excluded: frozenset[tuple[int, int]],
                closed_a: int, closed_b: int) -> None:
        self.expansions += 1
        if self.expansions > self.budget:
            self.exhausted = False
            return
        self._record(pairs, edges)

        # Sound bound: every further common edge consumes one still-open
        # bond on each side (a bond with at least one unmapped endpoint).
        headroom = min(self.a.bond_count - closed_a, self.b.bond_count - closed_b)
        if (edges + headroom, self.a.atom_count) <= (self.best_edges, len(self.best_pairs)):
            return

        candidates = self._candidates(fwd, rev, excluded)
        banned = excluded
        for pair, gain in candidates:
            u, v = pair
            pairs.append(pair)
            fwd[u] = v
            rev[v] = u
            da = sum(1 for x in self.a.adjacency[u] if x in fwd)
            db = sum(1 for y in self.b.adjacency[v] if y in rev)
            self._extend(pairs, edges + gain, fwd, rev, banned,
                         closed_a + da, closed_b + db)
            pairs.pop()
            del fwd[u]
            del rev[v]
            if self.expansions > self.budget:
                self.exhausted = False
                return
            banned = banned | {pair}

    def _candidates(self, fwd: dict[int, int], rev: dict[int, int],
                    excluded: frozenset[tuple[int, int]]
                    ) -> list[tuple[tuple[int, int], int]]:
        out = []
        seen: set[tuple[int, int]] = set()
        for u, v in fwd.items():
            for ua, ub in self.a.adjacency[u].items():
                if ua in fwd:
                    continue
                order_a = self.a.bonds[ub].order
                for va, vb in self.b.adjacency[v].items():
                    if va in rev or self.b.bonds[vb].order != order_a:
                        continue
                    pair = (ua, va)
                    if pair in seen or pair in excluded:
                        continue
                    if not _compatible(self.a.atoms[ua], self.b.atoms[va]):
                        continue
                    gain = self._gain(ua, va, fwd)
                    if gain > 0:
                        seen.add(pair)
                        out.append((pair, gain))
        out.sort(key=lambda item: (-item[1], item[0]))
        return out

    def _gain(self, u: int, v: int, fwd: dict[int, int]) -> int:
        gain = 0
        for x, bidx in self.a.adjacency[u].items():
            if x in fwd:
                other = self.b.bond_between(v, fwd[x])
                if other is not None and other.order == self.a.bonds[bidx].order:
                    gain += 1
        return gain

    # -- bookkeeping ---------------------------------------------------------

    def _record(self, pairs: list[tuple[int, int]], edges: int) -> None:
        score = (edges, len(pairs))
        best = (self.best_edges, len(self.best_pairs))
        if score < best:
            return
        if score > best:
            self.best_edges = edges
            self.best_pairs = list(pairs)
            self.best_tie = None
            return
        tie = self._tie_key(pairs)
        if self.best_tie is None:
            self.best_tie = self._tie_key(self.best_pairs)
        if tie < self.best_tie:
            self.best_pairs = list(pairs)
            self.best_tie = tie

    def _tie_key(self, pairs: list[tuple[int, int]]):
        common, _, _ = self._build_common(pairs)
        return (write_canonical(common), tuple(sorted(pairs)))

    def _build_common(self, pairs: list[tuple[int, int]]):
        ordered = sorted(pairs)
        u2v = dict(ordered)
        common = MolGraph()
        pos = {u: i for i, (u, _) in enumerate(ordered)}
        for u, _ in ordered:
            common.add_atom(replace(self.a.atoms[u], isotope=None))
        for u, v in ordered:
            for x, bidx in self.a.adjacency[u].items():
                if x in pos and pos[x] > pos[u]:
                    other = self.b.bond_between(v, u2v[x])
                    if other is not None and other.order == self.a.bonds[bidx].order:
                        common.add_bond(pos[u], pos[x], self.a.bonds[bidx].order)
        return common, tuple(u for u, _ in ordered), tuple(v for _, v in ordered)

    def result(self) -> McsResult:
        common, map_a, map_b = self._build_common(self.best_pairs)
        return McsResult(common=common, map_a=map_a, map_b=map_b,
                         exhausted=self.exhausted)

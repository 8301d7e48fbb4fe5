"""Composite operations over a sealed index: cones, union, FBDD.

Upper/lower cones are transitive closures over the successor edges; the
union of two scaffolds is the set of scaffolds having both as immediate
predecessors; the fragment-growing query intersects upper cones over a
chosen subset of hits. Cone truncation (depth/size caps) is carried
in-band on every result that can be affected by it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import EmptySubset, SmilesError, TooManyHits, UnknownScaffold
from .index import HypergraphIndex
from .scaffold import Scaffold, scaffold_key

MAX_FBDD_HITS = 12


@dataclass(frozen=True)
class ConeCaps:
    max_depth: int = 6
    max_size: int = 100_000


@dataclass(frozen=True)
class ConeResult:
    root: Scaffold
    members: frozenset[Scaffold]
    truncated: bool

    def keys(self) -> list[str]:
        return sorted(s.key for s in self.members)


@dataclass(frozen=True)
class FbddQuery:
    hits: tuple[str, ...]  # SMILES of fragment molecules, or scaffold keys
    subset: tuple[int, ...] | None = None  # indices into hits; None = all


@dataclass(frozen=True)
class FbddAnswer:
    scaffolds: tuple[Scaffold, ...]  # ordered by canonical key
    truncated: bool


@dataclass(frozen=True)
class FbddSubsetResult:
    subset: tuple[str, ...]  # resolved scaffold keys, input order
    scaffolds: tuple[Scaffold, ...]
    truncated: bool


class HitResolutionError(UnknownScaffold):
    """One or more FBDD hits could not be resolved to indexed scaffolds."""

    def __init__(self, failures: list[tuple[str, str]]):
        self.failures = failures
        detail = "; ".join(f"{hit!r}: {why}" for hit, why in failures)
        super().__init__(f"unresolvable hit(s): {detail}")


def _cone(idx: HypergraphIndex, key: str, forward: bool,
          caps: ConeCaps) -> ConeResult:
    root_cls = idx.scaffold_class(key)
    step = idx.successor_ids if forward else idx.predecessor_ids
    seen: set[int] = set()
    truncated = False
    frontier = deque([(root_cls.scaffold_id, 0)])
    visited = {root_cls.scaffold_id}
    while frontier:
        sid, depth = frontier.popleft()
        if depth >= caps.max_depth:
            if any(nxt not in visited for nxt in step(sid)):
                truncated = True
            continue
        for nxt in step(sid):
            if nxt in visited:
                continue
            visited.add(nxt)
            if len(seen) >= caps.max_size:
                truncated = True
                continue
            seen.add(nxt)
            frontier.append((nxt, depth + 1))
    members = frozenset(idx.classes[sid].scaffold for sid in seen)
    return ConeResult(root=root_cls.scaffold, members=members,
                      truncated=truncated)


def upper_cone(idx: HypergraphIndex, key: str,
               caps: ConeCaps = ConeCaps()) -> ConeResult:
    """All scaffolds strictly above ``key`` in the successor order."""
    return _cone(idx, key, forward=True, caps=caps)


def lower_cone_indexed(idx: HypergraphIndex, key: str,
                       caps: ConeCaps = ConeCaps()) -> ConeResult:
    """All scaffolds strictly below ``key``; total on the index because the
    build closed every scaffold under fragmentation."""
    return _cone(idx, key, forward=False, caps=caps)


def union_scaffolds(idx: HypergraphIndex, key1: str, key2: str) -> set[Scaffold]:
    """Scaffolds having both inputs as immediate predecessors.

    Equal inputs degenerate to the plain successor set."""
    s1 = idx.successors(key1)
    s2 = idx.successors(key2)
    return s1 & s2


def resolve_hits(idx: HypergraphIndex, hits: tuple[str, ...] | list[str]
                 ) -> list[Scaffold]:
    """Map each hit (scaffold key or molecule SMILES) to an indexed scaffold.

    Ring-less hits are rejected per item (the sentinel class has no graph
    edges); all failures are raised together as HitResolutionError.
    """
    resolved: list[Scaffold] = []
    failures: list[tuple[str, str]] = []
    for hit in hits:
        if idx.has_scaffold(hit):
            scaffold = idx.scaffold_class(hit).scaffold
        else:
            try:
                scaffold = scaffold_key(hit)
            except SmilesError as exc:
                failures.append((hit, type(exc).__name__))
                continue
            if not idx.has_scaffold(scaffold.key):
                failures.append((hit, "scaffold not in index"))
                continue
            scaffold = idx.scaffold_class(scaffold.key).scaffold
        if scaffold.is_sentinel:
            failures.append((hit, "ring-less hit maps to the sentinel class"))
            continue
        resolved.append(scaffold)
    if failures:
        raise HitResolutionError(failures)
    return resolved


def fbdd_intersection(idx: HypergraphIndex, query: FbddQuery,
                      caps: ConeCaps = ConeCaps()) -> FbddAnswer:
    """Intersection of the upper cones of the chosen hit subset."""
    if not query.hits:
        raise EmptySubset("no hits given")
    subset = query.subset if query.subset is not None else tuple(range(len(query.hits)))
    if not subset:
        raise EmptySubset("empty hit subset")
    if any(i < 0 or i >= len(query.hits) for i in subset):
        raise EmptySubset("subset index out of bounds")
    chosen = [query.hits[i] for i in sorted(set(subset))]
    scaffolds = resolve_hits(idx, chosen)

    common: frozenset[Scaffold] | None = None
    truncated = False
    for scaffold in scaffolds:
        cone = upper_cone(idx, scaffold.key, caps)
        truncated = truncated or cone.truncated
        common = cone.members if common is None else (common & cone.members)
        if not common:
            break
    ordered = tuple(sorted(common or (), key=lambda s: s.key))
    return FbddAnswer(scaffolds=ordered, truncated=truncated)


def fbdd_search(idx: HypergraphIndex, hits: tuple[str, ...] | list[str],
                min_subset_size: int = 1,
                caps: ConeCaps = ConeCaps()) -> list[FbddSubsetResult]:
    """All maximal hit subsets with a non-empty upper-cone intersection.

    Hits deduplicate on their resolved scaffold key; subsets are returned
    largest first, then by their key tuples.
    """
    resolved = resolve_hits(idx, list(hits))
    unique: dict[str, Scaffold] = {}
    for scaffold in resolved:
        unique.setdefault(scaffold.key, scaffold)
    pool = list(unique.values())
    if len(pool) > MAX_FBDD_HITS:
        raise TooManyHits(f"{len(pool)} unique hits exceed the "
                          f"{MAX_FBDD_HITS}-hit enumeration bound")
    if min_subset_size < 1:
        raise EmptySubset("min_subset_size must be at least 1")

    cones: dict[str, ConeResult] = {
        s.key: upper_cone(idx, s.key, caps) for s in pool
    }
    results: list[FbddSubsetResult] = []
    kept_keysets: list[frozenset[str]] = []
    for size in range(len(pool), min_subset_size - 1, -1):
        for combo in combinations(pool, size):
            keyset = frozenset(s.key for s in combo)
            if any(keyset <= bigger for bigger in kept_keysets):
                continue
            common: frozenset[Scaffold] | None = None
            truncated = False
            for scaffold in combo:
                cone = cones[scaffold.key]
                truncated = truncated or cone.truncated
                common = cone.members if common is None else (common & cone.members)
                if not common:
                    break
            if not common:
                continue
            kept_keysets.append(keyset)
            results.append(FbddSubsetResult(
                subset=tuple(s.key for s in combo),
                scaffolds=tuple(sorted(common, key=lambda s: s.key)),
                truncated=truncated,
            ))
    results.sort(key=lambda r: (-len(r.subset), r.subset))
    return results

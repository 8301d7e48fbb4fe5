"""The molecule/scaffold hypergraph as a build-then-seal store.

Build phase: molecules are inserted (parse, largest component, canonical
dedup, scaffold assignment), then the scaffold graph is closed under
fragmentation, adding memberless *virtual* scaffolds as needed. Sealing
produces an immutable index answering expand/successor/predecessor queries
and persisting to a checksummed directory of TSV files.

The ring-less sentinel class always exists as scaffold id 0; it never takes
part in graph edges.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .canon import write_canonical
from .errors import (
    ChecksumMismatch,
    FormatVersionMismatch,
    IndexSealed,
    SmilesError,
    UnknownScaffold,
)
from .fragment import fragment_graph
from .molgraph import parse_smiles, largest_component
from .scaffold import S0_KEY, Scaffold, scaffold_of_graph

FORMAT_VERSION = 1
DEFAULT_MAX_FRAGMENT_RINGS = 12

_FILES = ("molecules.tsv", "scaffolds.tsv", "edges.tsv", "rejects.tsv")


@dataclass(frozen=True)
class MoleculeRecord:
    id: int
    canonical: str
    scaffold_id: int
    source_tag: str | None = None


@dataclass(frozen=True)
class ScaffoldClass:
    scaffold: Scaffold
    scaffold_id: int
    members: tuple[int, ...]  # molecule ids, ascending

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class InsertOutcome:
    status: str  # "added" | "duplicate" | "rejected"
    molecule_id: int | None = None
    reason: str | None = None


class IndexBuilder:
    """Mutable build state. Call build_graph() once to seal."""

    def __init__(self, keep_largest_fragment: bool = True,
                 max_fragment_rings: int = DEFAULT_MAX_FRAGMENT_RINGS):
        self.keep_largest_fragment = keep_largest_fragment
        self.max_fragment_rings = max_fragment_rings
        self._sealed = False
        self._molecules: list[MoleculeRecord] = []
        self._by_canonical: dict[str, int] = {}
        self._scaffold_ids: dict[str, int] = {S0_KEY: 0}
        self._scaffolds: list[Scaffold] = [Scaffold(key=S0_KEY, ring_count=0)]
        self._members: dict[int, list[int]] = {0: []}
        self.rejects: list[tuple[int, str, str]] = []
        self._line_seq = 0

    def insert_molecule(self, smiles: str, tag: str | None = None,
                        line_no: int | None = None) -> InsertOutcome:
        if self._sealed:
            raise IndexSealed("index already sealed")
        self._line_seq += 1
        where = line_no if line_no is not None else self._line_seq
        try:
            g = parse_smiles(smiles)
            if self.keep_largest_fragment:
                g = largest_component(g)
            elif len(g.connected_components()) > 1:
                raise SmilesError("multi-fragment input")
            canonical = write_canonical(g)
            if canonical in self._by_canonical:
                return InsertOutcome(
                    status="duplicate",
                    molecule_id=self._by_canonical[canonical],
                )
            scaffold = scaffold_of_graph(g)
        except SmilesError as exc:
            self.rejects.append((where, type(exc).__name__, smiles.strip()))
            return InsertOutcome(status="rejected", reason=type(exc).__name__)
        return self.insert_canonical(canonical, scaffold.key,
                                     scaffold.ring_count, tag)

    def insert_canonical(self, canonical: str, scaffold_key: str,
                         scaffold_rings: int, tag: str | None = None
                         ) -> InsertOutcome:
        """Insert a molecule whose canonical form and scaffold were already
        computed (the parallel-ingest merge path)."""
        if self._sealed:
            raise IndexSealed("index already sealed")
        if canonical in self._by_canonical:
            return InsertOutcome(
                status="duplicate",
                molecule_id=self._by_canonical[canonical],
            )
        sid = self._scaffold_ids.get(scaffold_key)
        if sid is None:
            sid = len(self._scaffolds)
            self._scaffold_ids[scaffold_key] = sid
            self._scaffolds.append(Scaffold(key=scaffold_key,
                                            ring_count=scaffold_rings))
            self._members[sid] = []
        mol_id = len(self._molecules)
        self._molecules.append(MoleculeRecord(
            id=mol_id, canonical=canonical, scaffold_id=sid, source_tag=tag,
        ))
        self._by_canonical[canonical] = mol_id
        self._members[sid].append(mol_id)
        return InsertOutcome(status="added", molecule_id=mol_id)

    def build_graph(self) -> "HypergraphIndex":
        """Close the scaffold set under fragmentation and seal."""
        if self._sealed:
            raise IndexSealed("index already sealed")
        self._sealed = True

        edges: set[tuple[int, int]] = set()
        flagged: list[str] = []
        queue = [sid for sid in range(len(self._scaffolds))
                 if self._scaffolds[sid].ring_count >= 1]
        position = 0
        while position < len(queue):
            sid = queue[position]
            position += 1
            scaffold = self._scaffolds[sid]
            if scaffold.ring_count > self.max_fragment_rings:
                flagged.append(scaffold.key)
                continue
            if scaffold.ring_count < 2:
                continue
            fragments = sorted(fragment_graph(parse_smiles(scaffold.key)),
                               key=lambda f: f.key)
            for frag in fragments:
                fid = self._scaffold_ids.get(frag.key)
                if fid is None:
                    fid = len(self._scaffolds)
                    self._scaffold_ids[frag.key] = fid
                    self._scaffolds.append(Scaffold(
                        key=frag.key, ring_count=frag.ring_count, virtual=True,
                    ))
                    self._members[fid] = []
                    queue.append(fid)
                edges.add((fid, sid))

        classes = []
        for sid, scaffold in enumerate(self._scaffolds):
            members = tuple(sorted(self._members[sid]))
            virtual = len(members) == 0
            classes.append(ScaffoldClass(
                scaffold=Scaffold(key=scaffold.key,
                                  ring_count=scaffold.ring_count,
                                  virtual=virtual),
                scaffold_id=sid,
                members=members,
            ))

        return HypergraphIndex(
            molecules=tuple(self._molecules),
            classes=tuple(classes),
            edges=frozenset(edges),
            rejects=tuple(self.rejects),
            build_params={
                "keep_largest_fragment": self.keep_largest_fragment,
                "max_fragment_rings": self.max_fragment_rings,
            },
            budget_exceeded=tuple(sorted(flagged)),
        )


@dataclass(frozen=True)
class HypergraphIndex:
    """Sealed, immutable hypergraph. All queries are by scaffold key."""

    molecules: tuple[MoleculeRecord, ...]
    classes: tuple[ScaffoldClass, ...]
    edges: frozenset[tuple[int, int]]
    rejects: tuple[tuple[int, str, str], ...]
    build_params: dict
    budget_exceeded: tuple[str, ...] = ()
    _by_key: dict = field(default_factory=dict, repr=False)
    _succ: dict = field(default_factory=dict, repr=False)
    _pred: dict = field(default_factory=dict, repr=False)
    _hierarchy: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for cls in self.classes:
            self._by_key[cls.scaffold.key] = cls
            self._hierarchy.setdefault(cls.scaffold.ring_count, []).append(
                cls.scaffold_id)
        for level in self._hierarchy:
            self._hierarchy[level] = tuple(sorted(self._hierarchy[level]))
        for pred, succ in sorted(self.edges):
            self._succ.setdefault(pred, []).append(succ)
            self._pred.setdefault(succ, []).append(pred)

    # -- lookups -------------------------------------------------------------

    def scaffold_class(self, key: str) -> ScaffoldClass:
        cls = self._by_key.get(key)
        if cls is None:
            raise UnknownScaffold(f"scaffold {key!r} not in index")
        return cls

    def has_scaffold(self, key: str) -> bool:
        return key in self._by_key

    def hierarchy(self, level: int) -> tuple[int, ...]:
        return self._hierarchy.get(level, ())

    @property
    def hierarchy_levels(self) -> list[int]:
        return sorted(self._hierarchy)

    def expand_class(self, key: str, limit: int | None = None,
                     offset: int = 0) -> list[MoleculeRecord]:
        """Members of the class, ascending by molecule id."""
        cls = self.scaffold_class(key)
        end = None if limit is None else offset + limit
        return [self.molecules[i] for i in cls.members[offset:end]]

    def successors(self, key: str) -> set[Scaffold]:
        cls = self.scaffold_class(key)
        return {self.classes[sid].scaffold
                for sid in self._succ.get(cls.scaffold_id, ())}

    def predecessors(self, key: str) -> set[Scaffold]:
        cls = self.scaffold_class(key)
        return {self.classes[sid].scaffold
                for sid in self._pred.get(cls.scaffold_id, ())}

    def successor_ids(self, sid: int) -> tuple[int, ...]:
        return tuple(self._succ.get(sid, ()))

    def predecessor_ids(self, sid: int) -> tuple[int, ...]:
        return tuple(self._pred.get(sid, ()))

    def out_degree(self, sid: int) -> int:
        return len(self._succ.get(sid, ()))

    @property
    def molecule_count(self) -> int:
        return len(self.molecules)

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def virtual_count(self) -> int:
        return sum(1 for c in self.classes if c.scaffold.virtual)

    def manifest(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "counts": {
                "molecules": self.molecule_count,
                "scaffolds": self.class_count,
                "virtual_scaffolds": self.virtual_count,
                "edges": len(self.edges),
                "rejects": len(self.rejects),
            },
            "build": dict(self.build_params),
            "budget_exceeded": list(self.budget_exceeded),
        }


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------

def _clean(text: str | None) -> str:
    if text is None:
        return ""
    return text.replace("\t", " ").replace("\n", " ").replace("\r", " ")


def save_index(idx: HypergraphIndex, path: str | Path) -> dict:
    """Write the index as a directory of TSV files plus manifest.json.

    Returns the manifest (including per-file checksums)."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)

    lines = ["\t".join((str(m.id), m.canonical, str(m.scaffold_id),
                        _clean(m.source_tag)))
             for m in idx.molecules]
    _write_tsv(root / "molecules.tsv", lines)

    lines = ["\t".join((str(c.scaffold_id), c.scaffold.key,
                        str(c.scaffold.ring_count),
                        "1" if c.scaffold.virtual else "0",
                        str(c.size)))
             for c in idx.classes]
    _write_tsv(root / "scaffolds.tsv", lines)

    lines = [f"{p}\t{s}" for p, s in sorted(idx.edges)]
    _write_tsv(root / "edges.tsv", lines)

    lines = ["\t".join((str(n), reason, _clean(raw)))
             for n, reason, raw in idx.rejects]
    _write_tsv(root / "rejects.tsv", lines)

    manifest = idx.manifest()
    manifest["checksums"] = {
        name: _sha256(root / name) for name in _FILES
    }
    (root / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    return manifest


def load_index(path: str | Path) -> HypergraphIndex:
    """Load a persisted index, verifying format version and checksums."""
    root = Path(path)
    manifest = json.loads((root / "manifest.json").read_text(encoding="utf-8"))
    if manifest.get("format_version") != FORMAT_VERSION:
        raise FormatVersionMismatch(
            f"index format {manifest.get('format_version')!r}, "
            f"expected {FORMAT_VERSION}"
        )
    for name, expected in manifest.get("checksums", {}).items():
        actual = _sha256(root / name)
        if actual != expected:
            raise ChecksumMismatch(f"{name}: checksum mismatch")

    molecules = []
    for row in _read_tsv(root / "molecules.tsv", 4):
        molecules.append(MoleculeRecord(
            id=int(row[0]), canonical=row[1], scaffold_id=int(row[2]),
            source_tag=row[3] or None,
        ))

    member_map: dict[int, list[int]] = {}
    for m in molecules:
        member_map.setdefault(m.scaffold_id, []).append(m.id)

    classes = []
    for row in _read_tsv(root / "scaffolds.tsv", 5):
        sid = int(row[0])
        classes.append(ScaffoldClass(
            scaffold=Scaffold(key=row[1], ring_count=int(row[2]),
                              virtual=row[3] == "1"),
            scaffold_id=sid,
            members=tuple(sorted(member_map.get(sid, ()))),
        ))

    edges = {(int(row[0]), int(row[1]))
             for row in _read_tsv(root / "edges.tsv", 2)}
    rejects = tuple((int(row[0]), row[1], row[2])
                    for row in _read_tsv(root / "rejects.tsv", 3))

    return HypergraphIndex(
        molecules=tuple(molecules),
        classes=tuple(classes),
        edges=frozenset(edges),
        rejects=rejects,
        build_params=manifest.get("build", {}),
        budget_exceeded=tuple(manifest.get("budget_exceeded", ())),
    )


def _write_tsv(path: Path, lines: list[str]) -> None:
    body = "\n".join(lines)
    path.write_text(body + "\n" if body else "", encoding="utf-8", newline="\n")


def _read_tsv(path: Path, width: int) -> list[list[str]]:
    rows = []
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            row = line.split("\t")
            if len(row) != width:
                raise ChecksumMismatch(f"{path.name}: malformed row {line!r}")
            rows.append(row)
    return rows


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with path.open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()

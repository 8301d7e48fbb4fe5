"""Streaming corpus ingestion and training-pair export.

Input is the least-common-denominator .smi convention: one record per line,
``SMILES[<TAB>id]``, ``#`` comments and blank lines skipped. Parsing and
scaffold assignment can run on a worker pool; results merge in input order,
so the built index is identical no matter the worker count.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .canon import randomize_smiles, write_canonical
from .errors import SmilesError, UnknownKind
from .index import HypergraphIndex, IndexBuilder, InsertOutcome
from .molgraph import largest_component, parse_smiles
from .scaffold import scaffold_of_graph

PAIR_KINDS = ("scaffold", "successor", "predecessor")
_CHUNK_LINES = 2000


@dataclass(frozen=True)
class IngestReport:
    lines_read: int  # record lines (blank/comment lines are not records)
    added: int
    duplicates: int
    rejects: dict[str, int]
    skipped: int  # blank and comment lines
    elapsed: float
    throughput: float  # record lines per second

    def to_dict(self) -> dict:
        return {
            "lines_read": self.lines_read,
            "added": self.added,
            "duplicates": self.duplicates,
            "rejects": dict(sorted(self.rejects.items())),
            "skipped": self.skipped,
            "elapsed_s": round(self.elapsed, 3),
            "throughput_per_s": round(self.throughput, 1),
        }


@dataclass(frozen=True)
class TrainingPair:
    source: str
    target: str
    kind: str


def _iter_records(paths: list[Path]):
    """Yield (line_no, smiles, tag) across files; line numbers restart per
    file but stay unique via a running offset."""
    offset = 0
    for path in paths:
        with path.open(encoding="utf-8") as fh:
            n = 0
            for n, line in enumerate(fh, start=1):
                stripped = line.strip()
                if not stripped or stripped.startswith("#"):
                    yield (offset + n, None, None)
                    continue
                smiles, _, tag = stripped.partition("\t")
                yield (offset + n, smiles.strip(), tag.strip() or None)
            offset += n


def _prepare(smiles: str) -> tuple:
    """Worker body: parse + canonicalize + scaffold, exception-free."""
    try:
        g = largest_component(parse_smiles(smiles))
        scaffold = scaffold_of_graph(g)
        return ("ok", write_canonical(g), scaffold.key, scaffold.ring_count)
    except SmilesError as exc:
        return ("rejected", type(exc).__name__, None, None)


def _prepare_chunk(lines: list[str]) -> list[tuple]:
    return [_prepare(s) for s in lines]


def ingest_stream(paths: list[str | Path], workers: int = 0,
                  keep_largest_fragment: bool = True,
                  max_fragment_rings: int | None = None,
                  ) -> tuple[IngestReport, IndexBuilder]:
    """Stream .smi files into a build-state index.

    ``workers`` > 1 parses on a process pool; the merge is strictly in input
    order either way.
    """
    paths = [Path(p) for p in paths]
    kwargs = {"keep_largest_fragment": keep_largest_fragment}
    if max_fragment_rings is not None:
        kwargs["max_fragment_rings"] = max_fragment_rings
    builder = IndexBuilder(**kwargs)

    started = time.perf_counter()
    lines_read = 0
    skipped = 0
    added = 0
    duplicates = 0
    rejects: dict[str, int] = {}

    def account(outcome: InsertOutcome) -> None:
        nonlocal added, duplicates
        if outcome.status == "added":
            added += 1
        elif outcome.status == "duplicate":
            duplicates += 1
        else:
            rejects[outcome.reason] = rejects.get(outcome.reason, 0) + 1

    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk in _chunked(_iter_records(paths), _CHUNK_LINES):
                records = [(n, s, t) for n, s, t in chunk if s is not None]
                skipped += len(chunk) - len(records)
                lines_read += len(records)
                prepared = _flatten(pool.map(
                    _prepare_chunk,
                    _split([s for _, s, _ in records], workers),
                ))
                for (line_no, smiles, tag), result in zip(records, prepared):
                    account(_insert_prepared(builder, smiles, tag, line_no, result))
    else:
        memo: dict[str, tuple] = {}
        for line_no, smiles, tag in _iter_records(paths):
            if smiles is None:
                skipped += 1
                continue
            lines_read += 1
            result = memo.get(smiles)
            if result is None:
                result = _prepare(smiles)
                memo[smiles] = result
            account(_insert_prepared(builder, smiles, tag, line_no, result))

    elapsed = time.perf_counter() - started
    report = IngestReport(
        lines_read=lines_read, added=added, duplicates=duplicates,
        rejects=rejects, skipped=skipped, elapsed=elapsed,
        throughput=lines_read / elapsed if elapsed > 0 else 0.0,
    )
    return report, builder


def _insert_prepared(builder: IndexBuilder, smiles: str, tag: str | None,
                     line_no: int, result: tuple) -> InsertOutcome:
    status = result[0]
    if status == "rejected":
        builder.rejects.append((line_no, result[1], smiles.strip()))
        return InsertOutcome(status="rejected", reason=result[1])
    _, canonical, scaffold_key_text, ring_n = result
    return builder.insert_canonical(canonical, scaffold_key_text, ring_n, tag)


def _chunked(iterable, size):
    chunk = []
    for item in iterable:
        chunk.append(item)
        if len(chunk) >= size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def _split(items: list, parts: int) -> list[list]:
    if not items:
        return []
    step = max(1, (len(items) + parts - 1) // parts)
    return [items[i:i + step] for i in range(0, len(items), step)]


def _flatten(chunks) -> list:
    out = []
    for chunk in chunks:
        out.extend(chunk)
    return out


# ---------------------------------------------------------------------------
# Training-pair export
# ---------------------------------------------------------------------------

def export_pairs(idx: HypergraphIndex, kind: str, augment: int, seed: int,
                 out: str | Path, holdout_fraction: float = 0.0) -> dict:
    """Write TSV training pairs (``source<TAB>target<TAB>kind``).

    scaffold: one pair per ringed molecule per augmentation round, both
    sides randomized (sentinel-class molecules have no parseable scaffold
    side and are skipped). successor: one pair per graph edge per round,
    predecessor as source. predecessor: the successor pairs with columns
    flipped. ``holdout_fraction`` applies to the scaffold kind only: that
    fraction of singleton-class molecules moves to ``<out>.holdout``.
    """
    if kind not in PAIR_KINDS:
        raise UnknownKind(f"kind must be one of {PAIR_KINDS}, got {kind!r}")
    if augment < 1:
        raise UnknownKind(f"augment factor must be >= 1, got {augment}")
    out = Path(out)

    if kind == "scaffold":
        holdout_ids = _holdout_ids(idx, seed, holdout_fraction)
        main_lines: list[str] = []
        holdout_lines: list[str] = []
        for mol in idx.molecules:
            scaffold = idx.classes[mol.scaffold_id].scaffold
            if scaffold.is_sentinel:
                continue
            mol_graph = parse_smiles(mol.canonical)
            scaf_graph = parse_smiles(scaffold.key)
            bucket = holdout_lines if mol.id in holdout_ids else main_lines
            for r in range(augment):
                src = randomize_smiles(mol_graph, _mix(seed, mol.id, r, 0))
                tgt = randomize_smiles(scaf_graph, _mix(seed, mol.id, r, 1))
                bucket.append(f"{src}\t{tgt}\t{kind}")
        _write_lines(out, main_lines)
        written = {"path": str(out), "lines": len(main_lines)}
        if holdout_fraction > 0:
            holdout_path = out.with_name(out.name + ".holdout")
            _write_lines(holdout_path, holdout_lines)
            written["holdout_path"] = str(holdout_path)
            written["holdout_lines"] = len(holdout_lines)
        return written

    lines = []
    for edge_no, (pred_id, succ_id) in enumerate(sorted(idx.edges)):
        pred = idx.classes[pred_id].scaffold
        succ = idx.classes[succ_id].scaffold
        pred_graph = parse_smiles(pred.key)
        succ_graph = parse_smiles(succ.key)
        for r in range(augment):
            pred_text = randomize_smiles(pred_graph, _mix(seed, edge_no, r, 0))
            succ_text = randomize_smiles(succ_graph, _mix(seed, edge_no, r, 1))
            if kind == "successor":
                lines.append(f"{pred_text}\t{succ_text}\t{kind}")
            else:
                lines.append(f"{succ_text}\t{pred_text}\t{kind}")
    _write_lines(out, lines)
    return {"path": str(out), "lines": len(lines)}


def _holdout_ids(idx: HypergraphIndex, seed: int, fraction: float) -> set[int]:
    if fraction <= 0:
        return set()
    singles = [cls.members[0] for cls in idx.classes
               if cls.size == 1 and not cls.scaffold.is_sentinel]
    take = int(len(singles) * min(fraction, 1.0))
    rng = random.Random(seed)
    return set(rng.sample(sorted(singles), take))


def _mix(seed: int, record: int, round_no: int, side: int) -> int:
    """Stable per-line seed derivation (no string hashing)."""
    return ((seed * 1_000_003 + record) * 4096 + round_no) * 2 + side


def _write_lines(path: Path, lines: list[str]) -> None:
    body = "\n".join(lines)
    path.write_text(body + "\n" if body else "", encoding="utf-8", newline="\n")

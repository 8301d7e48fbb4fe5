"""Command-line surface.

Machine-readable output (JSON or TSV) goes to stdout, diagnostics to
stderr. Exit codes: 0 success, 1 user error (bad usage, bad input, unknown
scaffold), 2 internal error.
"""

from __future__ import annotations

import json
import sys
import traceback

import click

from . import algebra, stats as stats_mod
from .canon import write_canonical
from .errors import ScafnavError
from .index import load_index, save_index
from .ingest import PAIR_KINDS, export_pairs, ingest_stream
from .mcs import DEFAULT_MCS_BUDGET, intersection
from .molgraph import parse_smiles
from .scaffold import scaffold_key


def _emit(payload, fmt: str = "json") -> None:
    if fmt == "json":
        click.echo(json.dumps(payload, separators=(",", ":")))
    else:
        _emit_tsv(payload)


def _emit_tsv(payload, prefix: str = "") -> None:
    if isinstance(payload, dict):
        for key, value in payload.items():
            _emit_tsv(value, f"{prefix}{key}." if prefix or isinstance(value, (dict, list)) else f"{key}.")
    elif isinstance(payload, list):
        for i, value in enumerate(payload):
            _emit_tsv(value, f"{prefix}{i}.")
    else:
        click.echo(f"{prefix.rstrip('.')}\t{payload}")


def _scaffold_payload(idx, scaffold) -> dict:
    payload = {"scaffold": scaffold.key, "ring_count": scaffold.ring_count}
    if idx is not None and idx.has_scaffold(scaffold.key):
        cls = idx.scaffold_class(scaffold.key)
        payload["class_size"] = cls.size
        payload["virtual"] = cls.scaffold.virtual
    return payload


@click.group()
def cli():
    """Scaffold-class corpus engine."""


@cli.command()
@click.option("--input", "inputs", multiple=True, required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(file_okay=False))
@click.option("--workers", default=0, show_default=True)
@click.option("--keep-largest-fragment/--no-keep-largest-fragment",
              default=True, show_default=True)
@click.option("--max-fragment-rings", default=None, type=int,
              help="Flag scaffolds above this ring count instead of fragmenting.")
def ingest(inputs, out, workers, keep_largest_fragment, max_fragment_rings):
    """Build an index from .smi files and persist it to --out."""
    report, builder = ingest_stream(
        list(inputs), workers=workers,
        keep_largest_fragment=keep_largest_fragment,
        max_fragment_rings=max_fragment_rings,
    )
    idx = builder.build_graph()
    manifest = save_index(idx, out)
    click.echo(f"indexed {idx.molecule_count} molecules, "
               f"{idx.class_count} scaffold classes, "
               f"{len(idx.edges)} edges -> {out}", err=True)
    _emit({"report": report.to_dict(), "manifest_counts": manifest["counts"]})


@cli.command()
@click.option("--index", "index_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--format", "fmt", default="json",
              type=click.Choice(["json", "tsv"]), show_default=True)
@click.option("--tail-cutoff", default=stats_mod.DEFAULT_TAIL_CUTOFF,
              show_default=True)
@click.option("--top-k", default=stats_mod.DEFAULT_TOP_K, show_default=True)
@click.option("--seed", default=0, show_default=True)
def stats(index_dir, fmt, tail_cutoff, top_k, seed):
    """Corpus statistics for a persisted index."""
    idx = load_index(index_dir)
    if fmt == "json":
        click.echo(stats_mod.stats_json(idx, tail_cutoff=tail_cutoff,
                                        top_k=top_k, seed=seed))
    else:
        _emit_tsv(stats_mod.compute_stats(idx, tail_cutoff=tail_cutoff,
                                          top_k=top_k, seed=seed))


@cli.group()
def query():
    """Scaffold-space queries."""


def _load(index_dir):
    if index_dir is None:
        raise click.UsageError("--index is required for this query")
    return load_index(index_dir)


_index_option = click.option("--index", "index_dir", default=None,
                             type=click.Path(exists=True, file_okay=False))


@query.command("scaffold")
@click.argument("smiles")
@_index_option
def query_scaffold(smiles, index_dir):
    """Project a molecule onto its scaffold class."""
    idx = load_index(index_dir) if index_dir else None
    _emit(_scaffold_payload(idx, scaffold_key(smiles)))


@query.command("expand")
@click.argument("key")
@_index_option
@click.option("--limit", default=None, type=int)
def query_expand(key, index_dir, limit):
    """List the molecules of a scaffold class."""
    idx = _load(index_dir)
    members = idx.expand_class(key, limit=limit)
    _emit({"scaffold": key,
           "members": [{"id": m.id, "smiles": m.canonical,
                        "source_tag": m.source_tag} for m in members]})


@query.command("successors")
@click.argument("key")
@_index_option
def query_successors(key, index_dir):
    idx = _load(index_dir)
    _emit({"scaffold": key,
           "successors": sorted(s.key for s in idx.successors(key))})


@query.command("predecessors")
@click.argument("key")
@_index_option
def query_predecessors(key, index_dir):
    idx = _load(index_dir)
    _emit({"scaffold": key,
           "predecessors": sorted(s.key for s in idx.predecessors(key))})


@query.command("uppercone")
@click.argument("key")
@_index_option
@click.option("--max-depth", default=algebra.ConeCaps.max_depth, show_default=True)
@click.option("--limit", default=algebra.ConeCaps.max_size, show_default=True)
def query_uppercone(key, index_dir, max_depth, limit):
    idx = _load(index_dir)
    cone = algebra.upper_cone(idx, key, algebra.ConeCaps(max_depth, limit))
    _emit({"scaffold": key, "members": cone.keys(),
           "truncated": cone.truncated})


@query.command("lowercone")
@click.argument("key")
@_index_option
@click.option("--max-depth", default=algebra.ConeCaps.max_depth, show_default=True)
@click.option("--limit", default=algebra.ConeCaps.max_size, show_default=True)
def query_lowercone(key, index_dir, max_depth, limit):
    idx = _load(index_dir)
    cone = algebra.lower_cone_indexed(idx, key, algebra.ConeCaps(max_depth, limit))
    _emit({"scaffold": key, "members": cone.keys(),
           "truncated": cone.truncated})


@query.command("mcs")
@click.argument("smiles1")
@click.argument("smiles2")
@click.option("--budget", default=DEFAULT_MCS_BUDGET, show_default=True)
def query_mcs(smiles1, smiles2, budget):
    """Maximum common substructure of two structures."""
    result = intersection(parse_smiles(smiles1), parse_smiles(smiles2), budget)
    _emit({"common": write_canonical(result.common),
           "atoms": result.atom_size, "bonds": result.bond_size,
           "exhausted": result.exhausted})


@query.command("union")
@click.argument("key1")
@click.argument("key2")
@_index_option
def query_union(key1, key2, index_dir):
    """Scaffolds having both inputs as immediate predecessors."""
    idx = _load(index_dir)
    members = algebra.union_scaffolds(idx, key1, key2)
    _emit({"union": sorted(s.key for s in members)})


@query.command("fbdd")
@click.argument("hits", nargs=-1, required=True)
@_index_option
@click.option("--search", is_flag=True,
              help="Enumerate maximal hit subsets instead of intersecting all.")
@click.option("--min-subset-size", default=1, show_default=True)
@click.option("--max-depth", default=algebra.ConeCaps.max_depth, show_default=True)
def query_fbdd(hits, index_dir, search, min_subset_size, max_depth):
    """Grow fragment hits: intersect their upper cones."""
    idx = _load(index_dir)
    caps = algebra.ConeCaps(max_depth=max_depth)
    if search:
        results = algebra.fbdd_search(idx, list(hits), min_subset_size, caps)
        _emit({"results": [
            {"subset": list(r.subset),
             "scaffolds": [s.key for s in r.scaffolds],
             "truncated": r.truncated}
            for r in results
        ]})
    else:
        answer = algebra.fbdd_intersection(
            idx, algebra.FbddQuery(hits=tuple(hits)), caps)
        _emit({"scaffolds": [s.key for s in answer.scaffolds],
               "truncated": answer.truncated})


@cli.command("export-pairs")
@click.option("--index", "index_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--kind", required=True, type=click.Choice(PAIR_KINDS))
@click.option("--augment", default=1, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--holdout-fraction", default=0.0, show_default=True)
def export_pairs_cmd(index_dir, kind, augment, seed, out, holdout_fraction):
    """Export seq2seq training pairs from an index."""
    idx = load_index(index_dir)
    written = export_pairs(idx, kind, augment, seed, out,
                           holdout_fraction=holdout_fraction)
    _emit(written)


@cli.command()
@click.option("--index", "index_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--port", default=8080, show_default=True)
@click.option("--bind", default="127.0.0.1", show_default=True)
def serve(index_dir, port, bind):
    """Serve the query API over a persisted index."""
    import uvicorn

    from .server import create_app

    idx = load_index(index_dir)
    click.echo(f"serving index from {index_dir} on {bind}:{port}", err=True)
    uvicorn.run(create_app(idx), host=bind, port=port, log_level="warning")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except ScafnavError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (KeyboardInterrupt, BrokenPipeError):
        return 1
    except Exception:
        traceback.print_exc(file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

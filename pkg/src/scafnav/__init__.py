"""Scaffold-class engine over molecule corpora.

Parses SMILES into molecular graphs, computes Murcko scaffold classes,
builds the scaffold hypergraph with successor/predecessor edges, and
answers cone/union/MCS/FBDD queries over the sealed index.
"""

from .canon import canonicalize, randomize_smiles, write_canonical
from .errors import ScafnavError
from .fragment import fragment_once, is_substructure, lower_cone
from .index import (
    HypergraphIndex,
    IndexBuilder,
    load_index,
    save_index,
)
from .mcs import McsResult, intersection
from .molgraph import MolGraph, parse_smiles, ring_count
from .scaffold import S0, Scaffold, hierarchy_level, murcko_scaffold, scaffold_key

__version__ = "0.1.0"

__all__ = [
    "HypergraphIndex",
    "IndexBuilder",
    "McsResult",
    "MolGraph",
    "S0",
    "Scaffold",
    "ScafnavError",
    "canonicalize",
    "fragment_once",
    "hierarchy_level",
    "intersection",
    "is_substructure",
    "load_index",
    "lower_cone",
    "murcko_scaffold",
    "parse_smiles",
    "randomize_smiles",
    "ring_count",
    "save_index",
    "scaffold_key",
    "write_canonical",
    "__version__",
]

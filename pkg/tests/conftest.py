from __future__ import annotations

from pathlib import Path

import pytest

from scafnav.index import IndexBuilder
from tests.corpusgen import generate

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
DESK_CORPUS = DATA_DIR / "desk_corpus_10k.smi"

# Demo corpus: the sulfonamide/biphenyl-ether neighborhood plus the two
# penicillins (SMILES from public structure records, stereo written but
# ignored by the engine).
PENICILLIN_G = "CC1(C)S[C@@H]2[C@H](NC(=O)Cc3ccccc3)C(=O)N2[C@@H]1C(=O)O"
PIPERACILLIN = ("CCN1CCN(C(=O)NC(c2ccccc2)C(=O)NC3C(=O)N4C3SC(C)(C)C4C(=O)O)"
                "C(=O)C1=O")

DEMO_MOLECULES = [
    "CCO",
    "CC(C)CO",
    "Cc1ccccc1",
    "CCc1ccccc1",
    "CC(=O)Nc1ccccc1",
    "c1ccncc1",
    "Cc1ccncc1",
    "c1ccc(COc2ccccc2)cc1",
    "CCOc1ccc(COc2ccccc2)cc1",
    "O=S(=O)(c1ccccc1)N1CCCCCC1",
    "O=S(=O)(NCCc1ccccc1)c1ccccc1",
    "O=S(=O)(NS(=O)(=O)c1cccnc1)c1ccccc1",
    PENICILLIN_G,
    PIPERACILLIN,
]


def build_index(smiles_list, **kwargs):
    builder = IndexBuilder(**kwargs)
    for s in smiles_list:
        builder.insert_molecule(s)
    return builder.build_graph()


@pytest.fixture(scope="session")
def demo_index():
    return build_index(DEMO_MOLECULES)


@pytest.fixture(scope="session")
def corpus_lines_1k():
    return generate(1000, seed=11)


@pytest.fixture(scope="session")
def corpus_index_1k(corpus_lines_1k):
    return build_index(corpus_lines_1k)


@pytest.fixture(scope="session")
def desk_corpus_path() -> Path:
    assert DESK_CORPUS.exists(), "bundled desk corpus missing"
    return DESK_CORPUS

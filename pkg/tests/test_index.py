import json
from pathlib import Path

import pytest

from scafnav.canon import canonicalize
from scafnav.errors import (
    ChecksumMismatch,
    FormatVersionMismatch,
    IndexSealed,
    UnknownScaffold,
)
from scafnav.fragment import fragment_once, is_substructure
from scafnav.index import IndexBuilder, load_index, save_index
from scafnav.molgraph import parse_smiles
from scafnav.scaffold import S0_KEY, scaffold_key

from tests.conftest import DEMO_MOLECULES, PENICILLIN_G, PIPERACILLIN, build_index
from tests.corpusgen import generate

BENZENE = canonicalize("c1ccccc1")
ETHER = scaffold_key("c1ccc(COc2ccccc2)cc1").key
SULFONAMIDE = scaffold_key("O=S(=O)(c1ccccc1)N1CCCCCC1").key


def test_insert_outcomes():
    b = IndexBuilder()
    assert b.insert_molecule("CCO").status == "added"
    assert b.insert_molecule("OCC").status == "duplicate"
    bad = b.insert_molecule("C1CC")
    assert bad.status == "rejected"
    assert bad.reason == "UnclosedRingBond"


def test_same_scaffold_same_class():
    b = IndexBuilder()
    m1 = b.insert_molecule("Cc1ccccc1")
    m2 = b.insert_molecule("CCc1ccccc1")
    idx = b.build_graph()
    r1 = idx.molecules[m1.molecule_id]
    r2 = idx.molecules[m2.molecule_id]
    assert r1.scaffold_id == r2.scaffold_id
    assert idx.scaffold_class(BENZENE).size == 2


def test_sealed_rejects_inserts():
    b = IndexBuilder()
    b.insert_molecule("CCO")
    b.build_graph()
    with pytest.raises(IndexSealed):
        b.insert_molecule("CCC")


def test_partition_one_regularity(demo_index):
    sizes = sum(c.size for c in demo_index.classes)
    assert sizes == demo_index.molecule_count
    seen = set()
    for cls in demo_index.classes:
        for m in cls.members:
            assert m not in seen
            seen.add(m)
    assert len(seen) == demo_index.molecule_count


def test_sentinel_class_is_id_zero(demo_index):
    s0 = demo_index.classes[0]
    assert s0.scaffold.key == S0_KEY
    assert s0.scaffold.ring_count == 0
    assert s0.size == 2  # CCO and CC(C)CO


def test_virtual_iff_memberless(demo_index):
    for cls in demo_index.classes:
        assert cls.scaffold.virtual == (cls.size == 0)


def test_benzene_only_corpus_has_no_edges():
    idx = build_index(["c1ccccc1", "Cc1ccccc1"])
    assert len(idx.edges) == 0
    assert idx.class_count == 2  # sentinel + benzene


def test_ether_corpus_adds_virtual_benzene():
    idx = build_index(["c1ccc(COc2ccccc2)cc1"])
    benzene_cls = idx.scaffold_class(BENZENE)
    assert benzene_cls.scaffold.virtual
    ether_cls = idx.scaffold_class(ETHER)
    assert not ether_cls.scaffold.virtual
    assert idx.edges == {(benzene_cls.scaffold_id, ether_cls.scaffold_id)}


def test_edge_set_matches_fragment_recomputation(corpus_index_1k):
    idx = corpus_index_1k
    expected = set()
    for cls in idx.classes:
        if cls.scaffold.ring_count < 2:
            continue
        sid = cls.scaffold_id
        for frag in fragment_once(cls.scaffold):
            expected.add((idx.scaffold_class(frag.key).scaffold_id, sid))
    assert idx.edges == expected


def test_edges_level_step_and_dag(corpus_index_1k):
    idx = corpus_index_1k
    for pred, succ in idx.edges:
        assert (idx.classes[succ].scaffold.ring_count
                == idx.classes[pred].scaffold.ring_count + 1)
    # strictly increasing levels along edges => no cycles possible


def test_edge_substructure_witness(corpus_index_1k):
    idx = corpus_index_1k
    edges = sorted(idx.edges)[:150]
    for pred, succ in edges:
        a = parse_smiles(idx.classes[pred].scaffold.key)
        b = parse_smiles(idx.classes[succ].scaffold.key)
        assert is_substructure(a, b), (pred, succ)


def test_expand_class(demo_index):
    members = demo_index.expand_class(BENZENE)
    assert [m.id for m in members] == sorted(m.id for m in members)
    for m in members:
        assert scaffold_key(m.canonical).key == BENZENE
    assert demo_index.expand_class(BENZENE, limit=1)[0] == members[0]
    virtual_key = scaffold_key(PENICILLIN_G).key  # has no direct molecule? no:
    # penicillin-G itself is a member; use an actual virtual scaffold
    virtual = next(c for c in demo_index.classes if c.scaffold.virtual)
    assert demo_index.expand_class(virtual.scaffold.key) == []
    assert virtual_key  # silence linters


def test_successors_predecessors(demo_index):
    succ = {s.key for s in demo_index.successors(BENZENE)}
    assert ETHER in succ and SULFONAMIDE in succ
    preds = demo_index.predecessors(ETHER)
    assert {s.key for s in preds} == {BENZENE}
    with pytest.raises(UnknownScaffold):
        demo_index.successors("c1ccc(CCCCC)cc1")


def test_predecessors_equal_fragment_once(corpus_index_1k):
    idx = corpus_index_1k
    for cls in list(idx.classes)[:200]:
        if cls.scaffold.ring_count < 1:
            continue
        want = {f.key for f in fragment_once(cls.scaffold)}
        got = {s.key for s in idx.predecessors(cls.scaffold.key)}
        assert got == want, cls.scaffold.key


def test_penicillin_piperacillin_direct_successor(demo_index):
    peng = scaffold_key(PENICILLIN_G)
    pip = scaffold_key(PIPERACILLIN)
    succ = {s.key for s in demo_index.successors(peng.key)}
    assert pip.key in succ


def test_save_load_round_trip(tmp_path, demo_index):
    manifest = save_index(demo_index, tmp_path / "idx")
    assert manifest["counts"]["molecules"] == demo_index.molecule_count
    loaded = load_index(tmp_path / "idx")
    assert loaded.molecules == demo_index.molecules
    assert loaded.edges == demo_index.edges
    assert [c.scaffold for c in loaded.classes] == \
        [c.scaffold for c in demo_index.classes]
    for key in (BENZENE, ETHER, SULFONAMIDE):
        assert {s.key for s in loaded.successors(key)} == \
            {s.key for s in demo_index.successors(key)}
        assert [m.canonical for m in loaded.expand_class(key)] == \
            [m.canonical for m in demo_index.expand_class(key)]


def test_truncated_file_detected(tmp_path, demo_index):
    save_index(demo_index, tmp_path / "idx")
    edges = tmp_path / "idx" / "edges.tsv"
    edges.write_bytes(edges.read_bytes()[:-3])
    with pytest.raises(ChecksumMismatch):
        load_index(tmp_path / "idx")


def test_format_version_mismatch(tmp_path, demo_index):
    save_index(demo_index, tmp_path / "idx")
    manifest_path = tmp_path / "idx" / "manifest.json"
    doc = json.loads(manifest_path.read_text())
    doc["format_version"] = 999
    manifest_path.write_text(json.dumps(doc))
    with pytest.raises(FormatVersionMismatch):
        load_index(tmp_path / "idx")


def test_build_determinism_same_input(tmp_path):
    lines = generate(300, seed=83)
    d1, d2 = tmp_path / "a", tmp_path / "b"
    save_index(build_index(lines), d1)
    save_index(build_index(lines), d2)
    for name in ("molecules.tsv", "scaffolds.tsv", "edges.tsv", "rejects.tsv",
                 "manifest.json"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes(), name


def test_build_determinism_shuffled_input():
    lines = generate(200, seed=89)
    idx1 = build_index(lines)
    shuffled = list(reversed(lines))
    idx2 = build_index(shuffled)
    classes1 = {(c.scaffold.key, c.size, c.scaffold.virtual)
                for c in idx1.classes}
    classes2 = {(c.scaffold.key, c.size, c.scaffold.virtual)
                for c in idx2.classes}
    assert classes1 == classes2
    edges1 = {(idx1.classes[p].scaffold.key, idx1.classes[s].scaffold.key)
              for p, s in idx1.edges}
    edges2 = {(idx2.classes[p].scaffold.key, idx2.classes[s].scaffold.key)
              for p, s in idx2.edges}
    assert edges1 == edges2


def test_sentinel_never_in_edges(corpus_index_1k):
    idx = corpus_index_1k
    for pred, succ in idx.edges:
        assert idx.classes[pred].scaffold.key != S0_KEY
        assert idx.classes[succ].scaffold.key != S0_KEY


def test_source_tags_survive_persistence(tmp_path):
    b = IndexBuilder()
    b.insert_molecule("Cc1ccccc1", tag="mol-7")
    idx = b.build_graph()
    save_index(idx, tmp_path / "idx")
    loaded = load_index(tmp_path / "idx")
    assert loaded.molecules[0].source_tag == "mol-7"


from hypothesis import given, settings, strategies as st


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000),
       st.integers(min_value=2, max_value=25))
def test_partition_property(seed, count):
    idx = build_index(generate(count, seed=seed))
    assert sum(c.size for c in idx.classes) == idx.molecule_count
    members = [m for c in idx.classes for m in c.members]
    assert sorted(members) == list(range(idx.molecule_count))
    for pred, succ in idx.edges:
        assert (idx.classes[succ].scaffold.ring_count
                == idx.classes[pred].scaffold.ring_count + 1)


def test_rejects_persist(tmp_path):
    b = IndexBuilder()
    b.insert_molecule("C1CC", line_no=3)
    b.insert_molecule("CCO")
    idx = b.build_graph()
    save_index(idx, tmp_path / "idx")
    loaded = load_index(tmp_path / "idx")
    assert loaded.rejects == ((3, "UnclosedRingBond", "C1CC"),)

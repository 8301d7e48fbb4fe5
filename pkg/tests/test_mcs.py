from scafnav.canon import write_canonical
from scafnav.fragment import is_substructure
from scafnav.mcs import intersection
from scafnav.molgraph import parse_smiles
from scafnav.scaffold import scaffold_key

from tests import oracles
from tests.corpusgen import generate

BENZENE = parse_smiles("c1ccccc1")
PYRIDINE = parse_smiles("c1ccncc1")
AZEPANE = parse_smiles("C1CCCNCC1")


def test_self_intersection_is_identity():
    r = intersection(BENZENE, BENZENE)
    assert r.exhausted
    assert r.atom_size == 6 and r.bond_size == 6
    assert oracles.graph_isomorphic(r.common, BENZENE)


def test_benzene_pyridine_five_atom_path():
    r = intersection(BENZENE, PYRIDINE)
    assert r.exhausted
    assert (r.bond_size, r.atom_size) == oracles.brute_mcs_size(BENZENE, PYRIDINE)
    assert (r.bond_size, r.atom_size) == (4, 5)
    assert all(BENZENE.atoms[i].element == "C" for i in r.map_a)


def test_aromatic_aliphatic_incompatible():
    r = intersection(BENZENE, AZEPANE)
    assert r.exhausted
    assert r.atom_size == 0 and r.bond_size == 0


def test_symmetry():
    for s1, s2 in [("c1ccccc1", "c1ccncc1"),
                   ("O=S(=O)(c1ccccc1)N1CCCCCC1", "O=S(=O)(NCCc1ccccc1)c1ccccc1"),
                   ("C1CCNCC1", "C1CCOCC1")]:
        a, b = parse_smiles(s1), parse_smiles(s2)
        r1, r2 = intersection(a, b), intersection(b, a)
        assert (r1.bond_size, r1.atom_size) == (r2.bond_size, r2.atom_size)
        assert oracles.graph_isomorphic(r1.common, r2.common)


def test_upper_bound_and_substructure_equality():
    pairs = [(BENZENE, parse_smiles("c1ccc(COc2ccccc2)cc1")),
             (PYRIDINE, parse_smiles("Cc1ccncc1")),
             (parse_smiles("C1CCNCC1"), parse_smiles("C1CCNCC1C"))]
    for a, b in pairs:
        r = intersection(a, b)
        small = min(a.atom_count, b.atom_count)
        assert r.atom_size <= small
        if is_substructure(a, b):
            assert r.atom_size == small


def test_containment():
    for s1, s2 in [("c1ccccc1", "c1ccncc1"),
                   ("O=S(=O)(c1ccccc1)N1CCCCCC1",
                    "O=S(=O)(NS(=O)(=O)c1cccnc1)c1ccccc1")]:
        a, b = parse_smiles(s1), parse_smiles(s2)
        r = intersection(a, b)
        assert is_substructure(r.common, a)
        assert is_substructure(r.common, b)


def test_matches_brute_force_on_scaffold_pairs():
    scaffolds = []
    for smiles in generate(150, seed=79, duplicate_rate=0.0):
        s = scaffold_key(smiles)
        if s.is_sentinel:
            continue
        g = parse_smiles(s.key)
        if g.atom_count <= 12:
            scaffolds.append(g)
        if len(scaffolds) >= 10:
            break
    checked = 0
    for i, a in enumerate(scaffolds):
        for b in scaffolds[i:]:
            r = intersection(a, b)
            assert r.exhausted
            want = oracles.brute_mcs_size(a, b)
            assert (r.bond_size, r.atom_size) == want, \
                (write_canonical(a), write_canonical(b))
            checked += 1
    assert checked >= 40


def test_budget_truncation_in_band():
    a = parse_smiles("O=S(=O)(NCCc1ccccc1)c1ccccc1")
    b = parse_smiles("O=S(=O)(NS(=O)(=O)c1cccnc1)c1ccccc1")
    full = intersection(a, b)
    truncated = intersection(a, b, budget=50)
    assert full.exhausted
    assert not truncated.exhausted
    assert truncated.bond_size <= full.bond_size


def test_deterministic():
    a = parse_smiles("c1ccc2ccccc2c1")
    b = parse_smiles("c1ccc2ncccc2c1")
    r1, r2 = intersection(a, b), intersection(a, b)
    assert write_canonical(r1.common) == write_canonical(r2.common)
    assert r1.map_a == r2.map_a and r1.map_b == r2.map_b


def test_raw_graph_not_projected():
    # the common part of two rings can be an acyclic arc
    r = intersection(BENZENE, PYRIDINE)
    from scafnav.molgraph import ring_count
    assert ring_count(r.common) == 0

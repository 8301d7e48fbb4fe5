import pytest

from scafnav.canon import canonicalize, randomize_smiles, write_canonical
from scafnav.errors import InvalidScaffold, MultiComponentInput
from scafnav.molgraph import BondOrder, parse_smiles, ring_count, largest_component
from scafnav.scaffold import (
    S0,
    S0_KEY,
    hierarchy_level,
    murcko_atoms,
    murcko_scaffold,
    scaffold_from_key,
    scaffold_key,
)

from tests import oracles
from tests.corpusgen import generate

BENZENE = canonicalize("c1ccccc1")
PYRIDINE = canonicalize("c1ccncc1")


def test_acetanilide_prunes_to_benzene():
    g = parse_smiles("CC(=O)Nc1ccccc1")
    core = murcko_scaffold(g)
    assert write_canonical(core) == BENZENE
    assert murcko_atoms(g) == oracles.murcko_kept_atoms(g)


def test_paper_sulfonamide_scaffold_is_fixpoint():
    s = "O=S(=O)(NCCc1ccccc1)c1ccccc1"
    g = parse_smiles(s)
    core = murcko_scaffold(g)
    assert write_canonical(core) == write_canonical(g)


def test_acyclic_gives_empty_graph():
    core = murcko_scaffold(parse_smiles("CCO"))
    assert core.atom_count == 0
    assert write_canonical(core) == S0_KEY


def test_multi_component_rejected():
    with pytest.raises(MultiComponentInput):
        murcko_scaffold(parse_smiles("c1ccccc1.CC"))


def test_scaffold_key_examples():
    assert scaffold_key("Cc1ccccc1").key == BENZENE
    assert scaffold_key("Cc1ccccc1").ring_count == 1
    assert scaffold_key("c1ccncc1").key == PYRIDINE
    s0 = scaffold_key("CC(C)CO")
    assert s0.key == S0_KEY and s0.ring_count == 0
    assert s0 == S0


def test_scaffold_key_strips_salts():
    assert scaffold_key("Cc1ccccc1.[NH4+]").key == BENZENE


def test_hierarchy_levels():
    assert hierarchy_level(S0) == 0
    assert hierarchy_level(scaffold_key("c1ccncc1")) == 1
    two_ring = scaffold_key("O=S(=O)(NS(=O)(=O)c1cccnc1)c1ccccc1")
    assert hierarchy_level(two_ring) == 2
    assert two_ring.ring_count == oracles.cycle_basis_size(
        parse_smiles(two_ring.key))


def test_idempotence_on_corpus():
    for smiles in generate(200, seed=37, duplicate_rate=0.0):
        s = scaffold_key(smiles)
        if s.is_sentinel:
            continue
        assert scaffold_key(s.key) == s, smiles


def test_determinism_across_randomized_renderings():
    for smiles in generate(60, seed=41, duplicate_rate=0.0):
        g = largest_component(parse_smiles(smiles))
        want = scaffold_key(smiles)
        for seed in range(4):
            assert scaffold_key(randomize_smiles(g, seed)) == want, smiles


def test_ring_preservation():
    for smiles in generate(150, seed=43, duplicate_rate=0.0):
        g = largest_component(parse_smiles(smiles))
        core = murcko_scaffold(g)
        assert ring_count(core) == ring_count(g), smiles


def test_exo_bond_rule():
    for smiles in generate(120, seed=47, duplicate_rate=0.0):
        g = largest_component(parse_smiles(smiles))
        kept = murcko_atoms(g)
        if not kept:
            continue
        core_degree = {i: sum(1 for j in g.adjacency[i] if j in kept)
                       for i in kept}
        from scafnav.molgraph import cyclic_atoms
        cyc = cyclic_atoms(g)
        for i in kept:
            in_cycle = i in cyc
            on_path = core_degree[i] >= 2
            exo = any(
                g.bonds[bidx].order in (BondOrder.DOUBLE, BondOrder.TRIPLE)
                and j in kept
                for j, bidx in g.adjacency[i].items()
            )
            assert in_cycle or on_path or exo, (smiles, i)


def test_murcko_matches_oracle_on_corpus():
    for smiles in generate(250, seed=53, duplicate_rate=0.0):
        g = largest_component(parse_smiles(smiles))
        assert murcko_atoms(g) == oracles.murcko_kept_atoms(g), smiles


from hypothesis import given, settings, strategies as st


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=100_000))
def test_idempotence_property(seed):
    import random as _random

    from tests.corpusgen import random_molecule

    smiles = random_molecule(_random.Random(seed))
    s = scaffold_key(smiles)
    if not s.is_sentinel:
        assert scaffold_key(s.key) == s


def test_stereo_form_maps_to_same_scaffold():
    plain = "CC1(C)SC2C(NC(=O)Cc3ccccc3)C(=O)N2C1C(=O)O"
    stereo = "CC1(C)S[C@@H]2[C@H](NC(=O)Cc3ccccc3)C(=O)N2[C@@H]1C(=O)O"
    assert scaffold_key(plain) == scaffold_key(stereo)


def test_bracket_atom_gains_hydrogens_when_pruned():
    # the ring CH keeps its hydrogen accounting once the side chain goes
    s = scaffold_key("C1CC[C@@H](C(=O)O)CC1")
    assert s.key == canonicalize("C1CCCCC1")


def test_scaffold_from_key_validates():
    assert scaffold_from_key(S0_KEY) == S0
    assert scaffold_from_key(BENZENE).ring_count == 1
    with pytest.raises(InvalidScaffold):
        scaffold_from_key("CCO")  # not a Murcko fixpoint
    with pytest.raises(InvalidScaffold):
        scaffold_from_key("Cc1ccccc1")  # side chain present
    with pytest.raises(InvalidScaffold):
        scaffold_from_key("not a smiles")
    with pytest.raises(InvalidScaffold):
        scaffold_from_key("C1CCCCC1.C1CCCCC1")

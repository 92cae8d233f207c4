import json
import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import tree_rank_by_paths
from scatterlab.errors import FamilyFormatError, SubsequenceTooLong
from scatterlab.ranktree import (
    FamilySequence,
    bits_to_list,
    children,
    dumps_family,
    explore,
    family_from_document,
    list_to_bits,
    loads_family,
    mrank,
    rank,
    rank_naive,
    to_dot,
)

PAIR = FamilySequence.from_sets(4, [[[0, 1]], [[1, 2]]])
NESTED = FamilySequence.from_sets(4, [[[0, 1]], [[0, 1, 2]]])
THREE = FamilySequence.from_sets(4, [[[0, 1]], [[1, 2]], [[0, 1, 2]]])


def random_family(rng, universe=None, max_families=4, max_members=4):
    universe = rng.randint(0, 8) if universe is None else universe
    gamma = rng.randint(0, max_families)
    full = (1 << universe) - 1
    return FamilySequence(universe, tuple(
        tuple(rng.randint(0, full) for _ in range(rng.randint(0, max_members)))
        for _ in range(gamma)
    ))


def as_sets(fs):
    return [[set(bits_to_list(h)) for h in fam] for fam in fs.families]


def test_rank_examples():
    empty = FamilySequence(4, ())
    for f in (rank, rank_naive):
        assert f(PAIR) == 2
        assert f(empty) == 0
        assert f(NESTED) == 1


def test_children_examples():
    a, b = list_to_bits([0, 1]), list_to_bits([1, 2])
    assert children(PAIR, frozenset()) == {frozenset({(0, a)}), frozenset({(1, b)})}
    assert children(PAIR, frozenset({(0, a), (1, b)})) == set()
    whole = FamilySequence.from_sets(4, [[[0, 1, 2, 3]]])
    assert children(whole, frozenset()) == set()


def test_children_rejects_non_node():
    with pytest.raises(ValueError):
        children(NESTED, frozenset({(0, 3), (1, 7)}))


def test_mrank_examples():
    assert [rank(THREE.subsequence(idx)) for idx in combinations(range(3), 2)] == [2, 1, 1]
    assert mrank(THREE, 2) == 1
    assert mrank(THREE, 3) == rank(THREE)
    assert mrank(THREE, 0) == 0
    with pytest.raises(SubsequenceTooLong):
        mrank(THREE, 4)


def test_rank_matches_naive_and_path_oracle():
    rng = random.Random(11)
    for _ in range(120):
        fs = random_family(rng)
        r = rank(fs)
        assert r == rank_naive(fs) == tree_rank_by_paths(as_sets(fs), range(fs.universe_size))
        assert r <= fs.universe_size


def test_subtree_monotonicity():
    rng = random.Random(5)
    for _ in range(60):
        fs = random_family(rng)
        r = rank(fs)
        for m in range(fs.gamma + 1):
            for idx in combinations(range(fs.gamma), m):
                assert rank(fs.subsequence(idx)) <= r
            assert mrank(fs, m) <= r


def test_workers_give_identical_results():
    rng = random.Random(2)
    for _ in range(40):
        fs = random_family(rng, universe=8, max_families=5)
        assert rank(fs, workers=4) == rank(fs)
        if fs.gamma >= 2:
            assert mrank(fs, 2, workers=3) == mrank(fs, 2)


def test_explore_ranks_are_consistent():
    ranks, kids = explore(THREE)
    for node, value in ranks.items():
        assert value == max((ranks[c] + 1 for c in kids[node]), default=0)
    assert ranks[frozenset()] == rank(THREE)


def test_dot_is_deterministic():
    text = to_dot(THREE)
    assert text == to_dot(FamilySequence.from_sets(4, [[[0, 1]], [[1, 2]], [[0, 1, 2]]]))
    assert text.startswith("digraph rank_tree {")
    assert 'n0 [label="[]", rank_value=2];' in text
    assert "[(0,{0,1}), (1,{1,2})]" in text


@settings(max_examples=100)
@given(st.integers(0, 10).flatmap(lambda u: st.tuples(
    st.just(u),
    st.lists(st.lists(st.integers(0, (1 << u) - 1), max_size=4), max_size=4),
)))
def test_family_document_round_trip(data):
    universe, families = data
    fs = FamilySequence(universe, tuple(tuple(f) for f in families))
    assert loads_family(dumps_family(fs)) == fs
    assert dumps_family(loads_family(dumps_family(fs))) == dumps_family(fs)


@pytest.mark.parametrize("doc", [
    [],
    {"universe": 4},
    {"universe": -1, "families": []},
    {"universe": True, "families": []},
    {"universe": 4, "families": {}},
    {"universe": 4, "families": [[[1, 0]]]},
    {"universe": 4, "families": [[[4]]]},
    {"universe": 4, "families": [[["a"]]]},
    {"universe": 4, "families": [[1]]},
    {"universe": 4, "families": [], "extra": 1},
])
def test_family_format_errors(doc):
    with pytest.raises(FamilyFormatError):
        family_from_document(doc)


def test_family_invalid_json():
    with pytest.raises(FamilyFormatError):
        loads_family("{not json")


def test_family_file_shape():
    doc = json.loads(dumps_family(PAIR))
    assert doc == {"universe": 4, "families": [[[0, 1]], [[1, 2]]]}

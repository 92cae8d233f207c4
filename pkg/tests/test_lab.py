import pytest

from scatterlab.clopen import BOTTOM, ClopenSet, FiniteAlgebra
from scatterlab.lab import (
    is_special,
    minimal_per_level,
    run_bigrank_experiment,
    run_random_families,
    run_trace_experiment,
    trace_trial,
)
from scatterlab.ordinals import OMEGA, Ordinal
from scatterlab.ranktree import FamilySequence, rank_naive
from scatterlab.space import Space, top_level_sample


@pytest.mark.parametrize("k,per_level", [(1, 3), (2, 5), (3, 9)])
def test_bigrank_examples(k, per_level):
    report = run_bigrank_experiment(k, per_level)
    assert report.status == "pass"
    assert report.achieved_rank >= k == report.target
    assert len(report.witness_chain) == k
    assert all(report.special_checks)
    assert [xi for xi, _ in report.witness_chain[-1]] == list(range(k - 1, -1, -1))
    assert report.mrank_profile[-1] == report.achieved_rank
    assert not report.diagnostics


def test_bigrank_fails_with_one_point_per_level():
    report = run_bigrank_experiment(2, 1)
    assert report.status == "fail"
    assert "insufficient_witnesses" in report.diagnostics[0]


def test_bigrank_rejects_k_out_of_range():
    with pytest.raises(ValueError):
        run_bigrank_experiment(0)
    with pytest.raises(ValueError):
        run_bigrank_experiment(7)


def test_bigrank_document_fields():
    doc = run_bigrank_experiment(2).to_document()
    assert doc["parameters"] == {"k": 2, "per_level": 5, "seed": None}
    assert doc["status"] == "pass" and doc["target"] == 2
    assert doc["witness_chain"][0][0]["level"] == 1


def test_is_special_rejects_non_descending_levels():
    space = Space(OMEGA)
    h = ClopenSet.interval(space, BOTTOM, 1)
    sample = top_level_sample(0, 3)
    assert is_special(((0, h),), sample)
    assert not is_special(((0, h), (0, h)), sample)
    assert not is_special((), sample)


def test_minimal_per_level_small():
    assert minimal_per_level(1) == 2
    assert minimal_per_level(2) == 2


def test_trace_single_generator_opposite_witnesses():
    space = Space(OMEGA)
    alg = FiniteAlgebra(space, (ClopenSet.interval(space, BOTTOM, 1),))
    result = trace_trial([alg], [Ordinal.of(1), Ordinal.of(5)], space)
    assert result.hit and result.interval_rank == result.bitset_rank == 1


def test_trace_missed_cell_is_reported():
    space = Space(OMEGA)
    alg = FiniteAlgebra(space, (ClopenSet.interval(space, BOTTOM, 1),))
    result = trace_trial([alg], [Ordinal.of(0), Ordinal.of(1)], space)
    assert not result.hit and result.missed == ClopenSet.interval(space, 1, OMEGA)


def test_trace_experiment_small():
    report = run_trace_experiment(2, 2, 40, seed=3)
    assert report.status == "pass"
    assert report.hitting_passed + report.hitting_failed == 40
    assert report.agreements == report.hitting_passed
    assert report.to_document() == run_trace_experiment(2, 2, 40, seed=3).to_document()


def test_random_families_examples():
    assert run_random_families(6, 0, 3, 20, 0).ranks == [0] * 20

    only_empty = FamilySequence(4, ((0,), (0,)))
    assert rank_naive(only_empty) == 0

    stats = run_random_families(8, 3, 3, 100, 1)
    assert sum(stats.histogram().values()) == 100
    assert all(r <= 3 and r <= 8 for r in stats.ranks)
    for fs, r in list(zip(stats.samples, stats.ranks))[:10]:
        assert rank_naive(fs) == r
    assert stats.summary() == run_random_families(8, 3, 3, 100, 1).summary()
    assert all(m <= r for m, r in zip(stats.mranks[2], stats.ranks))


def test_random_families_bounds():
    with pytest.raises(ValueError):
        run_random_families(25, 1, 1, 1, 0)
    with pytest.raises(ValueError):
        run_random_families(4, 9, 1, 1, 0)

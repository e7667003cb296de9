from math import comb

import pytest

from isgkit.budget import (
    BudgetError,
    SubsetBudget,
    count_subsets,
    enumerate_subsets,
    exhaustive_feasible,
    subset_ceiling,
)


def test_exhaustive_order():
    got = list(enumerate_subsets(range(3), SubsetBudget.exhaustive()))
    assert got == [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]


def test_bounded_sizes():
    got = list(enumerate_subsets(range(6), SubsetBudget.bounded(2, include_empty_set=False)))
    assert len(got) == 6 + 15
    assert max(map(len, got)) == 2


def test_i3_bounded_count():
    # all families of size <= 3 over 34 elements
    assert count_subsets(34, SubsetBudget.bounded(3)) == 1 + 34 + comb(34, 2) + comb(34, 3) == 6580


@pytest.mark.parametrize("budget", [
    SubsetBudget.exhaustive(),
    SubsetBudget.exhaustive(False),
    SubsetBudget.bounded(2, 50, seed=3),
    SubsetBudget.bounded(0, 5, include_empty_set=False),
])
def test_count_matches_enumeration(budget):
    assert len(list(enumerate_subsets(range(8), budget))) == count_subsets(8, budget)


def test_samples_are_larger_and_seeded():
    b = SubsetBudget.bounded(2, sample_count=40, seed=11)
    first = list(enumerate_subsets(range(10), b))
    assert first == list(enumerate_subsets(range(10), b))
    samples = first[count_subsets(10, SubsetBudget.bounded(2)):]
    assert len(samples) == 40
    assert all(len(s) > 2 and list(s) == sorted(set(s)) for s in samples)
    other = list(enumerate_subsets(range(10), SubsetBudget.bounded(2, 40, seed=12)))
    assert other != first


def test_samples_are_prefix_stable():
    # sample k depends only on (seed, k): a longer run extends a shorter one
    short = list(enumerate_subsets(range(10), SubsetBudget.bounded(1, 10, seed=5)))
    long = list(enumerate_subsets(range(10), SubsetBudget.bounded(1, 30, seed=5)))
    assert long[:len(short)] == short


def test_no_samples_when_universe_small():
    b = SubsetBudget.bounded(3, sample_count=100)
    assert len(list(enumerate_subsets(range(3), b))) == 8


def test_ceiling(monkeypatch):
    monkeypatch.delenv("ISGKIT_SUBSET_CEILING", raising=False)
    assert subset_ceiling() == 1 << 20
    assert exhaustive_feasible(20) and not exhaustive_feasible(21)
    monkeypatch.setenv("ISGKIT_SUBSET_CEILING", "8")
    assert exhaustive_feasible(3) and not exhaustive_feasible(4)
    with pytest.raises(BudgetError):
        list(enumerate_subsets(range(4), SubsetBudget.exhaustive()))
    monkeypatch.setenv("ISGKIT_SUBSET_CEILING", "lots")
    with pytest.raises(BudgetError):
        subset_ceiling()


def test_invalid_budget():
    with pytest.raises(BudgetError):
        SubsetBudget(mode="sometimes")
    with pytest.raises(BudgetError):
        SubsetBudget.bounded(-1)


def test_to_dict():
    assert SubsetBudget.exhaustive().to_dict() == {
        "mode": "exhaustive", "max_subset_size": None, "sample_count": 0,
        "seed": 0, "include_empty_set": True,
    }

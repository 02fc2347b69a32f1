import itertools

import numpy as np
import pytest
from hypothesis import given

from greedylab.greedy import (
    SignPattern,
    TieOverflowError,
    greedy_ordering,
    greedy_sets,
    indicator,
    is_strictly_graded,
    nsg,
    project,
    rearrangement,
    sample_greedy_sets,
    sign_of,
)
from greedylab.spaces import SparseVector

from strategies import sparse_vectors, tied_vectors


def V(d):
    return SparseVector.from_dict(d)


def _brute_greedy_sets(f, m):
    """Every m-subset of supp(f) satisfying the greedy inequality."""
    mags = dict(zip(f.indices.tolist(), np.abs(f.values).tolist()))
    out = []
    for A in itertools.combinations(sorted(mags), m):
        rest = [mags[k] for k in mags if k not in A]
        if not A or not rest or min(mags[a] for a in A) >= max(rest):
            out.append(A)
    return out


class TestSigns:
    def test_sign_of(self):
        assert sign_of(V({1: -2, 2: 5})).to_dict() == {1: -1, 2: 1}
        assert sign_of(V({3: 0.1})).to_dict() == {3: 1}

    def test_default_plus_one(self):
        assert sign_of(V({}))[9] == 1

    def test_rejects_non_unit(self):
        with pytest.raises(ValueError):
            SignPattern({1: 2})

    def test_equality_as_functions(self):
        assert SignPattern({1: 1}) == SignPattern({})
        assert SignPattern({1: -1}) != SignPattern({})


@pytest.mark.parametrize(
    "f, N, expected",
    [({1: 3, 2: 1, 3: 2}, 4, [3, 2, 1, 0]), ({}, 3, [0, 0, 0]), ({5: -4, 9: 4}, 2, [4, 4])],
)
def test_rearrangement(f, N, expected):
    assert rearrangement(V(f), N).tolist() == expected


@given(f=sparse_vectors(min_size=1))
def test_rearrangement_invariant_under_permutation(f):
    g = SparseVector(f.indices[::-1] + 1, -f.values)
    assert np.array_equal(rearrangement(f, 8), rearrangement(g, 8))


def test_greedy_sets_examples():
    fam = greedy_sets(V({1: 3, 2: 1, 3: 2}), 2)
    assert fam.sets == ((1, 3),) and fam.is_strict == (True,)
    fam = greedy_sets(V({1: 1, 2: 1}), 1)
    assert fam.sets == ((1,), (2,)) and fam.is_strict == (False, False)
    assert greedy_sets(V({1: 1}), 0).sets == ((),)


def test_nsg_example():
    assert nsg(V({1: 1, 2: 1})) == frozenset({0, 2})
    assert nsg(V({1: 3, 2: 2, 3: 1})) == frozenset({0, 1, 2, 3})


def test_m_beyond_support_is_canonical():
    fam = greedy_sets(V({2: 5}), 3)
    assert fam.sets == ((1, 2, 3),)


def test_tie_overflow():
    f = SparseVector(np.arange(1, 21), np.ones(20))
    with pytest.raises(TieOverflowError) as exc:
        greedy_sets(f, 10, cap=1000)
    assert exc.value.count == 184756
    fam = sample_greedy_sets(f, 10, 50, seed=3)
    assert fam.sampled and all(len(A) == 10 for A in fam.sets)
    assert len(set(fam.sets)) == len(fam.sets)
    assert sample_greedy_sets(f, 10, 50, seed=3).sets == fam.sets


@given(f=tied_vectors())
def test_greedy_sets_match_brute_force(f):
    for m in range(len(f) + 1):
        assert sorted(greedy_sets(f, m).sets) == _brute_greedy_sets(f, m)


@given(f=tied_vectors())
def test_prefixes_are_greedy(f):
    for rule in ("lowest_index", "highest_index"):
        order = greedy_ordering(f, rule)
        assert sorted(order) == f.indices.tolist()
        for n in range(len(f) + 1):
            assert tuple(sorted(order[:n])) in greedy_sets(f, n).sets


@given(f=sparse_vectors(min_size=1))
def test_unique_greedy_sets_iff_strictly_graded(f):
    unique = all(len(greedy_sets(f, m)) == 1 for m in range(len(f) + 1))
    assert unique == is_strictly_graded(f)


@pytest.mark.parametrize(
    "f, rule, expected",
    [
        ({1: 1, 2: 3, 3: 2}, "lowest_index", [2, 3, 1]),
        ({1: 1, 2: 1}, "lowest_index", [1, 2]),
        ({1: 1, 2: 1}, "highest_index", [2, 1]),
    ],
)
def test_greedy_ordering(f, rule, expected):
    assert greedy_ordering(V(f), rule) == expected


def test_greedy_ordering_bad_rule():
    with pytest.raises(ValueError):
        greedy_ordering(V({1: 1}), "random")


@pytest.mark.parametrize(
    "f, A, expected",
    [({1: 3, 2: 2, 3: 1}, {1}, {1: 3}), ({1: 3}, set(), {}), ({2: 5}, {1, 2, 3}, {2: 5})],
)
def test_project(f, A, expected):
    assert project(V(f), A).to_dict() == expected


@pytest.mark.parametrize(
    "eps, A, expected",
    [({}, {1, 2}, {1: 1, 2: 1}), ({2: -1}, {2}, {2: -1}), ({}, set(), {})],
)
def test_indicator(eps, A, expected):
    assert indicator(SignPattern(eps), A).to_dict() == expected


@pytest.mark.parametrize(
    "f, expected",
    [({1: 3, 2: 2, 3: 1}, True), ({1: 1, 5: -1}, False), ({}, True)],
)
def test_is_strictly_graded(f, expected):
    assert is_strictly_graded(V(f)) is expected

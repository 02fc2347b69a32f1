import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from greedylab.lorentz import (
    LorentzParams,
    dyadic_lorentz_norm,
    eta_values,
    lorentz_norm,
    product_weight_lorentz,
)
from greedylab.spaces import SparseVector
from greedylab.weights import Weight

from strategies import sparse_vectors

SQRT = Weight.power(0.5)


def V(d):
    return SparseVector.from_dict(d)


@pytest.mark.parametrize(
    "f, eta, q, expected",
    [
        ({1: 3, 2: 2, 3: 1}, Weight.power(1), math.inf, 4.0),
        ({9: 1}, SQRT, 3.0, 1.0),
        ({1: 4, 2: 1}, SQRT, 1.0, 4 + math.sqrt(2) / 2),
        ({}, SQRT, 2.0, 0.0),
    ],
)
def test_lorentz_examples(f, eta, q, expected):
    assert lorentz_norm(V(f), LorentzParams(eta, q)) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize(
    "f, expected",
    # s* = (4, 3, 2, 1): terms at n = 1, 2, 4 are 4, sqrt(2)*3 and 2*1
    [({1: 1}, 1.0), ({1: 4, 2: 3, 3: 2, 4: 1}, math.sqrt(38)), ({}, 0.0)],
)
def test_dyadic_examples(f, expected):
    assert dyadic_lorentz_norm(V(f), LorentzParams(SQRT, 2, 2)) == pytest.approx(expected, rel=1e-14)


def test_dyadic_kappa_three():
    f = SparseVector.from_dense([5, 4, 3, 2])
    # positions 1 and 3 only
    expected = math.sqrt(5**2 + (math.sqrt(3) * 3) ** 2)
    assert dyadic_lorentz_norm(f, LorentzParams(SQRT, 2, 3)) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize(
    "f, w, eta, expected",
    [
        ({1: 1}, Weight.power(0.25), [1.0], 1.0),
        ({1: 2, 2: 1}, SQRT, [1.0, 2.0], 2 * math.sqrt(2)),
        ({1: 1, 2: 1}, Weight.power(0), [1.0, math.sqrt(2)], math.sqrt(2)),
    ],
)
def test_product_weight_examples(f, w, eta, expected):
    assert product_weight_lorentz(V(f), w, eta, math.inf) == pytest.approx(expected, rel=1e-14)


def test_short_table_rejected():
    with pytest.raises(ValueError, match="need at least 3"):
        product_weight_lorentz(V({1: 1, 2: 1, 3: 1}), SQRT, [1.0, 2.0], 2)
    with pytest.raises(ValueError):
        eta_values([1.0], 2)


def test_params_validation():
    with pytest.raises(ValueError):
        LorentzParams(SQRT, 0)
    with pytest.raises(ValueError):
        LorentzParams(SQRT, 1, kappa=1)


def test_large_q_no_underflow():
    f = SparseVector.from_dense([1e-200, 1e-201, 1e-202])
    val = lorentz_norm(f, LorentzParams(Weight.power(0), 40))
    assert val == pytest.approx(1e-200, rel=1e-3)


@given(f=sparse_vectors(min_size=1), seed=st.integers(0, 10_000), q=st.sampled_from([0.5, 1, 2, math.inf]))
def test_permutation_and_sign_invariance(f, seed, q):
    rng = np.random.default_rng(seed)
    g = SparseVector(rng.permutation(f.indices), f.values * rng.choice([-1, 1], len(f)))
    p = LorentzParams(SQRT, q)
    assert lorentz_norm(g, p) == pytest.approx(lorentz_norm(f, p), rel=1e-13)


@given(f=sparse_vectors(min_size=1), shrink=st.floats(0, 1), q=st.sampled_from([0.5, 1, 2, math.inf]))
def test_monotone(f, shrink, q):
    p = LorentzParams(Weight.power(0.75), q)
    g = SparseVector(f.indices, f.values * shrink)
    assert lorentz_norm(g, p) <= lorentz_norm(f, p) * (1 + 1e-12)


@pytest.mark.parametrize("eta", [Weight.power(0), SQRT, Weight.power(1)])
@given(f=sparse_vectors(min_size=1), q=st.sampled_from([0.25, 0.5, 1.0]))
def test_linf_below_lq_for_small_q(eta, f, q):
    assert lorentz_norm(f, LorentzParams(eta, math.inf)) <= lorentz_norm(f, LorentzParams(eta, q)) * (1 + 1e-12)

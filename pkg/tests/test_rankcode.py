import itertools
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weylcode import rankcode as rc
from weylcode.errors import (
    CannotShrinkError,
    DistinctnessError,
    InsufficientDataError,
    InvalidCodeError,
)

from conftest import brute_code, brute_word

distinct_floats = st.lists(
    st.floats(min_value=0, max_value=1, exclude_min=True, exclude_max=True),
    min_size=1,
    max_size=60,
    unique=True,
)
codes = st.integers(1, 40).flatmap(
    lambda n: st.tuples(*(st.integers(1, i) for i in range(1, n + 1)))
)


@pytest.mark.parametrize(
    "x, expected",
    [
        ((0.1, 0.2, 0.3), [1, 2, 3]),
        ((0.9, 0.8, 0.7), [1, 1, 1]),
        ((0.5, 0.3, 0.7, 0.1), [1, 1, 3, 1]),
    ],
)
def test_encode_examples(x, expected):
    assert rc.encode(x).tolist() == expected
    assert brute_code(x) == expected


def test_encode_rejects_duplicates():
    with pytest.raises(DistinctnessError):
        rc.encode([0.2, 0.5, 0.2])


def test_encode_batch_matches_rows():
    x = rc.sample_batch("uniform", 50, 30, seed=3)
    batch = rc.encode(x)
    for row, code in zip(x, batch):
        assert code.tolist() == brute_code(row.tolist())


@given(distinct_floats)
def test_encode_matches_counting(x):
    t = rc.encode(x)
    assert t.tolist() == brute_code(x)
    assert rc.is_valid_code(t)


@pytest.mark.parametrize(
    "t, expected",
    [((1, 2, 3), (0, 1, 2)), ((1, 1, 3, 1), (2, 1, 3, 0)), ((1, 1), (1, 0))],
)
def test_order_permutation_examples(t, expected):
    assert tuple(rc.order_permutation(t).tolist()) == expected


@given(distinct_floats)
def test_order_permutation_roundtrip(x):
    k = rc.order_permutation(rc.encode(x))
    assert tuple(k.tolist()) == brute_word(x)
    assert rc.encode(k).tolist() == rc.encode(x).tolist()


@pytest.mark.parametrize("bad", [(2,), (1, 3), (1, 0), (1, 2, 4), (), (1.5, 1)])
def test_check_code_rejects(bad):
    with pytest.raises(InvalidCodeError):
        rc.check_code(bad)


@pytest.mark.parametrize(
    "t, special, d",
    [
        ((1, 1, 3, 1), (True, True, False, True), (1, 2, 2, 3)),
        ((1, 2, 3, 4), (True, False, False, False), (1, 1, 1, 1)),
        ((1, 1, 1), (True, True, True), (1, 2, 3)),
    ],
)
def test_special_profile_examples(t, special, d):
    prof = rc.special_profile(t)
    assert tuple(prof.special.tolist()) == special
    assert tuple(prof.d.tolist()) == d


def test_special_positions_are_values_below_first():
    for n in range(1, 8):
        for perm in itertools.permutations(range(n)):
            prof = rc.special_profile(rc.encode(perm))
            assert prof.special[0]
            assert all(prof.special[i] == (perm[i] < perm[0]) for i in range(1, n))
            assert prof.d[-1] == 1 + sum(v < perm[0] for v in perm[1:])


@pytest.mark.parametrize(
    "t, expected",
    [((1, 1, 3, 1), [1, 2, 1]), ((1, 2, 3), [1, 2]), ((1, 1, 1, 1), [1, 1, 1])],
)
def test_transfer_examples(t, expected):
    assert rc.transfer(t).tolist() == expected


def test_transfer_example_matches_shifted_encoding():
    assert rc.encode((0.3, 0.7, 0.1)).tolist() == [1, 2, 1]


def test_transfer_of_length_one_fails():
    with pytest.raises(CannotShrinkError):
        rc.transfer([1])


@given(distinct_floats.filter(lambda x: len(x) >= 2))
def test_transfer_is_shift_equivariant(x):
    t = rc.encode(x)
    t_new = rc.transfer(t)
    assert t_new.tolist() == brute_code(x[1:])
    assert rc.transfer_identity_holds(t, t_new).all()


@given(codes)
def test_transfer_stays_in_compactum(t):
    if len(t) >= 2:
        assert rc.is_valid_code(rc.transfer(t))


def test_reconstruct_first_examples():
    assert rc.reconstruct_first((1, 1, 3, 1)) == 0.75
    assert rc.reconstruct_first([1] * 9) == 1.0
    assert rc.reconstruct_first(range(1, 11)) == pytest.approx(0.1)


def test_reconstruct_prefix_examples():
    n = 20
    assert rc.reconstruct_prefix(range(1, n + 1), 2) == pytest.approx([1 / n, 1 / (n - 1)])
    assert rc.reconstruct_prefix([1] * n, 2).tolist() == [1.0, 1.0]
    with pytest.raises(InsufficientDataError):
        rc.reconstruct_prefix([1, 1], 3)


def test_reconstruct_prefix_statistical():
    x = rc.sample_prefix("uniform", 10**6, seed=11)
    est = rc.reconstruct_prefix(rc.encode(x), 3)
    assert np.abs(est - x[:3]).max() < 5e-3


def test_sampler_determinism_and_mean():
    assert np.array_equal(rc.sample_prefix("uniform", 5, 4), rc.sample_prefix("uniform", 5, 4))
    assert abs(rc.sample_prefix("uniform", 10**5, 4).mean() - 0.5) < 0.01


def test_sampler_gaussian_and_unknown_law():
    x = rc.sample_prefix("gaussian", 1000, 1)
    assert x.min() < 0 < x.max()
    with pytest.raises(ValueError):
        rc.sample_prefix("cauchy", 3, 1)


def test_trial_seeds_independent_of_order():
    a = [rc.sample_prefix("uniform", 4, rc.trial_seed(9, t)) for t in range(3)]
    b = [rc.sample_prefix("uniform", 4, rc.trial_seed(9, t)) for t in reversed(range(3))][::-1]
    assert all(np.array_equal(u, v) for u, v in zip(a, b))


def test_all_codes_count():
    for n in range(1, 7):
        assert sum(1 for _ in rc.all_codes(n)) == factorial(n)


def test_gaussian_reconstruction_targets_cdf():
    err = rc.reconstruction_errors(10**5, 5, m=1, law="gaussian", seed=2)
    assert err.max() < 1e-2

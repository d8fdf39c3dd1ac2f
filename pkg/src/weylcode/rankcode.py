"""Rank codes of real sequences and the shift they carry.

A prefix ``x = (x1, ..., xn)`` of distinct reals is encoded by its rank code
``t`` with ``t_i = 1 + #{k < i : x_k < x_i}``, so ``1 <= t_i <= i``.  The set
of such codes is the triangular compactum; under iid continuous sampling the
coordinates of ``t`` are independent and ``t_i`` is uniform on ``{1..i}``.

Dropping the first value of ``x`` acts on codes through :func:`transfer`, which
only needs the code itself (through the special positions, i.e. those ``i``
with ``x_i < x_1``).  The density of special positions recovers ``x_1``.

Codes are one-dimensional ``int64`` arrays, one entry per position.
"""
from __future__ import annotations

import itertools
from typing import NamedTuple

import numba
import numpy as np
from scipy.special import ndtr

from .errors import (
    CannotShrinkError,
    DistinctnessError,
    InsufficientDataError,
    InvalidCodeError,
)

LAWS = ("uniform", "gaussian")


class SpecialProfile(NamedTuple):
    special: np.ndarray  # bool, position 1 always True
    d: np.ndarray  # running count of special positions


# -- validation ------------------------------------------------------------


def check_distinct(x) -> np.ndarray:
    """Return ``x`` as a float array, raising if values are not pairwise distinct.

    Accepts a single prefix (1-D) or a batch of prefixes (2-D, one per row).
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim not in (1, 2) or arr.shape[-1] == 0:
        raise InvalidCodeError(f"expected a non-empty prefix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidCodeError("prefix contains non-finite values")
    srt = np.sort(arr, axis=-1)
    if np.any(srt[..., 1:] == srt[..., :-1]):
        raise DistinctnessError("coordinates must be pairwise distinct")
    return arr


def check_code(t) -> np.ndarray:
    """Return ``t`` as an int64 array after checking ``1 <= t_i <= i``."""
    arr = np.asarray(t)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidCodeError(f"rank code must be a non-empty 1-D sequence, got shape {arr.shape}")
    if arr.dtype.kind not in "iu":
        if arr.dtype.kind == "f" and np.all(arr == np.round(arr)):
            arr = arr.astype(np.int64)
        else:
            raise InvalidCodeError("rank code entries must be integers")
    arr = arr.astype(np.int64, copy=False)
    bound = np.arange(1, arr.size + 1)
    bad = np.flatnonzero((arr < 1) | (arr > bound))
    if bad.size:
        i = int(bad[0])
        raise InvalidCodeError(f"t_{i + 1} = {int(arr[i])} outside 1..{i + 1}")
    return arr


def is_valid_code(t) -> bool:
    try:
        check_code(t)
    except InvalidCodeError:
        return False
    return True


# -- kernels ---------------------------------------------------------------


def _ranks(x: np.ndarray) -> np.ndarray:
    """0-based rank of each value within its row."""
    order = np.argsort(x, axis=-1)
    rank = np.empty_like(order)
    np.put_along_axis(rank, order, np.arange(x.shape[-1]), axis=-1)
    return rank


@numba.njit(cache=True)
def _encode_ranks(rank, out):
    # Fenwick tree over value ranks: count earlier entries of smaller rank.
    n = rank.size
    tree = np.zeros(n + 1, np.int64)
    for i in range(n):
        r = rank[i]
        c = 0
        j = r
        while j > 0:
            c += tree[j]
            j -= j & -j
        out[i] = c + 1
        j = r + 1
        while j <= n:
            tree[j] += 1
            j += j & -j


@numba.njit(cache=True)
def _encode_batch(rank, out):
    for row in range(rank.shape[0]):
        _encode_ranks(rank[row], out[row])


@numba.njit(cache=True)
def _profile(t, special, d):
    special[0] = True
    d[0] = 1
    for i in range(1, t.size):
        s = t[i] <= d[i - 1]
        special[i] = s
        d[i] = d[i - 1] + (1 if s else 0)


# -- operations ------------------------------------------------------------


def encode(x) -> np.ndarray:
    """Rank code of a prefix of distinct reals.

    >>> encode([0.5, 0.3, 0.7, 0.1]).tolist()
    [1, 1, 3, 1]

    A 2-D array is encoded row by row.
    """
    arr = check_distinct(x)
    out = np.empty(arr.shape, dtype=np.int64)
    rank = _ranks(arr)
    if arr.ndim == 1:
        _encode_ranks(rank, out)
    else:
        _encode_batch(rank, out)
    return out


def order_permutation(t) -> np.ndarray:
    """The 0-based simplex word ``k`` of any prefix whose rank code is ``t``.

    ``k_i`` is the number of values of the prefix below ``x_i``.  Built by
    inserting position ``i`` at rank ``t_i`` into the running sorted order.
    """
    t = check_code(t)
    ordered: list[int] = []
    for i, ti in enumerate(t.tolist()):
        ordered.insert(ti - 1, i)
    k = np.empty(t.size, dtype=np.int64)
    k[np.asarray(ordered, dtype=np.int64)] = np.arange(t.size)
    return k


def special_profile(t) -> SpecialProfile:
    """Special positions of a code and their running count ``d``.

    Position 1 is special with ``d_1 = 1``; position ``n+1`` is special iff
    ``t_{n+1} <= d_n``.  For ``t = encode(x)`` a position ``i > 1`` is special
    exactly when ``x_i < x_1``.
    """
    t = check_code(t)
    special = np.empty(t.size, dtype=np.bool_)
    d = np.empty(t.size, dtype=np.int64)
    _profile(t, special, d)
    return SpecialProfile(special, d)


def transfer(t) -> np.ndarray:
    """Code of the shifted prefix, computed from the code alone.

    ``t'_n = t_{n+1}`` when position ``n+1`` is special, else ``t_{n+1} - 1``.
    """
    t = check_code(t)
    if t.size < 2:
        raise CannotShrinkError("transfer needs a code of length >= 2")
    special, _ = special_profile(t)
    return t[1:] - (~special[1:]).astype(np.int64)


def transfer_identity_holds(t, t_new) -> np.ndarray:
    """Per-position check of ``t_{n+1} - t'_n == 1 - (d_{n+1} - d_n)``."""
    t = np.asarray(t, dtype=np.int64)
    t_new = np.asarray(t_new, dtype=np.int64)
    if t_new.size != t.size - 1:
        raise InvalidCodeError("transferred code must be one shorter")
    d = special_profile(t).d
    return (t[1:] - t_new) == 1 - np.diff(d)


def shift(x) -> np.ndarray:
    """Drop the first coordinate (the one-sided Bernoulli shift on a prefix)."""
    arr = np.asarray(x)
    if arr.shape[-1] < 2:
        raise CannotShrinkError("cannot shift a prefix of length 1")
    return arr[..., 1:]


def reconstruct_first(t) -> float:
    """Estimate ``x_1`` by the proportion ``d_n / n`` of special positions."""
    d = special_profile(t).d
    return float(d[-1]) / d.size


def reconstruct_prefix(t, m: int) -> np.ndarray:
    """Estimates of ``x_1..x_m``, the ``j``-th from ``transfer^(j-1)(t)``.

    The effective sample sizes are ``n, n-1, ..., n-m+1``.
    """
    t = check_code(t)
    if m < 1:
        raise InsufficientDataError("m must be at least 1")
    if m > t.size:
        raise InsufficientDataError(f"cannot reconstruct {m} coordinates from a code of length {t.size}")
    out = np.empty(m)
    for j in range(m):
        out[j] = reconstruct_first(t)
        if j + 1 < m:
            t = transfer(t)
    return out


def trial_seed(seed: int, trial: int) -> np.random.SeedSequence:
    """Independent per-trial seed derived by counter from a master seed."""
    return np.random.SeedSequence([int(seed), int(trial)])


def _draw(rng: np.random.Generator, law: str, size) -> np.ndarray:
    if law == "uniform":
        return rng.random(size)
    if law == "gaussian":
        return rng.standard_normal(size)
    raise ValueError(f"unknown law {law!r}; expected one of {LAWS}")


def sample_prefix(law: str, n: int, seed=None) -> np.ndarray:
    """``n`` iid draws from ``law``; colliding values are redrawn.

    ``seed`` is anything :func:`numpy.random.default_rng` accepts, including a
    ``Generator`` (which is then advanced).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    x = _draw(rng, law, n)
    while np.unique(x).size < n:
        order = np.argsort(x, kind="stable")
        dup = order[1:][x[order[1:]] == x[order[:-1]]]
        x[dup] = _draw(rng, law, dup.size)
    return x


def sample_batch(law: str, size: int, n: int, seed=None) -> np.ndarray:
    """``size`` independent prefixes of length ``n`` as rows of a 2-D array."""
    rng = np.random.default_rng(seed)
    x = _draw(rng, law, (size, n))
    for row in range(size):
        if np.unique(x[row]).size != n:
            x[row] = sample_prefix(law, n, rng)
    return x


def all_codes(n: int):
    """Iterate over every valid rank code of length ``n`` (``n!`` of them)."""
    return itertools.product(*(range(1, i + 1) for i in range(1, n + 1)))



def law_cdf(law: str, x) -> np.ndarray:
    """Distribution function of ``law``; the value ``d_n / n`` converges to."""
    x = np.asarray(x, dtype=np.float64)
    if law == "uniform":
        return x.copy()
    if law == "gaussian":
        return ndtr(x)
    raise ValueError(f"unknown law {law!r}; expected one of {LAWS}")


def reconstruction_errors(n: int, trials: int, m: int = 1, law: str = "uniform", seed: int = 0) -> np.ndarray:
    """``|estimate_j - F(x_j)|`` for ``trials`` seeded prefixes; shape ``(trials, m)``."""
    out = np.empty((trials, m))
    for trial in range(trials):
        x = sample_prefix(law, n, trial_seed(seed, trial))
        out[trial] = np.abs(reconstruct_prefix(encode(x), m) - law_cdf(law, x[:m]))
    return out

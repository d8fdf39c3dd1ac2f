"""Simplex words and the factorial tree.

The open simplex of ``[0,1]^n`` containing a prefix ``x`` is labelled by its
word ``k`` with ``k_i = #{s : x_s < x_i}`` (0-based ranks).  Words of length
``n`` are the ``n!`` vertices of level ``n`` of the factorial tree.  Two maps
go one level down:

* :func:`tree_parent` forgets the last coordinate (ordinary tree edges);
* :func:`translation` forgets the first coordinate (the shift).

The tree is never built; vertices are values and edges are functions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

import numpy as np

from .errors import CannotShrinkError, InvalidCodeError, ResourceGuardError
from .rankcode import check_distinct, order_permutation

MAX_LEVEL = 9

Word = tuple[int, ...]


@dataclass(frozen=True)
class TreeVertex:
    word: Word

    def __post_init__(self):
        object.__setattr__(self, "word", check_word(self.word))

    @property
    def level(self) -> int:
        return len(self.word)


def check_word(k) -> Word:
    w = tuple(int(v) for v in k)
    if sorted(w) != list(range(len(w))):
        raise InvalidCodeError(f"{w} is not a permutation of 0..{len(w) - 1}")
    return w


def simplex_word(x) -> Word:
    """0-based rank of every coordinate of ``x`` within the whole prefix."""
    arr = check_distinct(x)
    if arr.ndim != 1:
        raise InvalidCodeError("simplex_word takes a single prefix")
    k = np.empty(arr.size, dtype=np.int64)
    k[np.argsort(arr)] = np.arange(arr.size)
    return tuple(k.tolist())


def translation(k) -> Word:
    """Word of the shifted simplex: drop ``k_1`` and close the gap above it."""
    k = check_word(k)
    if len(k) < 2:
        raise CannotShrinkError("translation needs a word of length >= 2")
    head = k[0]
    return tuple(v if v < head else v - 1 for v in k[1:])


def tree_parent(v: TreeVertex) -> TreeVertex:
    """Drop the last entry and close the gap above it."""
    k = v.word
    if len(k) < 2:
        raise CannotShrinkError("the level-1 vertex has no parent")
    last = k[-1]
    return TreeVertex(tuple(e if e < last else e - 1 for e in k[:-1]))


def tree_children(v: TreeVertex) -> list[TreeVertex]:
    """The ``n+1`` vertices one level up whose parent is ``v``."""
    n = v.level
    return [TreeVertex(tuple(e if e < j else e + 1 for e in v.word) + (j,)) for j in range(n + 1)]


def enumerate_level(n: int) -> list[TreeVertex]:
    if n < 1:
        raise ValueError("levels start at 1")
    if n > MAX_LEVEL:
        raise ResourceGuardError(f"level {n} has {factorial(n)} vertices; limit is {MAX_LEVEL}")
    return [TreeVertex(p) for p in itertools.permutations(range(n))]


def tree_path(x) -> list[Word]:
    """Words of the prefixes ``x[:1], x[:2], ...``; the path of ``x`` in the tree."""
    arr = check_distinct(x)
    return [simplex_word(arr[:i]) for i in range(1, arr.size + 1)]


def code_from_path(path) -> np.ndarray:
    """Rank code read off a tree path: ``t_i`` is one plus the last entry at level ``i``."""
    return np.array([w[-1] + 1 for w in path], dtype=np.int64)


def path_from_code(t) -> list[Word]:
    """Inverse of :func:`code_from_path`."""
    v = TreeVertex(tuple(order_permutation(t).tolist()))
    path = [v.word]
    while v.level > 1:
        v = tree_parent(v)
        path.append(v.word)
    return path[::-1]

"""RSK correspondence on prefixes and the partitions it induces.

Row insertion sends a prefix of distinct values to a pair ``(P, Q)`` of
tableaux of the same shape: ``P`` holds the inserted values (reals for real
input), ``Q`` records at which step each cell appeared.  Grouping order types
by ``Q`` gives the finite partition whose elements are labelled by
:func:`theta_label`; grouping by ``P`` gives its independent complement
(:func:`theta_perp_label`).  Equal ``P`` is Knuth equivalence, equal ``Q`` dual
Knuth equivalence.
"""
from __future__ import annotations

import itertools
from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass, field
from math import factorial, isnan
from typing import Iterator, NamedTuple, Sequence

import numba
import numpy as np

from .errors import DistinctnessError, InvalidCodeError, ResourceGuardError
from .rankcode import sample_batch, sample_prefix

MAX_CLASS_SIZE = 8

Shape = tuple[int, ...]
Word = tuple[int, ...]


@dataclass(frozen=True)
class Tableau:
    """Rows of a (standard or real-valued) Young tableau, top row first."""

    rows: tuple[tuple, ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if any(len(r) == 0 for r in rows):
            raise InvalidCodeError("tableau rows must be non-empty")
        check_diagram(tuple(len(r) for r in rows))
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self) -> Shape:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(self.shape)

    def __iter__(self):
        return iter(self.rows)

    def entries(self) -> list:
        return [v for r in self.rows for v in r]

    def is_increasing(self) -> bool:
        """Rows and columns strictly increase."""
        for r in self.rows:
            if any(a >= b for a, b in zip(r, r[1:])):
                return False
        for upper, lower in zip(self.rows, self.rows[1:]):
            if any(a >= b for a, b in zip(upper, lower)):
                return False
        return True

    def is_standard(self) -> bool:
        return sorted(self.entries()) == list(range(1, self.size + 1)) and self.is_increasing()

    def cell_of(self, value) -> tuple[int, int]:
        for i, r in enumerate(self.rows):
            if value in r:
                return i, r.index(value)
        raise KeyError(value)

    def restrict(self, m: int) -> "Tableau":
        """Sub-tableau of entries ``<= m`` (a standard tableau stays standard)."""
        rows = [tuple(v for v in r if v <= m) for r in self.rows]
        return Tableau(tuple(r for r in rows if r))

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]


class RskPair(NamedTuple):
    p: Tableau
    q: Tableau


def check_diagram(rows) -> Shape:
    shape = tuple(int(r) for r in rows)
    if any(r <= 0 for r in shape) or any(a < b for a, b in zip(shape, shape[1:])):
        raise InvalidCodeError(f"{shape} is not a weakly decreasing list of positive row lengths")
    return shape


def check_standard(t) -> Tableau:
    if not isinstance(t, Tableau):
        t = Tableau(t)
    if not t.is_standard():
        raise InvalidCodeError(f"{t.tolist()} is not a standard tableau")
    return t


# -- enumeration -----------------------------------------------------------


def partitions(n: int, max_part: int | None = None) -> Iterator[Shape]:
    """Partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def outer_corners(shape: Shape) -> list[int]:
    """Rows whose last cell can be removed leaving a diagram."""
    return [i for i, r in enumerate(shape) if i + 1 == len(shape) or shape[i + 1] < r]


def inner_corners(shape: Shape) -> list[int]:
    """Rows where a cell can be added (including a new bottom row)."""
    return [i for i in range(len(shape) + 1) if i == 0 or (shape[i - 1] > (shape[i] if i < len(shape) else 0))]


def add_cell(shape: Shape, row: int) -> Shape:
    s = list(shape)
    if row == len(s):
        s.append(1)
    else:
        s[row] += 1
    return tuple(s)


def remove_cell(shape: Shape, row: int) -> Shape:
    s = list(shape)
    s[row] -= 1
    if s[row] == 0:
        s.pop()
    return tuple(s)


def standard_tableaux(shape: Shape) -> Iterator[Tableau]:
    """Every standard tableau of ``shape``, built by placing the largest entry in a corner."""
    shape = check_diagram(shape)
    n = sum(shape)
    if n == 0:
        return

    def build(sh: Shape, m: int) -> Iterator[list[list[int]]]:
        if m == 0:
            yield [[] for _ in shape]
            return
        for row in outer_corners(sh):
            for rows in build(remove_cell(sh, row), m - 1):
                rows[row].append(m)
                yield rows
                rows[row].pop()

    for rows in build(shape, n):
        yield Tableau(tuple(tuple(r) for r in rows))


def all_standard_tableaux(n: int) -> Iterator[Tableau]:
    for shape in partitions(n):
        yield from standard_tableaux(shape)


# -- RSK -------------------------------------------------------------------


def _check_distinct_values(x: Sequence) -> list:
    vals = list(x.tolist() if isinstance(x, np.ndarray) else x)
    if len(set(vals)) != len(vals):
        raise DistinctnessError("RSK input must have pairwise distinct values")
    return vals


def rsk(x) -> RskPair:
    """Row insertion of the values of ``x`` (reals or a word).

    ``P`` keeps the values as given; ``Q`` has entry ``i`` at the cell created
    by the ``i``-th insertion.
    """
    p_rows: list[list] = []
    q_rows: list[list[int]] = []
    for step, v in enumerate(_check_distinct_values(x), start=1):
        row = 0
        while True:
            if row == len(p_rows):
                p_rows.append([v])
                q_rows.append([step])
                break
            r = p_rows[row]
            j = bisect_left(r, v)
            if j == len(r):
                r.append(v)
                q_rows[row].append(step)
                break
            r[j], v = v, r[j]
            row += 1
    return RskPair(Tableau(tuple(map(tuple, p_rows))), Tableau(tuple(map(tuple, q_rows))))


def rsk_shape(x) -> Shape:
    rows: list[list] = []
    for v in x:
        for r in rows:
            j = bisect_left(r, v)
            if j == len(r):
                r.append(v)
                break
            r[j], v = v, r[j]
        else:
            rows.append([v])
    return tuple(len(r) for r in rows)


def rsk_inverse(p, q=None) -> Word:
    """The word whose RSK pair is ``(p, q)``; both must be standard of one shape.

    Accepts an :class:`RskPair` or the two tableaux separately.
    """
    if q is None:
        p, q = p
    p, q = check_standard(p), check_standard(q)
    if p.shape != q.shape:
        raise InvalidCodeError(f"shape mismatch: {p.shape} vs {q.shape}")
    p_rows = p.tolist()
    q_rows = q.tolist()
    n = p.size
    word = [0] * n
    for step in range(n, 0, -1):
        row = next(i for i, r in enumerate(q_rows) if r and r[-1] == step)
        q_rows[row].pop()
        v = p_rows[row].pop()
        for upper in range(row - 1, -1, -1):
            r = p_rows[upper]
            j = bisect_left(r, v) - 1
            r[j], v = v, r[j]
        word[step - 1] = v
    return tuple(word)


def order_type(x) -> Word:
    """1-based order type of a prefix: ``g_i`` is the rank of ``x_i`` among all values."""
    vals = _check_distinct_values(x)
    order = sorted(range(len(vals)), key=vals.__getitem__)
    g = [0] * len(vals)
    for rank, i in enumerate(order, start=1):
        g[i] = rank
    return tuple(g)


def theta_label(x) -> Tableau:
    """Recording tableau of ``x``; labels the element of the coarse partition containing ``x``."""
    return rsk(x).q


def theta_perp_label(x) -> tuple[Tableau, tuple[float, ...]]:
    """Insertion tableau of the order type of ``x`` and its representative ``(g(i)/n)_i``."""
    g = order_type(x)
    n = len(g)
    return rsk(g).p, tuple(v / n for v in g)


# -- Knuth equivalence -----------------------------------------------------


def knuth_classes(n: int, kind: str = "direct") -> dict[Tableau, list[Word]]:
    """Words of ``S_n`` (1-based) grouped by ``P`` (``direct``) or ``Q`` (``dual``)."""
    if kind not in ("direct", "dual"):
        raise ValueError(f"kind must be 'direct' or 'dual', got {kind!r}")
    if n > MAX_CLASS_SIZE:
        raise ResourceGuardError(f"n = {n} exceeds the enumeration limit {MAX_CLASS_SIZE}")
    classes: dict[Tableau, list[Word]] = defaultdict(list)
    for w in itertools.permutations(range(1, n + 1)):
        pq = rsk(w)
        classes[pq.p if kind == "direct" else pq.q].append(w)
    return dict(classes)


def knuth_moves(word: Sequence[int]) -> set[Word]:
    """Words one elementary Knuth relation away from ``word``.

    ``yxz <-> yzx`` and ``xzy <-> zxy`` for ``x < y < z`` on adjacent letters.
    """
    w = tuple(word)
    out = set()
    for i in range(len(w) - 2):
        a, b, c = w[i : i + 3]
        if b < a < c or c < a < b:
            out.add(w[: i + 1] + (c, b) + w[i + 3 :])
        if a < c < b or b < c < a:
            out.add(w[:i] + (b, a) + w[i + 2 :])
    return out


def knuth_closure(word: Sequence[int]) -> frozenset[Word]:
    seen = {tuple(word)}
    stack = [tuple(word)]
    while stack:
        for nxt in knuth_moves(stack.pop()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return frozenset(seen)


# -- counting and Plancherel measure --------------------------------------


def hook_lengths(shape: Shape) -> list[int]:
    shape = check_diagram(shape)
    cols = [sum(1 for r in shape if r > j) for j in range(shape[0])] if shape else []
    return [(r - j - 1) + (cols[j] - i - 1) + 1 for i, r in enumerate(shape) for j in range(r)]


def tableaux_count(shape: Shape) -> int:
    """Number of standard tableaux of ``shape`` by the hook length formula."""
    shape = check_diagram(shape)
    prod = 1
    for h in hook_lengths(shape):
        prod *= h
    return factorial(sum(shape)) // prod


def plancherel_probability(shape: Shape) -> float:
    f = tableaux_count(shape)
    return f * f / factorial(sum(shape))


def plancherel_sample(n: int, seed=None) -> Shape:
    """Shape of the RSK image of ``n`` iid uniforms."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return rsk_shape(sample_prefix("uniform", n, seed).tolist())


def plancherel_samples(n: int, size: int, seed=None) -> list[Shape]:
    return [rsk_shape(row) for row in sample_batch("uniform", size, n, seed).tolist()]


# -- distinguishability experiment -----------------------------------------

SLOW_CONVERGENCE_NOTE = (
    "convergence is very slow: the conditional spread of x1 given the recording "
    "tableau shrinks only gradually with n, so desk-scale n shows the trend, not the limit"
)


@numba.njit(cache=True)
def _insert(rows, lens, v):
    """Row-insert ``v``; return the row of the newly created cell."""
    row = 0
    while True:
        ln = lens[row]
        j = 0
        while j < ln and rows[row, j] < v:
            j += 1
        if j == ln:
            rows[row, ln] = v
            lens[row] = ln + 1
            return row
        tmp = rows[row, j]
        rows[row, j] = v
        v = tmp
        row += 1


@numba.njit(cache=True)
def _recording_rows(y):
    n = y.size
    rows = np.empty((n, n))
    lens = np.zeros(n, np.int64)
    out = np.empty(n, np.int64)
    for step in range(n):
        out[step] = _insert(rows, lens, y[step])
    return out


@numba.njit(cache=True)
def _matched_prefix(ref_rows, y):
    """For each candidate row of ``y``, count the leading steps whose new cell
    lands in the same row as in the reference."""
    m, big_n = y.shape
    out = np.zeros(m, np.int64)
    rows = np.empty((big_n, big_n))
    lens = np.zeros(big_n, np.int64)
    for c in range(m):
        lens[:] = 0
        matched = 0
        for step in range(big_n):
            if _insert(rows, lens, y[c, step]) != ref_rows[step]:
                break
            matched += 1
        out[c] = matched
    return out


def recording_rows(x) -> np.ndarray:
    """Row (0-based) of the cell created at each insertion step; this sequence
    determines ``Q``."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or np.unique(arr).size != arr.size:
        raise DistinctnessError("RSK input must be a prefix of pairwise distinct values")
    return _recording_rows(np.ascontiguousarray(arr))


def tableau_from_rows(rows) -> Tableau:
    """Recording tableau from its step-by-step row sequence."""
    out: list[list[int]] = []
    for step, r in enumerate(rows, start=1):
        if r == len(out):
            out.append([])
        out[r].append(step)
    return Tableau(tuple(map(tuple, out)))


@dataclass
class ExperimentRow:
    n: int
    trials: int
    accepted: int
    acceptance_rate: float
    iqr_x1: float


@dataclass
class DistinguishabilityReport:
    reference: np.ndarray
    rows: list[ExperimentRow] = field(default_factory=list)
    band: float = 0.5
    note: str = SLOW_CONVERGENCE_NOTE

    def spreads(self) -> list[float]:
        return [r.iqr_x1 for r in self.rows]

    def complete(self) -> list[ExperimentRow]:
        return [r for r in self.rows if not isnan(r.iqr_x1)]


def distinguishability_experiment(
    n_values: Sequence[int],
    trials: int,
    tolerance_band: float = 0.5,
    seed=None,
    batch: int = 200_000,
) -> DistinguishabilityReport:
    """Rejection-sample ``y`` with ``theta_label(y[:n]) == theta_label(x[:n])``.

    One reference ``x`` of length ``max(n_values)`` is drawn, then ``trials``
    uniform candidates.  A candidate accepted at level ``n`` is accepted at
    every smaller level, so one pool serves all ``n``.  The spread of the
    accepted ``y_1`` is the width of the central ``tolerance_band`` quantile
    interval (0.5 gives the interquartile range); it is NaN when nothing was
    accepted.
    """
    if not 0 < tolerance_band < 1:
        raise ValueError("tolerance_band must lie in (0, 1)")
    n_values = sorted({int(n) for n in n_values})
    if not n_values or n_values[0] < 1:
        raise ValueError("n_values must be positive")
    rng = np.random.default_rng(seed)
    big_n = n_values[-1]
    x = sample_prefix("uniform", big_n, rng)
    ref = recording_rows(x)
    first: list[np.ndarray] = []
    matched: list[np.ndarray] = []
    remaining = trials
    while remaining > 0:
        size = min(batch, remaining)
        y = rng.random((size, big_n))
        matched.append(_matched_prefix(ref, y))
        first.append(y[:, 0].copy())
        remaining -= size
    y1 = np.concatenate(first) if first else np.empty(0)
    depth = np.concatenate(matched) if matched else np.empty(0, dtype=np.int64)

    lo, hi = 0.5 - tolerance_band / 2, 0.5 + tolerance_band / 2
    report = DistinguishabilityReport(reference=x, band=tolerance_band)
    for n in n_values:
        acc = y1[depth >= n]
        spread = float(np.quantile(acc, hi) - np.quantile(acc, lo)) if acc.size else float("nan")
        report.rows.append(
            ExperimentRow(n, trials, int(acc.size), acc.size / trials if trials else float("nan"), spread)
        )
    return report

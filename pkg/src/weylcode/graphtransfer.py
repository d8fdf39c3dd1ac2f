"""Graded graphs, their path spaces, and transfers of paths.

A transfer sends a path ``lambda_0, lambda_1, ..., lambda_N`` to a path one
level shorter, built step by step: the new vertex ``mu_n`` may depend on the
old prefix and on ``mu_{n-1}``.  Three instances are provided:

* Hasse diagrams of distributive lattices (Young's lattice, order ideals of a
  finite poset) carry a Markov transfer: ``mu_n`` is the intermediate vertex
  of ``[mu_{n-1}, lambda_{n+1}]`` other than ``lambda_n`` when the 2-interval
  is a diamond, and ``lambda_n`` otherwise.  On Young's lattice this is
  jeu de taquin promotion.
* The factorial tree, whose 2-intervals are chains; its transfer is the
  translation of simplex words.
* Stationary graphs (one vertex per level, labelled multi-edges), where the
  transfer is the left shift of edge labels.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .errors import (
    CannotShrinkError,
    CapabilityError,
    IntervalError,
    InvalidCodeError,
    TransferStateError,
)
from .permtree import check_word, translation, tree_children, tree_parent, TreeVertex
from .tableaux import (
    Shape,
    Tableau,
    add_cell,
    check_standard,
    inner_corners,
    outer_corners,
    partitions,
    remove_cell,
)

Vertex = Hashable


class GradedGraph:
    """Locally finite graded graph with a single root at level 0.

    Subclasses implement :meth:`level`, :meth:`covers` (neighbours one level
    down) and :meth:`covered_by` (neighbours one level up).  ``transfer_kind``
    names the transfer the graph supports: ``"markov"``, ``"translation"``,
    ``"shift"`` or ``None``.
    """

    root: Vertex
    transfer_kind: str | None = None

    def level(self, v: Vertex) -> int:
        raise NotImplementedError

    def covers(self, v: Vertex) -> list[Vertex]:
        raise NotImplementedError

    def covered_by(self, v: Vertex) -> list[Vertex]:
        raise NotImplementedError

    def vertices_at(self, level: int) -> list[Vertex]:
        layer = [self.root]
        for _ in range(level):
            nxt: dict = {}
            for v in layer:
                for w in self.covered_by(v):
                    nxt.setdefault(w, None)
            layer = list(nxt)
        return layer

    def paths(self, length: int) -> Iterable["DiagramPath"]:
        """Every path from the root with ``length`` edges."""

        def walk(chain):
            if len(chain) == length + 1:
                yield DiagramPath(tuple(chain))
                return
            for w in self.covered_by(chain[-1]):
                chain.append(w)
                yield from walk(chain)
                chain.pop()

        yield from walk([self.root])


@dataclass(frozen=True)
class DiagramPath:
    """Vertex chain from the root; ``labels`` names the edges in a multigraph."""

    vertices: tuple
    labels: tuple | None = None

    def __len__(self):
        return len(self.vertices) - 1

    def validate(self, g: GradedGraph) -> "DiagramPath":
        if not self.vertices or self.vertices[0] != g.root:
            raise InvalidCodeError("path must start at the root")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if b not in g.covered_by(a):
                raise InvalidCodeError(f"{b!r} does not cover {a!r}")
        if self.labels is not None and len(self.labels) != len(self):
            raise InvalidCodeError("one label per edge is required")
        return self


@dataclass(frozen=True)
class TwoInterval:
    bottom: Vertex
    top: Vertex
    intermediates: tuple


def two_interval(g: GradedGraph, a: Vertex, c: Vertex) -> TwoInterval:
    """All ``b`` with ``a`` covered by ``b`` covered by ``c``."""
    if g.level(c) != g.level(a) + 2:
        raise IntervalError(f"level gap between {a!r} and {c!r} is not 2")
    below_c = set(g.covers(c))
    mids = tuple(b for b in g.covered_by(a) if b in below_c)
    if not mids:
        raise IntervalError(f"{a!r} is not below {c!r}")
    return TwoInterval(a, c, mids)


def markov_transfer_step(g: GradedGraph, prev_new: Vertex, old_mid: Vertex, old_top: Vertex) -> Vertex:
    """Next vertex of the transferred path: the other intermediate of a diamond,
    or ``old_mid`` itself when the 2-interval is a chain."""
    try:
        mids = two_interval(g, prev_new, old_top).intermediates
    except IntervalError as exc:
        raise TransferStateError(str(exc)) from exc
    if old_mid not in mids:
        raise TransferStateError(f"{old_mid!r} is not between {prev_new!r} and {old_top!r}")
    if len(mids) > 2:
        raise TransferStateError(f"2-interval with {len(mids)} intermediates; graph is not distributive")
    others = [b for b in mids if b != old_mid]
    return others[0] if others else old_mid


def transfer_path(g: GradedGraph, p: DiagramPath) -> DiagramPath:
    """Transfer of a path; the result has one edge fewer."""
    if len(p) < 2:
        raise CannotShrinkError("transfer needs a path with at least 2 edges")
    lam = p.vertices
    if g.transfer_kind == "markov":
        mu = [g.root]
        for n in range(1, len(lam) - 1):
            mu.append(markov_transfer_step(g, mu[-1], lam[n], lam[n + 1]))
        return DiagramPath(tuple(mu))
    if g.transfer_kind == "translation":
        return DiagramPath((g.root,) + tuple(translation(w) for w in lam[2:]))
    if g.transfer_kind == "shift":
        if p.labels is None:
            raise InvalidCodeError("stationary paths need edge labels")
        return DiagramPath(lam[:-1], p.labels[1:])
    raise CapabilityError(f"{type(g).__name__} has no distinguished transfer")


# -- Young's lattice -------------------------------------------------------


class YoungGraph(GradedGraph):
    """Partitions ordered by inclusion of diagrams; vertices are row-length tuples."""

    root: Shape = ()
    transfer_kind = "markov"

    def level(self, v):
        return sum(v)

    def covers(self, v):
        return [remove_cell(v, r) for r in outer_corners(v)]

    def covered_by(self, v):
        return [add_cell(v, r) for r in inner_corners(v)]

    def vertices_at(self, level):
        return list(partitions(level))


def tableau_to_path(t) -> DiagramPath:
    """Young-graph path whose ``i``-th step adds the cell holding ``i``."""
    t = check_standard(t)
    cells = {}
    for r, row in enumerate(t.rows):
        for v in row:
            cells[v] = r
    shape: Shape = ()
    chain = [shape]
    for v in range(1, t.size + 1):
        shape = add_cell(shape, cells[v])
        chain.append(shape)
    return DiagramPath(tuple(chain))


def paths_as_tableau(p: DiagramPath) -> Tableau:
    """Standard tableau of a Young-graph path (inverse of :func:`tableau_to_path`)."""
    try:
        p.validate(YoungGraph())
    except (InvalidCodeError, TypeError) as exc:
        raise InvalidCodeError(f"not a Young-graph path: {exc}") from exc
    rows: list[list[int]] = []
    for step, (a, b) in enumerate(zip(p.vertices, p.vertices[1:]), start=1):
        r = next(i for i in range(len(b)) if i >= len(a) or b[i] != a[i])
        if r == len(rows):
            rows.append([])
        rows[r].append(step)
    if not rows:
        raise InvalidCodeError("empty path has no tableau")
    return Tableau(tuple(map(tuple, rows)))


def jdt_promotion(t) -> Tableau:
    """Delete 1, slide the hole out by the smaller of its right/lower neighbours,
    drop the vacated corner, and subtract 1 from every entry."""
    t = check_standard(t)
    if t.size < 2:
        raise CannotShrinkError("cannot promote a one-cell tableau")
    rows = t.tolist()
    i, j = 0, 0
    while True:
        right = rows[i][j + 1] if j + 1 < len(rows[i]) else None
        below = rows[i + 1][j] if i + 1 < len(rows) and j < len(rows[i + 1]) else None
        if right is None and below is None:
            break
        if below is None or (right is not None and right < below):
            rows[i][j] = right
            j += 1
        else:
            rows[i][j] = below
            i += 1
    rows[i].pop()
    return Tableau(tuple(tuple(v - 1 for v in r) for r in rows if r))


# -- factorial tree --------------------------------------------------------


class FactorialTree(GradedGraph):
    """Simplex words; level ``n`` holds the ``n!`` words of length ``n``."""

    root = ()
    transfer_kind = "translation"

    def level(self, v):
        return len(v)

    def covers(self, v):
        if len(v) == 0:
            return []
        if len(v) == 1:
            return [()]
        return [tree_parent(TreeVertex(v)).word]

    def covered_by(self, v):
        if len(v) == 0:
            return [(0,)]
        return [c.word for c in tree_children(TreeVertex(check_word(v)))]


def tree_path_vertices(words: Sequence) -> DiagramPath:
    """Factorial-tree path through the given words, prefixed by the root."""
    return DiagramPath(((),) + tuple(tuple(w) for w in words))


# -- order ideals of a finite poset ----------------------------------------


@dataclass
class IdealLattice(GradedGraph):
    """Hasse diagram of the order ideals of a finite poset.

    ``relations`` lists pairs ``(a, b)`` meaning ``a < b``; the transitive
    closure is taken.  Vertices are frozensets, levels are ideal sizes.
    """

    elements: Sequence[Hashable]
    relations: Iterable[tuple[Hashable, Hashable]] = ()
    root: frozenset = field(default=frozenset(), init=False)
    transfer_kind = "markov"

    def __post_init__(self):
        self.elements = tuple(self.elements)
        below = {e: set() for e in self.elements}
        for a, b in self.relations:
            below[b].add(a)
        changed = True
        while changed:
            changed = False
            for e in self.elements:
                extra = set().union(*(below[x] for x in below[e])) - below[e]
                if extra:
                    below[e] |= extra
                    changed = True
        if any(e in below[e] for e in self.elements):
            raise InvalidCodeError("relations contain a cycle")
        self._below = {e: frozenset(s) for e, s in below.items()}
        self._above = {e: frozenset(x for x in self.elements if e in below[x]) for e in self.elements}

    def level(self, v):
        return len(v)

    def covered_by(self, v):
        return [v | {e} for e in self.elements if e not in v and self._below[e] <= v]

    def covers(self, v):
        return [v - {e} for e in v if not (self._above[e] & v)]


def box_poset(rows: int, cols: int) -> IdealLattice:
    """Cells of a ``rows x cols`` rectangle under the product order; its ideals
    are the Young diagrams fitting in the box."""
    cells = [(i, j) for i in range(rows) for j in range(cols)]
    rel = [((i, j), (i + 1, j)) for i, j in cells if i + 1 < rows]
    rel += [((i, j), (i, j + 1)) for i, j in cells if j + 1 < cols]
    return IdealLattice(cells, rel)


def ideal_to_shape(ideal) -> Shape:
    counts: dict[int, int] = {}
    for i, _ in ideal:
        counts[i] = counts.get(i, 0) + 1
    return tuple(counts[i] for i in sorted(counts))


def shape_to_ideal(shape: Shape) -> frozenset:
    return frozenset((i, j) for i, r in enumerate(shape) for j in range(r))


# -- stationary graphs -----------------------------------------------------


@dataclass
class StationaryGraph(GradedGraph):
    """One vertex per level joined by ``multiplicity`` labelled parallel edges."""

    multiplicity: int = 2
    root: int = field(default=0, init=False)
    transfer_kind = "shift"

    def level(self, v):
        return v

    def covers(self, v):
        return [v - 1] if v > 0 else []

    def covered_by(self, v):
        return [v + 1]

    def labelled_path(self, labels: Sequence[int]) -> DiagramPath:
        if any(not 0 <= a < self.multiplicity for a in labels):
            raise InvalidCodeError(f"edge labels must lie in 0..{self.multiplicity - 1}")
        return DiagramPath(tuple(range(len(labels) + 1)), tuple(labels))

    def paths(self, length):
        for labels in itertools.product(range(self.multiplicity), repeat=length):
            yield self.labelled_path(labels)

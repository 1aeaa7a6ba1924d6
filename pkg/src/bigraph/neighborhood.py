"""Neighborhood equivalence of vertices and the class-size multiset of a graph.

Two vertices are equivalent when they lie on the same side and have the same
neighbor set.  Isolated vertices therefore fall into one class per side,
never across sides.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import factorial, prod
from typing import NamedTuple

from .core import BipartiteGraph

ROW = "row"
COL = "col"


class Vertex(NamedTuple):
    side: str
    index: int


@dataclass(frozen=True)
class VertexClass:
    side: str
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class NeighborhoodClassification:
    classes: tuple[VertexClass, ...]
    deltas: tuple[int, ...]
    deltas_rows: tuple[int, ...]
    deltas_cols: tuple[int, ...]
    delta_factorial_product: int

    @property
    def s(self) -> int:
        return len(self.classes)


def _check(g: BipartiteGraph, v: Vertex) -> None:
    size = {ROW: g.m, COL: g.n}.get(v.side)
    if size is None:
        raise ValueError(f"unknown side {v.side!r}")
    if not 0 <= v.index < size:
        raise ValueError(f"{v.side} vertex {v.index} out of range [0, {size})")


def neighbors(g: BipartiteGraph, v: Vertex) -> frozenset[Vertex]:
    _check(g, v)
    if v.side == ROW:
        return frozenset(Vertex(COL, c) for r, c in g.edges if r == v.index)
    return frozenset(Vertex(ROW, r) for r, c in g.edges if c == v.index)


def degree(g: BipartiteGraph, v: Vertex) -> int:
    return len(neighbors(g, v))


def vertices(g: BipartiteGraph) -> list[Vertex]:
    return [Vertex(ROW, i) for i in range(g.m)] + [Vertex(COL, j) for j in range(g.n)]


def classify(g: BipartiteGraph) -> NeighborhoodClassification:
    adjacency: dict[Vertex, set[Vertex]] = {v: set() for v in vertices(g)}
    for r, c in g.edges:
        adjacency[Vertex(ROW, r)].add(Vertex(COL, c))
        adjacency[Vertex(COL, c)].add(Vertex(ROW, r))

    buckets: dict[tuple[str, frozenset], list[int]] = defaultdict(list)
    for v, nbrs in adjacency.items():
        buckets[v.side, frozenset(nbrs)].append(v.index)

    # order: row classes before column classes, then by smallest member
    classes = sorted(
        (VertexClass(side, tuple(members)) for (side, _), members in buckets.items()),
        key=lambda cl: (cl.side != ROW, cl.members),
    )
    rows = tuple(sorted(len(cl) for cl in classes if cl.side == ROW))
    cols = tuple(sorted(len(cl) for cl in classes if cl.side == COL))
    deltas = tuple(sorted(rows + cols))
    return NeighborhoodClassification(
        classes=tuple(classes),
        deltas=deltas,
        deltas_rows=rows,
        deltas_cols=cols,
        delta_factorial_product=prod(factorial(d) for d in deltas),
    )


def degree_sum_check(g: BipartiteGraph) -> tuple[int, int, int]:
    """Degree sums over the row side, the column side and all vertices."""
    row_sum = sum(degree(g, Vertex(ROW, i)) for i in range(g.m))
    col_sum = sum(degree(g, Vertex(COL, j)) for j in range(g.n))
    return row_sum, col_sum, row_sum + col_sum


def degree_sequences(g: BipartiteGraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Sorted row-side and column-side degree sequences."""
    row_deg = [0] * g.m
    col_deg = [0] * g.n
    for r, c in g.edges:
        row_deg[r] += 1
        col_deg[c] += 1
    return tuple(sorted(row_deg)), tuple(sorted(col_deg))

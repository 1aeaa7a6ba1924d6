"""Binary matrices, permutations and the matrix <-> bipartite graph correspondence.

Indices are 0-based throughout: row-vertex ``i`` of a graph is row ``i`` of
its biadjacency matrix, column-vertex ``j`` is column ``j``.

A matrix stores one integer word per row with bit ``j`` holding entry
``a[i][j]``.  The textual form lists rows as ``0``/``1`` characters joined by
``|`` with column 0 leftmost, e.g. ``"01|10"``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator

WORD_BITS = 64


@dataclass(frozen=True)
class BinaryMatrix:
    m: int
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"matrix dimensions must be positive, got {self.m}x{self.n}")
        if self.n > WORD_BITS:
            raise ValueError(f"at most {WORD_BITS} columns supported, got {self.n}")
        if len(self.rows) != self.m:
            raise ValueError(f"expected {self.m} rows, got {len(self.rows)}")
        limit = 1 << self.n
        for word in self.rows:
            if not 0 <= word < limit:
                raise ValueError(f"row word {word:#x} has bits beyond column {self.n - 1}")

    @classmethod
    def zeros(cls, m: int, n: int) -> BinaryMatrix:
        return cls(m, n, (0,) * m)

    @classmethod
    def from_string(cls, text: str) -> BinaryMatrix:
        """Parse the ``"01|10"`` form."""
        parts = text.strip().split("|")
        n = len(parts[0])
        if n == 0 or any(len(p) != n for p in parts):
            raise ValueError(f"ragged or empty matrix string: {text!r}")
        rows = []
        for p in parts:
            if set(p) - {"0", "1"}:
                raise ValueError(f"matrix string may only contain 0, 1 and '|': {text!r}")
            rows.append(sum(1 << j for j, ch in enumerate(p) if ch == "1"))
        return cls(len(parts), n, tuple(rows))

    def __str__(self) -> str:
        return "|".join(
            "".join("1" if word >> j & 1 else "0" for j in range(self.n)) for word in self.rows
        )

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def ones(self) -> Iterator[tuple[int, int]]:
        for i, word in enumerate(self.rows):
            for j in range(self.n):
                if word >> j & 1:
                    yield i, j

    def columns(self) -> tuple[int, ...]:
        """Column words, bit ``i`` of column ``j`` holding ``a[i][j]``."""
        return tuple(
            sum((word >> j & 1) << i for i, word in enumerate(self.rows)) for j in range(self.n)
        )

    def transpose(self) -> BinaryMatrix:
        return BinaryMatrix(self.n, self.m, self.columns())

    def complement(self) -> BinaryMatrix:
        full = (1 << self.n) - 1
        return BinaryMatrix(self.m, self.n, tuple(full ^ w for w in self.rows))


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``range(size)`` given by its image list."""

    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"not a permutation: {self.image}")

    @property
    def size(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, size: int) -> Permutation:
        return cls(tuple(range(size)))

    @classmethod
    def all(cls, size: int) -> Iterator[Permutation]:
        for p in permutations(range(size)):
            yield cls(p)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __matmul__(self, other: Permutation) -> Permutation:
        """``(self @ other)(x) == self(other(x))``."""
        if self.size != other.size:
            raise ValueError("cannot compose permutations of different sizes")
        return Permutation(tuple(self.image[x] for x in other.image))

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for x, y in enumerate(self.image):
            inv[y] = x
        return Permutation(tuple(inv))


@dataclass(frozen=True)
class BipartiteGraph:
    """Simple bipartite graph with row side ``range(m)`` and column side ``range(n)``."""

    m: int
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("both sides of a bipartite graph must be non-empty")
        object.__setattr__(self, "edges", frozenset(self.edges))
        for r, c in self.edges:
            if not (0 <= r < self.m and 0 <= c < self.n):
                raise ValueError(f"edge {(r, c)} outside {self.m}x{self.n}")

    @property
    def k(self) -> int:
        return len(self.edges)


def build_matrix(m: int, n: int, ones: Iterable[tuple[int, int]]) -> BinaryMatrix:
    if n > WORD_BITS:
        raise ValueError(f"at most {WORD_BITS} columns supported, got {n}")
    rows = [0] * m
    seen = set()
    for i, j in ones:
        if not (0 <= i < m and 0 <= j < n):
            raise ValueError(f"position {(i, j)} outside {m}x{n}")
        if (i, j) in seen:
            raise ValueError(f"duplicate position {(i, j)}")
        seen.add((i, j))
        rows[i] |= 1 << j
    return BinaryMatrix(m, n, tuple(rows))


def count_ones(a: BinaryMatrix) -> int:
    return sum(w.bit_count() for w in a.rows)


def graph_of_matrix(a: BinaryMatrix) -> BipartiteGraph:
    return BipartiteGraph(a.m, a.n, frozenset(a.ones()))


def matrix_of_graph(g: BipartiteGraph, rho: Permutation, sigma: Permutation) -> BinaryMatrix:
    """Number row-vertex ``r`` as ``rho(r)`` and column-vertex ``c`` as ``sigma(c)``."""
    if rho.size != g.m or sigma.size != g.n:
        raise ValueError(
            f"numbering sizes ({rho.size}, {sigma.size}) do not match graph ({g.m}, {g.n})"
        )
    return build_matrix(g.m, g.n, ((rho(r), sigma(c)) for r, c in g.edges))


def apply_permutations(a: BinaryMatrix, rho: Permutation, sigma: Permutation) -> BinaryMatrix:
    """Return ``b`` with ``b[rho(i)][sigma(j)] = a[i][j]``."""
    if rho.size != a.m or sigma.size != a.n:
        raise ValueError(
            f"permutation sizes ({rho.size}, {sigma.size}) do not match matrix ({a.m}, {a.n})"
        )
    rows = [0] * a.m
    for i, word in enumerate(a.rows):
        out = 0
        for j in range(a.n):
            if word >> j & 1:
                out |= 1 << sigma.image[j]
        rows[rho.image[i]] = out
    return BinaryMatrix(a.m, a.n, tuple(rows))


def row_string_code(word: int, n: int) -> int:
    """Row as an ``n``-bit integer with column 0 most significant."""
    code = 0
    for j in range(n):
        code = code << 1 | (word >> j & 1)
    return code


def lex_key(a: BinaryMatrix) -> int:
    """Integer whose order equals the order of row-major ``0``/``1`` strings."""
    key = 0
    for word in a.rows:
        key = key << a.n | row_string_code(word, a.n)
    return key


def lex_compare(a: BinaryMatrix, b: BinaryMatrix) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if (a.m, a.n) != (b.m, b.n):
        raise ValueError(f"cannot compare {a.m}x{a.n} with {b.m}x{b.n}")
    ka, kb = lex_key(a), lex_key(b)
    return (ka > kb) - (ka < kb)

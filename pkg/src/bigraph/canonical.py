"""Canonical forms, stabilizers and orbit sizes under row/column permutation.

The canonical form of a matrix is the member of its orbit whose row-major
``0``/``1`` string is smallest.  For a fixed row order the best column order
is simply the columns sorted ascending as top-to-bottom strings, so the
canonical form is the minimum of that over all row orders.

:func:`canonical_form` finds that minimum by choosing rows one at a time and
keeping only the row prefixes that are minimal so far, which is exact because
the row-major string compares row 0 first.  :func:`canonical_form_by_row_orders`
walks every row order and is kept as the slow reference.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial, prod

from .core import BinaryMatrix, Permutation, apply_permutations, lex_key, row_string_code


@dataclass(frozen=True)
class OrbitData:
    canonical: BinaryMatrix
    stabilizer_order: int
    orbit_size: int


@lru_cache(maxsize=1 << 18)
def _canonical_rows(n: int, rows: tuple[int, ...]) -> tuple[int, ...]:
    # rows must be sorted; each level keeps the states whose prefix is minimal
    states = {(rows, (tuple(range(n)),))}
    out = []
    for _ in range(len(rows)):
        best = None
        survivors = set()
        for remaining, groups in states:
            for i, w in enumerate(remaining):
                if i and remaining[i - 1] == w:
                    continue
                code = 0
                split = []
                for g in groups:
                    zeros = tuple(c for c in g if not w >> c & 1)
                    ones = tuple(c for c in g if w >> c & 1)
                    code = code << len(g) | ((1 << len(ones)) - 1)
                    if zeros:
                        split.append(zeros)
                    if ones:
                        split.append(ones)
                if best is None or code < best:
                    best = code
                    survivors = set()
                if code == best:
                    survivors.add((remaining[:i] + remaining[i + 1:], tuple(split)))
        states = survivors
        out.append(row_string_code(best, n))
    return tuple(out)


def canonical_rows(n: int, rows) -> tuple[int, ...]:
    """Canonical row words of the matrix with the given rows (any order)."""
    return _canonical_rows(n, tuple(sorted(rows)))


def canonical_form(a: BinaryMatrix) -> BinaryMatrix:
    return BinaryMatrix(a.m, a.n, canonical_rows(a.n, a.rows))


def canonical_form_by_row_orders(a: BinaryMatrix) -> BinaryMatrix:
    """Reference: every row order followed by an ascending column sort."""
    m, n = a.m, a.n
    best = None
    for order in permutations(a.rows):
        # column code with row 0 as the most significant bit
        cols = sorted(
            sum((word >> j & 1) << (m - 1 - t) for t, word in enumerate(order)) for j in range(n)
        )
        rows = tuple(
            sum((c >> (m - 1 - t) & 1) << j for j, c in enumerate(cols)) for t in range(m)
        )
        cand = BinaryMatrix(m, n, rows)
        if best is None or lex_key(cand) < lex_key(best):
            best = cand
    return best


def _multiplicity_factorials(values) -> int:
    return prod(factorial(c) for c in Counter(values).values())


def stabilizer_order(a: BinaryMatrix) -> int:
    """Number of pairs (rho, sigma) with ``apply_permutations(a, rho, sigma) == a``.

    Row orders that only shuffle equal rows give the same arrangement, so each
    distinct arrangement is weighted by the product of row-multiplicity
    factorials.  An arrangement is completed by a column permutation iff its
    column multiset matches that of ``a``, in as many ways as equal columns
    can be shuffled.
    """
    target = Counter(a.columns())
    completions = _multiplicity_factorials(a.columns())
    hits = 0
    for arrangement in set(permutations(a.rows)):
        if Counter(BinaryMatrix(a.m, a.n, arrangement).columns()) == target:
            hits += 1
    return hits * completions * _multiplicity_factorials(a.rows)


def stabilizer_order_naive(a: BinaryMatrix) -> int:
    """Reference count over all ``m! * n!`` permutation pairs."""
    return sum(
        1
        for rho in Permutation.all(a.m)
        for sigma in Permutation.all(a.n)
        if apply_permutations(a, rho, sigma) == a
    )


def orbit_size(a: BinaryMatrix) -> int:
    return factorial(a.m) * factorial(a.n) // stabilizer_order(a)


def enumerate_orbit(a: BinaryMatrix) -> set[BinaryMatrix]:
    return {
        apply_permutations(a, rho, sigma)
        for rho in Permutation.all(a.m)
        for sigma in Permutation.all(a.n)
    }


def orbit_data(a: BinaryMatrix) -> OrbitData:
    stab = stabilizer_order(a)
    return OrbitData(
        canonical=canonical_form(a),
        stabilizer_order=stab,
        orbit_size=factorial(a.m) * factorial(a.n) // stab,
    )

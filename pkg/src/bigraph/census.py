"""Census of bipartite graphs with fixed part sizes and edge count.

Every placement of ``k`` ones in an ``m x n`` matrix is visited once and
bucketed by canonical form; each bucket is one isomorphism class.  Visiting
order is numeric order of the ``m*n``-bit cell mask (cell ``i*n + j`` is bit
``i*n + j``), which lets the space be cut into contiguous rank ranges and
counted in separate processes.

All sums are exact :class:`fractions.Fraction` values.
"""
from __future__ import annotations

import csv
import io
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .canonical import canonical_rows, stabilizer_order
from .core import WORD_BITS, BinaryMatrix, graph_of_matrix
from .neighborhood import classify, degree_sequences

DEFAULT_BUDGET = 10**8


class CensusError(ValueError):
    """Parameters outside the supported range."""


class BudgetExceeded(CensusError):
    pass


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug, not a finding."""


@dataclass(frozen=True)
class IsoClassRecord:
    canonical: str
    orbit_size: int
    stabilizer_order: int
    deltas_rows: tuple[int, ...]
    deltas_cols: tuple[int, ...]
    delta_factorial_product: int
    row_degrees: tuple[int, ...]
    col_degrees: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "canonical": self.canonical,
            "orbit_size": str(self.orbit_size),
            "stabilizer_order": str(self.stabilizer_order),
            "deltas_rows": list(self.deltas_rows),
            "deltas_cols": list(self.deltas_cols),
            "delta_fact_product": str(self.delta_factorial_product),
            "row_degrees": list(self.row_degrees),
            "col_degrees": list(self.col_degrees),
        }

    @classmethod
    def from_dict(cls, d: dict) -> IsoClassRecord:
        return cls(
            canonical=d["canonical"],
            orbit_size=int(d["orbit_size"]),
            stabilizer_order=int(d["stabilizer_order"]),
            deltas_rows=tuple(d["deltas_rows"]),
            deltas_cols=tuple(d["deltas_cols"]),
            delta_factorial_product=int(d["delta_fact_product"]),
            row_degrees=tuple(d["row_degrees"]),
            col_degrees=tuple(d["col_degrees"]),
        )


def _fraction_dict(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _fraction_from(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


@dataclass(frozen=True)
class Census:
    m: int
    n: int
    k: int
    classes: tuple[IsoClassRecord, ...]
    binomial: int
    paper_lhs: Fraction
    paper_rhs: Fraction
    residual: Fraction
    exact_partition_ok: bool
    eq2_exact_ok: bool
    mismatch_classes: tuple[str, ...] = field(default=())

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "num_classes": self.num_classes,
            "binomial": str(self.binomial),
            "paper_lhs": _fraction_dict(self.paper_lhs),
            "paper_rhs": _fraction_dict(self.paper_rhs),
            "residual": _fraction_dict(self.residual),
            "exact_partition_ok": self.exact_partition_ok,
            "eq2_exact_ok": self.eq2_exact_ok,
            "mismatch_classes": list(self.mismatch_classes),
            "classes": [c.to_dict() for c in self.classes],
        }

    @classmethod
    def from_dict(cls, d: dict) -> Census:
        census = cls(
            m=d["m"],
            n=d["n"],
            k=d["k"],
            classes=tuple(IsoClassRecord.from_dict(c) for c in d["classes"]),
            binomial=int(d["binomial"]),
            paper_lhs=_fraction_from(d["paper_lhs"]),
            paper_rhs=_fraction_from(d["paper_rhs"]),
            residual=_fraction_from(d["residual"]),
            exact_partition_ok=d["exact_partition_ok"],
            eq2_exact_ok=d["eq2_exact_ok"],
            mismatch_classes=tuple(d["mismatch_classes"]),
        )
        if census.num_classes != d["num_classes"]:
            raise ValueError("num_classes does not match the class list")
        return census

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Census:
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, quoting=csv.QUOTE_ALL, lineterminator="\n")
        fields = ["canonical", "orbit_size", "stabilizer_order", "deltas_rows", "deltas_cols",
                  "delta_fact_product", "row_degrees", "col_degrees"]
        writer.writerow(fields)
        for rec in self.classes:
            d = rec.to_dict()
            writer.writerow(
                " ".join(map(str, d[f])) if isinstance(d[f], list) else d[f] for f in fields
            )
        return buf.getvalue()


@dataclass(frozen=True)
class IdentityReport:
    m: int
    n: int
    k: int
    num_classes: int
    paper_lhs: Fraction
    paper_rhs: Fraction
    residual: Fraction
    exact_partition_ok: bool
    eq2_exact_ok: bool
    mismatch_classes: tuple[str, ...]

    @property
    def exact_ok(self) -> bool:
        return self.exact_partition_ok and self.eq2_exact_ok

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "num_classes": self.num_classes,
            "paper_lhs": _fraction_dict(self.paper_lhs),
            "paper_rhs": _fraction_dict(self.paper_rhs),
            "residual": _fraction_dict(self.residual),
            "exact_partition_ok": self.exact_partition_ok,
            "eq2_exact_ok": self.eq2_exact_ok,
            "mismatch_classes": list(self.mismatch_classes),
        }


def _check_params(m: int, n: int, k: int) -> None:
    if m < 1 or n < 1:
        raise CensusError(f"m and n must be positive, got m={m}, n={n}")
    if n > WORD_BITS:
        raise CensusError(f"n={n} exceeds the {WORD_BITS}-bit row word")
    if not 0 <= k <= m * n:
        raise CensusError(f"k={k} outside [0, {m * n}]")


def binomial_count(m: int, n: int, k: int) -> int:
    """Number of ``m x n`` binary matrices with exactly ``k`` ones."""
    _check_params(m, n, k)
    return comb(m * n, k)


def paper_rhs(m: int, n: int, k: int) -> Fraction:
    _check_params(m, n, k)
    return Fraction(comb(m * n, k), factorial(m) * factorial(n))


def _reciprocal_sum(values) -> Fraction:
    return sum((Fraction(1, v) for v in values), Fraction(0))


def paper_lhs(census: Census) -> Fraction:
    return _reciprocal_sum(c.delta_factorial_product for c in census.classes)


def _unrank_mask(k: int, rank: int) -> int:
    """The ``rank``-th ``k``-bit mask in increasing numeric order."""
    mask = 0
    for i in range(k, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        mask |= 1 << c
        rank -= comb(c, i)
    return mask


def count_chunk(m: int, n: int, k: int, start: int, count: int) -> Counter:
    """Canonical-form bucket counts for masks of rank ``start`` .. ``start+count-1``."""
    full = (1 << n) - 1
    shifts = [i * n for i in range(m)]
    memo: dict[tuple[int, ...], tuple[int, ...]] = {}
    buckets: Counter = Counter()
    x = _unrank_mask(k, start)
    for step in range(count):
        if step:
            # next mask with the same number of set bits
            c = x & -x
            r = x + c
            x = (((r ^ x) >> 2) // c) | r
        rows = tuple(sorted([x >> s & full for s in shifts]))
        canon = memo.get(rows)
        if canon is None:
            canon = memo[rows] = canonical_rows(n, rows)
        buckets[canon] += 1
    return buckets


def _count_chunk_args(args) -> Counter:
    return count_chunk(*args)


def resolve_threads(threads: int) -> int:
    if threads <= 0:
        return os.cpu_count() or 1
    return threads


def bucket_matrices(m: int, n: int, k: int, threads: int = 1) -> Counter:
    """Map canonical row tuple -> number of matrices in that bucket."""
    total = comb(m * n, k)
    workers = resolve_threads(threads)
    if workers == 1:
        return count_chunk(m, n, k, 0, total)
    pieces = min(total, workers * 4)
    bounds = [total * i // pieces for i in range(pieces + 1)]
    jobs = [(m, n, k, lo, hi - lo) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
    merged: Counter = Counter()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_count_chunk_args, jobs):
            merged.update(part)
    return merged


def class_record(a: BinaryMatrix) -> IsoClassRecord:
    g = graph_of_matrix(a)
    cls = classify(g)
    row_deg, col_deg = degree_sequences(g)
    stab = stabilizer_order(a)
    return IsoClassRecord(
        canonical=str(a),
        orbit_size=factorial(a.m) * factorial(a.n) // stab,
        stabilizer_order=stab,
        deltas_rows=cls.deltas_rows,
        deltas_cols=cls.deltas_cols,
        delta_factorial_product=cls.delta_factorial_product,
        row_degrees=row_deg,
        col_degrees=col_deg,
    )


def enumerate_census(m: int, n: int, k: int, *, budget: int = DEFAULT_BUDGET,
                     threads: int = 1) -> Census:
    _check_params(m, n, k)
    binomial = comb(m * n, k)
    if binomial > budget:
        raise BudgetExceeded(
            f"C({m * n}, {k}) = {binomial} matrices exceeds the budget of {budget}"
        )
    buckets = bucket_matrices(m, n, k, threads)
    records = []
    for rows, seen in buckets.items():
        rec = class_record(BinaryMatrix(m, n, rows))
        if seen != rec.orbit_size:
            raise ConsistencyError(
                f"class {rec.canonical}: {seen} matrices bucketed but orbit size {rec.orbit_size}"
            )
        records.append(rec)
    records.sort(key=lambda r: r.canonical)

    lhs = _reciprocal_sum(r.delta_factorial_product for r in records)
    rhs = paper_rhs(m, n, k)
    group = factorial(m) * factorial(n)
    return Census(
        m=m,
        n=n,
        k=k,
        classes=tuple(records),
        binomial=binomial,
        paper_lhs=lhs,
        paper_rhs=rhs,
        residual=lhs - rhs,
        exact_partition_ok=sum(r.orbit_size for r in records) == binomial,
        eq2_exact_ok=group * _reciprocal_sum(r.stabilizer_order for r in records) == binomial,
        mismatch_classes=tuple(
            r.canonical for r in records if r.stabilizer_order != r.delta_factorial_product
        ),
    )


def report_of(census: Census) -> IdentityReport:
    return IdentityReport(
        m=census.m,
        n=census.n,
        k=census.k,
        num_classes=census.num_classes,
        paper_lhs=census.paper_lhs,
        paper_rhs=census.paper_rhs,
        residual=census.residual,
        exact_partition_ok=census.exact_partition_ok,
        eq2_exact_ok=census.eq2_exact_ok,
        mismatch_classes=census.mismatch_classes,
    )


def verify_identity(m: int, n: int, k: int, *, budget: int = DEFAULT_BUDGET,
                    threads: int = 1) -> IdentityReport:
    return report_of(enumerate_census(m, n, k, budget=budget, threads=threads))


@dataclass(frozen=True)
class SweepResult:
    reports: tuple[IdentityReport, ...]

    @property
    def exact_failures(self) -> int:
        return sum(not r.exact_ok for r in self.reports)

    @property
    def nonzero_residuals(self) -> int:
        return sum(r.residual != 0 for r in self.reports)


def sweep(m_max: int, n_max: int, *, budget: int = DEFAULT_BUDGET, threads: int = 1) -> SweepResult:
    """Identity reports for every ``1 <= m <= m_max``, ``1 <= n <= n_max``, ``0 <= k <= mn``.

    The budget applies to each ``(m, n, k)`` and is checked for the whole
    range before any enumeration starts.
    """
    if m_max < 1 or n_max < 1:
        raise CensusError("sweep bounds must be positive")
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            worst = comb(m * n, m * n // 2)
            if worst > budget:
                raise BudgetExceeded(
                    f"sweep includes C({m * n}, {m * n // 2}) = {worst} > budget {budget}"
                )
    return SweepResult(tuple(
        verify_identity(m, n, k, budget=budget, threads=threads)
        for m in range(1, m_max + 1)
        for n in range(1, n_max + 1)
        for k in range(m * n + 1)
    ))

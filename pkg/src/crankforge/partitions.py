"""Brute-force partition combinatorics, independent of the series engine.

Everything here enumerates or dynamically counts actual partitions, so
it can serve as the ground-truth side of every cross-check: statistics
(rank, crank) come from literal part lists, and colored-partition counts
come from a knapsack pass over part sizes rather than from any product
expansion.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Literal

from .cyclotomic import LaurentPolyZeta


@dataclass(frozen=True)
class Partition:
    """A partition as a weakly decreasing tuple of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        for p in parts:
            if not isinstance(p, int) or isinstance(p, bool) or p < 1:
                raise ValueError(f"invalid part {p!r}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class CrankData:
    """The ingredients of the crank of one partition."""

    largest: int
    ones: int
    parts_above_ones: int


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in descending lexicographic order.

    The order is deterministic: first [n], last [1]*n.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    out: list[Partition] = []
    prefix: list[int] = []

    def rec(remaining: int, bound: int) -> None:
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        for part in range(min(remaining, bound), 0, -1):
            prefix.append(part)
            rec(remaining - part, part)
            prefix.pop()

    rec(n, n if n else 1)
    return out


def rank(p: Partition) -> int:
    """Largest part minus number of parts; undefined for the empty partition."""
    if not p.parts:
        raise ValueError("rank of the empty partition is undefined")
    return p.parts[0] - len(p.parts)


def crank_data(p: Partition) -> CrankData:
    if not p.parts:
        raise ValueError("crank of the empty partition is undefined")
    ones = sum(1 for x in p.parts if x == 1)
    above = sum(1 for x in p.parts if x > ones)
    return CrankData(largest=p.parts[0], ones=ones, parts_above_ones=above)


def crank(p: Partition) -> int:
    """Largest part if there are no ones, else (parts larger than the
    number of ones) minus (number of ones)."""
    d = crank_data(p)
    if d.ones == 0:
        return d.largest
    return d.parts_above_ones - d.ones


def crank_counts(n: int) -> dict[int, int]:
    """How many partitions of n have each crank value, by enumeration."""
    if n < 1:
        raise ValueError("crank counts need n >= 1")
    return dict(Counter(crank(p) for p in enumerate_partitions(n)))


def crank_counts_poly(n: int) -> LaurentPolyZeta:
    """The enumerated crank counts of n packed as sum_m M(m, n) zeta^m."""
    return LaurentPolyZeta(crank_counts(n))


def count_pkj_sequence(k: int, j: int, n_max: int) -> list[int]:
    """Counts of (k+j)-colored partitions of 0..n_max.

    k colors take parts with unbounded multiplicity, j colors take
    distinct parts.  Computed by a knapsack pass per color over part
    sizes, not by expanding any product; this is the independent oracle
    the series engine is checked against.
    """
    if k < 0 or j < 0 or k + j < 1:
        raise ValueError("need k >= 0, j >= 0, k + j >= 1")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    counts = [0] * (n_max + 1)
    counts[0] = 1
    for size in range(1, n_max + 1):
        for _ in range(k):
            # one unbounded color: ascending sweep = any multiplicity
            for t in range(size, n_max + 1):
                counts[t] += counts[t - size]
        for _ in range(j):
            # one distinct color: descending sweep = multiplicity 0 or 1
            for t in range(n_max, size - 1, -1):
                counts[t] += counts[t - size]
    return counts


def count_pkj(k: int, j: int, n: int) -> int:
    """Number of (k+j)-colored partitions of n; see count_pkj_sequence."""
    return count_pkj_sequence(k, j, n)[n]


Stat = Literal["rank", "crank"]

_STATS: dict[str, Callable[[Partition], int]] = {"rank": rank, "crank": crank}


@dataclass(frozen=True)
class DistributionTable:
    """Partitions of one n bucketed by a statistic's residue class."""

    n: int
    modulus: int
    stat: str
    classes: tuple[tuple[Partition, ...], ...]

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def is_equidistributed(self) -> bool:
        return len(set(self.counts)) == 1


def residue_distribution(n: int, ell: int, stat: Stat) -> DistributionTable:
    """Bucket the partitions of n by (stat mod ell).

    Negative statistic values fold by true mathematical mod, so every
    bucket index lies in 0..ell-1.  Bucket contents keep the
    deterministic enumeration order.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if ell < 2:
        raise ValueError("need modulus >= 2")
    try:
        fn = _STATS[stat]
    except KeyError:
        raise ValueError(f"unknown statistic {stat!r}") from None
    buckets: list[list[Partition]] = [[] for _ in range(ell)]
    for p in enumerate_partitions(n):
        buckets[fn(p) % ell].append(p)
    return DistributionTable(
        n=n, modulus=ell, stat=stat, classes=tuple(tuple(b) for b in buckets)
    )


def distribution_to_csv(table: DistributionTable, include_members: bool = True) -> str:
    """CSV with columns residue, count and optionally the member partitions.

    Members are comma-joined part lists separated by semicolons, e.g.
    "3,2,1;2,2,2".
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if include_members:
        writer.writerow(["residue", "count", "members"])
        for r, cls in enumerate(table.classes):
            writer.writerow([r, len(cls), ";".join(str(p) for p in cls)])
    else:
        writer.writerow(["residue", "count"])
        for r, cls in enumerate(table.classes):
            writer.writerow([r, len(cls)])
    return buf.getvalue()

"""Partitions, Young tableaux and the usual shape statistics.

Partitions are plain tuples of weakly decreasing positive ints.  Tableaux
are tuples of rows (English convention, row 1 on top); cells are addressed
1-based as ``(row, column)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Iterator, Sequence

from .errors import LankeError, SizeLimitError

Partition = tuple[int, ...]

DEFAULT_SYT_BOUND = 14


def partition(parts: Iterable[int]) -> Partition:
    """Validate and normalise ``parts`` into a partition tuple."""
    p = tuple(int(x) for x in parts)
    if any(x < 1 for x in p):
        raise LankeError(f"partition parts must be positive: {p}")
    if any(a < b for a, b in zip(p, p[1:])):
        raise LankeError(f"partition parts must be weakly decreasing: {p}")
    return p


def parse_partition(text: str) -> Partition:
    """``"2,2,1"`` -> ``(2, 2, 1)``; ``"2^2,1"`` exponent shorthand is accepted."""
    parts: list[int] = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        if "^" in tok:
            base, exp = tok.split("^")
            parts.extend([int(base)] * int(exp))
        else:
            parts.append(int(tok))
    return partition(parts)


def format_partition(lam: Sequence[int]) -> str:
    return ",".join(str(x) for x in lam)


def conjugate(lam: Sequence[int]) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= c) for c in range(1, lam[0] + 1))


def partitions_of(m: int) -> list[Partition]:
    """All partitions of ``m`` in reverse lexicographic order, ``(m)`` first."""
    return list(_partitions(m, m))


@lru_cache(maxsize=None)
def _partitions(m: int, largest: int) -> tuple[Partition, ...]:
    if m == 0:
        return ((),)
    out = []
    for first in range(min(m, largest), 0, -1):
        for rest in _partitions(m - first, first):
            out.append((first,) + rest)
    return tuple(out)


def hooks(lam: Sequence[int]) -> list[list[int]]:
    """Hook length of every cell, row by row."""
    conj = conjugate(lam)
    return [[lam[i] - j + conj[j] - i - 1 for j in range(lam[i])] for i in range(len(lam))]


def hook_dim(lam: Sequence[int]) -> int:
    """Number of standard Young tableaux of shape ``lam`` (hook length formula)."""
    m = sum(lam)
    return factorial(m) // prod(h for row in hooks(lam) for h in row)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def removable_corners(lam: Sequence[int]) -> list[int]:
    """0-based row indices whose last cell can be removed."""
    return [i for i in range(len(lam)) if lam[i] and (i == len(lam) - 1 or lam[i] > lam[i + 1])]


def restrict_irreducible(lam: Sequence[int]) -> dict[Partition, int]:
    """Branching rule: restriction of S^lam from S_m to S_{m-1}."""
    if sum(lam) < 2:
        raise LankeError("restriction needs m >= 2")
    out: dict[Partition, int] = {}
    for i in removable_corners(lam):
        mu = list(lam)
        mu[i] -= 1
        key = tuple(x for x in mu if x)
        out[key] = out.get(key, 0) + 1
    return out


def is_staircase(lam: Sequence[int]) -> bool:
    """True when the conjugate is a run ``(n, n-1, ..., n-r)``."""
    conj = conjugate(lam)
    return bool(conj) and all(a - b == 1 for a, b in zip(conj, conj[1:]))


# -- tableaux ----------------------------------------------------------------


@dataclass(frozen=True)
class Tableau:
    """A bijective filling of a Young diagram with ``1..m``."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        partition(len(r) for r in rows)
        entries = sorted(x for r in rows for x in r)
        if entries != list(range(1, len(entries) + 1)):
            raise LankeError(f"filling is not a bijection onto 1..m: {rows}")

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(self.shape)

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(r[c] for r in self.rows if len(r) > c) for c in range(len(self.rows[0]) if self.rows else 0)
        )

    def cell(self, value: int) -> tuple[int, int]:
        """1-based ``(row, column)`` of ``value``."""
        for i, r in enumerate(self.rows):
            if value in r:
                return i + 1, r.index(value) + 1
        raise KeyError(value)

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self.rows[r - 1][c - 1]

    def is_standard(self) -> bool:
        rows_ok = all(a < b for r in self.rows for a, b in zip(r, r[1:]))
        cols_ok = all(a < b for c in self.columns for a, b in zip(c, c[1:]))
        return rows_ok and cols_ok

    def reading_word(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    @classmethod
    def from_columns(cls, shape: Sequence[int], columns: Sequence[Sequence[int]]) -> "Tableau":
        rows = [[columns[c][i] for c in range(shape[i])] for i in range(len(shape))]
        return cls(tuple(tuple(r) for r in rows))

    def __str__(self) -> str:
        return ";".join(",".join(str(x) for x in r) for r in self.rows)


def parse_tableau(text: str) -> Tableau:
    """``"1,3;2"`` -> rows ``(1, 3)`` and ``(2,)``."""
    return Tableau(tuple(tuple(int(x) for x in row.split(",")) for row in text.strip().split(";")))


def _syt(shape: Partition) -> Iterator[list[list[int]]]:
    # Place m, m-1, ... into removable corners; sort afterwards for the order.
    m = sum(shape)
    if m == 0:
        yield [[] for _ in shape]
        return
    for i in removable_corners(shape):
        smaller = list(shape)
        smaller[i] -= 1
        for t in _syt(tuple(smaller)):
            t = [list(r) for r in t]
            t[i].append(m)
            yield t


def enumerate_syt(lam: Sequence[int], bound: int = DEFAULT_SYT_BOUND) -> list[Tableau]:
    """All standard Young tableaux of shape ``lam``, lexicographic in reading word."""
    lam = partition(lam)
    if sum(lam) > bound:
        raise SizeLimitError(f"SYT enumeration limited to m <= {bound}, got m = {sum(lam)}")
    tabs = [Tableau(tuple(tuple(r) for r in t)) for t in _syt(lam)]
    tabs.sort(key=Tableau.reading_word)
    return tabs


def descents(t: Tableau) -> list[int]:
    """Entries ``i`` with ``i + 1`` in a strictly lower row."""
    row = {x: i for i, r in enumerate(t.rows) for x in r}
    return [i for i in range(1, t.size) if row[i + 1] > row[i]]


def maj(t: Tableau) -> int:
    """Major index of a standard tableau."""
    if not t.is_standard():
        raise LankeError(f"major index needs a standard tableau: {t}")
    return sum(descents(t))

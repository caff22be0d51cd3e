"""Column tabloids, Garnir relations and the presentations of S^lambda.

``M^lambda`` is spanned by fillings modulo the column relations (swapping
two entries of a column flips the sign), so a basis is given by the
column-strict fillings.  A filling is stored as a tuple of columns, each a
tuple read top-down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import factorial, prod
from typing import Iterator, Sequence

from .combinatorics import Partition, Tableau, conjugate, hook_dim, is_staircase, partition
from .errors import LankeError, SizeLimitError
from .linalg import SparseRationalMatrix, exact

Columns = tuple  # tuple of column tuples

DEFAULT_GARNIR_BOUND = 8
MODES = ("full", "reduced", "corollary")


def _sort_parity(col: Sequence[int]) -> tuple[tuple[int, ...], int]:
    inv = sum(1 for i in range(len(col)) for j in range(i + 1, len(col)) if col[i] > col[j])
    return tuple(sorted(col)), -1 if inv % 2 else 1


def canonical_tabloid(t: Tableau | Columns) -> tuple[Columns, int]:
    """Sort every column increasing; the sign is the product of the column parities."""
    cols = t.columns if isinstance(t, Tableau) else tuple(tuple(c) for c in t)
    entries = sorted(x for c in cols for x in c)
    if entries != list(range(1, len(entries) + 1)):
        raise LankeError(f"filling is not a bijection onto 1..m: {cols}")
    sign = 1
    out = []
    for c in cols:
        sc, s = _sort_parity(c)
        out.append(sc)
        sign *= s
    return tuple(out), sign


def _column_fillings(remaining: tuple[int, ...], lengths: tuple[int, ...]) -> Iterator[Columns]:
    if not lengths:
        yield ()
        return
    for col in combinations(remaining, lengths[0]):
        rest = tuple(x for x in remaining if x not in col)
        for tail in _column_fillings(rest, lengths[1:]):
            yield (col,) + tail


@dataclass(frozen=True)
class ColumnTabloidSpace:
    shape: Partition
    basis: tuple = field(repr=False)
    index: dict = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return sum(self.shape)

    @property
    def column_lengths(self) -> Partition:
        return conjugate(self.shape)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def locate(self, cols: Columns) -> tuple[int, int]:
        """Basis index and sign of an arbitrary filling (columns need not be sorted)."""
        sign = 1
        out = []
        for c in cols:
            sc, s = _sort_parity(c)
            out.append(sc)
            sign *= s
        return self.index[tuple(out)], sign

    def to_tableau(self, i: int) -> Tableau:
        return Tableau.from_columns(self.shape, self.basis[i])


@lru_cache(maxsize=64)
def tabloid_space(shape: Sequence[int], bound: int = DEFAULT_GARNIR_BOUND) -> ColumnTabloidSpace:
    shape = partition(shape)
    m = sum(shape)
    if m > bound:
        raise SizeLimitError(f"Garnir computations limited to m <= {bound}, got {m}")
    lengths = conjugate(shape)
    basis = tuple(_column_fillings(tuple(range(1, m + 1)), lengths))
    expected = factorial(m) // prod(factorial(x) for x in lengths)
    assert len(basis) == expected
    return ColumnTabloidSpace(shape, basis, {b: i for i, b in enumerate(basis)})


def exchanges(cols: Columns, c: int, k: int) -> Iterator[Columns]:
    """Fillings obtained by swapping k entries of column c with the top k of column c+1.

    ``c`` is 1-based.  Vertical order inside each exchanged set is kept.
    """
    if not 1 <= c < len(cols):
        raise LankeError(f"column {c} has no right neighbour (shape has {len(cols)} columns)")
    left, right = cols[c - 1], cols[c]
    if not 1 <= k <= len(right):
        raise LankeError(f"k={k} out of range 1..{len(right)} for column {c + 1}")
    top = right[:k]
    for pos in combinations(range(len(left)), k):
        new_left = list(left)
        for q, x in zip(pos, top):
            new_left[q] = x
        new_right = tuple(left[q] for q in pos) + right[k:]
        yield cols[: c - 1] + (tuple(new_left), new_right) + cols[c + 1 :]


def garnir_vector(space: ColumnTabloidSpace, t: Tableau | Columns, c: int, k: int) -> dict[int, int]:
    """The relation ``t - sum s`` as a sparse vector over the tabloid basis."""
    cols = t.columns if isinstance(t, Tableau) else tuple(tuple(x) for x in t)
    vec: dict[int, int] = {}
    j, s = space.locate(cols)
    vec[j] = s
    for other in exchanges(cols, c, k):
        j, s = space.locate(other)
        vec[j] = vec.get(j, 0) - s
    return {j: v for j, v in vec.items() if v}


def generator_specs(shape: Sequence[int], mode: str) -> list[tuple[int, int]]:
    """The ``(c, k)`` pairs used by each presentation."""
    lengths = conjugate(tuple(shape))
    specs: list[tuple[int, int]] = []
    for c in range(1, len(lengths)):
        nxt = lengths[c]
        if mode == "full":
            ks = range(1, nxt + 1)
        elif mode == "reduced":
            ks = [nxt] if nxt == lengths[c - 1] - 1 else range(1, nxt + 1)
        elif mode == "corollary":
            ks = [nxt]
        else:
            raise LankeError(f"unknown mode {mode!r}; expected one of {MODES}")
        specs.extend((c, k) for k in ks)
    return specs


def garnir_matrix(
    shape: Sequence[int], mode: str = "full", standard_only: bool = False, bound: int = DEFAULT_GARNIR_BOUND
) -> SparseRationalMatrix:
    """All generators of the chosen presentation, one row per (t, c, k).

    ``standard_only`` restricts t to standard tableaux instead of all
    column-strict fillings.
    """
    space = tabloid_space(tuple(shape), bound)
    specs = generator_specs(shape, mode)
    rows = []
    for cols in space.basis:
        if standard_only and not Tableau.from_columns(space.shape, cols).is_standard():
            continue
        for c, k in specs:
            rows.append(garnir_vector(space, cols, c, k))
    return SparseRationalMatrix(len(rows), space.dim, rows)


def quotient_dim(shape: Sequence[int], mode: str = "full", standard_only: bool = False) -> int:
    space = tabloid_space(tuple(shape))
    return space.dim - exact.rank(garnir_matrix(shape, mode, standard_only))


def specht_dim_full(shape: Sequence[int]) -> int:
    """dim M^lambda / G^lambda with every Garnir generator."""
    return quotient_dim(shape, "full")


def specht_dim_reduced(shape: Sequence[int]) -> int:
    """Same quotient with only the full-exchange generators on columns followed
    by a column exactly one shorter."""
    return quotient_dim(shape, "reduced")


def corollary_applies(shape: Sequence[int]) -> bool:
    return is_staircase(tuple(shape))


def expected_dim(shape: Sequence[int]) -> int:
    return hook_dim(tuple(shape))

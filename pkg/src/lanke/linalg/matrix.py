"""Sparse matrices over the rationals, stored row-wise."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Mapping, Sequence, TextIO

from ..errors import LankeError, PrimeCollisionError

Row = dict  # column -> nonzero Fraction


class SparseRationalMatrix:
    """An exact ``n_rows x n_cols`` matrix with no stored zeros.

    Treat instances as immutable; the row dicts are shared, not copied,
    by the accessors.
    """

    __slots__ = ("n_rows", "n_cols", "_rows")

    def __init__(self, n_rows: int, n_cols: int, rows: Sequence[Mapping[int, object]] | None = None):
        if n_rows < 0 or n_cols < 0:
            raise LankeError("matrix dimensions must be nonnegative")
        self.n_rows = n_rows
        self.n_cols = n_cols
        clean: list[Row] = []
        rows = rows if rows is not None else [{}] * n_rows
        if len(rows) != n_rows:
            raise LankeError(f"expected {n_rows} rows, got {len(rows)}")
        for r in rows:
            d = {}
            for c, v in r.items():
                if not 0 <= c < n_cols:
                    raise LankeError(f"column index {c} out of range [0, {n_cols})")
                v = Fraction(v)
                if v:
                    d[int(c)] = v
            clean.append(d)
        self._rows = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, object]], n_cols: int) -> "SparseRationalMatrix":
        return cls(len(rows), n_cols, rows)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]]) -> "SparseRationalMatrix":
        n_rows = len(data)
        n_cols = len(data[0]) if n_rows else 0
        return cls(n_rows, n_cols, [{j: x for j, x in enumerate(r) if x} for r in data])

    @classmethod
    def from_triplets(cls, n_rows: int, n_cols: int, triplets: Iterable[tuple[int, int, object]]) -> "SparseRationalMatrix":
        rows: list[dict] = [{} for _ in range(n_rows)]
        for i, j, v in triplets:
            if not 0 <= i < n_rows:
                raise LankeError(f"row index {i} out of range")
            rows[i][j] = rows[i].get(j, 0) + Fraction(v)
        return cls(n_rows, n_cols, rows)

    @classmethod
    def identity(cls, n: int) -> "SparseRationalMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    # -- access ----------------------------------------------------------

    def row(self, i: int) -> Row:
        return self._rows[i]

    @property
    def rows(self) -> list[Row]:
        return self._rows

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        return {(i, j): v for i, r in enumerate(self._rows) for j, v in r.items()}

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i].get(j, Fraction(0))

    def triplets(self) -> Iterator[tuple[int, int, Fraction]]:
        for i, r in enumerate(self._rows):
            for j in sorted(r):
                yield i, j, r[j]

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.n_cols for _ in range(self.n_rows)]
        for i, j, v in self.triplets():
            out[i][j] = v
        return out

    def transpose(self) -> "SparseRationalMatrix":
        cols: list[dict] = [{} for _ in range(self.n_cols)]
        for i, j, v in self.triplets():
            cols[j][i] = v
        return SparseRationalMatrix(self.n_cols, self.n_rows, cols)

    def matvec(self, v: Mapping[int, Fraction] | Sequence[Fraction]) -> list[Fraction]:
        """``M @ v`` for a dense or sparse column vector."""
        if not isinstance(v, Mapping):
            v = {j: x for j, x in enumerate(v) if x}
        return [sum((x * v[j] for j, x in r.items() if j in v), Fraction(0)) for r in self._rows]

    def vstack(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if other.n_cols != self.n_cols:
            raise LankeError("column counts differ")
        return SparseRationalMatrix(self.n_rows + other.n_rows, self.n_cols, self._rows + other._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return (self.n_rows, self.n_cols, self._rows) == (other.n_rows, other.n_cols, other._rows)

    def __repr__(self) -> str:
        return f"SparseRationalMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz})"

    # -- conversions for the elimination kernels -------------------------

    def integer_rows(self) -> list[dict[int, int]]:
        """Each row scaled by the lcm of its denominators."""
        out = []
        for r in self._rows:
            d = lcm(*(v.denominator for v in r.values())) if r else 1
            out.append({j: int(v * d) for j, v in r.items()})
        return out

    def csr_mod(self, p: int) -> tuple[list[int], list[int], list[int]]:
        """Row-compressed arrays of the matrix reduced mod ``p``.

        Raises :class:`PrimeCollisionError` if a denominator is divisible by p.
        """
        indptr = [0]
        indices: list[int] = []
        data: list[int] = []
        for r in self._rows:
            for j in sorted(r):
                v = r[j]
                if v.denominator % p == 0:
                    raise PrimeCollisionError(f"denominator {v.denominator} is divisible by p={p}")
                x = v.numerator * pow(v.denominator, -1, p) % p
                if x:
                    indices.append(j)
                    data.append(x)
            indptr.append(len(indices))
        return indptr, indices, data

    # -- text triplet format ---------------------------------------------

    def dump(self, fh: TextIO) -> None:
        """Write ``rows cols nnz`` then one ``row col num/den`` line per entry (0-based)."""
        fh.write(f"{self.n_rows} {self.n_cols} {self.nnz}\n")
        for i, j, v in self.triplets():
            fh.write(f"{i} {j} {v.numerator}/{v.denominator}\n")

    def dumps(self) -> str:
        import io

        buf = io.StringIO()
        self.dump(buf)
        return buf.getvalue()

    @classmethod
    def load(cls, fh: TextIO | Iterable[str]) -> "SparseRationalMatrix":
        it = (line.strip() for line in fh)
        lines = [line for line in it if line and not line.startswith("#")]
        if not lines:
            raise LankeError("empty matrix file")
        try:
            n_rows, n_cols, nnz = (int(x) for x in lines[0].split())
        except ValueError as exc:
            raise LankeError(f"bad header line {lines[0]!r}") from exc
        body = lines[1:]
        if len(body) != nnz:
            raise LankeError(f"header says {nnz} entries, found {len(body)}")
        trip = []
        for line in body:
            i, j, v = line.split()
            trip.append((int(i), int(j), Fraction(v)))
        return cls.from_triplets(n_rows, n_cols, trip)

    @classmethod
    def loads(cls, text: str) -> "SparseRationalMatrix":
        return cls.load(text.splitlines())

"""Exact rank, reduced echelon form and kernels over Q.

Forward elimination is fraction-free on integer rows: a row update is
``a * row - b * pivot_row`` with ``a, b`` the pivot and target entries
divided by their gcd, followed by division by the row content.  Pivots are
chosen by the same Markowitz rule as the modular kernels, so sparse
relation matrices keep little fill-in.  Only the final back substitution
uses Fractions.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from ..errors import NonInvariantSubspaceError
from .matrix import SparseRationalMatrix


def _content(row: dict[int, int]) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def forward_eliminate(M: SparseRationalMatrix, candidates: int = 4) -> list[tuple[int, dict[int, int]]]:
    """Fraction-free elimination; returns ``(pivot column, integer pivot row)`` in pivot order.

    Each pivot row has no entries in earlier pivot columns.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for i, r in enumerate(M.integer_rows()):
        if r:
            g = _content(r)
            rows[i] = {c: v // g for c, v in r.items()}
            for c in r:
                cols.setdefault(c, set()).add(i)
    heap = [(len(s), c) for c, s in cols.items()]
    heapq.heapify(heap)
    out: list[tuple[int, dict[int, int]]] = []

    while cols:
        chosen: list[tuple[int, int]] = []
        seen: set[int] = set()
        while heap and len(chosen) < candidates:
            cnt, c = heapq.heappop(heap)
            s = cols.get(c)
            if s is None or len(s) != cnt or c in seen:
                continue
            seen.add(c)
            chosen.append((cnt, c))
        for e in chosen:
            heapq.heappush(heap, e)
        if not chosen:
            break
        best = None
        for cnt, c in chosen:
            r = min(cols[c], key=lambda i: (len(rows[i]), i))
            key = ((len(rows[r]) - 1) * (cnt - 1), r, c)
            if best is None or key < best:
                best = key
        _, r, c = best

        prow = rows.pop(r)
        for cc in prow:
            cols[cc].discard(r)
        pv = prow[c]
        for i in cols.pop(c):
            row = rows[i]
            rv = row[c]
            g = gcd(pv, rv)
            a, b = pv // g, rv // g
            if a != 1:
                for cc in row:
                    row[cc] *= a
            for cc, v in prow.items():
                x = row.get(cc, 0) - b * v
                if x:
                    if cc not in row:
                        cols[cc].add(i)
                    row[cc] = x
                elif cc in row:
                    del row[cc]
                    if cc != c:
                        cols[cc].discard(i)
            if not row:
                del rows[i]
                continue
            g = _content(row)
            if g != 1:
                for cc in row:
                    row[cc] //= g
        for cc in prow:
            if cc == c:
                continue
            s = cols.get(cc)
            if s is not None:
                if s:
                    heapq.heappush(heap, (len(s), cc))
                else:
                    del cols[cc]
        out.append((c, prow))
    return out


def rank(M: SparseRationalMatrix) -> int:
    return len(forward_eliminate(M))


@dataclass(frozen=True)
class EchelonForm:
    """Reduced row echelon form: rows sorted by pivot column, pivots equal to 1."""

    n_cols: int
    rows: tuple[dict, ...]
    pivot_columns: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivot_columns)

    @property
    def matrix(self) -> SparseRationalMatrix:
        return SparseRationalMatrix(len(self.rows), self.n_cols, list(self.rows))

    def coordinates(self, v: Mapping[int, Fraction]) -> list[Fraction]:
        """Coefficients of ``v`` on the rows, read off the pivot columns."""
        return [Fraction(v.get(p, 0)) for p in self.pivot_columns]

    def reduce(self, v: Mapping[int, object]) -> dict[int, Fraction]:
        """Residual of ``v`` after subtracting its row-space projection on pivots."""
        out = {c: Fraction(x) for c, x in v.items() if x}
        for p, row in zip(self.pivot_columns, self.rows):
            f = out.get(p)
            if not f:
                continue
            for c, x in row.items():
                y = out.get(c, 0) - f * x
                if y:
                    out[c] = y
                else:
                    out.pop(c, None)
        return out

    def contains(self, v: Mapping[int, object]) -> bool:
        return not self.reduce(v)


def reduced_basis(M: SparseRationalMatrix) -> EchelonForm:
    """Row-space basis reduced on the Markowitz pivot columns.

    Every pivot column is zero outside its own row, but the pivots need not
    be the leftmost possible ones; :func:`rref` gives the canonical form.
    """
    steps = forward_eliminate(M)
    reduced: dict[int, dict[int, Fraction]] = {}
    pivot_set = {c for c, _ in steps}
    for c, row in reversed(steps):
        pv = row[c]
        out = {cc: Fraction(v, pv) for cc, v in row.items()}
        for cc in [cc for cc in row if cc != c and cc in pivot_set]:
            f = out[cc]
            for c2, x in reduced[cc].items():
                y = out.get(c2, 0) - f * x
                if y:
                    out[c2] = y
                else:
                    out.pop(c2, None)
        reduced[c] = out
    order = sorted(reduced)
    return EchelonForm(M.n_cols, tuple(reduced[c] for c in order), tuple(order))


def _sub_scaled(row: dict[int, Fraction], f: Fraction, other: Mapping[int, Fraction]) -> None:
    for c, x in other.items():
        y = row.get(c, 0) - f * x
        if y:
            row[c] = y
        else:
            row.pop(c, None)


def rref(M: SparseRationalMatrix) -> EchelonForm:
    """The canonical reduced row echelon form (leftmost pivots, pivots 1)."""
    work = {i: dict(r) for i, r in enumerate(reduced_basis(M).rows)}
    by_lead: dict[int, set[int]] = {}
    for i, r in work.items():
        by_lead.setdefault(min(r), set()).add(i)
    heap = list(by_lead)
    heapq.heapify(heap)
    pivots: dict[int, dict[int, Fraction]] = {}
    while heap:
        c = heapq.heappop(heap)
        ids = by_lead.pop(c, None)
        if not ids:
            continue
        p = min(ids, key=lambda i: (len(work[i]), i))
        prow = work.pop(p)
        inv = 1 / prow[c]
        prow = {cc: v * inv for cc, v in prow.items()}
        for i in ids - {p}:
            row = work[i]
            _sub_scaled(row, row[c], prow)
            if not row:  # cannot happen for an independent basis
                del work[i]
                continue
            lead = min(row)
            if lead not in by_lead:
                heapq.heappush(heap, lead)
            by_lead.setdefault(lead, set()).add(i)
        pivots[c] = prow
    # back substitution, right to left, so every row used is already final
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        for q in sorted((q for q in row if q != c and q in pivots), reverse=True):
            f = row.get(q)
            if f:
                _sub_scaled(row, f, pivots[q])
    order = sorted(pivots)
    return EchelonForm(M.n_cols, tuple(pivots[c] for c in order), tuple(order))


def kernel_basis(M: SparseRationalMatrix) -> list[list[Fraction]]:
    """Basis of ``{v : M v = 0}``, one vector per free column of the canonical form."""
    E = rref(M)
    pivots = set(E.pivot_columns)
    basis = []
    for f in range(M.n_cols):
        if f in pivots:
            continue
        v = [Fraction(0)] * M.n_cols
        v[f] = Fraction(1)
        for p, row in zip(E.pivot_columns, E.rows):
            x = row.get(f)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def _apply(g: SparseRationalMatrix, row: Mapping[int, Fraction], gt_cols: list[dict]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for j, x in row.items():
        for i, gij in gt_cols[j].items():
            y = out.get(i, 0) + gij * x
            if y:
                out[i] = y
            else:
                out.pop(i, None)
    return out


def restricted_trace(g_matrix: SparseRationalMatrix, subspace: EchelonForm, check: bool = True) -> Fraction:
    """Trace of ``v -> g v`` on the row space of ``subspace``.

    ``g_matrix`` acts on column vectors (its column j is the image of e_j).
    """
    gt_cols = g_matrix.transpose().rows
    total = Fraction(0)
    for p, row in zip(subspace.pivot_columns, subspace.rows):
        image = _apply(g_matrix, row, gt_cols)
        total += image.get(p, 0)
        if check and subspace.reduce(image):
            raise NonInvariantSubspaceError("subspace is not invariant under g")
    return total


def signed_permutation_trace(
    perm: Sequence[int], signs: Sequence[int], subspace: EchelonForm, check: bool = True
) -> Fraction:
    """Restricted trace for the map ``e_j -> signs[j] * e_{perm[j]}``."""
    total = Fraction(0)
    for p, row in zip(subspace.pivot_columns, subspace.rows):
        image = {perm[j]: signs[j] * x for j, x in row.items()}
        total += image.get(p, 0)
        if check and subspace.reduce(image):
            raise NonInvariantSubspaceError("subspace is not invariant under g")
    return total

"""Pure-Python sparse elimination over GF(p).

Reference implementation of the kernel in ``_modrank.pyx``; both must pick
the same pivots in the same order.

Pivot rule: look at the ``candidates`` active columns with the smallest
``(count, column)``; in each take the row with the smallest
``(length, row)``; choose the smallest ``(markowitz, row, column)`` where
``markowitz = (length - 1) * (count - 1)``.
"""

from __future__ import annotations

import heapq
from typing import Sequence


def rank_mod_p(
    indptr: Sequence[int],
    indices: Sequence[int],
    data: Sequence[int],
    n_cols: int,
    p: int,
    candidates: int = 4,
) -> tuple[int, list[tuple[int, int]]]:
    """Rank of a CSR matrix over GF(p) and the ``(row, col)`` pivot sequence.

    Column indices must be unique within a row; values are reduced mod p here.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for i in range(len(indptr) - 1):
        r = {}
        for t in range(indptr[i], indptr[i + 1]):
            v = data[t] % p
            if v:
                r[indices[t]] = v
        if r:
            rows[i] = r
            for c in r:
                cols.setdefault(c, set()).add(i)

    heap = [(len(s), c) for c, s in cols.items()]
    heapq.heapify(heap)

    def touch(c: int) -> None:
        s = cols.get(c)
        if s is None:
            return
        if s:
            heapq.heappush(heap, (len(s), c))
        else:
            del cols[c]

    pivots: list[tuple[int, int]] = []
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
        inv = pow(prow[c], -1, p)
        others = cols.pop(c)
        for i in others:
            row = rows[i]
            f = row[c] * inv % p
            for cc, v in prow.items():
                x = (row.get(cc, 0) - f * v) % p
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
        for cc in prow:
            if cc != c:
                touch(cc)
        pivots.append((r, c))
    return len(pivots), pivots

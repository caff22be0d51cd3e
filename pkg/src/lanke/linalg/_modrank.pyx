# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled sparse elimination over GF(p).

Same pivot rule and pivot sequence as ``_modrank_py.rank_mod_p``.  Rows are
kept as column-sorted C++ vectors; column membership lists are lazy (stale
entries are filtered when a column is visited) while column counts are exact.
"""

from libc.stdint cimport uint64_t, int64_t
from libcpp.vector cimport vector


cdef uint64_t _inv_mod(uint64_t a, uint64_t p) nogil:
    cdef int64_t t = 0, newt = 1, q, tmp
    cdef int64_t r = <int64_t>p, newr = <int64_t>a
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += <int64_t>p
    return <uint64_t>t


cdef inline bint _has(vector[int]& cols, int c) nogil:
    cdef size_t lo = 0, hi = cols.size(), mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if cols[mid] < c:
            lo = mid + 1
        else:
            hi = mid
    return lo < cols.size() and cols[lo] == c


cdef inline uint64_t _get(vector[int]& cols, vector[uint64_t]& vals, int c) nogil:
    cdef size_t lo = 0, hi = cols.size(), mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if cols[mid] < c:
            lo = mid + 1
        else:
            hi = mid
    return vals[lo]


def rank_mod_p(indptr, indices, data, int n_cols, p, int candidates=4):
    """Rank of a CSR matrix over GF(p) and the ``(row, col)`` pivot sequence.

    ``p`` must be below 2**32 so products fit in 64 bits.
    """
    if p >= (1 << 32) or p < 2:
        raise ValueError("compiled kernel needs 2 <= p < 2**32")
    cdef uint64_t P = p
    cdef int n_rows = len(indptr) - 1
    cdef vector[vector[int]] rc
    cdef vector[vector[uint64_t]] rv
    cdef vector[vector[int]] colrows
    cdef vector[int] colcount
    cdef vector[char] active
    cdef vector[int] stamp
    cdef int i, t, c, cc, k, r, best_r, best_c, cnt, rr
    cdef long long best_cost, cost
    cdef uint64_t v, f, inv, a, b, x

    rc.resize(n_rows)
    rv.resize(n_rows)
    colrows.resize(n_cols)
    colcount.assign(n_cols, 0)
    active.assign(n_rows, 0)
    stamp.assign(n_rows, -1)

    cdef list ip = list(indptr), ix = list(indices), dt = list(data)
    for i in range(n_rows):
        for t in range(ip[i], ip[i + 1]):
            v = <uint64_t>(dt[t] % p)
            if v:
                rc[i].push_back(ix[t])
                rv[i].push_back(v)
        if rc[i].size():
            active[i] = 1
            for t in range(<int>rc[i].size()):
                c = rc[i][t]
                colrows[c].push_back(i)
                colcount[c] += 1

    cdef vector[int] cand_c
    cdef vector[int] cand_n
    cdef vector[int] members
    cdef vector[int] nc
    cdef vector[uint64_t] nv
    cdef vector[int] prow_c
    cdef vector[uint64_t] prow_v
    cdef size_t ia, ib, na, nb
    cdef int step = 0
    pivots = []

    with nogil:
        while True:
            # K smallest (count, col) among columns with count > 0
            cand_c.clear()
            cand_n.clear()
            for c in range(n_cols):
                cnt = colcount[c]
                if cnt <= 0:
                    continue
                if <int>cand_c.size() < candidates:
                    cand_c.push_back(c)
                    cand_n.push_back(cnt)
                    k = <int>cand_c.size() - 1
                elif cnt < cand_n[candidates - 1]:
                    cand_c[candidates - 1] = c
                    cand_n[candidates - 1] = cnt
                    k = candidates - 1
                else:
                    continue
                while k > 0 and (cand_n[k] < cand_n[k - 1] or (cand_n[k] == cand_n[k - 1] and cand_c[k] < cand_c[k - 1])):
                    cnt = cand_n[k]
                    cand_n[k] = cand_n[k - 1]
                    cand_n[k - 1] = cnt
                    cnt = cand_c[k]
                    cand_c[k] = cand_c[k - 1]
                    cand_c[k - 1] = cnt
                    k -= 1
            if cand_c.size() == 0:
                break

            best_cost = -1
            best_r = -1
            best_c = -1
            for k in range(<int>cand_c.size()):
                c = cand_c[k]
                # compact the lazy membership list of column c
                step += 1
                members.clear()
                for t in range(<int>colrows[c].size()):
                    rr = colrows[c][t]
                    if active[rr] and stamp[rr] != step and _has(rc[rr], c):
                        stamp[rr] = step
                        members.push_back(rr)
                colrows[c] = members
                r = -1
                for t in range(<int>members.size()):
                    rr = members[t]
                    if r < 0 or rc[rr].size() < rc[r].size() or (rc[rr].size() == rc[r].size() and rr < r):
                        r = rr
                cost = (<long long>rc[r].size() - 1) * (<long long>cand_n[k] - 1)
                if best_r < 0 or cost < best_cost or (cost == best_cost and (r < best_r or (r == best_r and c < best_c))):
                    best_cost = cost
                    best_r = r
                    best_c = c

            r = best_r
            c = best_c
            prow_c = rc[r]
            prow_v = rv[r]
            active[r] = 0
            rc[r].clear()
            rv[r].clear()
            for t in range(<int>prow_c.size()):
                colcount[prow_c[t]] -= 1
            inv = _inv_mod(_get(prow_c, prow_v, c), P)

            members = colrows[c]
            for t in range(<int>members.size()):
                i = members[t]
                if i == r:
                    continue
                f = _get(rc[i], rv[i], c) * inv % P
                nc.clear()
                nv.clear()
                na = rc[i].size()
                nb = prow_c.size()
                ia = 0
                ib = 0
                while ia < na or ib < nb:
                    if ib >= nb or (ia < na and rc[i][ia] < prow_c[ib]):
                        nc.push_back(rc[i][ia])
                        nv.push_back(rv[i][ia])
                        ia += 1
                    elif ia >= na or prow_c[ib] < rc[i][ia]:
                        cc = prow_c[ib]
                        x = (P - f * prow_v[ib] % P) % P
                        nc.push_back(cc)
                        nv.push_back(x)
                        colrows[cc].push_back(i)
                        colcount[cc] += 1
                        ib += 1
                    else:
                        cc = rc[i][ia]
                        a = rv[i][ia]
                        b = f * prow_v[ib] % P
                        x = (a + P - b) % P
                        if x:
                            nc.push_back(cc)
                            nv.push_back(x)
                        else:
                            colcount[cc] -= 1
                        ia += 1
                        ib += 1
                rc[i].swap(nc)
                rv[i].swap(nv)
                if rc[i].size() == 0:
                    active[i] = 0
            colrows[c].clear()
            colcount[c] = 0
            with gil:
                pivots.append((r, c))
    return len(pivots), pivots

#!/usr/bin/env python3
"""Compare the compiled and pure-Python GF(p) rank kernels on relation matrices.

    python3 benchmarks/bench_modrank.py            # (3,4), (2,6), (2,7)
    python3 benchmarks/bench_modrank.py --big      # adds (3,5), slow in pure Python

Both kernels must return the same rank and the same pivot sequence; the
script exits nonzero otherwise.
"""

from __future__ import annotations

import argparse
import sys
import time

from lanke.engine import jacobi_relations
from lanke.linalg import _modrank_py
from lanke.linalg.modular import DEFAULT_PRIMES, available_backends

try:
    from lanke.linalg import _modrank as _compiled
except ImportError:
    _compiled = None

CASES = [(3, 4), (2, 6), (2, 7)]


def bench(n: int, k: int, p: int, repeat: int) -> dict:
    t0 = time.perf_counter()
    M = jacobi_relations(n, k).matrix
    build = time.perf_counter() - t0
    indptr, indices, data = M.csr_mod(p)
    row = {"case": f"({n},{k})", "rows": M.n_rows, "cols": M.n_cols, "nnz": M.nnz, "build_s": build}
    results = {}
    kernels = [("python", _modrank_py.rank_mod_p)]
    if _compiled is not None:
        kernels.append(("compiled", _compiled.rank_mod_p))
    for name, fn in kernels:
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            out = fn(indptr, indices, data, M.n_cols, p)
            best = min(best, time.perf_counter() - t0)
        results[name] = out
        row[f"{name}_s"] = best
    row["rank"] = results["python"][0]
    if "compiled" in results:
        row["same_pivots"] = results["compiled"] == results["python"]
        row["speedup"] = row["python_s"] / row["compiled_s"]
    return row


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--big", action="store_true", help="include rho(3,5): 46200 x 15400")
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--prime", type=int, default=DEFAULT_PRIMES[0])
    args = ap.parse_args()

    print(f"backends built: {available_backends()}")
    if _compiled is None:
        print("compiled kernel missing; timing the Python kernel only")
    cases = CASES + ([(3, 5)] if args.big else [])
    header = f"{'case':>7} {'rows':>7} {'cols':>7} {'nnz':>8} {'rank':>7} {'python s':>9} {'compiled s':>11} {'speedup':>8}  pivots"
    print(header)
    ok = True
    for n, k in cases:
        r = bench(n, k, args.prime, args.repeat)
        comp = f"{r['compiled_s']:11.3f}" if "compiled_s" in r else f"{'-':>11}"
        speed = f"{r['speedup']:7.1f}x" if "speedup" in r else f"{'-':>8}"
        same = {True: "identical", False: "DIFFER", None: "-"}[r.get("same_pivots")]
        print(f"{r['case']:>7} {r['rows']:>7} {r['cols']:>7} {r['nnz']:>8} {r['rank']:>7} {r['python_s']:9.3f} {comp} {speed}  {same}")
        ok = ok and r.get("same_pivots", True)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

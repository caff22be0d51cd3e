"""Rank over GF(p) with a compiled kernel and a pure-Python fallback.

The compiled kernel (``_modrank``) is used when it was built and the prime
fits in 32 bits; ``LANKE_BACKEND=python`` forces the fallback.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..errors import LankeError
from . import _modrank_py
from .matrix import SparseRationalMatrix

log = logging.getLogger(__name__)

try:
    from . import _modrank as _compiled
except ImportError:  # extension not built
    _compiled = None

# Two fixed 31-bit primes, plus a third used only on disagreement.
DEFAULT_PRIMES = (2147483647, 2147483629)
ESCALATION_PRIME = 2147483587
MIN_PRIME = 1 << 20


def available_backends() -> list[str]:
    return ["compiled", "python"] if _compiled is not None else ["python"]


def default_backend() -> str:
    forced = os.environ.get("LANKE_BACKEND", "").strip().lower()
    if forced in ("python", "compiled"):
        if forced == "compiled" and _compiled is None:
            raise LankeError("LANKE_BACKEND=compiled but the extension is not built")
        return forced
    return "compiled" if _compiled is not None else "python"


def _is_probable_prime(p: int) -> bool:
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:  # deterministic below 3.3e24
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def check_primes(primes) -> tuple[int, ...]:
    primes = tuple(int(p) for p in primes)
    if not primes:
        raise LankeError("need at least one prime")
    if len(set(primes)) != len(primes):
        raise LankeError(f"primes must be pairwise distinct: {primes}")
    for p in primes:
        if p <= MIN_PRIME or not _is_probable_prime(p):
            raise LankeError(f"{p} is not a prime above 2**20")
    return primes


def rank_mod_p(M: SparseRationalMatrix, p: int, backend: str | None = None) -> tuple[int, list[tuple[int, int]]]:
    """Rank of ``M`` reduced mod ``p`` and the pivot sequence."""
    backend = backend or default_backend()
    indptr, indices, data = M.csr_mod(p)
    if backend == "compiled" and p < (1 << 32):
        if _compiled is None:
            raise LankeError("compiled backend requested but not built")
        return _compiled.rank_mod_p(indptr, indices, data, M.n_cols, p)
    return _modrank_py.rank_mod_p(indptr, indices, data, M.n_cols, p)


def modular_rank(M: SparseRationalMatrix, primes=DEFAULT_PRIMES, backend: str | None = None) -> int:
    """Largest rank of ``M`` over the given primes.

    Each modular rank is at most the rational rank, so the maximum is a
    certified lower bound.
    """
    primes = check_primes(primes)
    return max(rank_mod_p(M, p, backend)[0] for p in primes)


@dataclass
class RankReport:
    rank: int
    method: str
    ranks_by_prime: dict[int, int] = field(default_factory=dict)
    confident: bool = False
    escalated: bool = False

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "method": self.method,
            "ranks_by_prime": {str(p): r for p, r in self.ranks_by_prime.items()},
            "confident": self.confident,
            "escalated": self.escalated,
        }


def certified_rank(
    M: SparseRationalMatrix,
    primes=DEFAULT_PRIMES,
    exact_fallback: bool = True,
    backend: str | None = None,
    threads: int = 1,
) -> RankReport:
    """Modular rank with the agreement policy.

    Agreement of two primes is reported as confident.  On disagreement a
    third prime is tried; if the ranks still do not settle, fall back to the
    exact rational rank (or report the unconfident maximum).
    """
    primes = check_primes(primes)
    ranks: dict[int, int] = {}
    if threads > 1 and len(primes) > 1:
        # the compiled kernel drops the GIL, so primes really run side by side
        with ThreadPoolExecutor(max_workers=min(threads, len(primes))) as pool:
            found = list(pool.map(lambda q: rank_mod_p(M, q, backend)[0], primes))
    else:
        found = [rank_mod_p(M, q, backend)[0] for q in primes]
    for p, r in zip(primes, found):
        ranks[p] = r
        log.debug("rank mod %d = %d", p, r)
    values = list(ranks.values())
    best = max(values)
    if values.count(best) >= 2:
        return RankReport(best, "modular", ranks, confident=True)
    if ESCALATION_PRIME not in ranks:
        ranks[ESCALATION_PRIME] = rank_mod_p(M, ESCALATION_PRIME, backend)[0]
        values = list(ranks.values())
        best = max(values)
        if values.count(best) >= 2:
            return RankReport(best, "modular", ranks, confident=True, escalated=True)
    if exact_fallback:
        from .exact import rank as exact_rank

        return RankReport(exact_rank(M), "exact", ranks, confident=True, escalated=True)
    return RankReport(best, "modular", ranks, confident=False, escalated=True)

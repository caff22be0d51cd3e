"""Named invariant checks, run in two tiers.

``quick`` covers n <= 4 and k <= 4.  ``full`` adds the n <= 6 spectra, the
Lie(5) and Lie(6) dimensions and dim rho_{3,5}.  Fault injection exists so
the harness itself can be shown to catch a broken computation.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable

from . import engine, garnir
from .characters import (
    decompose,
    induced_cyclic_character,
    induced_sign_young,
    irreducible_character,
    kw_character,
    sign_character,
)
from .combinatorics import catalan, hook_dim, partitions_of
from .conjecture import conjecture_check, predict, whitehouse_character
from .errors import LankeError
from .linalg import SparseRationalMatrix

log = logging.getLogger(__name__)

LEVELS = ("quick", "full")
FAULTS = ("phi-diagonal",)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"{self.name}: {status}" + (f" ({self.detail})" if self.detail and not self.passed else "")


def _perturb_diagonal(M: SparseRationalMatrix) -> SparseRationalMatrix:
    rows = [dict(r) for r in M.rows]
    rows[0][0] = rows[0].get(0, Fraction(0)) + 1
    if rows[0][0] == 0:
        del rows[0][0]
    return SparseRationalMatrix(M.n_rows, M.n_cols, rows)


def _lemma_closed_form(ns: Iterable[int], faults: frozenset) -> Callable[[], str | None]:
    def check():
        for n in ns:
            closed = engine.phi_matrix(n, "closed_form").matrix
            if "phi-diagonal" in faults:
                closed = _perturb_diagonal(closed)
            if closed != engine.phi_matrix(n, "definitional").matrix:
                return f"closed form differs from definition at n={n}"
        return None

    return check


def _spectra(ns: Iterable[int]) -> Callable[[], str | None]:
    def check():
        for n in ns:
            spec = engine.phi_spectrum(n)  # raises on a hook mismatch
            if sum(spec.values()) != comb(2 * n - 1, n):
                return f"spectrum of n={n} incomplete"
        return None

    return check


def _catalan_kernels(ns: Iterable[int]) -> Callable[[], str | None]:
    def check():
        for n in ns:
            d = engine.phi_kernel_dim(n)
            if d != catalan(n):
                return f"dim ker phi = {d} at n={n}, expected {catalan(n)}"
        return None

    return check


def _dims(pairs: Iterable[tuple[int, int, int]], **kw) -> Callable[[], str | None]:
    def check():
        for n, k, want in pairs:
            got = engine.compute_dim(n, k, **kw).dim
            if got != want:
                return f"dim rho({n},{k}) = {got}, expected {want}"
        return None

    return check


def _sign_column(ns: Iterable[int]) -> Callable[[], str | None]:
    def check():
        for n in ns:
            chi = engine.character_rho(n, 2)
            if chi != sign_character(n):
                return f"rho({n},2) is not the sign representation"
        return None

    return check


def _theorem_characters(ns: Iterable[int]) -> Callable[[], str | None]:
    def check():
        for n in ns:
            lam = (2,) * (n - 1) + (1,)
            if engine.character_rho(n, 3) != irreducible_character(lam):
                return f"character of rho({n},3) is not chi^{lam}"
        return None

    return check


def _pre_jacobi_character(ns: Iterable[int]) -> Callable[[], str | None]:
    def check():
        for n in ns:
            chi = engine.character_V(engine.build_vspace(n, 3))
            if decompose(chi) != decompose(induced_sign_young(n, n - 1)):
                return f"V_({n},3) is not the induced sign module"
        return None

    return check


def _standard_bases(ns: Iterable[int]) -> Callable[[], str | None]:
    def check():
        for n in ns:
            engine.standard_brackets(n, check=True)
        return None

    return check


def _garnir(max_m: int) -> Callable[[], str | None]:
    def check():
        for m in range(1, max_m + 1):
            for lam in partitions_of(m):
                f = hook_dim(lam)
                for mode in ("full", "reduced"):
                    d = garnir.quotient_dim(lam, mode)
                    if d != f:
                        return f"{mode} Garnir quotient of {lam} has dim {d}, expected {f}"
        return None

    return check


def _oracles(ks: Iterable[int]) -> Callable[[], str | None]:
    def check():
        for k in ks:
            chi = engine.character_rho(2, k)
            if chi.degree != factorial(k - 1):
                return f"Lie({k}) has degree {chi.degree}"
            if chi != induced_cyclic_character(k) or chi != kw_character(k):
                return f"oracles disagree with the engine on Lie({k})"
        return None

    return check


def _whitehouse() -> str | None:
    if whitehouse_character(3) != irreducible_character((2, 2)):
        return "W_4 is not S^(2,2)"
    return None


def _conjecture(pairs: Iterable[tuple[int, int]]) -> Callable[[], str | None]:
    def check():
        for n, k in pairs:
            v = conjecture_check(n, k).verdict
            if v != "match":
                return f"conjecture verdict for ({n},{k}) is {v}"
        return None

    return check


def _rho35() -> str | None:
    pred = predict(3, 5).predicted_dim
    got = engine.compute_dim(3, 5, method="modular").dim
    if got != 1077 or pred != 1077:
        return f"engine {got}, prediction {pred}, expected 1077"
    return None


def checks_for(level: str, faults: Iterable[str] = ()) -> list[tuple[str, Callable[[], str | None]]]:
    if level not in LEVELS:
        raise LankeError(f"unknown selftest level {level!r}; expected one of {LEVELS}")
    faults = frozenset(faults)
    unknown = faults - set(FAULTS)
    if unknown:
        raise LankeError(f"unknown fault(s) {sorted(unknown)}; known: {list(FAULTS)}")
    quick = [
        ("lemma-2.3 closed form n<=4", _lemma_closed_form(range(2, 5), faults)),
        ("phi spectrum n<=4", _spectra(range(2, 5))),
        ("catalan kernel n<=4", _catalan_kernels(range(2, 5))),
        ("pre-jacobi character n<=4", _pre_jacobi_character(range(2, 5))),
        ("dim rho(n,3)=C_n n<=4", _dims([(n, 3, catalan(n)) for n in range(2, 5)])),
        ("lie dims k<=4", _dims([(2, k, factorial(k - 1)) for k in range(2, 5)])),
        ("sign column n<=4", _sign_column(range(2, 5))),
        ("rho(n,3) character n<=4", _theorem_characters(range(2, 5))),
        ("standard basis n<=4", _standard_bases(range(2, 5))),
        ("garnir quotients m<=5", _garnir(5)),
        ("lie oracles k<=4", _oracles(range(2, 5))),
        ("whitehouse W_4", _whitehouse),
        ("conjecture (2,3),(2,4),(3,3)", _conjecture([(2, 3), (2, 4), (3, 3)])),
    ]
    if level == "quick":
        return quick
    return quick + [
        ("lemma-2.3 closed form n<=5", _lemma_closed_form(range(2, 6), faults)),
        ("phi spectrum n<=6", _spectra(range(2, 7))),
        ("catalan kernel n<=6", _catalan_kernels(range(2, 7))),
        ("lie dims (2,5),(2,6)", _dims([(2, 5, 24), (2, 6, 120)], method="modular")),
        ("garnir quotients m<=7", _garnir(7)),
        ("rho(3,5)=1077", _rho35),
    ]


def run_selftest(level: str = "quick", faults: Iterable[str] = (), stream=None) -> list[CheckResult]:
    """Run every check of ``level``; a check fails by returning a message or raising."""
    results = []
    for name, fn in checks_for(level, faults):
        t0 = time.perf_counter()
        try:
            detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            log.debug("check %s raised", name, exc_info=True)
            detail = f"{type(exc).__name__}: {exc}"
        res = CheckResult(name, detail is None, detail or "", time.perf_counter() - t0)
        log.info("%s in %.2fs", res.line(), res.seconds)
        if stream is not None:
            print(res.line(), file=stream, flush=True)
        results.append(res)
    return results

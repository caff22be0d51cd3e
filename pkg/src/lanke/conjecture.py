"""Lie(k), the Whitehouse module, and the row-adding prediction for rho_{n,k}.

The prediction for rho_{n,k} takes every irreducible constituent mu of
W_{k+1} = Lie(k)^{S_{k+1}} / Lie(k+1), stacks n-2 rows of length k-1 on top
of its diagram, and restricts the result to S_{kn-n-k+2} by branching.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import engine
from .brackets import count_canonical, generator_count
from .characters import (
    ClassFunction,
    decompose,
    decomposition_dim,
    induce_to_next,
    induced_cyclic_character,
    kw_character,
    restrict_to_previous,
)
from .combinatorics import Partition, format_partition, hook_dim, restrict_irreducible
from .errors import LankeError, NotACharacterError, ShapeError, SizeLimitError, TheoremViolation

log = logging.getLogger(__name__)

MAX_LIE_K = 7
VERDICTS = ("match", "dim-match-only", "mismatch", "engine-unavailable")


def lie_character(k: int, check: bool = True) -> ClassFunction:
    """Character of Lie(k) = rho_{2,k} from the relation engine.

    With ``check`` the result is compared with the cyclic-induction and
    major-index descriptions.
    """
    if not 2 <= k <= MAX_LIE_K:
        raise SizeLimitError(f"lie_character supports 2 <= k <= {MAX_LIE_K}, got {k}")
    chi = engine.character_rho(2, k)
    if check:
        if chi != induced_cyclic_character(k):
            raise TheoremViolation(f"Lie({k}) differs from the induced cyclic character")
        if chi != kw_character(k):
            raise TheoremViolation(f"Lie({k}) differs from the major-index multiplicities")
    return chi


def whitehouse_character(k: int, check: bool = True) -> ClassFunction:
    """W_{k+1} = Lie(k) induced to S_{k+1}, minus Lie(k+1)."""
    if not 2 <= k <= MAX_LIE_K - 1:
        raise SizeLimitError(f"whitehouse_character supports 2 <= k <= {MAX_LIE_K - 1}, got {k}")
    lie_k = lie_character(k, check)
    chi = induce_to_next(lie_k) - lie_character(k + 1, check)
    try:
        decompose(chi)
    except NotACharacterError as exc:
        raise TheoremViolation(f"W_{k + 1} is not a character: {exc}") from exc
    if check and restrict_to_previous(chi) != lie_k:
        raise TheoremViolation(f"W_{k + 1} does not restrict to Lie({k})")
    return chi


def add_rows(lam: Partition, n: int, k: int) -> Partition:
    """Put n-2 rows of length k-1 on top of lam."""
    lam = tuple(lam)
    if n < 2 or k < 2:
        raise LankeError("need n, k >= 2")
    if lam and lam[0] > k - 1:
        raise ShapeError(f"first row of {format_partition(lam)} is longer than k-1={k - 1}")
    return (k - 1,) * (n - 2) + lam


def restrict_decomposition(dec: Mapping[Partition, int]) -> dict[Partition, int]:
    out: dict[Partition, int] = {}
    for lam, mult in dec.items():
        for mu, c in restrict_irreducible(lam).items():
            out[mu] = out.get(mu, 0) + mult * c
    return dict(sorted(out.items(), reverse=True))


@dataclass
class ConjectureReport:
    n: int
    k: int
    m: int
    predicted_dim: int
    predicted_decomposition: dict
    engine_dim: int | None = None
    engine_decomposition: dict | None = None
    whitehouse_decomposition: dict = field(default_factory=dict)
    lifted_shapes: dict = field(default_factory=dict)
    bad_constituents: list = field(default_factory=list)
    verdict: str = "engine-unavailable"

    def to_json(self) -> dict:
        def fmt(dec):
            if dec is None:
                return None
            return {format_partition(lam): mult for lam, mult in dec.items()}

        return {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "engine_dim": self.engine_dim,
            "predicted_dim": self.predicted_dim,
            "engine_decomposition": fmt(self.engine_decomposition),
            "predicted_decomposition": fmt(self.predicted_decomposition),
            "whitehouse_decomposition": fmt(self.whitehouse_decomposition),
            "W_nk": fmt(self.lifted_shapes),
            "bad_constituents": [format_partition(x) for x in self.bad_constituents],
            "verdict": self.verdict,
        }


def predict(n: int, k: int) -> ConjectureReport:
    """The conjectured module, without consulting the engine for rho_{n,k}."""
    m = generator_count(n, k)
    white = decompose(whitehouse_character(k))
    lifted: dict[Partition, int] = {}
    bad: list[Partition] = []
    for mu, mult in white.items():
        try:
            lam = add_rows(mu, n, k)
        except ShapeError:
            # a constituent wider than k-1 is reported, never dropped silently
            bad.append(mu)
            continue
        lifted[lam] = lifted.get(lam, 0) + mult
    predicted = restrict_decomposition(lifted)
    return ConjectureReport(
        n=n,
        k=k,
        m=m,
        predicted_dim=decomposition_dim(predicted),
        predicted_decomposition=predicted,
        whitehouse_decomposition=white,
        lifted_shapes=lifted,
        bad_constituents=bad,
    )


def conjecture_check(
    n: int,
    k: int,
    dims_only: bool = False,
    max_char_basis: int = engine.DEFAULT_MAX_CHAR_BASIS,
    **dim_kwargs,
) -> ConjectureReport:
    rep = predict(n, k)
    try:
        rep.engine_dim = engine.compute_dim(n, k, **dim_kwargs).dim
    except SizeLimitError as exc:
        log.info("engine unavailable for (%d, %d): %s", n, k, exc)
        rep.verdict = "engine-unavailable"
        return rep
    if not dims_only and count_canonical(n, k) <= max_char_basis:
        rep.engine_decomposition = dict(
            sorted(decompose(engine.character_rho(n, k, max_basis=max_char_basis)).items(), reverse=True)
        )
    if rep.bad_constituents or rep.engine_dim != rep.predicted_dim:
        rep.verdict = "mismatch"
    elif rep.engine_decomposition is None:
        rep.verdict = "dim-match-only"
    elif rep.engine_decomposition == rep.predicted_decomposition:
        rep.verdict = "match"
    else:
        rep.verdict = "mismatch"
    return rep

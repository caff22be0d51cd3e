"""Exact sparse linear algebra over Q with a modular fast path."""

from .exact import (
    EchelonForm,
    kernel_basis,
    rank,
    reduced_basis,
    restricted_trace,
    rref,
    signed_permutation_trace,
)
from .matrix import SparseRationalMatrix
from .modular import (
    DEFAULT_PRIMES,
    RankReport,
    available_backends,
    certified_rank,
    default_backend,
    modular_rank,
    rank_mod_p,
)

__all__ = [
    "DEFAULT_PRIMES",
    "EchelonForm",
    "RankReport",
    "SparseRationalMatrix",
    "available_backends",
    "certified_rank",
    "default_backend",
    "kernel_basis",
    "modular_rank",
    "rank",
    "rank_mod_p",
    "reduced_basis",
    "restricted_trace",
    "rref",
    "signed_permutation_trace",
]

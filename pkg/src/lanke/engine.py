"""The multilinear component rho_{n,k} of the free LAnKe.

``V_{n,k}`` is spanned by canonical bracketed permutations (antisymmetry
only).  Every instance of the generalized Jacobi identity inside every
context gives a relation row; rho_{n,k} is the quotient of V by their span.
For ``k = 3`` the relations are the columns of the operator ``phi`` on the
basis ``v_S`` and the module structure can be read off its spectrum.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from . import brackets as br
from .brackets import Tree
from .characters import ClassFunction, decompose
from .combinatorics import Partition, catalan, hook_dim, partitions_of
from .errors import LankeError, SizeLimitError, TheoremViolation
from .linalg import SparseRationalMatrix, certified_rank, exact, reduced_basis, signed_permutation_trace
from .linalg.modular import DEFAULT_PRIMES, RankReport

log = logging.getLogger(__name__)

DEFAULT_MAX_BASIS = 250_000
DEFAULT_MAX_CHAR_BASIS = 12_000
DEFAULT_EXACT_DIM_BASIS = 3_000
DEFAULT_MAX_ROWS = 1_000_000


@dataclass(frozen=True)
class VSpace:
    """The pre-Jacobi space with its canonical basis."""

    n: int
    k: int
    basis: tuple
    index: dict = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return br.generator_count(self.n, self.k)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def locate(self, word: Tree) -> tuple[int, int]:
        """Index and sign of an arbitrary bracketed permutation on [m]."""
        w, s, _ = br._canon(word)
        return self.index[w], s

    def action(self, sigma: Sequence[int]) -> tuple[list[int], list[int]]:
        """``sigma`` as a signed permutation of the basis: e_j -> sign[j] e_{perm[j]}."""
        if len(sigma) != self.m:
            raise LankeError(f"permutation of [{len(sigma)}] does not act on [{self.m}]")
        perm, signs = [], []
        for b in self.basis:
            w, s, _ = br._canon(br.relabel(b, sigma))
            perm.append(self.index[w])
            signs.append(s)
        return perm, signs


@lru_cache(maxsize=16)
def build_vspace(n: int, k: int, max_size: int = DEFAULT_MAX_BASIS) -> VSpace:
    basis = tuple(br.enumerate_canonical(n, k, max_size=max_size))
    return VSpace(n, k, basis, {b: i for i, b in enumerate(basis)})


# -- relations -------------------------------------------------------------------


@dataclass(frozen=True)
class Provenance:
    tree: int  # basis index of the tree holding the instance
    node: tuple  # path from the root to the outer bracket
    child: int  # position of the inner bracket among the outer node's children


@dataclass(frozen=True)
class RelationSet:
    space: VSpace
    matrix: SparseRationalMatrix
    provenance: tuple

    @property
    def n_rows(self) -> int:
        return self.matrix.n_rows


def _replace_at(t: Tree, path: tuple, new: Tree) -> Tree:
    if not path:
        return new
    i = path[0]
    return t[:i] + (_replace_at(t[i], path[1:], new),) + t[i + 1 :]


def _internal_nodes(t: Tree, path: tuple = ()) -> Iterator[tuple[tuple, tuple]]:
    if isinstance(t, int):
        return
    yield path, t
    for i, c in enumerate(t):
        yield from _internal_nodes(c, path + (i,))


def jacobi_terms(inner: tuple, others: tuple) -> list[tuple[Tree, int]]:
    """Signed terms of ``[[x_1..x_n], y_1..y_{n-1}] - sum_i [x_1.., [x_i, y..], ..x_n]``."""
    terms: list[tuple[Tree, int]] = [((inner,) + others, 1)]
    for i in range(len(inner)):
        terms.append((inner[:i] + ((inner[i],) + others,) + inner[i + 1 :], -1))
    return terms


def relation_row(space: VSpace, tree: Tree, path: tuple, child: int) -> dict[int, int]:
    node = tree
    for i in path:
        node = node[i]
    inner = node[child]
    others = node[:child] + node[child + 1 :]
    row: dict[int, int] = {}
    for term, coeff in jacobi_terms(inner, others):
        j, s = space.locate(_replace_at(tree, path, term))
        row[j] = row.get(j, 0) + coeff * s
    return {j: v for j, v in row.items() if v}


def jacobi_relations(
    n: int, k: int, max_basis: int = DEFAULT_MAX_BASIS, max_rows: int = DEFAULT_MAX_ROWS
) -> RelationSet:
    """One relation per (tree, outer bracket, inner bracket child), in basis order."""
    # every tree has k-1 internal nodes, hence k-2 internal parent/child edges
    expected_rows = br.count_canonical(n, k) * (k - 2)
    if expected_rows > max_rows:
        raise SizeLimitError(f"(n={n}, k={k}) needs {expected_rows} relation rows > {max_rows}")
    space = build_vspace(n, k, max_basis)
    rows: list[dict[int, int]] = []
    prov: list[Provenance] = []
    for ti, tree in enumerate(space.basis):
        for path, node in _internal_nodes(tree):
            for ci, child in enumerate(node):
                if isinstance(child, int):
                    continue
                row = relation_row(space, tree, path, ci)
                if len(row) > n + 1 or any(abs(v) != 1 for v in row.values()):
                    raise TheoremViolation(f"malformed relation row from tree {ti}: {row}")
                rows.append(row)
                prov.append(Provenance(ti, path, ci))
    assert len(rows) == expected_rows
    matrix = SparseRationalMatrix(len(rows), space.dim, rows)
    return RelationSet(space, matrix, tuple(prov))


# -- dimension ---------------------------------------------------------------------


@dataclass
class DimReport:
    n: int
    k: int
    m: int
    basis_size: int
    relation_rows: int
    relation_rank: int
    dim: int
    rank: RankReport

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "basis_size": self.basis_size,
            "relation_rows": self.relation_rows,
            "relation_rank": self.relation_rank,
            "dim": self.dim,
            "rank": self.rank.to_json(),
        }


def compute_dim(
    n: int,
    k: int,
    method: str = "auto",
    primes: Sequence[int] = DEFAULT_PRIMES,
    exact_verify: bool = False,
    max_basis: int = DEFAULT_MAX_BASIS,
    max_rows: int = DEFAULT_MAX_ROWS,
    exact_threshold: int = DEFAULT_EXACT_DIM_BASIS,
    backend: str | None = None,
    threads: int = 1,
) -> DimReport:
    """dim rho_{n,k} = |basis| - rank(relations).

    ``method`` is ``exact``, ``modular`` or ``auto`` (exact up to
    ``exact_threshold`` basis elements).  ``exact_verify`` recomputes a
    modular answer over Q and raises on disagreement.
    """
    rels = jacobi_relations(n, k, max_basis, max_rows)
    M = rels.matrix
    if method == "auto":
        method = "exact" if rels.space.dim <= exact_threshold else "modular"
    if method == "exact":
        rep = RankReport(exact.rank(M), "exact", confident=True)
    elif method == "modular":
        rep = certified_rank(M, primes, backend=backend, threads=threads)
        if exact_verify and rep.method != "exact":
            r = exact.rank(M)
            if r != rep.rank:
                raise TheoremViolation(f"modular rank {rep.rank} != exact rank {r}")
            rep = RankReport(r, "modular+exact", rep.ranks_by_prime, True, rep.escalated)
    else:
        raise LankeError(f"unknown method {method!r}")
    dim = rels.space.dim - rep.rank
    return DimReport(n, k, rels.space.m, rels.space.dim, M.n_rows, rep.rank, dim, rep)


def dim_rho(n: int, k: int, **kwargs) -> int:
    return compute_dim(n, k, **kwargs).dim


# -- characters --------------------------------------------------------------------


def class_representative(mu: Sequence[int]) -> tuple[int, ...]:
    """A permutation (one-line) whose cycles are consecutive blocks of sizes mu."""
    sigma: list[int] = []
    start = 1
    for part in mu:
        block = list(range(start, start + part))
        sigma.extend(block[1:] + block[:1])
        start += part
    return tuple(sigma)


def symmetric_group_generators(m: int) -> list[tuple[int, ...]]:
    if m < 2:
        return []
    return [(2, 1) + tuple(range(3, m + 1)), tuple(range(2, m + 1)) + (1,)]


def character_V(space: VSpace) -> ClassFunction:
    """Character of the pre-Jacobi space: signed fixed points of the basis."""
    vals = {}
    for mu in partitions_of(space.m):
        perm, signs = space.action(class_representative(mu))
        vals[mu] = Fraction(sum(s for j, (q, s) in enumerate(zip(perm, signs)) if q == j))
    return ClassFunction(space.m, vals)


@lru_cache(maxsize=32)
def character_rho(n: int, k: int, max_basis: int = DEFAULT_MAX_CHAR_BASIS) -> ClassFunction:
    """chi_V - chi_R, with chi_R the trace on the relation row space.

    Results are cached; treat the returned class function as read-only.
    """
    if br.count_canonical(n, k) > max_basis:
        raise SizeLimitError(
            f"character path for (n={n}, k={k}) needs {br.count_canonical(n, k)} basis elements > {max_basis}"
        )
    rels = jacobi_relations(n, k, max_basis)
    space = rels.space
    E = reduced_basis(rels.matrix)
    # Invariance under the generators (1 2) and (1 2 ... m) gives invariance
    # under all of S_m, so the per-class traces skip the check.
    for gen in symmetric_group_generators(space.m):
        perm, signs = space.action(gen)
        signed_permutation_trace(perm, signs, E, check=True)
    vals = {}
    for mu in partitions_of(space.m):
        perm, signs = space.action(class_representative(mu))
        chi_v = sum(s for j, (q, s) in enumerate(zip(perm, signs)) if q == j)
        chi_r = signed_permutation_trace(perm, signs, E, check=False)
        vals[mu] = Fraction(chi_v) - chi_r
    chi = ClassFunction(space.m, vals)
    decompose(chi)  # raises if this is not a genuine character
    return chi


# -- k = 3: the operator phi ------------------------------------------------------


def subsets(n: int) -> list[tuple[int, ...]]:
    """All n-subsets of [2n-1] in lexicographic order."""
    return list(combinations(range(1, 2 * n), n))


def v_word(S: Sequence[int], n: int) -> tuple:
    """``[[a_1..a_n], b_1..b_{n-1}]`` with both lists increasing."""
    rest = tuple(x for x in range(1, 2 * n) if x not in S)
    return (tuple(sorted(S)),) + rest


def v_signs(n: int) -> list[int]:
    """s_S with v_S = s_S * (canonical basis element), in subset order."""
    space = build_vspace(n, 3)
    out = []
    for i, S in enumerate(subsets(n)):
        j, s = space.locate(v_word(S, n))
        if j != i:
            raise TheoremViolation(f"canonical basis order differs from subset order at {S}")
        out.append(s)
    return out


def w(n: int, i: int) -> int:
    """Scalar of phi on the constituent of shape 2^i 1^(2n-1-2i)."""
    return 1 + (n - i) * (-1) ** (n - i)


def phi_entry(S: Sequence[int], T: Sequence[int]) -> int:
    """Coefficient of v_T in phi(v_S), closed form."""
    S, T = frozenset(S), frozenset(T)
    if len(S) != len(T) or not S:
        raise LankeError(f"subsets must have equal positive size: {sorted(S)}, {sorted(T)}")
    if S == T:
        return 1
    common = S & T
    if len(common) == 1:
        (d,) = common
        return -1 if d % 2 else 1
    return 0


@dataclass(frozen=True)
class PhiMatrix:
    """phi in the basis v_S; column S holds the coefficients of phi(v_S)."""

    n: int
    subsets: tuple
    matrix: SparseRationalMatrix

    def entry(self, T: Sequence[int], S: Sequence[int]) -> Fraction:
        idx = {s: i for i, s in enumerate(self.subsets)}
        return self.matrix[idx[tuple(T)], idx[tuple(S)]]

    @property
    def trace(self) -> Fraction:
        return sum((self.matrix[i, i] for i in range(len(self.subsets))), Fraction(0))


def _phi_definitional(n: int) -> SparseRationalMatrix:
    space = build_vspace(n, 3)
    subs = subsets(n)
    sgn = v_signs(n)
    cols: list[dict[int, int]] = []
    for S in subs:
        a = tuple(sorted(S))
        b = tuple(x for x in range(1, 2 * n) if x not in S)
        col: dict[int, int] = {}
        for term, coeff in jacobi_terms(a, b):
            j, s = space.locate(term)
            # c_j = s_j v_j
            col[j] = col.get(j, 0) + coeff * s * sgn[j]
        cols.append({j: v for j, v in col.items() if v})
    return SparseRationalMatrix(len(subs), len(subs), cols).transpose()


def _phi_closed_form(n: int) -> SparseRationalMatrix:
    subs = subsets(n)
    rows = []
    for T in subs:
        rows.append({j: e for j, S in enumerate(subs) if (e := phi_entry(S, T))})
    return SparseRationalMatrix(len(subs), len(subs), rows)


def phi_matrix(n: int, method: str = "closed_form") -> PhiMatrix:
    if n < 2:
        raise LankeError("need n >= 2")
    if method == "closed_form":
        M = _phi_closed_form(n)
    elif method == "definitional":
        M = _phi_definitional(n)
    else:
        raise LankeError(f"unknown phi method {method!r}")
    return PhiMatrix(n, tuple(subsets(n)), M)


def shifted(M: SparseRationalMatrix, lam: int) -> SparseRationalMatrix:
    """M - lam * I."""
    rows = []
    for i, r in enumerate(M.rows):
        r = dict(r)
        r[i] = r.get(i, 0) - lam
        rows.append(r)
    return SparseRationalMatrix(M.n_rows, M.n_cols, rows)


def phi_spectrum(n: int, phi: PhiMatrix | None = None) -> dict[int, int]:
    """Multiplicity of each candidate eigenvalue w_i, i = 0..n-1.

    Raises :class:`TheoremViolation` if the multiplicities do not exhaust the
    space or disagree with the hook dimensions of 2^i 1^(2n-1-2i).
    """
    phi = phi or phi_matrix(n)
    N = comb(2 * n - 1, n)
    spec: dict[int, int] = {}
    for i in range(n):
        wi = w(n, i)
        spec[wi] = N - exact.rank(shifted(phi.matrix, wi))
    if sum(spec.values()) != N:
        raise TheoremViolation(f"eigenspaces of phi for n={n} span {sum(spec.values())} of {N} dimensions")
    for i in range(n):
        expected = hook_dim(constituent_shape(n, i))
        if spec[w(n, i)] != expected:
            raise TheoremViolation(f"multiplicity of w_{i}={w(n, i)} is {spec[w(n, i)]}, expected {expected}")
    return spec


def constituent_shape(n: int, i: int) -> Partition:
    """The partition 2^i 1^(2n-1-2i)."""
    return (2,) * i + (1,) * (2 * n - 1 - 2 * i)


def phi_kernel_dim(n: int) -> int:
    phi = phi_matrix(n)
    return phi.matrix.n_cols - exact.rank(phi.matrix)


def v_action_matrix(n: int, sigma: Sequence[int]) -> SparseRationalMatrix:
    """sigma acting on V_{n,3} in the v_S basis (column S is sigma v_S)."""
    space = build_vspace(n, 3)
    sgn = v_signs(n)
    subs = subsets(n)
    cols = []
    for S in subs:
        word = br.relabel(v_word(S, n), sigma)
        j, s = space.locate(word)
        cols.append({j: s * sgn[j]})
    return SparseRationalMatrix(len(subs), len(subs), cols).transpose()


def standard_brackets(n: int, check: bool = True) -> list[Tree]:
    """``[[a_1..a_n], b_1..b_{n-1}]`` with a_i < b_i; independent modulo relations."""
    out = []
    for S in subsets(n):
        b = [x for x in range(1, 2 * n) if x not in S]
        if all(S[i] < b[i] for i in range(n - 1)):
            out.append(v_word(S, n))
    if check:
        if len(out) != catalan(n):
            raise TheoremViolation(f"{len(out)} standard brackets for n={n}, expected C_{n}={catalan(n)}")
        rels = jacobi_relations(n, 3)
        space = rels.space
        extra = []
        for word in out:
            j, s = space.locate(word)
            extra.append({j: s})
        stacked = rels.matrix.vstack(SparseRationalMatrix(len(extra), space.dim, extra))
        base = exact.rank(rels.matrix)
        if exact.rank(stacked) != base + len(out):
            raise TheoremViolation(f"standard brackets for n={n} are dependent modulo the relations")
    return out

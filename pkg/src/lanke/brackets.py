"""Bracketed permutations as n-ary trees.

A bracketed word is stored as a nested tuple: a leaf is a positive ``int``
and an internal node is a tuple of exactly ``n`` children.  The canonical
representative of a word orders the children of every node by the smallest
leaf of each child; antisymmetry of the bracket means that reordering costs
the sign of the sorting permutation.

>>> canonicalize(((2, 1), 3))
SignedBracket(word=((1, 2), 3), sign=-1)
"""

from __future__ import annotations

import ast
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import Iterator, NamedTuple, Sequence, Union

from .errors import LankeError, SizeLimitError

Tree = Union[int, tuple]

DEFAULT_MAX_BASIS = 250_000


class SignedBracket(NamedTuple):
    word: Tree
    sign: int


def generator_count(n: int, k: int) -> int:
    """Number of letters in a multilinear word with ``k - 1`` brackets of arity ``n``."""
    if n < 2 or k < 2:
        raise ValueError(f"need n, k >= 2, got n={n}, k={k}")
    return k * n - n - k + 2


def is_leaf(t: Tree) -> bool:
    return isinstance(t, int)


def leaves(t: Tree) -> list[int]:
    """Leaf labels in left-to-right order."""
    if isinstance(t, int):
        return [t]
    out: list[int] = []
    for c in t:
        out.extend(leaves(c))
    return out


def min_leaf(t: Tree) -> int:
    if isinstance(t, int):
        return t
    return min(min_leaf(c) for c in t)


def arity(t: Tree) -> int | None:
    """Common arity of the internal nodes, ``None`` for a bare leaf."""
    if isinstance(t, int):
        return None
    return len(t)


def internal_count(t: Tree) -> int:
    if isinstance(t, int):
        return 0
    return 1 + sum(internal_count(c) for c in t)


def validate(t: Tree, n: int | None = None) -> int | None:
    """Check arity and distinct leaves; return the arity."""
    seen: set[int] = set()

    def walk(node: Tree) -> None:
        nonlocal n
        if isinstance(node, int):
            if node < 1:
                raise LankeError(f"leaf labels must be positive, got {node}")
            if node in seen:
                raise LankeError(f"repeated leaf label {node}")
            seen.add(node)
            return
        if not isinstance(node, tuple):
            raise LankeError(f"not a bracketed word: {node!r}")
        if n is None:
            n = len(node)
        if len(node) != n or n < 2:
            raise LankeError(f"node {format_bracket(node)} does not have arity {n}")
        for c in node:
            walk(c)

    walk(t)
    return n


def _canon(t: Tree) -> tuple[Tree, int, int]:
    """Return (canonical word, sign, minimal leaf)."""
    if isinstance(t, int):
        return t, 1, t
    parts = [_canon(c) for c in t]
    sign = 1
    for _, s, _ in parts:
        sign *= s
    mins = [p[2] for p in parts]
    order = sorted(range(len(parts)), key=mins.__getitem__)
    inv = 0
    for i in range(len(order)):
        oi = order[i]
        for j in range(i + 1, len(order)):
            if oi > order[j]:
                inv += 1
    if inv & 1:
        sign = -sign
    return tuple(parts[i][0] for i in order), sign, mins[order[0]]


def canonicalize(t: Tree) -> SignedBracket:
    """Sort children by minimal leaf at every node, tracking the sign.

    Raises :class:`LankeError` on repeated leaves or inconsistent arity.
    """
    validate(t)
    word, sign, _ = _canon(t)
    return SignedBracket(word, sign)


def canonicalize_unchecked(t: Tree) -> SignedBracket:
    """Same as :func:`canonicalize` without validating the input."""
    word, sign, _ = _canon(t)
    return SignedBracket(word, sign)


def is_canonical(t: Tree) -> bool:
    if isinstance(t, int):
        return True
    mins = [min_leaf(c) for c in t]
    return all(a < b for a, b in zip(mins, mins[1:])) and all(is_canonical(c) for c in t)


def relabel(t: Tree, mapping: Sequence[int] | dict[int, int]) -> Tree:
    """Replace every leaf ``x`` by ``mapping[x]`` (1-based sequences allowed)."""
    if isinstance(mapping, dict):
        get = mapping.__getitem__
    else:
        seq = mapping

        def get(x: int) -> int:
            return seq[x - 1]

    def walk(node: Tree) -> Tree:
        if isinstance(node, int):
            return get(node)
        return tuple(walk(c) for c in node)

    return walk(t)


def act(sigma: Sequence[int], b: Tree) -> SignedBracket:
    """Apply the permutation ``sigma`` (one-line notation, ``sigma[x-1]`` is
    the image of ``x``) to the leaves of ``b`` and canonicalize."""
    labels = sorted(leaves(b))
    m = len(sigma)
    if sorted(sigma) != list(range(1, m + 1)):
        raise LankeError(f"not a permutation: {tuple(sigma)}")
    if labels != list(range(1, m + 1)):
        raise LankeError(f"leaf set {labels} is not [1..{m}]")
    word, sign, _ = _canon(relabel(b, sigma))
    return SignedBracket(word, sign)


def compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """The product ``sigma * tau`` (apply ``tau`` first)."""
    return tuple(sigma[t - 1] for t in tau)


# -- text form ---------------------------------------------------------------


def _from_literal(x: object) -> Tree:
    if isinstance(x, bool):
        raise LankeError("booleans are not leaves")
    if isinstance(x, int):
        return x
    if isinstance(x, (list, tuple)):
        return tuple(_from_literal(c) for c in x)
    raise LankeError(f"unexpected token {x!r}")


def parse_bracket(text: str) -> Tree:
    """Parse ``"[[1,2,4],3,5]"`` into a nested tuple."""
    try:
        lit = ast.literal_eval(text.strip())
    except (ValueError, SyntaxError) as exc:
        raise LankeError(f"cannot parse bracketed word {text!r}") from exc
    t = _from_literal(lit)
    if not isinstance(t, int):
        validate(t)
    return t


def format_bracket(t: Tree) -> str:
    if isinstance(t, int):
        return str(t)
    return "[" + ",".join(format_bracket(c) for c in t) + "]"


# -- enumeration -------------------------------------------------------------


def count_canonical(n: int, k: int) -> int:
    """Closed-form size of the canonical basis of the pre-Jacobi space."""
    j = k - 1
    m = generator_count(n, k)
    shapes = comb(n * j, j) // ((n - 1) * j + 1)
    return shapes * factorial(m) // factorial(n) ** j


def _product(choices: list[tuple[Tree, ...]]) -> Iterator[tuple]:
    if not choices:
        yield ()
        return
    for head in choices[0]:
        for rest in _product(choices[1:]):
            yield (head,) + rest


def _splits(block: tuple[int, ...], parts: int, internal: int, n: int) -> Iterator[list]:
    # Blocks come out with increasing minima, so every canonical word once.
    if parts == 0:
        if not block and internal == 0:
            yield []
        return
    first, rest = block[0], block[1:]
    for jc in range(internal + 1):
        size = jc * (n - 1) + 1
        if size > len(block):
            break
        for others in combinations(rest, size - 1):
            chosen = (first,) + others
            remaining = tuple(x for x in rest if x not in others)
            for tail in _splits(remaining, parts - 1, internal - jc, n):
                yield [(chosen, jc)] + tail


@lru_cache(maxsize=None)
def _trees_on(block: tuple[int, ...], j: int, n: int) -> tuple[Tree, ...]:
    """All canonical trees with ``j`` internal nodes on the leaf set ``block``."""
    if j == 0:
        return (block[0],) if len(block) == 1 else ()
    if len(block) != j * (n - 1) + 1:
        return ()
    out: list[Tree] = []
    for split in _splits(block, n, j - 1, n):
        out.extend(_product([_trees_on(b, jb, n) for b, jb in split]))
    return tuple(out)


def internal_leafsets(t: Tree) -> tuple[tuple[int, ...], ...]:
    """Sorted leaf sets of the internal nodes, in preorder."""
    out: list[tuple[int, ...]] = []

    def walk(node: Tree) -> None:
        if isinstance(node, int):
            return
        out.append(tuple(sorted(leaves(node))))
        for c in node:
            walk(c)

    walk(t)
    return tuple(out)


def enumerate_canonical(n: int, k: int, max_size: int = DEFAULT_MAX_BASIS) -> list[Tree]:
    """All canonical multilinear bracketed permutations with ``k - 1`` brackets.

    Ordered by the preorder sequence of internal leaf sets; for ``k = 3``
    this is lexicographic order on the inner bracket's letter set.
    """
    m = generator_count(n, k)
    size = count_canonical(n, k)
    if size > max_size:
        raise SizeLimitError(f"basis for (n={n}, k={k}) has {size} elements > bound {max_size}")
    trees = list(_trees_on(tuple(range(1, m + 1)), k - 1, n))
    _trees_on.cache_clear()
    trees.sort(key=internal_leafsets)
    assert len(trees) == size, (len(trees), size)
    return trees

"""Class functions on the symmetric group S_m.

Values are exact :class:`fractions.Fraction` keyed by cycle type.  The
irreducible characters come from the Murnaghan-Nakayama rule on beta-sets;
everything else (induction from Young subgroups, the cyclic induction
oracle, decompositions) is built from those plus class sizes.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, prod
from typing import Iterable, Mapping

from .combinatorics import Partition, enumerate_syt, format_partition, hook_dim, maj, parse_partition, partitions_of
from .errors import LankeError, NotACharacterError, SizeLimitError

DEFAULT_CHARACTER_BOUND = 12

Decomposition = dict  # Partition -> multiplicity


def class_size(mu: Iterable[int]) -> int:
    """Size of the conjugacy class of S_m with cycle type ``mu``."""
    mu = tuple(mu)
    counts = Counter(mu)
    z = prod(i**a * factorial(a) for i, a in counts.items())
    return factorial(sum(mu)) // z


def sign_of_class(mu: Iterable[int]) -> int:
    mu = tuple(mu)
    return -1 if (sum(mu) - len(mu)) % 2 else 1


@dataclass(frozen=True)
class ClassFunction:
    """A rational class function on S_m, one value per cycle type."""

    m: int
    values: Mapping[Partition, Fraction] = field(hash=False)

    def __post_init__(self) -> None:
        vals = {tuple(k): Fraction(v) for k, v in self.values.items()}
        expected = partitions_of(self.m)
        missing = [mu for mu in expected if mu not in vals]
        if missing or len(vals) != len(expected):
            raise LankeError(f"class function on S_{self.m} needs exactly one value per cycle type")
        object.__setattr__(self, "values", {mu: vals[mu] for mu in expected})

    def __getitem__(self, mu: Iterable[int]) -> Fraction:
        return self.values[tuple(mu)]

    @property
    def degree(self) -> Fraction:
        return self.values[(1,) * self.m] if self.m else self.values[()]

    def _check(self, other: "ClassFunction") -> None:
        if self.m != other.m:
            raise LankeError(f"degree mismatch: S_{self.m} vs S_{other.m}")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.m, {mu: v + other.values[mu] for mu, v in self.values.items()})

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.m, {mu: v - other.values[mu] for mu, v in self.values.items()})

    def __mul__(self, c: int | Fraction) -> "ClassFunction":
        return ClassFunction(self.m, {mu: v * c for mu, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.m == other.m and dict(self.values) == dict(other.values)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "values": [{"cycle_type": format_partition(mu), "value": _frac_str(v)} for mu, v in self.values.items()],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "ClassFunction":
        if isinstance(data, str):
            data = json.loads(data)
        vals = {parse_partition(e["cycle_type"]) if e["cycle_type"] else (): Fraction(e["value"]) for e in data["values"]}
        return cls(int(data["m"]), vals)


def _frac_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


# -- irreducible characters --------------------------------------------------


def _beta(lam: Partition) -> tuple[int, ...]:
    l = len(lam)
    return tuple(lam[i] + (l - 1 - i) for i in range(l))


def _from_beta(beta: tuple[int, ...]) -> Partition:
    b = sorted(beta, reverse=True)
    l = len(b)
    return tuple(x for x in (b[i] - (l - 1 - i) for i in range(l)) if x > 0)


@lru_cache(maxsize=None)
def _mn(lam: Partition, mu: Partition) -> int:
    """chi^lam at cycle type mu; mu is consumed from the front."""
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    beta = _beta(lam)
    occupied = set(beta)
    total = 0
    for b in beta:
        if b - r >= 0 and (b - r) not in occupied:
            # rim hook of length r; its height is the number of beads jumped
            height = sum(1 for x in beta if b - r < x < b)
            new = tuple(x if x != b else b - r for x in beta)
            total += (-1) ** height * _mn(_from_beta(new), rest)
    return total


def irreducible_character(lam: Iterable[int], bound: int = DEFAULT_CHARACTER_BOUND) -> ClassFunction:
    lam = tuple(lam)
    m = sum(lam)
    if m > bound:
        raise SizeLimitError(f"characters limited to m <= {bound}, got {m}")
    return ClassFunction(m, {mu: Fraction(_mn(lam, mu)) for mu in partitions_of(m)})


def character_table(m: int) -> dict[Partition, ClassFunction]:
    return {lam: irreducible_character(lam) for lam in partitions_of(m)}


def trivial_character(m: int) -> ClassFunction:
    return ClassFunction(m, {mu: Fraction(1) for mu in partitions_of(m)})


def sign_character(m: int) -> ClassFunction:
    return ClassFunction(m, {mu: Fraction(sign_of_class(mu)) for mu in partitions_of(m)})


def character_from_decomposition(m: int, dec: Mapping[Partition, int]) -> ClassFunction:
    out = ClassFunction(m, {mu: Fraction(0) for mu in partitions_of(m)})
    for lam, mult in dec.items():
        if mult:
            out = out + irreducible_character(lam) * mult
    return out


def inner_product(chi: ClassFunction, psi: ClassFunction) -> Fraction:
    """(1/m!) * sum over classes of |class| * chi * psi (values are real)."""
    chi._check(psi)
    total = sum(class_size(mu) * chi.values[mu] * psi.values[mu] for mu in chi.values)
    return Fraction(total, factorial(chi.m))


def decompose(chi: ClassFunction) -> Decomposition:
    """Irreducible constituents with multiplicities (zero ones omitted)."""
    dec: dict[Partition, int] = {}
    for lam in partitions_of(chi.m):
        c = inner_product(chi, irreducible_character(lam))
        if c.denominator != 1 or c < 0:
            raise NotACharacterError(f"multiplicity of S^{format_partition(lam)} is {c}")
        if c:
            dec[lam] = int(c)
    return dec


def decomposition_dim(dec: Mapping[Partition, int]) -> int:
    return sum(mult * hook_dim(lam) for lam, mult in dec.items())


# -- induction and restriction ----------------------------------------------


def induce_product(chi: ClassFunction, psi: ClassFunction) -> ClassFunction:
    """Induce chi x psi from the Young subgroup S_a x S_b up to S_{a+b}."""
    a, b = chi.m, psi.m
    m = a + b
    sums: dict[Partition, Fraction] = {mu: Fraction(0) for mu in partitions_of(m)}
    for alpha, x in chi.values.items():
        for beta, y in psi.values.items():
            mu = tuple(sorted(alpha + beta, reverse=True))
            sums[mu] += class_size(alpha) * class_size(beta) * x * y
    index = Fraction(factorial(m), factorial(a) * factorial(b))
    return ClassFunction(m, {mu: index * s / class_size(mu) for mu, s in sums.items()})


def induced_sign_young(a: int, b: int) -> ClassFunction:
    """Sign of S_a x S_b induced to S_{a+b}."""
    if a < 1 or b < 1:
        raise LankeError("need a, b >= 1")
    return induce_product(sign_character(a), sign_character(b))


def induce_to_next(chi: ClassFunction) -> ClassFunction:
    """Induce from S_m to S_{m+1}."""
    return induce_product(chi, trivial_character(1))


def restrict_to_previous(chi: ClassFunction) -> ClassFunction:
    """Restrict from S_m to S_{m-1} (add a fixed point to each cycle type)."""
    m = chi.m - 1
    return ClassFunction(m, {mu: chi.values[mu + (1,)] for mu in partitions_of(m)})


def mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def induced_cyclic_character(k: int, j: int = 1) -> ClassFunction:
    """Induce the character c -> exp(2*pi*i*j/k) of <(1 2 ... k)> up to S_k.

    ``j`` must be coprime to k so the character is faithful.  The powers
    c^s with gcd(s, k) = d all have cycle type (k/d)^d, and the sum of the
    corresponding roots of unity is the Ramanujan sum mu(k/d), so every
    value is an integer.
    """
    if k < 2:
        raise LankeError("need k >= 2")
    if gcd(j, k) != 1:
        raise LankeError(f"j={j} is not coprime to k={k}")
    vals = {mu: Fraction(0) for mu in partitions_of(k)}
    for d in range(1, k + 1):
        if k % d:
            continue
        mu = (k // d,) * d
        root_sum = mobius(k // d)  # independent of j when gcd(j, k) = 1
        vals[mu] = Fraction(factorial(k) * root_sum, k * class_size(mu))
    return ClassFunction(k, vals)


def kw_multiplicity(lam: Iterable[int], k: int | None = None, i: int = 1) -> int:
    """Standard tableaux of shape lam whose major index is i mod k."""
    lam = tuple(lam)
    k = sum(lam) if k is None else k
    if sum(lam) != k:
        raise LankeError(f"{lam} is not a partition of {k}")
    return sum(1 for t in enumerate_syt(lam) if maj(t) % k == i % k)


def kw_character(k: int, i: int = 1) -> ClassFunction:
    dec = {lam: kw_multiplicity(lam, k, i) for lam in partitions_of(k)}
    return character_from_decomposition(k, dec)

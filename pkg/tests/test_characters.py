from fractions import Fraction
from math import factorial, gcd

import pytest

from lanke.characters import (
    ClassFunction,
    character_from_decomposition,
    character_table,
    class_size,
    decompose,
    decomposition_dim,
    induce_product,
    induce_to_next,
    induced_cyclic_character,
    induced_sign_young,
    inner_product,
    irreducible_character,
    kw_character,
    kw_multiplicity,
    mobius,
    restrict_to_previous,
    sign_character,
    sign_of_class,
    trivial_character,
)
from lanke.combinatorics import hook_dim, partitions_of, restrict_irreducible
from lanke.errors import LankeError, NotACharacterError, SizeLimitError


@pytest.mark.parametrize("m", range(1, 10))
def test_class_sizes_sum_to_group_order(m):
    assert sum(class_size(mu) for mu in partitions_of(m)) == factorial(m)


def test_small_values():
    assert irreducible_character((2, 1))[(1, 1, 1)] == 2
    assert irreducible_character((2, 1))[(3,)] == -1
    assert irreducible_character((2, 1))[(2, 1)] == 0
    for mu in partitions_of(5):
        assert irreducible_character((5,))[mu] == 1
        assert irreducible_character((1,) * 5)[mu] == (-1) ** (5 - len(mu))


@pytest.mark.parametrize("m", range(1, 9))
def test_orthonormality_and_degrees(m):
    table = character_table(m)
    for lam, chi in table.items():
        assert chi.degree == hook_dim(lam)
        for mu, psi in table.items():
            assert inner_product(chi, psi) == (1 if lam == mu else 0)


@pytest.mark.parametrize("m", range(1, 9))
def test_column_orthogonality(m):
    # sum_lambda chi(mu)^2 = |centralizer of mu|
    table = character_table(m)
    for mu in partitions_of(m):
        assert sum(chi[mu] ** 2 for chi in table.values()) == factorial(m) // class_size(mu)


def test_inner_product_examples():
    assert inner_product(irreducible_character((2, 1)), irreducible_character((2, 1))) == 1
    assert inner_product(irreducible_character((3,)), irreducible_character((1, 1, 1))) == 0
    assert inner_product(induced_sign_young(2, 1), irreducible_character((2, 1))) == 1


def test_bound():
    with pytest.raises(SizeLimitError):
        irreducible_character((7, 6))


def test_decompose_examples():
    assert decompose(induced_sign_young(2, 1)) == {(1, 1, 1): 1, (2, 1): 1}
    assert decompose(irreducible_character((2, 2))) == {(2, 2): 1}
    assert decompose(induced_sign_young(3, 2)) == {(1,) * 5: 1, (2, 1, 1, 1): 1, (2, 2, 1): 1}


def test_decompose_rejects_non_characters():
    half = irreducible_character((2, 1)) * Fraction(1, 2)
    with pytest.raises(NotACharacterError):
        decompose(half)
    with pytest.raises(NotACharacterError):
        decompose(trivial_character(3) - irreducible_character((2, 1)))


@pytest.mark.parametrize("n", range(2, 7))
def test_induced_sign_is_multiplicity_free(n):
    dec = decompose(induced_sign_young(n, n - 1))
    expected = {(2,) * i + (1,) * (2 * n - 1 - 2 * i): 1 for i in range(n)}
    assert dec == expected


def test_induction_examples():
    chi = induce_product(trivial_character(1), trivial_character(1))
    assert decompose(chi) == {(2,): 1, (1, 1): 1}
    assert induced_sign_young(1, 1) == chi
    ind = induce_to_next(irreducible_character((2, 1)))
    assert ind.degree == 8
    assert decompose(ind) == {(3, 1): 1, (2, 2): 1, (2, 1, 1): 1}


@pytest.mark.parametrize("m", range(2, 8))
def test_frobenius_reciprocity(m):
    # <Ind chi, psi> = <chi, Res psi> on irreducibles
    for lam in partitions_of(m - 1):
        ind = induce_to_next(irreducible_character(lam))
        for mu in partitions_of(m):
            res = restrict_irreducible(mu)
            assert inner_product(ind, irreducible_character(mu)) == res.get(lam, 0)


@pytest.mark.parametrize("m", range(2, 8))
def test_restriction_matches_branching(m):
    for lam in partitions_of(m):
        res = restrict_to_previous(irreducible_character(lam))
        assert decompose(res) == restrict_irreducible(lam)


def test_mobius():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_cyclic_examples():
    assert induced_cyclic_character(2) == sign_character(2)
    assert induced_cyclic_character(3) == irreducible_character((2, 1))
    assert induced_cyclic_character(4).degree == 6
    with pytest.raises(LankeError):
        induced_cyclic_character(4, 2)


@pytest.mark.parametrize("k", range(2, 8))
def test_cyclic_character_brute_force(k):
    # sum the roots of unity numerically over the cyclic group and compare
    import cmath

    table = {}
    zeta = cmath.exp(2j * cmath.pi / k)
    for s in range(k):
        d = gcd(s, k)
        mu = (k // d,) * d
        table[mu] = table.get(mu, 0) + zeta**s
    chi = induced_cyclic_character(k)
    for mu in partitions_of(k):
        want = factorial(k) // class_size(mu) * table.get(mu, 0) / k
        assert abs(want - float(chi[mu])) < 1e-9


@pytest.mark.parametrize(
    "lam, k, mult",
    [((2, 1), 3, 1), ((4,), 4, 0), ((2, 1, 1), 4, 1), ((3,), 3, 0), ((1, 1), 2, 1)],
)
def test_kw_examples(lam, k, mult):
    assert kw_multiplicity(lam, k) == mult


@pytest.mark.parametrize("k", range(2, 8))
def test_kw_agrees_with_cyclic_for_all_coprime_residues(k):
    base = induced_cyclic_character(k)
    for i in range(1, k):
        if gcd(i, k) == 1:
            assert kw_character(k, i) == base
            assert induced_cyclic_character(k, i) == base
    assert base.degree == factorial(k - 1)


def test_class_function_arithmetic_and_json():
    chi = irreducible_character((3, 1))
    psi = irreducible_character((2, 1, 1))
    s = chi + psi
    assert s - psi == chi
    assert decomposition_dim(decompose(s)) == s.degree == 6
    assert ClassFunction.from_json(s.to_json()) == s
    js = s.to_json()
    assert js["m"] == 4
    assert {e["cycle_type"] for e in js["values"]} == {"4", "3,1", "2,2", "2,1,1", "1,1,1,1"}
    assert all("/" in e["value"] for e in js["values"])
    with pytest.raises(LankeError):
        ClassFunction(3, {(3,): 1})


def test_character_from_decomposition_roundtrip():
    dec = {(3, 2): 2, (2, 2, 1): 1}
    assert decompose(character_from_decomposition(5, dec)) == dec


@pytest.mark.parametrize("m", range(1, 8))
def test_sign_times_irreducible_is_conjugate(m):
    from lanke.combinatorics import conjugate

    for lam in partitions_of(m):
        chi = irreducible_character(lam)
        twisted = ClassFunction(m, {mu: chi[mu] * sign_of_class(mu) for mu in partitions_of(m)})
        assert twisted == irreducible_character(conjugate(lam))

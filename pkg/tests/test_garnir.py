import random

import pytest

from lanke import garnir
from lanke.combinatorics import Tableau, hook_dim, parse_tableau, partitions_of
from lanke.errors import LankeError, SizeLimitError
from lanke.linalg import SparseRationalMatrix, exact


def test_canonical_tabloid_signs():
    assert garnir.canonical_tabloid(((1, 2), (3,))) == (((1, 2), (3,)), 1)
    assert garnir.canonical_tabloid(((2, 1), (3,))) == (((1, 2), (3,)), -1)
    assert garnir.canonical_tabloid(((3, 1), (4, 2))) == (((1, 3), (2, 4)), 1)
    assert garnir.canonical_tabloid(parse_tableau("2,3;1")) == (((1, 2), (3,)), -1)
    with pytest.raises(LankeError):
        garnir.canonical_tabloid(((1, 1), (2,)))


def test_tabloid_space_size():
    # m! / prod(column lengths!)
    assert garnir.tabloid_space((2, 1)).dim == 3
    assert garnir.tabloid_space((2, 2)).dim == 6
    assert garnir.tabloid_space((1, 1, 1)).dim == 1
    with pytest.raises(SizeLimitError):
        garnir.tabloid_space((5, 4))


def test_garnir_vector_example():
    space = garnir.tabloid_space((2, 1))
    t = parse_tableau("1,3;2")
    terms = list(garnir.exchanges(t.columns, 1, 1))
    assert sorted(terms) == [((1, 3), (2,)), ((3, 2), (1,))]
    vec = garnir.garnir_vector(space, t, 1, 1)
    expected = {}
    for cols, coeff in [(t.columns, 1)] + [(s, -1) for s in terms]:
        j, sign = space.locate(cols)
        expected[j] = expected.get(j, 0) + coeff * sign
    assert vec == {j: v for j, v in expected.items() if v}


def test_exchange_counts():
    for t in garnir.tabloid_space((2, 1)).basis:
        assert len(list(garnir.exchanges(t, 1, 1))) == 2
    for t in garnir.tabloid_space((2, 2)).basis:
        assert len(list(garnir.exchanges(t, 1, 2))) == 1
    with pytest.raises(LankeError):
        list(garnir.exchanges(((1, 2), (3,)), 2, 1))
    with pytest.raises(LankeError):
        list(garnir.exchanges(((1, 2), (3,)), 1, 2))


@pytest.mark.parametrize("lam, f", [((2, 1), 2), ((2, 2), 2), ((1, 1, 1, 1), 1), ((3,), 1), ((3, 3, 1), 21)])
def test_quotient_examples(lam, f):
    assert garnir.specht_dim_full(lam) == f
    assert garnir.specht_dim_reduced(lam) == f


@pytest.mark.parametrize("m", range(1, 8))
def test_full_and_reduced_presentations(m):
    for lam in partitions_of(m):
        f = hook_dim(lam)
        assert garnir.specht_dim_full(lam) == f
        assert garnir.specht_dim_reduced(lam) == f


@pytest.mark.parametrize("lam", [(1, 1, 1), (2, 1), (2, 2, 1), (3, 2, 1), (2, 2, 2, 1)])
def test_corollary_on_staircases(lam):
    assert garnir.corollary_applies(lam)
    assert garnir.quotient_dim(lam, "corollary") == hook_dim(lam)
    # same row space as the full generator set
    full = garnir.garnir_matrix(lam, "full")
    cor = garnir.garnir_matrix(lam, "corollary")
    assert exact.rank(full.vstack(cor)) == exact.rank(full) == exact.rank(cor)


def test_corollary_needs_a_staircase():
    assert not garnir.corollary_applies((2, 2))
    # full exchanges alone are not enough on (2,2)
    assert garnir.quotient_dim((2, 2), "corollary") > hook_dim((2, 2))


def test_reduced_mode_generator_choice():
    # (3,3,1): column lengths 3,2,2; column 1 is followed by a column one
    # shorter, column 2 is not
    assert garnir.generator_specs((3, 3, 1), "reduced") == [(1, 2), (2, 1), (2, 2)]
    assert garnir.generator_specs((3, 3, 1), "full") == [(1, 1), (1, 2), (2, 1), (2, 2)]
    with pytest.raises(LankeError):
        garnir.generator_specs((2, 1), "bogus")


@pytest.mark.parametrize("lam", [(2, 1), (3, 1), (2, 2), (2, 1, 1), (3, 2), (2, 2, 1)])
def test_garnir_subspace_is_invariant(lam):
    space = garnir.tabloid_space(lam)
    G = garnir.garnir_matrix(lam, "full")
    E = exact.rref(G)
    rng = random.Random(sum(lam))
    m = sum(lam)
    for _ in range(10):
        sigma = list(range(1, m + 1))
        rng.shuffle(sigma)
        for row in E.rows:
            image: dict = {}
            for j, v in row.items():
                cols = tuple(tuple(sigma[x - 1] for x in c) for c in space.basis[j])
                k, s = space.locate(cols)
                image[k] = image.get(k, 0) + s * v
            assert E.contains(image)


@pytest.mark.parametrize("lam", [(2, 1), (2, 2), (3, 1), (2, 2, 1), (3, 2, 1)])
def test_standard_only_generators(lam):
    # fewer generators can only make the quotient larger
    d = garnir.quotient_dim(lam, "full", standard_only=True)
    assert d >= hook_dim(lam)


def test_standard_only_does_not_span_in_general():
    assert garnir.quotient_dim((2, 1), "full", standard_only=True) == 2
    assert garnir.quotient_dim((2, 2), "full", standard_only=True) == 3
    assert garnir.quotient_dim((3, 2, 1), "full", standard_only=True) == 34


def test_standard_tableaux_span_the_quotient():
    # the images of standard tableaux form a basis of M / G
    for lam in [(2, 1), (2, 2), (3, 2), (2, 2, 1), (3, 2, 1)]:
        space = garnir.tabloid_space(lam)
        G = garnir.garnir_matrix(lam, "full")
        std = [i for i, c in enumerate(space.basis) if Tableau.from_columns(lam, c).is_standard()]
        assert len(std) == hook_dim(lam)
        extra = SparseRationalMatrix(len(std), space.dim, [{i: 1} for i in std])
        assert exact.rank(G.vstack(extra)) == space.dim

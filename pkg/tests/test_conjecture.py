import pytest

from lanke import conjecture
from lanke.characters import decompose, irreducible_character, kw_multiplicity, restrict_to_previous, sign_character
from lanke.combinatorics import partitions_of
from lanke.errors import ShapeError, SizeLimitError


def test_lie_characters():
    assert conjecture.lie_character(2) == sign_character(2)
    assert conjecture.lie_character(3) == irreducible_character((2, 1))
    assert decompose(conjecture.lie_character(4)) == {(3, 1): 1, (2, 1, 1): 1}
    with pytest.raises(SizeLimitError):
        conjecture.lie_character(8)


@pytest.mark.parametrize("k", range(2, 7))
def test_kw_multiplicities_match_engine(k):
    dec = decompose(conjecture.lie_character(k, check=False))
    for lam in partitions_of(k):
        assert kw_multiplicity(lam, k) == dec.get(lam, 0)


def test_whitehouse_examples():
    w4 = conjecture.whitehouse_character(3)
    assert w4 == irreducible_character((2, 2))
    assert w4.degree == 2
    assert conjecture.whitehouse_character(4).degree == 6


@pytest.mark.parametrize("k", range(3, 6))
def test_whitehouse_restricts_to_lie(k):
    w = conjecture.whitehouse_character(k)
    assert restrict_to_previous(w) == conjecture.lie_character(k)


def test_add_rows():
    assert conjecture.add_rows((2, 2), 3, 3) == (2, 2, 2)
    assert conjecture.add_rows((3, 1), 2, 4) == (3, 1)
    assert conjecture.add_rows((3, 1), 3, 4) == (3, 3, 1)
    with pytest.raises(ShapeError):
        conjecture.add_rows((3, 1), 3, 3)


def test_prediction_33_is_corollary():
    rep = conjecture.predict(3, 3)
    assert rep.lifted_shapes == {(2, 2, 2): 1}
    assert rep.predicted_decomposition == {(2, 2, 1): 1}
    assert rep.predicted_dim == 5


@pytest.mark.parametrize("n, k", [(2, 3), (2, 4), (2, 5), (3, 3), (4, 3)])
def test_verdict_match(n, k):
    rep = conjecture.conjecture_check(n, k)
    assert rep.verdict == "match"
    assert rep.engine_dim == rep.predicted_dim


def test_dims_only():
    rep = conjecture.conjecture_check(3, 3, dims_only=True)
    assert rep.verdict == "dim-match-only"
    assert rep.engine_decomposition is None


def test_engine_unavailable_keeps_prediction():
    rep = conjecture.conjecture_check(3, 5, max_basis=1000)
    assert rep.verdict == "engine-unavailable"
    assert rep.predicted_dim == 1077
    assert rep.engine_dim is None


def test_prediction_35():
    rep = conjecture.predict(3, 5)
    assert rep.predicted_dim == 1077
    assert rep.bad_constituents == []
    js = rep.to_json()
    assert js["W_nk"] == {"4,4,2": 1, "4,3,1,1,1": 1, "4,2,2,2": 1}


def test_report_34_has_both_numbers():
    js = conjecture.conjecture_check(3, 4).to_json()
    assert js["engine_dim"] == 56 and js["predicted_dim"] == 56
    assert js["engine_decomposition"] == js["predicted_decomposition"] == {"3,3,1": 1, "3,2,1,1": 1}

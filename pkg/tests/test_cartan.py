import pytest
from hypothesis import given, strategies as st

from oracles import cartan_matrix, form_matrix, parity
from osp_shuffle.cartan import RootDatum, Weight, datum


@pytest.mark.parametrize("n", range(1, 7))
def test_matrices_match_definition(n):
    dat = datum(n)
    assert [list(r) for r in dat.cartan] == cartan_matrix(n)
    assert [list(r) for r in dat.form] == form_matrix(n)
    assert dat.symmetrizer == tuple([2] * (n - 1) + [1])
    for i in range(1, n + 1):
        assert dat.parity(i) == parity(n, i)
        for j in range(1, n + 1):
            assert dat.b(i, j) == dat.b(j, i)


def test_n2_values():
    dat = datum(2)
    assert dat.cartan == ((2, -1), (-2, 2))
    assert dat.form == ((4, -2), (-2, 2))
    assert dat.s(1) == 2 and dat.s(2) == 1
    assert dat.adjacent(1, 2) and not dat.adjacent(1, 1)


def test_rank_one():
    dat = datum(1)
    assert dat.form == ((2,),)
    full = dat.full_positive_roots()
    assert full["all"] == [Weight((1,)), Weight((2,))]
    assert full["odd"] == [Weight((1,))]
    assert full["even"] == [Weight((2,))]


def test_n2_root_tables():
    full = datum(2).full_positive_roots()
    w = lambda *c: Weight(c)
    assert set(full["reduced"]) == {w(1, 0), w(0, 1), w(1, 1), w(1, 2)}
    assert set(full["all"]) == {w(1, 0), w(0, 1), w(1, 1), w(1, 2), w(0, 2), w(2, 2)}
    assert set(full["odd"]) == {w(0, 1), w(1, 1)}
    assert set(full["reduced_odd"]) == set(full["odd"])
    assert set(full["even"]) == {w(1, 0), w(1, 2), w(0, 2), w(2, 2)}


@pytest.mark.parametrize("n", range(1, 7))
def test_root_counts(n):
    dat = datum(n)
    full = dat.full_positive_roots()
    assert len(dat.reduced_positive_roots()) == n * n
    assert len(full["reduced_odd"]) == n
    assert len(full["all"]) == n * n + n
    assert len({r.weight for r in dat.reduced_positive_roots()}) == n * n


@pytest.mark.parametrize("n", range(2, 6))
def test_root_norms(n):
    dat = datum(n)
    for r in dat.reduced_positive_roots():
        norm = dat.bilinear(r.weight, r.weight)
        if dat.weight_parity(r.weight) % 2:
            assert norm == 2
        else:
            assert norm == 4


def test_root_constructor_errors():
    dat = datum(3)
    with pytest.raises(ValueError):
        dat.alpha(2, 1)
    with pytest.raises(ValueError):
        dat.beta(2, 2)
    with pytest.raises(ValueError):
        dat.root("gamma", 1, 2)
    with pytest.raises(ValueError):
        RootDatum(0)
    with pytest.raises(ValueError):
        Weight((1, -1))


def test_beta_weight():
    dat = datum(3)
    assert dat.beta(1, 2).weight == Weight((1, 2, 2))
    assert dat.beta(1, 3).weight == Weight((1, 1, 2))
    assert str(dat.beta(1, 2).weight) == "a1 + 2a2 + 2a3"


def test_big_n_and_p():
    dat = datum(2)
    nu = Weight((1, 2))
    # sum over unordered pairs of letters in a word of weight nu
    letters = [1, 2, 2]
    expected = sum(dat.b(letters[a], letters[c]) for a in range(3) for c in range(a + 1, 3))
    assert dat.bigN(nu) == expected
    assert dat.bigP(nu) == 1
    assert dat.bigP(Weight((0, 3))) == 3


weights3 = st.lists(st.integers(0, 4), min_size=3, max_size=3).map(lambda c: Weight(tuple(c)))


@given(weights3, weights3, weights3)
def test_bilinear_is_symmetric_bilinear(a, b, c):
    dat = datum(3)
    assert dat.bilinear(a, b) == dat.bilinear(b, a)
    assert dat.bilinear(a + b, c) == dat.bilinear(a, c) + dat.bilinear(b, c)
    m = form_matrix(3)
    assert dat.bilinear(a, b) == sum(a.coeffs[i] * m[i][j] * b.coeffs[j] for i in range(3) for j in range(3))


@given(st.lists(st.integers(1, 3), max_size=8))
def test_weight_of_word(word):
    dat = datum(3)
    nu = dat.weight_of_word(word)
    assert nu.coeffs == tuple(word.count(i) for i in (1, 2, 3))
    assert nu.height == len(word)

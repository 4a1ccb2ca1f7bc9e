import itertools
import json
from fractions import Fraction

import numpy as np
import pytest

from osp_shuffle.bases import dual_canonical, dual_pbw, kappa
from osp_shuffle.cartan import Weight, datum
from osp_shuffle.scalar import LaurentPoly, RationalFunction
from osp_shuffle.shuffle import Element
from osp_shuffle.repcheck import (
    BasisVector,
    GradedSuperModule,
    QPolynomial,
    QuiverData,
    character,
    cuspidal_module,
    dump_module,
    highest_weight,
    induced_character,
    load_module,
    power_character,
    q_polynomial,
    standard_character,
    verify_relations,
)
from osp_shuffle.words import dominant_lyndon_words, dominant_words, iota_plus, iota_plus_inverse, xi_and_s

TWO_ODD = LaurentPoly({1: -1, -1: 1})


def test_quiver_orientations():
    dat = datum(3)
    up = QuiverData.oriented(dat, "up")
    down = QuiverData.oriented(dat, "down")
    assert up.arrows(1, 2) == 1 and up.arrows(2, 1) == 0
    assert down.arrows(2, 1) == 1
    with pytest.raises(ValueError):
        QuiverData.oriented(dat, "sideways")
    with pytest.raises(ValueError):
        QuiverData(dat, {(1, 3): 1})
    with pytest.raises(ValueError):
        QuiverData(dat, {(1, 2): 1, (2, 1): 1, (2, 3): 1})


def test_q_polynomials():
    dat = datum(2)
    up = QuiverData.oriented(dat, "up")
    assert q_polynomial(up, 1, 2) == QPolynomial(-1, 1, 2)
    assert q_polynomial(up, 2, 1) == QPolynomial(1, 2, 1)
    assert q_polynomial(up, 2, 2).is_zero()
    assert str(q_polynomial(up, 1, 2)) == "-(u - v^2)"
    u = np.array([[Fraction(2)]], dtype=object)
    v = np.array([[Fraction(3)]], dtype=object)
    assert q_polynomial(up, 1, 2).evaluate(u, v)[0, 0] == 7
    # (u^2 - v) divided by u: (a^2 - b^2) / (a - b) = a + b
    assert QPolynomial(1, 2, 1).divided_difference_u(u, v)[0, 0] == 5


def test_cuspidal_shapes():
    dat = datum(3)
    m = cuspidal_module(dat, dat.alpha(1, 2))
    assert m.dimension == 1 and m.blocks() == [(1, 2)]
    m = cuspidal_module(dat, dat.beta(1, 2))
    assert m.dimension == 2 and m.blocks() == [(1, 2, 3, 3, 2)]
    assert [b.label for b in m.basis] == ["v1", "v-1"]
    assert character(m) == Element.word((1, 2, 3, 3, 2), TWO_ODD)


@pytest.mark.parametrize("orientation", ["up", "down"])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_cuspidal_modules_satisfy_relations(n, orientation):
    dat = datum(n)
    quiver = QuiverData.oriented(dat, orientation)
    for r in dat.reduced_positive_roots():
        report = verify_relations(cuspidal_module(dat, r), quiver)
        assert report.ok, str(report)
        assert report.checked > 0
        assert not report.warnings


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cuspidal_characters_are_dual_root_vectors(n):
    dat = datum(n)
    for r in dat.reduced_positive_roots():
        ch = character(cuspidal_module(dat, r))
        assert ch == dual_pbw(dat, iota_plus(dat, r), route="checked")
        assert highest_weight(ch) == iota_plus(dat, r)


def test_perturbed_module_is_localized():
    dat = datum(3)
    m = cuspidal_module(dat, dat.beta(1, 2)).with_tau_entry(3, 1, 0, 2)
    report = verify_relations(m)
    assert not report.ok
    assert report.relations_violated() == {"7", "8"}
    for v in report.violations:
        assert v.block == (1, 2, 3, 3, 2)
        assert v.indices == (3,)
        assert v.witness == "v1"
    assert "relation 7 at (3,) on e(1,2,3,3,2) (witness v1)" in str(report)


def test_wrong_degree_breaks_homogeneity():
    dat = datum(2)
    m = cuspidal_module(dat, dat.beta(1, 2))
    bad = GradedSuperModule(m.n, m.nu, [BasisVector("v1", 3, 1, m.basis[0].block), m.basis[1]], m.y, m.tau)
    report = verify_relations(bad)
    assert "homogeneity" in report.relations_violated()


def test_wrong_weight_block():
    m = GradedSuperModule(2, Weight((1, 1)), [BasisVector("v", 0, 0, (1, 1))],
                          [np.zeros((1, 1), dtype=object)] * 2, [np.zeros((1, 1), dtype=object)])
    assert "1" in verify_relations(m).relations_violated()


def test_nonadjacent_letters_warn():
    zero = [[Fraction(0)]]
    m = GradedSuperModule(3, Weight((1, 0, 1)), [BasisVector("v", 0, 0, (1, 3))], [zero, zero], [zero])
    with pytest.warns(UserWarning, match="non-adjacent"):
        report = verify_relations(m)
    assert report.ok
    assert report.warnings


def test_module_shape_errors():
    with pytest.raises(ValueError):
        GradedSuperModule(2, Weight((1, 1)), [BasisVector("v", 0, 0, (1, 2))], [[[0]]], [])
    with pytest.raises(ValueError):
        GradedSuperModule(2, Weight((1, 0)), [BasisVector("v", 0, 0, (1, 2))], [[[0]]], [])


def test_json_round_trip():
    dat = datum(3)
    m = cuspidal_module(dat, dat.beta(1, 3))
    payload = json.loads(json.dumps(dump_module(m)))
    back = load_module(payload)
    assert dump_module(back) == dump_module(m)
    assert verify_relations(back).ok
    assert load_module(json.dumps(payload)).basis == m.basis


@pytest.mark.parametrize("mutate", [
    lambda p: p.pop("basis"),
    lambda p: p["y"][0].pop(),
    lambda p: p["basis"][0].update(block=[1, 2, 9, 3]),
    lambda p: p.update(nu=[1, -1, 2]),
])
def test_malformed_module_files(mutate):
    dat = datum(3)
    payload = dump_module(cuspidal_module(dat, dat.beta(1, 3)))
    mutate(payload)
    with pytest.raises(ValueError):
        load_module(payload)


def test_induced_character_order():
    # the character of M o N is ch(N) * ch(M)
    a, b = Element.word((1,)), Element.word((2,))
    assert induced_character(2, a, b) == Element({(1, 2): 1, (2, 1): LaurentPoly.q(2)})


@pytest.mark.parametrize("n", [1, 2, 3])
def test_power_characters(n):
    dat = datum(n)
    for w in dominant_lyndon_words(dat):
        root = iota_plus_inverse(dat, w)
        for m in (1, 2, 3):
            if m * len(w) > 8:
                continue
            xi, s = xi_and_s(dat, w * m)
            b = dual_canonical(dat, dat.weight_of_word(w * m))[w * m]
            assert power_character(dat, root, m) == b.scale(LaurentPoly.q(-s, -1 if xi % 2 else 1))


@pytest.mark.parametrize("n, max_height", [(1, 6), (2, 6), (3, 6)])
def test_standard_characters(n, max_height):
    dat = datum(n)
    for h in range(1, max_height + 1):
        for c in itertools.product(range(h + 1), repeat=n):
            if sum(c) != h:
                continue
            for w in dominant_words(dat, Weight(c)):
                ch = standard_character(dat, w)
                assert ch == dual_pbw(dat, w, route="product")
                assert ch.max_word() == (w, RationalFunction(kappa(dat, w)))


def test_highest_weight_of_zero():
    with pytest.raises(ValueError):
        highest_weight(Element())

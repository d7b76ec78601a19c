from fractions import Fraction

import pytest

from application.contraction import (DIVERGENT, EXACT, HIGHER_ORDER, LINEAR, MISMATCH, ContractionMap,
                                     check_contraction, classify_ratio, contraction_residual, ratio_detail,
                                     relation_ids)
from application.errors import DegenerateEpsilon, UnknownGenerator
from application.scalar_series import ExactScalar


@pytest.fixture(scope="module")
def contraction():
    return ContractionMap(Fraction(1, 10), 1, 2)


@pytest.mark.parametrize("coarse, fine, expected", [
    (0, 0, EXACT),
    (1, 0, HIGHER_ORDER),
    (2, 1, LINEAR),
    (Fraction(9, 5), 1, LINEAR),
    (8, 1, HIGHER_ORDER),
    (1, 2, DIVERGENT),
    (1, 1, MISMATCH),
])
def test_classify_ratio(coarse, fine, expected):
    assert classify_ratio(coarse, fine)[0] == expected


def test_degenerate_epsilon():
    with pytest.raises(DegenerateEpsilon):
        ContractionMap(0)
    # ε~ = -ε + ξε² vanishes at ε = 1/ξ
    with pytest.raises(DegenerateEpsilon):
        ContractionMap(Fraction(1, 2), 2, 1)


def test_push_and_pull_back(contraction):
    target = contraction.target.algebra
    source = contraction.source.algebra
    assert contraction.epsilon == ExactScalar.of(Fraction(1, 10))
    assert contraction.push(target.gen('E_C')) == source.gen('E').scale(Fraction(1, 10))
    assert contraction.push(target.gen('H_A')) == source.gen('H') + source.gen('Ht')
    x = target.gen('E_A') * target.gen('F_C')
    assert contraction.pull_back(contraction.push(x)) == x


def test_relation_ids(contraction):
    ids = relation_ids(contraction)
    assert "rule:F_A.E_A" in ids
    assert "coproduct:H_C" in ids
    assert ids[-1] == "rmatrix"
    with pytest.raises(UnknownGenerator):
        contraction_residual(contraction, "antipode:E_A")


def test_rmatrix_residual_lives_on_the_contracted_algebra(contraction):
    residual = contraction.rmatrix_residual()
    assert residual.algebra is contraction.target.algebra
    assert contraction.rmatrix_residual() == residual
    assert contraction_residual(contraction, "rmatrix") == residual.magnitude()


def test_ratio_detail():
    assert ratio_detail([LINEAR, LINEAR]) == LINEAR
    assert ratio_detail([EXACT, EXACT]) == EXACT
    assert "accepted as O(ε)" in ratio_detail([LINEAR, HIGHER_ORDER])
    assert "must tend to -1" in ratio_detail([DIVERGENT, LINEAR])


@pytest.mark.parametrize("xi", [0, 1])
def test_contraction_converges(xi):
    result, parts = check_contraction(Fraction(1, 10), xi, 2, -1, threads=2)
    assert result.passed, result.detail
    assert {"contraction:rule:F_A.E_A", "contraction:coproduct:E_A", "contraction:rmatrix"} <= {p.name for p in parts}
    for part in parts:
        assert len(part.data["residuals"]) == 3


def test_same_sign_pairing_diverges():
    result, parts = check_contraction(Fraction(1, 10), 0, 2, 1, ["coproduct:E_A"])
    assert not result.passed
    assert DIVERGENT in parts[0].data["classification"]


def test_same_sign_pairing_breaks_the_rmatrix():
    result, parts = check_contraction(Fraction(1, 10), 0, 2, 1, ["rmatrix"])
    assert not result.passed
    assert DIVERGENT in parts[0].data["classification"]


@pytest.mark.slow
def test_wrong_pairing_of_the_rmatrix_diverges():
    result, parts = check_contraction(Fraction(1, 10), 0, 3, -1, ["rmatrix", "rmatrix:wrong_pairing"])
    by_name = {p.name: p for p in parts}
    assert by_name["contraction:rmatrix"].passed
    assert not by_name["contraction:rmatrix:wrong_pairing"].passed
    assert not result.passed

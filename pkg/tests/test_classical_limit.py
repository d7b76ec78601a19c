import random
from fractions import Fraction

import pytest

from application.classical_limit import (WedgeTensor, build_classical_r, build_iso3, build_isod, build_rhat_d,
                                         check_classical_d, check_classical_suite,
                                         check_no_quasitriangular_completion_witness, check_rhat_completion,
                                         check_twist_obstruction, cobracket, exact_sqrt, n_squared, schouten_bracket,
                                         solve_linear)
from application.errors import DegenerateParameter, RankMismatch, UnknownGenerator
from application.scalar_series import I, ExactScalar

XI_VALUES = [0, 1, -2, Fraction(3, 5)]


@pytest.mark.parametrize("xi", XI_VALUES)
def test_three_dimensional_identities(xi):
    for result in check_classical_suite(xi):
        assert result.passed, "{}: {}".format(result.name, result.detail)


@pytest.mark.parametrize("xi", XI_VALUES)
def test_completion_of_rhat_is_the_casimir(xi):
    result = check_rhat_completion(xi)
    assert result.passed, result.detail


def test_twist_obstruction_needs_xi():
    assert check_twist_obstruction(1).passed
    assert check_twist_obstruction(0).detail == "ξ = 0, nothing removed"


@pytest.mark.parametrize("d", range(2, 7))
def test_identities_in_d_dimensions(d):
    results = check_classical_d(d)
    names = [r.name for r in results]
    assert "mcybe:d={}".format(d) in names
    for result in results:
        assert result.passed, "{}: {}".format(result.name, result.detail)


@pytest.mark.parametrize("d, solvable", [(2, False), (3, True), (4, False), (5, False), (6, False)])
def test_completion_exists_only_in_three_dimensions(d, solvable):
    result = check_no_quasitriangular_completion_witness(d)
    assert result.passed
    assert result.data["solvable"] is solvable


def test_lightlike_n_needs_no_completion():
    n = [1, 1, 0, 0]
    assert n_squared(n, 4) == 0
    result = check_no_quasitriangular_completion_witness(4, n)
    assert result.passed
    assert result.data["solvable"] is True


def test_dimension_and_n_are_validated():
    with pytest.raises(DegenerateParameter):
        build_isod(7)
    with pytest.raises(DegenerateParameter):
        build_isod(1)
    with pytest.raises(DegenerateParameter):
        build_rhat_d(4, [1, 0])


def test_unknown_cobracket_generator():
    with pytest.raises(UnknownGenerator):
        cobracket('Q_0')
    assert cobracket('P_0', 1).is_zero()


def test_exact_square_roots():
    assert exact_sqrt(Fraction(9, 4)) == ExactScalar.of(Fraction(3, 2))
    assert exact_sqrt(-4) == I * 2
    assert exact_sqrt(ExactScalar(0, 2)) == ExactScalar(1, 1)
    assert exact_sqrt(2) is None


def test_exact_linear_solver():
    one = ExactScalar.of(1)
    assert solve_linear([{'a': one}, {'a': one, 'b': one}], {'a': ExactScalar.of(3), 'b': one}) == [2, 1]
    assert solve_linear([{'a': one}], {'a': one, 'b': one}) is None


def random_basis_change(dim, rng, steps=12):
    """
    Random invertible rational matrix with its inverse, built from elementary row operations
    """
    matrix = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    inverse = [row[:] for row in matrix]
    for _ in range(steps):
        i, j = rng.sample(range(dim), 2)
        c = Fraction(rng.randint(-2, 2))
        for k in range(dim):
            matrix[i][k] += c * matrix[j][k]
        for k in range(dim):
            inverse[k][j] -= c * inverse[k][i]
    for i in range(dim):
        s = Fraction(rng.choice([-3, -1, 2, 5]), rng.choice([1, 2, 3]))
        matrix[i] = [s * x for x in matrix[i]]
        for k in range(dim):
            inverse[k][i] /= s
    return matrix, inverse


def random_tensor(g, rng, count=6):
    components = {}
    for _ in range(count):
        key = (rng.randrange(g.dim), rng.randrange(g.dim))
        components[key] = ExactScalar(Fraction(rng.randint(-4, 4), rng.randint(1, 3)), rng.randint(-1, 1))
    return WedgeTensor(g, 2, {k: c for k, c in components.items() if c})


@pytest.mark.parametrize("seed", range(3))
def test_schouten_bracket_commutes_with_a_change_of_basis(seed):
    rng = random.Random(seed)
    for g in (build_iso3(), build_isod(4)):
        matrix, inverse = random_basis_change(g.dim, rng)
        h = g.change_basis(matrix, inverse)
        assert h.dim == g.dim
        assert h.check_jacobi().passed
        tensors = [random_tensor(g, rng), random_tensor(g, rng)]
        if g.dim == 6:
            tensors.append(build_classical_r(Fraction(3, 5), g))
        for r1 in tensors:
            for r2 in tensors:
                expected = schouten_bracket(r1, r2).transform(inverse, h)
                assert schouten_bracket(r1.transform(inverse, h), r2.transform(inverse, h)) == expected


def test_change_basis_rejects_a_wrong_inverse():
    g = build_iso3()
    matrix, inverse = random_basis_change(g.dim, random.Random(1))
    inverse[0][0] += 1
    with pytest.raises(DegenerateParameter):
        g.change_basis(matrix, inverse)


def test_tensors_of_different_rank_do_not_add():
    g = build_iso3()
    with pytest.raises(RankMismatch):
        build_classical_r(0, g) + g.basis('P0')

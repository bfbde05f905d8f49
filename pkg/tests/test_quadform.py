from __future__ import annotations

from fractions import Fraction
import random

import pytest
import sympy

from realsurf_app.core.errors import (
    DegenerateWitnessError,
    InvalidRadicandError,
    LengthMismatchError,
    NotAWitnessError,
    SingularRestrictionError,
)
from realsurf_app.core.quadform import (
    DiagForm,
    QuadExtElem,
    eval_form,
    find_small_isotropic_vector,
    split_witness,
    squarefree_kernel,
)


def elem(p: object, q: object, a: int) -> QuadExtElem:
    return QuadExtElem(Fraction(p), Fraction(q), a)


def sympy_matrix(rows: tuple[tuple[Fraction, ...], ...]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows])


def sympy_diag(values: tuple[Fraction, ...]) -> sympy.Matrix:
    return sympy.diag(*[sympy.Rational(x.numerator, x.denominator) for x in values])


def planted_form(rng: random.Random, a: int, n: int) -> tuple[DiagForm, list[QuadExtElem]] | None:
    """A form with a zero at ``r + s*sqrt(a)``, obtained by solving for its last two coefficients."""
    r = [rng.randint(-4, 4) for _ in range(n)]
    s = [rng.randint(-4, 4) for _ in range(n)]
    fixed = [Fraction(rng.choice([-3, -2, -1, 1, 2, 5])) for _ in range(n - 2)]
    squares = [Fraction(ri * ri + a * si * si) for ri, si in zip(r, s)]
    products = [Fraction(ri * si) for ri, si in zip(r, s)]
    known_square = sum((c * x for c, x in zip(fixed, squares)), Fraction(0))
    known_product = sum((c * x for c, x in zip(fixed, products)), Fraction(0))
    ax, ay, bx, by = squares[-2], squares[-1], products[-2], products[-1]
    det = ax * by - ay * bx
    if det == 0:
        return None
    cx = (-known_square * by + known_product * ay) / det
    cy = (-known_product * ax + known_square * bx) / det
    if cx == 0 or cy == 0:
        return None
    form = DiagForm(tuple(fixed) + (cx, cy))
    return form, [elem(ri, si, a) for ri, si in zip(r, s)]


# --- arithmetic ---


@pytest.mark.parametrize(("a", "expected"), [(12, 3), (-8, -2), (7, 7), (1, 1), (-1, -1), (72, 2), (50, 2)])
def test_squarefree_kernel(a: int, expected: int) -> None:
    assert squarefree_kernel(a) == expected


def test_squarefree_kernel_rejects_zero() -> None:
    with pytest.raises(InvalidRadicandError):
        squarefree_kernel(0)


def test_elements_reduce_the_radicand() -> None:
    assert elem(1, 1, 8) == elem(1, 2, 2)
    assert QuadExtElem.root(2) * QuadExtElem.root(2) == QuadExtElem.rational(2, 2)
    assert elem(3, 1, 5).norm() == 4
    with pytest.raises(InvalidRadicandError):
        QuadExtElem.root(9)


def test_eval_form() -> None:
    form = DiagForm((1, 1, -3))
    assert eval_form(form, [elem(1, 0, 2), elem(0, 1, 2), elem(1, 0, 2)]).is_zero
    value = eval_form(DiagForm((1, 2)), [elem(1, 1, 3), elem(0, 1, 3)])
    assert value == elem(10, 2, 3)
    with pytest.raises(LengthMismatchError):
        eval_form(form, [elem(1, 0, 2)])


# --- splitting ---


def test_split_sum_of_two_squares() -> None:
    result = split_witness(DiagForm((1, 1)), -1, [QuadExtElem.root(-1), QuadExtElem.rational(1, -1)])
    assert result.a == -1
    assert result.b == 1
    assert result.q_prime.dimension == 0
    assert result.split_diagonal == (1, 1)


def test_split_ternary_form() -> None:
    witness = [elem(1, 0, 2), elem(0, 1, 2), elem(1, 0, 2)]
    result = split_witness(DiagForm((1, 1, -3)), 2, witness)
    assert result.b == 1
    assert result.q_prime.coefficients == (6,)
    assert [row[2] for row in result.basis_change] == [3, 0, 1]
    assert result.split_diagonal == (1, -2, 6)
    assert result.to_document()["q_prime"] == ["6"]


def test_split_rejects_bad_witnesses() -> None:
    with pytest.raises(NotAWitnessError):
        split_witness(DiagForm((1, 1)), 2, [QuadExtElem.root(2), QuadExtElem.rational(1, 2)])
    with pytest.raises(DegenerateWitnessError):
        split_witness(DiagForm((1, -1)), 2, [QuadExtElem.root(2), QuadExtElem.root(2)])
    with pytest.raises(DegenerateWitnessError):
        split_witness(DiagForm((1, -1)), 3, [QuadExtElem.rational(1, 3), QuadExtElem.rational(1, 3)])
    with pytest.raises(LengthMismatchError):
        split_witness(DiagForm((1, 1, 1)), -1, [QuadExtElem.root(-1), QuadExtElem.rational(1, -1)])
    with pytest.raises(InvalidRadicandError):
        split_witness(DiagForm((1, 1)), 4, [QuadExtElem.root(-1), QuadExtElem.rational(1, -1)])


def test_split_rejects_rationally_isotropic_plane() -> None:
    witness = [elem(1, 0, 2), elem(1, 0, 2), elem(0, 1, 2), elem(0, 1, 2)]
    with pytest.raises(SingularRestrictionError):
        split_witness(DiagForm((1, -1, 1, -1)), 2, witness)


def test_split_planted_witnesses() -> None:
    rng = random.Random(2718)
    trials = 0
    while trials < 100:
        a = rng.choice([2, 3, 5, 7, -1, -2, -3])
        planted = planted_form(rng, a, rng.randint(2, 5))
        if planted is None:
            continue
        form, witness = planted
        rational_part = [w.p for w in witness]
        root_part = [w.q for w in witness]
        dependent = all(
            rational_part[i] * root_part[j] == rational_part[j] * root_part[i]
            for i in range(form.dimension)
            for j in range(i + 1, form.dimension)
        )
        if dependent or form.value(tuple(root_part)) == 0:
            continue
        trials += 1
        result = split_witness(form, a, witness)

        transform = sympy_matrix(result.basis_change)
        original = sympy_diag(form.coefficients)
        split = sympy_diag(result.split_diagonal)
        assert transform.T * original * transform == split
        assert split.det() == transform.det() ** 2 * original.det()

        # The first two basis vectors recombine into the witness.
        for i in range(form.dimension):
            assert result.basis_change[i][0] == witness[i].q
            assert result.basis_change[i][1] == witness[i].p


# --- isotropy search ---


def test_find_small_isotropic_vector() -> None:
    form = DiagForm((1, 1, -2))
    vector = find_small_isotropic_vector(form, height=5)
    assert vector is not None
    assert any(vector)
    assert form.value(vector) == 0


def test_find_small_isotropic_vector_misses_definite_forms() -> None:
    assert find_small_isotropic_vector(DiagForm((1, 1, 1)), height=4) is None
    assert find_small_isotropic_vector(DiagForm((1,)), height=4) is None

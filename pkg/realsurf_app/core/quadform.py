"""Diagonal rational quadratic forms and their splitting along a quadratic witness.

If a form Q over the rationals has a nontrivial zero ``v = r + s*sqrt(a)`` over
``Q(sqrt(a))`` then ``Q`` splits off the binary form ``b (y0^2 - a y1^2)`` with
``b = Q(s)``; :func:`split_witness` builds the change of basis explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
import logging
from math import isqrt

import sympy

from realsurf_app.constants.enumeration_constants import ISOTROPY_SEARCH_HEIGHT
from realsurf_app.core.errors import (
    DegenerateWitnessError,
    InvalidInputError,
    InvalidRadicandError,
    LengthMismatchError,
    NotAWitnessError,
    SingularRestrictionError,
)
from realsurf_app.core.poly import format_rational, to_rational

logger = logging.getLogger(__name__)

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


def squarefree_kernel(a: int) -> int:
    """The squarefree integer ``k`` with ``a = k * n^2``; keeps the sign of ``a``."""
    if a == 0:
        raise InvalidRadicandError("The radicand must be nonzero.")
    sign = -1 if a < 0 else 1
    rest = abs(a)
    kernel = 1
    factor = 2
    while factor * factor <= rest:
        while rest % factor == 0:
            rest //= factor
            if rest % factor == 0:
                rest //= factor
            else:
                kernel *= factor
        factor += 1
    return sign * kernel * rest


@dataclass(frozen=True, slots=True)
class QuadExtElem:
    """``p + q*sqrt(a)`` in ``Q(sqrt(a))``; ``a`` is reduced to its squarefree kernel."""

    p: Fraction
    q: Fraction
    a: int

    def __post_init__(self) -> None:
        if isinstance(self.a, bool) or not isinstance(self.a, int):
            raise InvalidRadicandError(f"The radicand must be an integer, got {self.a!r}.")
        kernel = squarefree_kernel(self.a)
        if kernel == 1:
            raise InvalidRadicandError(f"{self.a} is a perfect square.")
        object.__setattr__(self, "p", to_rational(self.p))
        object.__setattr__(self, "q", to_rational(self.q) * isqrt(self.a // kernel))
        object.__setattr__(self, "a", kernel)

    @classmethod
    def rational(cls, value: object, a: int) -> QuadExtElem:
        return cls(to_rational(value), Fraction(0), a)

    @classmethod
    def root(cls, a: int) -> QuadExtElem:
        return cls(Fraction(0), Fraction(1), a)

    @property
    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def _coerce(self, other: QuadExtElem | int | Fraction) -> QuadExtElem:
        if isinstance(other, QuadExtElem):
            if other.a != self.a:
                raise InvalidInputError("Elements live in different quadratic extensions.")
            return other
        return QuadExtElem.rational(other, self.a)

    def __add__(self, other: QuadExtElem | int | Fraction) -> QuadExtElem:
        other = self._coerce(other)
        return QuadExtElem(self.p + other.p, self.q + other.q, self.a)

    __radd__ = __add__

    def __neg__(self) -> QuadExtElem:
        return QuadExtElem(-self.p, -self.q, self.a)

    def __sub__(self, other: QuadExtElem | int | Fraction) -> QuadExtElem:
        return self + (-self._coerce(other))

    def __mul__(self, other: QuadExtElem | int | Fraction) -> QuadExtElem:
        other = self._coerce(other)
        return QuadExtElem(
            self.p * other.p + self.a * self.q * other.q,
            self.p * other.q + self.q * other.p,
            self.a,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadExtElem:
        return QuadExtElem(self.p, -self.q, self.a)

    def norm(self) -> Fraction:
        return self.p * self.p - self.a * self.q * self.q

    def render(self) -> str:
        return f"{format_rational(self.p)} + {format_rational(self.q)}*sqrt({self.a})"

    def to_document(self) -> dict[str, str]:
        return {"p": format_rational(self.p), "q": format_rational(self.q)}


@dataclass(frozen=True, slots=True)
class DiagForm:
    """``sum(c_i x_i^2)`` with nonzero rational coefficients."""

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        coefficients = tuple(to_rational(c) for c in self.coefficients)
        if any(c == 0 for c in coefficients):
            raise InvalidInputError("Diagonal form coefficients must be nonzero.")
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def dimension(self) -> int:
        return len(self.coefficients)

    def bilinear(self, u: Vector, v: Vector) -> Fraction:
        return sum((c * x * y for c, x, y in zip(self.coefficients, u, v)), Fraction(0))

    def value(self, v: Vector) -> Fraction:
        return self.bilinear(v, v)

    def determinant(self) -> Fraction:
        result = Fraction(1)
        for c in self.coefficients:
            result *= c
        return result

    def to_document(self) -> list[str]:
        return [format_rational(c) for c in self.coefficients]


def eval_form(form: DiagForm, vector: list[QuadExtElem], a: int | None = None) -> QuadExtElem:
    """``sum(c_i v_i^2)`` computed in ``Q(sqrt(a))``."""
    if len(vector) != form.dimension:
        raise LengthMismatchError(
            f"Form has {form.dimension} variables but the vector has {len(vector)} entries."
        )
    if a is None:
        if not vector:
            raise InvalidInputError("The extension is unknown for an empty vector.")
        a = vector[0].a
    total = QuadExtElem.rational(0, a)
    for coefficient, entry in zip(form.coefficients, vector):
        total = total + entry * entry * coefficient
    return total


@dataclass(frozen=True, slots=True)
class SplitResult:
    """``T^t diag(Q) T = diag(b, -a b, Q')`` with the columns of T in the order s, r, complement."""

    a: int
    b: Fraction
    q_prime: DiagForm
    basis_change: Matrix

    @property
    def split_diagonal(self) -> Vector:
        return (self.b, -self.a * self.b) + self.q_prime.coefficients

    def to_document(self) -> dict[str, object]:
        return {
            "a": self.a,
            "b": format_rational(self.b),
            "q_prime": self.q_prime.to_document(),
            "basis_change": [[format_rational(x) for x in row] for row in self.basis_change],
        }


def _sympy_vector(values: Vector) -> sympy.Matrix:
    return sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for x in values])


def _diagonal(values: Vector) -> sympy.Matrix:
    return sympy.diag(*[sympy.Rational(x.numerator, x.denominator) for x in values])


def _orthogonalize(gram: sympy.Matrix, vectors: list[sympy.Matrix]) -> list[sympy.Matrix]:
    """Symmetric Gram-Schmidt: take the first vector with nonzero square as pivot."""

    def bilinear(u: sympy.Matrix, v: sympy.Matrix) -> sympy.Rational:
        return (u.T * gram * v)[0, 0]

    pending = list(vectors)
    result: list[sympy.Matrix] = []
    while pending:
        index = next((i for i, w in enumerate(pending) if bilinear(w, w) != 0), None)
        if index is None:
            pair = next(
                ((i, j) for i in range(len(pending)) for j in range(i + 1, len(pending))
                 if bilinear(pending[i], pending[j]) != 0),
                None,
            )
            if pair is None:
                raise SingularRestrictionError("The form is degenerate on the complement.")
            i, j = pair
            pending[i] = pending[i] + pending[j]
            index = i
        pivot = pending.pop(index)
        square = bilinear(pivot, pivot)
        pending = [w - bilinear(w, pivot) / square * pivot for w in pending]
        result.append(pivot)
    return result


def split_witness(form: DiagForm, a: int, witness: list[QuadExtElem]) -> SplitResult:
    """Split ``b (y0^2 - a y1^2)`` off ``form`` using an isotropic vector over ``Q(sqrt(a))``."""
    kernel = squarefree_kernel(a)
    if kernel == 1:
        raise InvalidRadicandError(f"{a} is a perfect square.")
    if len(witness) != form.dimension:
        raise LengthMismatchError(
            f"Form has {form.dimension} variables but the witness has {len(witness)} entries."
        )
    if any(entry.a != kernel for entry in witness):
        raise InvalidInputError(f"Witness entries must lie in Q(sqrt({kernel})).")
    if not eval_form(form, witness, kernel).is_zero:
        raise NotAWitnessError("The vector is not a zero of the form.")

    rational_part = tuple(entry.p for entry in witness)
    root_part = tuple(entry.q for entry in witness)
    independent = any(
        rational_part[i] * root_part[j] != rational_part[j] * root_part[i]
        for i in range(form.dimension)
        for j in range(i + 1, form.dimension)
    )
    if not independent:
        raise DegenerateWitnessError("The witness and its conjugate are linearly dependent.")
    b = form.value(root_part)
    if b == 0:
        raise SingularRestrictionError(
            "The form vanishes on the witness plane, so it is isotropic over the rationals."
        )

    gram = _diagonal(form.coefficients)
    orthogonality = sympy.Matrix.hstack(_sympy_vector(rational_part), _sympy_vector(root_part)).T * gram
    complement = _orthogonalize(gram, orthogonality.nullspace())
    columns = [_sympy_vector(root_part), _sympy_vector(rational_part)] + complement
    transform = sympy.Matrix.hstack(*columns)
    q_prime = DiagForm(tuple(to_rational((w.T * gram * w)[0, 0]) for w in complement))

    expected = (b, -kernel * b) + q_prime.coefficients
    if transform.T * gram * transform != _diagonal(expected):
        raise RuntimeError("Congruence check failed after splitting the form.")

    basis_change = tuple(
        tuple(to_rational(transform[i, j]) for j in range(transform.cols)) for i in range(transform.rows)
    )
    logger.debug("Split off b=%s, complement of dimension %d", b, q_prime.dimension)
    return SplitResult(a=kernel, b=b, q_prime=q_prime, basis_change=basis_change)


def find_small_isotropic_vector(form: DiagForm, height: int = ISOTROPY_SEARCH_HEIGHT) -> Vector | None:
    """Search integer points with all but the last coordinate bounded by ``height``.

    The last coordinate is solved for, so a hit is any rational zero of the form
    whose scaled first coordinates are small. ``None`` does not prove anisotropy.
    """
    if form.dimension < 2:
        return None
    last = form.coefficients[-1]
    for prefix in product(range(-height, height + 1), repeat=form.dimension - 1):
        if not any(prefix):
            continue
        partial = sum((c * x * x for c, x in zip(form.coefficients, prefix)), Fraction(0))
        square = -partial / last
        if square < 0:
            continue
        root_num, root_den = isqrt(square.numerator), isqrt(square.denominator)
        if root_num * root_num == square.numerator and root_den * root_den == square.denominator:
            scale = root_den
            return tuple(Fraction(x * scale) for x in prefix) + (Fraction(root_num),)
    return None

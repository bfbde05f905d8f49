"""Exact univariate polynomial arithmetic over the rationals.

Polynomials are immutable and store their coefficients in ascending degree
as :class:`fractions.Fraction`; the algebra underneath is :class:`sympy.Poly`
over ``QQ``. No floating point is used anywhere: real roots come from sympy's
exact isolating intervals and rational roots are recognized exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import zip_longest
import logging
from math import ceil, floor, gcd, lcm

import sympy
from sympy import QQ, Poly

from realsurf_app.core.errors import ZeroPolynomialError

logger = logging.getLogger(__name__)

Rational = Fraction

_Z = sympy.Symbol("z")


def to_rational(value: object) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string into a Fraction.

    Floats are rejected: every number entering the library must be exact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"Expected an exact rational, got {value!r}.")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"Not a rational number: {value!r}.") from exc
    raise TypeError(f"Expected an exact rational, got {value!r}.")


def format_rational(value: Fraction) -> str:
    """Render a rational as ``"p/q"`` (or ``"p"`` when the denominator is 1)."""
    return str(Fraction(value))


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _to_sympy_rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


@dataclass(frozen=True, slots=True)
class RationalPoly:
    """Polynomial with rational coefficients, ascending degree, no trailing zeros."""

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [to_rational(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    # --- sympy boundary ---

    def to_sympy(self) -> Poly:
        dense = [_to_sympy_rational(c) for c in reversed(self.coefficients)]
        return Poly.from_list(dense or [0], _Z, domain=QQ)

    @classmethod
    def from_sympy(cls, poly: Poly) -> RationalPoly:
        return cls(tuple(to_rational(c) for c in reversed(poly.all_coeffs())))

    # --- constructors ---

    @classmethod
    def constant(cls, value: object) -> RationalPoly:
        return cls((to_rational(value),))

    @classmethod
    def variable(cls) -> RationalPoly:
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def linear(cls, root: object) -> RationalPoly:
        """Return ``z - root``."""
        return cls((-to_rational(root), Fraction(1)))

    @classmethod
    def from_roots(cls, roots: list[Fraction], leading: object = 1) -> RationalPoly:
        product = cls.constant(leading)
        for root in roots:
            product = product * cls.linear(root)
        return product

    # --- basic properties ---

    @property
    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial has degree -1."""
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __call__(self, x: object) -> Fraction:
        x = to_rational(x)
        result = Fraction(0)
        for coeff in reversed(self.coefficients):
            result = result * x + coeff
        return result

    # --- arithmetic ---

    def __add__(self, other: RationalPoly | int | Fraction) -> RationalPoly:
        other = _as_poly(other)
        return RationalPoly(
            tuple(a + b for a, b in zip_longest(self.coefficients, other.coefficients, fillvalue=Fraction(0)))
        )

    __radd__ = __add__

    def __neg__(self) -> RationalPoly:
        return RationalPoly(tuple(-c for c in self.coefficients))

    def __sub__(self, other: RationalPoly | int | Fraction) -> RationalPoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: RationalPoly | int | Fraction) -> RationalPoly:
        return _as_poly(other) - self

    def __mul__(self, other: RationalPoly | int | Fraction) -> RationalPoly:
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return RationalPoly()
        return RationalPoly.from_sympy(self.to_sympy() * other.to_sympy())

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> RationalPoly:
        if exponent < 0:
            raise ValueError("Negative powers are not polynomials.")
        return RationalPoly.from_sympy(self.to_sympy() ** exponent)

    def __divmod__(self, divisor: RationalPoly) -> tuple[RationalPoly, RationalPoly]:
        if divisor.is_zero:
            raise ZeroPolynomialError("Division by the zero polynomial.")
        quotient, remainder = self.to_sympy().div(divisor.to_sympy())
        return RationalPoly.from_sympy(quotient), RationalPoly.from_sympy(remainder)

    def __floordiv__(self, divisor: RationalPoly) -> RationalPoly:
        return divmod(self, divisor)[0]

    def __mod__(self, divisor: RationalPoly) -> RationalPoly:
        return divmod(self, divisor)[1]

    def exact_div(self, divisor: RationalPoly) -> RationalPoly:
        quotient, remainder = divmod(self, divisor)
        if not remainder.is_zero:
            raise ValueError("Polynomial division is not exact.")
        return quotient

    def derivative(self) -> RationalPoly:
        return RationalPoly(tuple(i * c for i, c in enumerate(self.coefficients) if i > 0))

    def scale(self, factor: object) -> RationalPoly:
        factor = to_rational(factor)
        return RationalPoly(tuple(factor * c for c in self.coefficients))

    def monic(self) -> RationalPoly:
        if self.is_zero:
            raise ZeroPolynomialError("The zero polynomial has no monic form.")
        return self.scale(1 / self.leading_coefficient)

    def integer_normalized(self) -> RationalPoly:
        """Positive rational multiple with integer coefficients of content 1.

        The sign of every value is preserved.
        """
        if self.is_zero:
            return self
        denominator = reduce(lcm, (c.denominator for c in self.coefficients), 1)
        integers = [int(c * denominator) for c in self.coefficients]
        content = reduce(gcd, (abs(n) for n in integers), 0)
        return RationalPoly(tuple(Fraction(n, content) for n in integers))

    def primitive(self) -> RationalPoly:
        """Integer coefficients, content 1, positive leading coefficient."""
        normalized = self.integer_normalized()
        return -normalized if normalized.leading_coefficient < 0 else normalized

    def shift(self, offset: object) -> RationalPoly:
        """Return ``p(z + offset)``."""
        if self.is_zero:
            return self
        return RationalPoly.from_sympy(self.to_sympy().shift(_to_sympy_rational(to_rational(offset))))

    def reversed_to(self, degree: int) -> RationalPoly:
        """Return ``z**degree * p(1/z)``; ``degree`` must be at least ``self.degree``."""
        if degree < self.degree:
            raise ValueError("Reversal degree below polynomial degree.")
        padded = list(self.coefficients) + [Fraction(0)] * (degree + 1 - len(self.coefficients))
        return RationalPoly(tuple(reversed(padded)))

    def render(self, variable: str = "z") -> str:
        if self.is_zero:
            return "0"
        terms: list[str] = []
        for power in range(self.degree, -1, -1):
            coeff = self.coefficients[power]
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            if power == 0:
                body = format_rational(magnitude)
            else:
                monomial = variable if power == 1 else f"{variable}^{power}"
                body = monomial if magnitude == 1 else f"{format_rational(magnitude)}*{monomial}"
            terms.append(f"{sign} {body}")
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self) -> str:
        return self.render()


def _as_poly(value: RationalPoly | int | Fraction) -> RationalPoly:
    if isinstance(value, RationalPoly):
        return value
    return RationalPoly.constant(value)


def poly_gcd(p: RationalPoly, q: RationalPoly) -> RationalPoly:
    """Monic greatest common divisor; gcd(0, 0) is the zero polynomial."""
    common = RationalPoly.from_sympy(p.to_sympy().gcd(q.to_sympy()))
    return common.monic() if not common.is_zero else common


def sign_at(p: RationalPoly, x: object) -> int:
    """Exact sign of ``p(x)``."""
    return _sign(p(x))


def squarefree_part(p: RationalPoly) -> tuple[RationalPoly, RationalPoly]:
    """Split ``p`` into ``(p / gcd(p, p'), gcd(p, p'))``, both monic.

    The first polynomial has the real roots of ``p``, each simple, and the
    product of the two is ``p`` up to a nonzero scalar.
    """
    if p.is_zero:
        raise ZeroPolynomialError("squarefree_part of the zero polynomial.")
    repeated = poly_gcd(p, p.derivative())
    if repeated.is_zero:
        repeated = RationalPoly.constant(1)
    squarefree = RationalPoly.from_sympy(p.to_sympy().sqf_part()).monic()
    return squarefree, repeated


def squarefree_decomposition(p: RationalPoly) -> list[tuple[RationalPoly, int]]:
    """Monic, pairwise coprime squarefree factors with their multiplicities.

    Constants are dropped, so ``p = c * prod(f**k)`` over the returned pairs.
    """
    if p.is_zero:
        raise ZeroPolynomialError("squarefree_decomposition of the zero polynomial.")
    _, factors = p.to_sympy().sqf_list()
    return [
        (RationalPoly.from_sympy(factor).monic(), multiplicity)
        for factor, multiplicity in factors
        if factor.degree() > 0
    ]


# --- Sturm sequences ---


def sturm_sequence(p: RationalPoly) -> list[RationalPoly]:
    """Sturm sequence of the squarefree part of ``p``."""
    if p.is_zero:
        raise ZeroPolynomialError("Sturm sequence of the zero polynomial.")
    return [RationalPoly.from_sympy(member) for member in p.to_sympy().sturm()]


def _count_variations(signs: list[int]) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(1 for left, right in zip(nonzero, nonzero[1:]) if left != right)


def sign_variations(sequence: list[RationalPoly], x: Fraction | None, direction: int = 1) -> int:
    """Sign variations of ``sequence`` at ``x``, or at ``direction * infinity`` when ``x`` is None."""
    if x is None:
        signs = [
            _sign(q.leading_coefficient) * (direction ** q.degree if q.degree > 0 else 1)
            for q in sequence
        ]
    else:
        signs = [sign_at(q, x) for q in sequence]
    return _count_variations(signs)


def count_real_roots(p: RationalPoly) -> int:
    """Number of distinct real roots of ``p`` by Sturm's theorem."""
    sequence = sturm_sequence(p)
    return sign_variations(sequence, None, -1) - sign_variations(sequence, None, 1)


# --- isolated roots ---


@dataclass(frozen=True, slots=True)
class ExactRational:
    """A real root known exactly."""

    value: Fraction
    multiplicity: int = 1

    @property
    def is_exact(self) -> bool:
        return True

    @property
    def lower(self) -> Fraction:
        return self.value

    @property
    def upper(self) -> Fraction:
        return self.value

    def refine(self) -> ExactRational:
        return self

    def compare(self, x: Fraction) -> int:
        """Sign of ``root - x``."""
        return _sign(self.value - x)

    def floor_above(self) -> int:
        """Smallest integer strictly greater than the root."""
        return floor(self.value) + 1


@dataclass(frozen=True, slots=True)
class Isolated:
    """An irrational real root: the unique root of ``poly`` inside the open ``interval``."""

    interval: tuple[Fraction, Fraction]
    poly: RationalPoly
    multiplicity: int = 1

    @property
    def is_exact(self) -> bool:
        return False

    @property
    def lower(self) -> Fraction:
        return self.interval[0]

    @property
    def upper(self) -> Fraction:
        return self.interval[1]

    def refine(self) -> Isolated | ExactRational:
        """Halve the isolating interval."""
        lo, hi = self.interval
        mid = (lo + hi) / 2
        mid_sign = sign_at(self.poly, mid)
        if mid_sign == 0:
            return ExactRational(mid, self.multiplicity)
        if mid_sign == sign_at(self.poly, lo):
            return Isolated((mid, hi), self.poly, self.multiplicity)
        return Isolated((lo, mid), self.poly, self.multiplicity)

    def compare(self, x: Fraction) -> int:
        """Sign of ``root - x``, refining until ``x`` leaves the interval."""
        root: Isolated | ExactRational = self
        while root.lower < x < root.upper:
            if sign_at(self.poly, x) == 0:
                return 0
            root = root.refine()
        if isinstance(root, ExactRational):
            return root.compare(x)
        return 1 if x <= root.lower else -1

    def floor_above(self) -> int:
        root: Isolated | ExactRational = self
        while isinstance(root, Isolated) and ceil(root.upper) - floor(root.lower) > 1:
            root = root.refine()
        if isinstance(root, ExactRational):
            return root.floor_above()
        return floor(root.lower) + 1


IsolatedRoot = ExactRational | Isolated


def sort_roots(roots: list[IsolatedRoot]) -> list[IsolatedRoot]:
    """Sort distinct roots ascending, refining intervals until their order is decided."""
    items = list(roots)
    while True:
        items.sort(key=lambda r: (r.lower, r.upper))
        changed = False
        for i in range(len(items) - 1):
            left, right = items[i], items[i + 1]
            if left.upper > right.lower:
                items[i] = left.refine()
                items[i + 1] = right.refine()
                changed = True
        if not changed:
            return items


def _resolve_root(factor: RationalPoly, lo: Fraction, hi: Fraction, multiplicity: int) -> IsolatedRoot:
    """Decide whether the single root of squarefree ``factor`` in ``[lo, hi]`` is rational.

    A rational root has a denominator dividing the leading coefficient ``L`` of the
    primitive form of ``factor``; two such fractions are at least ``1/L**2`` apart,
    so once the interval is narrower than ``1/(2 L**2)`` the closest fraction with
    denominator at most ``L`` is the only candidate.
    """
    for end in (lo, hi):
        if sign_at(factor, end) == 0:
            return ExactRational(end, multiplicity)
    lead = int(factor.primitive().leading_coefficient)
    target_width = Fraction(1, 2 * lead * lead)
    if hi - lo >= target_width:
        lo, hi = sorted(
            to_rational(end)
            for end in factor.to_sympy().refine_root(
                _to_sympy_rational(lo), _to_sympy_rational(hi), eps=_to_sympy_rational(target_width)
            )
        )
        for end in (lo, hi):
            if sign_at(factor, end) == 0:
                return ExactRational(end, multiplicity)
    candidate = ((lo + hi) / 2).limit_denominator(lead)
    if lo < candidate < hi and sign_at(factor, candidate) == 0:
        return ExactRational(candidate, multiplicity)
    return Isolated((lo, hi), factor, multiplicity)


def isolate_real_roots(p: RationalPoly) -> list[IsolatedRoot]:
    """Every real root of ``p`` exactly once, ascending, with its multiplicity."""
    if p.is_zero:
        raise ZeroPolynomialError("isolate_real_roots of the zero polynomial.")
    roots: list[IsolatedRoot] = []
    for factor, multiplicity in squarefree_decomposition(p):
        for lo, hi in factor.to_sympy().intervals(sqf=True):
            lo, hi = sorted((to_rational(lo), to_rational(hi)))
            if lo == hi:
                roots.append(ExactRational(lo, multiplicity))
            else:
                roots.append(_resolve_root(factor, lo, hi, multiplicity))
    logger.debug("Isolated %d real roots of a degree %d polynomial", len(roots), p.degree)
    return sort_roots(roots)

"""Real Möbius transformations acting on the projective line."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from realsurf_app.core.errors import DegenerateTripleError, InvalidInputError
from realsurf_app.core.interval_set import (
    IntervalKind,
    IntervalSet,
    ProjPoint,
    arc_contains,
    arc_sample,
)
from realsurf_app.core.poly import format_rational, to_rational


def _det(p: tuple[Fraction, Fraction], q: tuple[Fraction, Fraction]) -> Fraction:
    return p[0] * q[1] - p[1] * q[0]


@dataclass(frozen=True, slots=True)
class MoebiusMap:
    """``z -> (alpha z + beta) / (gamma z + delta)``.

    Entries are stored as the integer matrix with content 1 whose first nonzero
    entry is positive, so proportional matrices compare equal.
    """

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction

    def __post_init__(self) -> None:
        entries = [to_rational(x) for x in (self.alpha, self.beta, self.gamma, self.delta)]
        if entries[0] * entries[3] - entries[1] * entries[2] == 0:
            raise InvalidInputError("Möbius matrix must be invertible.")
        denominator = reduce(lcm, (x.denominator for x in entries), 1)
        integers = [int(x * denominator) for x in entries]
        content = reduce(gcd, (abs(n) for n in integers), 0)
        integers = [n // content for n in integers]
        if next(n for n in integers if n != 0) < 0:
            integers = [-n for n in integers]
        for name, value in zip(("alpha", "beta", "gamma", "delta"), integers):
            object.__setattr__(self, name, Fraction(value))

    @classmethod
    def identity(cls) -> MoebiusMap:
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    @classmethod
    def from_matrix(cls, matrix: list[list[object]]) -> MoebiusMap:
        (alpha, beta), (gamma, delta) = matrix
        return cls(to_rational(alpha), to_rational(beta), to_rational(gamma), to_rational(delta))

    @property
    def matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.alpha, self.beta), (self.gamma, self.delta))

    @property
    def determinant(self) -> Fraction:
        return self.alpha * self.delta - self.beta * self.gamma

    def apply(self, point: ProjPoint) -> ProjPoint:
        x0, x1 = point.homogeneous()
        y0 = self.alpha * x0 + self.beta * x1
        y1 = self.gamma * x0 + self.delta * x1
        if y1 == 0:
            return ProjPoint.infinity()
        return ProjPoint(y0 / y1)

    def __call__(self, point: ProjPoint) -> ProjPoint:
        return self.apply(point)

    def compose(self, inner: MoebiusMap) -> MoebiusMap:
        """The map ``self(inner(z))``."""
        return MoebiusMap(
            self.alpha * inner.alpha + self.beta * inner.gamma,
            self.alpha * inner.beta + self.beta * inner.delta,
            self.gamma * inner.alpha + self.delta * inner.gamma,
            self.gamma * inner.beta + self.delta * inner.delta,
        )

    def inverse(self) -> MoebiusMap:
        return MoebiusMap(self.delta, -self.beta, -self.gamma, self.alpha)

    def pole_factor(self, x: Fraction) -> Fraction:
        """``gamma x + delta``, the denominator of the action at a finite point."""
        return self.gamma * x + self.delta

    def to_document(self) -> dict[str, object]:
        return {"matrix": [[format_rational(x) for x in row] for row in self.matrix]}

    def render(self) -> str:
        (alpha, beta), (gamma, delta) = self.matrix
        return f"z -> ({format_rational(alpha)}*z + {format_rational(beta)}) / ({format_rational(gamma)}*z + {format_rational(delta)})"


def _to_zero_one_infinity(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> MoebiusMap:
    h1, h2, h3 = p1.homogeneous(), p2.homogeneous(), p3.homogeneous()
    if _det(h1, h2) == 0 or _det(h1, h3) == 0 or _det(h2, h3) == 0:
        raise DegenerateTripleError(f"Points {p1}, {p2}, {p3} are not pairwise distinct.")
    # Rows are scaled linear forms vanishing at p1 and p3; the scales send p2 to 1.
    lam = _det(h2, h3)
    mu = _det(h2, h1)
    return MoebiusMap(lam * h1[1], -lam * h1[0], mu * h3[1], -mu * h3[0])


def from_three_points(
    sources: tuple[ProjPoint, ProjPoint, ProjPoint],
    targets: tuple[ProjPoint, ProjPoint, ProjPoint],
) -> MoebiusMap:
    """The unique map sending ``sources[i]`` to ``targets[i]`` for i = 0, 1, 2."""
    to_standard = _to_zero_one_infinity(*sources)
    from_standard = _to_zero_one_infinity(*targets).inverse()
    return from_standard.compose(to_standard)


def cross_ratio(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint) -> Fraction:
    """``(a, b; c, d)`` for four distinct points, computed homogeneously."""
    points = [p.homogeneous() for p in (a, b, c, d)]
    if any(_det(points[i], points[j]) == 0 for i in range(4) for j in range(i + 1, 4)):
        raise DegenerateTripleError("Cross-ratio needs four distinct points.")
    ha, hb, hc, hd = points
    return (_det(ha, hc) * _det(hb, hd)) / (_det(ha, hd) * _det(hb, hc))


def transport_interval_set(mapping: MoebiusMap, intervals: IntervalSet) -> IntervalSet:
    """Image of ``intervals`` under ``mapping``, in canonical arc form."""
    if intervals.kind is not IntervalKind.ARCS:
        return intervals
    arcs = []
    for start, end in intervals.arcs:
        new_start, new_end = mapping.apply(start), mapping.apply(end)
        inside = mapping.apply(arc_sample(start, end))
        if arc_contains(new_start, new_end, inside):
            arcs.append((new_start, new_end))
        else:
            arcs.append((new_end, new_start))
    return IntervalSet.from_arcs(arcs)

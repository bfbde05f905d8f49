"""Points of the real projective line and finite unions of closed arcs on it."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from realsurf_app.core.errors import InvalidInputError
from realsurf_app.core.poly import format_rational, to_rational

INFINITY_LABEL = "inf"


@dataclass(frozen=True, slots=True)
class ProjPoint:
    """A point of the real projective line; ``value`` is None for infinity."""

    value: Fraction | None

    @classmethod
    def finite(cls, value: object) -> ProjPoint:
        return cls(to_rational(value))

    @classmethod
    def infinity(cls) -> ProjPoint:
        return cls(None)

    @classmethod
    def parse(cls, text: object) -> ProjPoint:
        if isinstance(text, str) and text.strip().lower() in (INFINITY_LABEL, "infinity", "oo"):
            return cls.infinity()
        return cls.finite(text)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def cyclic_key(self) -> tuple[int, Fraction]:
        """Position along the circle: the reals in increasing order, then infinity."""
        if self.value is None:
            return (1, Fraction(0))
        return (0, self.value)

    def homogeneous(self) -> tuple[Fraction, Fraction]:
        """Homogeneous coordinates ``(x0, x1)`` with the point equal to ``x0/x1``."""
        if self.value is None:
            return (Fraction(1), Fraction(0))
        return (self.value, Fraction(1))

    def render(self) -> str:
        return INFINITY_LABEL if self.value is None else format_rational(self.value)

    def __str__(self) -> str:
        return self.render()


def arc_contains(start: ProjPoint, end: ProjPoint, point: ProjPoint) -> bool:
    """Whether ``point`` lies on the closed arc running upward from ``start`` to ``end``."""
    s, e, p = start.cyclic_key(), end.cyclic_key(), point.cyclic_key()
    if s <= e:
        return s <= p <= e
    return p >= s or p <= e


def arc_sample(start: ProjPoint, end: ProjPoint) -> ProjPoint:
    """A point strictly inside the arc from ``start`` to ``end``."""
    if start.value is None:
        return ProjPoint(end.value - 1)
    if end.value is None:
        return ProjPoint(start.value + 1)
    if start.value < end.value:
        return ProjPoint((start.value + end.value) / 2)
    return ProjPoint.infinity()


class IntervalKind(Enum):
    EMPTY = "empty"
    FULL = "full"
    ARCS = "arcs"


@dataclass(frozen=True, slots=True)
class IntervalSet:
    """Empty, the whole line, or pairwise disjoint closed arcs in cyclic order.

    Each arc is a ``(start, end)`` pair and covers the points met when moving
    from ``start`` upward (through infinity if needed) to ``end``.
    """

    kind: IntervalKind
    arcs: tuple[tuple[ProjPoint, ProjPoint], ...] = ()

    @classmethod
    def empty(cls) -> IntervalSet:
        return cls(IntervalKind.EMPTY)

    @classmethod
    def full(cls) -> IntervalSet:
        return cls(IntervalKind.FULL)

    @classmethod
    def from_arcs(cls, arcs: list[tuple[ProjPoint, ProjPoint]]) -> IntervalSet:
        if not arcs:
            return cls.empty()
        ordered = tuple(sorted(arcs, key=lambda arc: arc[0].cyclic_key()))
        for start, end in ordered:
            if start == end:
                raise InvalidInputError(f"Degenerate arc at {start}.")
        for index, (start, end) in enumerate(ordered):
            for other_start, other_end in ordered[index + 1:]:
                if arc_contains(start, end, other_start) or arc_contains(other_start, other_end, start):
                    raise InvalidInputError("Arcs of an interval set must be disjoint.")
        return cls(IntervalKind.ARCS, ordered)

    @property
    def component_count(self) -> int:
        if self.kind is IntervalKind.EMPTY:
            return 0
        if self.kind is IntervalKind.FULL:
            return 1
        return len(self.arcs)

    def contains(self, point: ProjPoint) -> bool:
        if self.kind is IntervalKind.EMPTY:
            return False
        if self.kind is IntervalKind.FULL:
            return True
        return any(arc_contains(start, end, point) for start, end in self.arcs)

    def to_document(self) -> dict[str, object]:
        return {
            "kind": self.kind.value,
            "components": self.component_count,
            "arcs": [
                {
                    "start": start.render(),
                    "end": end.render(),
                    "through_infinity": start.cyclic_key() > end.cyclic_key() or end.is_infinite or start.is_infinite,
                }
                for start, end in self.arcs
            ],
        }

    def render(self) -> str:
        if self.kind is not IntervalKind.ARCS:
            return self.kind.value
        parts = []
        for start, end in self.arcs:
            if start.cyclic_key() > end.cyclic_key():
                parts.append(f"[{start}, inf, {end}]")
            else:
                parts.append(f"[{start}, {end}]")
        return " + ".join(parts)

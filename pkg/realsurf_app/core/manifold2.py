"""Compact 2-manifolds without boundary, kept in normal form.

A connected component is either orientable of genus g (S2 for g = 0, T2 for
g = 1) or nonorientable with k crosscaps (RP2 for k = 1). A manifold is a
sorted multiset of components; the empty multiset is the empty manifold.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
import re

from realsurf_app.core.errors import BadIndexError, EmptyManifoldError, InvalidInputError

_COMPONENT_PATTERN = re.compile(r"^(?:(\d+)\s+)?(S2|T2|RP2|#(\d+)(T2|RP2))$")


@dataclass(frozen=True, slots=True)
class Component2:
    orientable: bool
    count: int

    def __post_init__(self) -> None:
        if self.orientable and self.count < 0:
            raise InvalidInputError("Genus must be nonnegative.")
        if not self.orientable and self.count < 1:
            raise InvalidInputError("A nonorientable surface needs at least one crosscap.")

    @classmethod
    def sphere_with_handles(cls, genus: int) -> Component2:
        return cls(True, genus)

    @classmethod
    def crosscaps(cls, count: int) -> Component2:
        return cls(False, count)

    @property
    def euler_char(self) -> int:
        return 2 - 2 * self.count if self.orientable else 2 - self.count

    def sort_key(self) -> tuple[int, int]:
        return (1 if self.orientable else 0, self.count)

    def render(self) -> str:
        if self.orientable:
            return {0: "S2", 1: "T2"}.get(self.count, f"#{self.count}T2")
        return "RP2" if self.count == 1 else f"#{self.count}RP2"

    def to_document(self) -> dict[str, object]:
        if self.orientable:
            return {"orientable": True, "genus": self.count, "render": self.render()}
        return {"orientable": False, "crosscaps": self.count, "render": self.render()}

    def __str__(self) -> str:
        return self.render()


SPHERE = Component2(True, 0)
TORUS = Component2(True, 1)
PROJECTIVE_PLANE = Component2(False, 1)
KLEIN_BOTTLE = Component2(False, 2)


def connected_sum(a: Component2, b: Component2) -> Component2:
    if a.orientable and b.orientable:
        return Component2(True, a.count + b.count)
    # A handle next to a crosscap becomes two crosscaps.
    crosscaps = (2 * a.count if a.orientable else a.count) + (2 * b.count if b.orientable else b.count)
    return Component2(False, crosscaps)


@dataclass(frozen=True, slots=True)
class Manifold2:
    components: tuple[Component2, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(sorted(self.components, key=Component2.sort_key)))

    @classmethod
    def empty(cls) -> Manifold2:
        return cls(())

    @classmethod
    def of(cls, *components: Component2) -> Manifold2:
        return cls(tuple(components))

    @classmethod
    def spheres(cls, count: int) -> Manifold2:
        return cls(tuple([SPHERE] * count))

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def euler_char(self) -> int:
        return sum(c.euler_char for c in self.components)

    @property
    def is_orientable(self) -> bool:
        return all(c.orientable for c in self.components)

    def render(self) -> str:
        if not self.components:
            return "empty"
        parts = []
        for component, group in groupby(self.components):
            size = len(list(group))
            parts.append(component.render() if size == 1 else f"{size} {component.render()}")
        return " + ".join(parts)

    def to_document(self) -> dict[str, object]:
        return {
            "render": self.render(),
            "components": [c.to_document() for c in self.components],
            "euler_characteristic": self.euler_char,
        }

    def __str__(self) -> str:
        return self.render()


def disjoint_union(first: Manifold2, second: Manifold2) -> Manifold2:
    return Manifold2(first.components + second.components)


def euler_char(manifold: Manifold2) -> int:
    return manifold.euler_char


def is_orientable(manifold: Manifold2) -> bool:
    return manifold.is_orientable


def component_count(manifold: Manifold2) -> int:
    return manifold.component_count


def blow_up_real_point(manifold: Manifold2, component_index: int = 0) -> Manifold2:
    """Connected-sum the component at ``component_index`` (canonical order) with RP2."""
    if manifold.is_empty:
        raise EmptyManifoldError("Cannot blow up a real point on an empty real locus.")
    if not 0 <= component_index < manifold.component_count:
        raise BadIndexError(
            f"Component index {component_index} out of range for {manifold.render()}."
        )
    components = list(manifold.components)
    components[component_index] = connected_sum(components[component_index], PROJECTIVE_PLANE)
    return Manifold2(tuple(components))


def parse_manifold(text: str) -> Manifold2:
    """Inverse of :meth:`Manifold2.render`."""
    text = text.strip()
    if text in ("empty", ""):
        return Manifold2.empty()
    components: list[Component2] = []
    for part in text.split("+"):
        match = _COMPONENT_PATTERN.match(part.strip())
        if match is None:
            raise InvalidInputError(f"Cannot parse manifold component {part.strip()!r}.")
        multiplicity = int(match.group(1) or 1)
        token = match.group(2)
        if token == "S2":
            component = SPHERE
        elif token == "T2":
            component = TORUS
        elif token == "RP2":
            component = PROJECTIVE_PLANE
        else:
            count = int(match.group(3))
            component = Component2(match.group(4) == "T2", count)
        components.extend([component] * multiplicity)
    return Manifold2(tuple(components))

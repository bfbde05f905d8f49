"""Geometrically rational real surfaces given by minimal model plus blow-ups.

A description names the minimal model reached by the real minimal model
program and the ordered list of blow-ups leading back to the surface. Every
invariant computed here (real locus, K^2, Picard number, birational class)
depends only on that data.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import logging

from realsurf_app.core.errors import (
    BadIndexError,
    InvalidMinimalModelError,
    RealBlowupOnEmptyLocusError,
)
from realsurf_app.core.manifold2 import (
    PROJECTIVE_PLANE,
    SPHERE,
    TORUS,
    Manifold2,
    blow_up_real_point,
)

logger = logging.getLogger(__name__)


class ModelKind(Enum):
    P2 = "P2"
    Q22 = "Q22"
    Q31 = "Q31"
    Q40 = "Q40"
    Q30xP1 = "Q30xP1"
    MINIMAL_CONIC_BUNDLE = "MinimalConicBundle"
    DP2_MIN = "DP2min"
    DP1_MIN = "DP1min"

    @classmethod
    def parse(cls, name: str) -> ModelKind:
        try:
            return cls(name)
        except ValueError as exc:
            raise InvalidMinimalModelError(f"Unknown minimal model {name!r}.") from exc


@dataclass(frozen=True, slots=True)
class MinimalModel:
    kind: ModelKind
    m: int = 0

    def __post_init__(self) -> None:
        if self.kind is ModelKind.MINIMAL_CONIC_BUNDLE:
            if self.m < 2:
                raise InvalidMinimalModelError(
                    f"A minimal conic bundle needs m >= 2 pairs of singular fibers, got m={self.m}."
                )
        elif self.m != 0:
            raise InvalidMinimalModelError(f"{self.kind.value} takes no m parameter.")

    @classmethod
    def conic_bundle(cls, m: int) -> MinimalModel:
        return cls(ModelKind.MINIMAL_CONIC_BUNDLE, m)

    def render(self) -> str:
        if self.kind is ModelKind.MINIMAL_CONIC_BUNDLE:
            return f"{self.kind.value}({self.m})"
        return self.kind.value


class BlowUpKind(Enum):
    REAL_POINT = "RealPoint"
    CONJUGATE_PAIR = "ConjugatePair"


@dataclass(frozen=True, slots=True)
class BlowUp:
    kind: BlowUpKind
    component_index: int = 0

    def __post_init__(self) -> None:
        if self.component_index < 0:
            raise BadIndexError("Component index must be nonnegative.")

    @classmethod
    def real_point(cls, component_index: int = 0) -> BlowUp:
        return cls(BlowUpKind.REAL_POINT, component_index)

    @classmethod
    def conjugate_pair(cls) -> BlowUp:
        return cls(BlowUpKind.CONJUGATE_PAIR)

    def render(self) -> str:
        if self.kind is BlowUpKind.REAL_POINT:
            return f"RealPoint({self.component_index})"
        return "ConjugatePair"


@dataclass(frozen=True, slots=True)
class SurfaceDescription:
    minimal: MinimalModel
    blowups: tuple[BlowUp, ...] = ()

    @property
    def real_point_count(self) -> int:
        return sum(1 for b in self.blowups if b.kind is BlowUpKind.REAL_POINT)

    @property
    def pair_count(self) -> int:
        return sum(1 for b in self.blowups if b.kind is BlowUpKind.CONJUGATE_PAIR)

    def render(self) -> str:
        steps = ", ".join(b.render() for b in self.blowups)
        return f"{self.minimal.render()} [{steps}]"


_BASE_K_SQUARED = {
    ModelKind.P2: 9,
    ModelKind.Q22: 8,
    ModelKind.Q31: 8,
    ModelKind.Q40: 8,
    ModelKind.Q30xP1: 8,
    ModelKind.DP2_MIN: 2,
    ModelKind.DP1_MIN: 1,
}

_BASE_PICARD = {
    ModelKind.P2: 1,
    ModelKind.Q22: 2,
    ModelKind.Q31: 1,
    ModelKind.Q40: 2,
    ModelKind.Q30xP1: 2,
    ModelKind.MINIMAL_CONIC_BUNDLE: 2,
    ModelKind.DP2_MIN: 1,
    ModelKind.DP1_MIN: 1,
}


def base_topology(model: MinimalModel) -> Manifold2:
    kind = model.kind
    if kind is ModelKind.P2:
        return Manifold2.of(PROJECTIVE_PLANE)
    if kind is ModelKind.Q22:
        return Manifold2.of(TORUS)
    if kind is ModelKind.Q31:
        return Manifold2.of(SPHERE)
    if kind in (ModelKind.Q40, ModelKind.Q30xP1):
        return Manifold2.empty()
    if kind is ModelKind.MINIMAL_CONIC_BUNDLE:
        return Manifold2.spheres(model.m)
    if kind is ModelKind.DP2_MIN:
        return Manifold2.spheres(4)
    return Manifold2.of(PROJECTIVE_PLANE, SPHERE, SPHERE, SPHERE, SPHERE)


def topology(description: SurfaceDescription) -> Manifold2:
    """Real locus: each real blow-up adds a crosscap, conjugate pairs change nothing."""
    manifold = base_topology(description.minimal)
    for position, blowup in enumerate(description.blowups):
        if blowup.kind is BlowUpKind.CONJUGATE_PAIR:
            continue
        if manifold.is_empty:
            raise RealBlowupOnEmptyLocusError(
                f"Blow-up {position} is a real point but the real locus is empty."
            )
        try:
            manifold = blow_up_real_point(manifold, blowup.component_index)
        except BadIndexError as exc:
            raise BadIndexError(f"Blow-up {position}: {exc}") from exc
    return manifold


def k_squared(description: SurfaceDescription) -> int:
    minimal = description.minimal
    if minimal.kind is ModelKind.MINIMAL_CONIC_BUNDLE:
        base = 8 - 2 * minimal.m
    else:
        base = _BASE_K_SQUARED[minimal.kind]
    return base - description.real_point_count - 2 * description.pair_count


def picard_number(description: SurfaceDescription) -> int:
    return _BASE_PICARD[description.minimal.kind] + len(description.blowups)


class ClassKind(Enum):
    EMPTY = "Empty"
    RATIONAL = "Rational"
    CONIC_BUNDLE = "ConicBundle"
    DP2 = "DP2"
    DP1 = "DP1"


@dataclass(frozen=True, slots=True)
class BirationalClass:
    kind: ClassKind
    m: int | None = None

    @property
    def component_count(self) -> int:
        """Number of connected components of the real locus shared by the whole class."""
        if self.kind is ClassKind.CONIC_BUNDLE:
            return self.m or 0
        return {ClassKind.EMPTY: 0, ClassKind.RATIONAL: 1, ClassKind.DP2: 4, ClassKind.DP1: 5}[self.kind]

    def render(self) -> str:
        return f"{self.kind.value}({self.m})" if self.kind is ClassKind.CONIC_BUNDLE else self.kind.value


def birational_class(description: SurfaceDescription) -> BirationalClass:
    kind = description.minimal.kind
    if kind in (ModelKind.Q40, ModelKind.Q30xP1):
        return BirationalClass(ClassKind.EMPTY)
    if kind in (ModelKind.P2, ModelKind.Q22, ModelKind.Q31):
        return BirationalClass(ClassKind.RATIONAL)
    if kind is ModelKind.MINIMAL_CONIC_BUNDLE:
        return BirationalClass(ClassKind.CONIC_BUNDLE, description.minimal.m)
    # Minimal Del Pezzo surfaces of degree 1 and 2 are not rational and not
    # birational to anything else on the list.
    if kind is ModelKind.DP2_MIN:
        return BirationalClass(ClassKind.DP2)
    return BirationalClass(ClassKind.DP1)


def comessatti_check(manifold: Manifold2) -> bool:
    """Whether ``manifold`` can be the real locus of a geometrically rational surface."""
    if manifold.is_empty:
        return True
    if manifold.components == (TORUS,):
        return True
    return all(c == SPHERE or not c.orientable for c in manifold.components)


def is_rational_over_reals(description: SurfaceDescription) -> bool:
    """Rational over the reals exactly when the real locus is nonempty and connected."""
    return birational_class(description).kind is ClassKind.RATIONAL


@dataclass(frozen=True, slots=True)
class SurfaceReport:
    description: SurfaceDescription
    topology: Manifold2
    k_squared: int
    picard_number: int
    birational_class: BirationalClass
    comessatti: bool
    rational_over_reals: bool

    def to_document(self) -> dict[str, object]:
        document: dict[str, object] = {"class": self.birational_class.kind.value}
        if self.birational_class.m is not None:
            document["m"] = self.birational_class.m
        document.update(
            {
                "components": self.topology.component_count,
                "topology": self.topology.to_document(),
                "k_squared": self.k_squared,
                "picard_number": self.picard_number,
                "comessatti": self.comessatti,
                "rational_over_reals": self.rational_over_reals,
            }
        )
        return document


def classify(description: SurfaceDescription) -> SurfaceReport:
    manifold = topology(description)
    report = SurfaceReport(
        description=description,
        topology=manifold,
        k_squared=k_squared(description),
        picard_number=picard_number(description),
        birational_class=birational_class(description),
        comessatti=comessatti_check(manifold),
        rational_over_reals=is_rational_over_reals(description),
    )
    logger.debug("Classified %s as %s", description.render(), report.birational_class.render())
    return report

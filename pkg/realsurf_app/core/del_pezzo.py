"""Lines on Del Pezzo surfaces and the real topological types per degree.

Lines are the (-1)-classes ``dH - sum(m_i e_i)`` of the plane blown up in r
points; a line is real when complex conjugation, acting on the exceptional
classes, fixes it. The topology tables are stored as transcribed constants
and cross-checked against the blow-up calculus of :mod:`surface_class`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import logging

from realsurf_app.constants.enumeration_constants import (
    CROSS_CHECK_DEGREE_MAX,
    CROSS_CHECK_MULTIPLICITY_BOUND,
    MAX_BLOWUP_RANK,
    MAX_OUTER_OVALS,
    MINUS_ONE_DEGREE_MAX,
    MINUS_ONE_MULTIPLICITY_MAX,
    MINUS_ONE_MULTIPLICITY_MIN,
)
from realsurf_app.core.errors import (
    BadRankError,
    InvalidInputError,
    OutOfRangeError,
    TableConsistencyError,
)
from realsurf_app.core.manifold2 import Manifold2, blow_up_real_point, parse_manifold
from realsurf_app.core.surface_class import (
    BlowUp,
    MinimalModel,
    ModelKind,
    SurfaceDescription,
    base_topology,
    picard_number,
    topology,
)

logger = logging.getLogger(__name__)


# --- Picard lattice ---


@dataclass(frozen=True, slots=True, order=True)
class PicClass:
    """The class ``d H - sum(m_i e_i)``."""

    d: int
    multiplicities: tuple[int, ...]

    @property
    def self_intersection(self) -> int:
        return self.d * self.d - sum(m * m for m in self.multiplicities)

    @property
    def anticanonical_degree(self) -> int:
        """Intersection with ``-K = 3H - sum(e_i)``."""
        return 3 * self.d - sum(self.multiplicities)

    @property
    def is_minus_one_class(self) -> bool:
        return self.self_intersection == -1 and self.anticanonical_degree == 1

    def to_document(self) -> dict[str, object]:
        return {"d": self.d, "multiplicities": list(self.multiplicities)}


def _check_rank(r: int) -> None:
    if not 1 <= r <= MAX_BLOWUP_RANK:
        raise BadRankError(f"Rank must be between 1 and {MAX_BLOWUP_RANK}, got {r}.")


def search_minus_one_classes(
    r: int, degree_max: int, multiplicity_min: int, multiplicity_max: int
) -> list[PicClass]:
    """All (-1)-classes with ``0 <= d <= degree_max`` and multiplicities in the given range."""
    found: list[PicClass] = []

    def extend(d: int, prefix: list[int], remaining_sum: int, remaining_square: int) -> None:
        left = r - len(prefix)
        if left == 0:
            if remaining_sum == 0 and remaining_square == 0:
                found.append(PicClass(d, tuple(prefix)))
            return
        # (sum of the rest)^2 <= left * (sum of squares of the rest)
        if remaining_sum * remaining_sum > left * remaining_square:
            return
        if not left * multiplicity_min <= remaining_sum <= left * multiplicity_max:
            return
        for m in range(multiplicity_min, multiplicity_max + 1):
            if m * m <= remaining_square:
                prefix.append(m)
                extend(d, prefix, remaining_sum - m, remaining_square - m * m)
                prefix.pop()

    for d in range(0, degree_max + 1):
        extend(d, [], 3 * d - 1, d * d + 1)
    return sorted(found)


def minus_one_classes(r: int) -> list[PicClass]:
    """Lines on the plane blown up in r general points: 1, 3, 6, 10, 16, 27, 56, 240."""
    _check_rank(r)
    classes = search_minus_one_classes(
        r, MINUS_ONE_DEGREE_MAX, MINUS_ONE_MULTIPLICITY_MIN, MINUS_ONE_MULTIPLICITY_MAX
    )
    logger.debug("Found %d (-1)-classes for r=%d", len(classes), r)
    return classes


def wide_minus_one_classes(r: int) -> list[PicClass]:
    """Same enumeration with the wider cross-check bounds."""
    _check_rank(r)
    return search_minus_one_classes(
        r, CROSS_CHECK_DEGREE_MAX, -CROSS_CHECK_MULTIPLICITY_BOUND, CROSS_CHECK_MULTIPLICITY_BOUND
    )


@dataclass(frozen=True, slots=True)
class GaloisAction:
    """Complex conjugation on ``e_1..e_r``: real points fixed, pairs swapped."""

    r: int
    fixed_count: int
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        _check_rank(self.r)
        if self.fixed_count < 0 or self.fixed_count + 2 * len(self.pairs) != self.r:
            raise InvalidInputError(
                f"Real points plus twice the pairs must equal r={self.r}."
            )
        seen = [index for pair in self.pairs for index in pair]
        if len(set(seen)) != len(seen) or any(not 0 <= i < self.r for i in seen):
            raise InvalidInputError("Swapped pairs must be disjoint indices below r.")

    @classmethod
    def standard(cls, r: int, real: int, pair_count: int) -> GaloisAction:
        """Real points first, then pairs ``(real, real + 1), (real + 2, real + 3), ...``."""
        pairs = tuple((real + 2 * i, real + 2 * i + 1) for i in range(pair_count))
        return cls(r, real, pairs)

    def act(self, pic_class: PicClass) -> PicClass:
        multiplicities = list(pic_class.multiplicities)
        for i, j in self.pairs:
            multiplicities[i], multiplicities[j] = multiplicities[j], multiplicities[i]
        return PicClass(pic_class.d, tuple(multiplicities))


def real_line_count(action: GaloisAction) -> int:
    return sum(1 for c in minus_one_classes(action.r) if action.act(c) == c)


def bitangent_count(outer_ovals: int) -> int:
    """Real bitangents of a smooth real plane quartic with the given number of outer ovals."""
    if not 0 <= outer_ovals <= MAX_OUTER_OVALS:
        raise OutOfRangeError(f"Outer oval count must be between 0 and {MAX_OUTER_OVALS}.")
    return 4 + 2 * outer_ovals * (outer_ovals - 1)


# --- real curve configurations ---


class QuarticKind(Enum):
    OVALS = "Ovals"
    NESTED = "Nested"


@dataclass(frozen=True, slots=True)
class QuarticConfig:
    """Real locus of a smooth plane quartic: n separate ovals, or one oval inside another."""

    kind: QuarticKind
    ovals: int = 0

    def __post_init__(self) -> None:
        if self.kind is QuarticKind.OVALS and not 0 <= self.ovals <= 4:
            raise OutOfRangeError("A real quartic has at most 4 ovals.")
        if self.kind is QuarticKind.NESTED and self.ovals != 0:
            raise InvalidInputError("The nested configuration takes no oval count.")

    @classmethod
    def parse(cls, text: str) -> QuarticConfig:
        text = text.strip()
        if text == QuarticKind.NESTED.value:
            return cls(QuarticKind.NESTED)
        if text.startswith("Ovals(") and text.endswith(")"):
            return cls(QuarticKind.OVALS, _parse_count(text[6:-1]))
        raise InvalidInputError(f"Unknown quartic configuration {text!r}.")

    def render(self) -> str:
        return f"Ovals({self.ovals})" if self.kind is QuarticKind.OVALS else self.kind.value


class SexticKind(Enum):
    ONE_CIRCLE = "OneCircle"
    ONE_CIRCLE_SPLIT_11 = "OneCircleSplit11"
    THREE_CIRCLES = "ThreeCircles"


@dataclass(frozen=True, slots=True)
class SexticConfig:
    """Real locus of the branch sextic on the cylinder: big circles and ovals."""

    kind: SexticKind
    ovals_same_side: int = 0

    def __post_init__(self) -> None:
        if self.kind is SexticKind.ONE_CIRCLE and not 0 <= self.ovals_same_side <= 4:
            raise OutOfRangeError("At most 4 ovals next to the big circle.")
        if self.kind is not SexticKind.ONE_CIRCLE and self.ovals_same_side != 0:
            raise InvalidInputError(f"{self.kind.value} takes no oval count.")

    @classmethod
    def parse(cls, text: str) -> SexticConfig:
        text = text.strip()
        for kind in (SexticKind.ONE_CIRCLE_SPLIT_11, SexticKind.THREE_CIRCLES):
            if text == kind.value:
                return cls(kind)
        if text.startswith("OneCircle(") and text.endswith(")"):
            return cls(SexticKind.ONE_CIRCLE, _parse_count(text[10:-1]))
        raise InvalidInputError(f"Unknown sextic configuration {text!r}.")

    def render(self) -> str:
        if self.kind is SexticKind.ONE_CIRCLE:
            return f"OneCircle({self.ovals_same_side})"
        return self.kind.value


def _parse_count(text: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise InvalidInputError(f"Expected an oval count, got {text!r}.") from exc


def outer_oval_count(config: QuarticConfig) -> int:
    """Ovals not contained in another oval."""
    return config.ovals if config.kind is QuarticKind.OVALS else 1


QUARTIC_CONFIGS: tuple[QuarticConfig, ...] = tuple(
    [QuarticConfig(QuarticKind.OVALS, n) for n in (4, 3, 2, 1, 0)] + [QuarticConfig(QuarticKind.NESTED)]
)

SEXTIC_CONFIGS: tuple[SexticConfig, ...] = tuple(
    [SexticConfig(SexticKind.ONE_CIRCLE, n) for n in (4, 3, 2, 1, 0)]
    + [SexticConfig(SexticKind.ONE_CIRCLE_SPLIT_11), SexticConfig(SexticKind.THREE_CIRCLES)]
)

# Double planes branched along a quartic: rows (F+, F-) for each quartic type.
_DP2_ROWS: dict[str, tuple[str, str]] = {
    "Ovals(4)": ("4 S2", "#8RP2"),
    "Ovals(3)": ("3 S2", "#6RP2"),
    "Ovals(2)": ("2 S2", "#4RP2"),
    "Ovals(1)": ("S2", "#2RP2"),
    "Ovals(0)": ("empty", "2 RP2"),
    "Nested": ("T2", "#2RP2 + S2"),
}

# Double quadric cones branched along a sextic: rows (F+, F-) for each sextic type.
_DP1_ROWS: dict[str, tuple[str, str]] = {
    "OneCircle(4)": ("RP2 + 4 S2", "#9RP2"),
    "OneCircle(3)": ("RP2 + 3 S2", "#7RP2"),
    "OneCircle(2)": ("RP2 + 2 S2", "#5RP2"),
    "OneCircle(1)": ("RP2 + S2", "#3RP2"),
    "OneCircle(0)": ("RP2", "RP2"),
    "OneCircleSplit11": ("#3RP2 + S2", "#3RP2 + S2"),
    "ThreeCircles": ("RP2 + #2RP2", "RP2 + #2RP2"),
}


def dp2_table(config: QuarticConfig) -> tuple[Manifold2, Manifold2]:
    f_plus, f_minus = _DP2_ROWS[config.render()]
    return parse_manifold(f_plus), parse_manifold(f_minus)


def dp1_table(config: SexticConfig) -> tuple[Manifold2, Manifold2]:
    f_plus, f_minus = _DP1_ROWS[config.render()]
    return parse_manifold(f_plus), parse_manifold(f_minus)


def dp2_partner(manifold: Manifold2) -> Manifold2:
    """The other side of the degree 2 row containing ``manifold``."""
    for config in QUARTIC_CONFIGS:
        f_plus, f_minus = dp2_table(config)
        if manifold == f_plus:
            return f_minus
        if manifold == f_minus:
            return f_plus
    raise InvalidInputError(f"{manifold.render()} is not a degree 2 topological type.")


# --- topological types per degree ---


@dataclass(frozen=True, slots=True)
class DelPezzoType:
    degree: int
    topology: Manifold2
    family_count: int = 1
    notes: str = ""

    def to_document(self) -> dict[str, object]:
        return {
            "degree": self.degree,
            "topology": self.topology.to_document(),
            "family_count": self.family_count,
            "notes": self.notes,
        }


_MONODROMY_NOTE = "monodromy interchanges the two components"
_EMPTY_DEGREE_8_NOTE = "two surfaces: Q40 and Q30xP1"

# Degrees 9..3, one entry per topological type.
_DP_TYPE_ROWS: dict[int, tuple[tuple[str, int, str], ...]] = {
    9: (("RP2", 1, ""),),
    8: (("S2", 1, ""), ("T2", 1, ""), ("#2RP2", 1, ""), ("empty", 2, _EMPTY_DEGREE_8_NOTE)),
    7: (("RP2", 1, ""), ("#3RP2", 1, "")),
    6: (("S2", 1, ""), ("T2", 1, ""), ("#2RP2", 1, ""), ("#4RP2", 1, ""), ("empty", 1, "")),
    5: (("RP2", 1, ""), ("#3RP2", 1, ""), ("#5RP2", 1, "")),
    4: (
        ("S2", 1, ""),
        ("T2", 1, ""),
        ("#2RP2", 1, ""),
        ("#4RP2", 1, ""),
        ("empty", 1, ""),
        ("2 S2", 1, _MONODROMY_NOTE),
    ),
    3: (("RP2", 1, ""), ("#3RP2", 1, ""), ("#5RP2", 1, ""), ("#7RP2", 1, ""), ("RP2 + S2", 1, "")),
}

# Degrees 2 and 1, as sets; the rows come from the branch-curve tables.
_LOW_DEGREE_TYPES: dict[int, frozenset[str]] = {
    2: frozenset(
        {"4 S2", "#8RP2", "3 S2", "#6RP2", "2 S2", "#4RP2", "S2", "#2RP2", "empty", "2 RP2", "T2", "#2RP2 + S2"}
    ),
    1: frozenset(
        {
            "RP2 + 4 S2",
            "#9RP2",
            "RP2 + 3 S2",
            "#7RP2",
            "RP2 + 2 S2",
            "#5RP2",
            "RP2 + S2",
            "#3RP2",
            "RP2",
            "#3RP2 + S2",
            "RP2 + #2RP2",
        }
    ),
}


def _branch_curve_types(degree: int) -> list[DelPezzoType]:
    if degree == 2:
        rows = [(config.render(), dp2_table(config)) for config in QUARTIC_CONFIGS]
    else:
        rows = [(config.render(), dp1_table(config)) for config in SEXTIC_CONFIGS]
    types: dict[Manifold2, DelPezzoType] = {}
    for label, (f_plus, f_minus) in rows:
        if f_plus == f_minus:
            types.setdefault(f_plus, DelPezzoType(degree, f_plus, 1, f"F+ and F- for {label}"))
            continue
        types.setdefault(f_plus, DelPezzoType(degree, f_plus, 1, f"F+ for {label}"))
        types.setdefault(f_minus, DelPezzoType(degree, f_minus, 1, f"F- for {label}"))
    rendered = {t.topology.render() for t in types.values()}
    expected = {parse_manifold(text).render() for text in _LOW_DEGREE_TYPES[degree]}
    if rendered != expected:
        raise TableConsistencyError(
            f"Degree {degree} table rows disagree with the stored type list: "
            f"{sorted(rendered ^ expected)}."
        )
    return list(types.values())


def dp_types(degree: int) -> list[DelPezzoType]:
    """Every real topological type of Del Pezzo surfaces of the given degree."""
    if not 1 <= degree <= 9:
        raise OutOfRangeError(f"Del Pezzo degree must be between 1 and 9, got {degree}.")
    if degree <= 2:
        return _branch_curve_types(degree)
    return [
        DelPezzoType(degree, parse_manifold(text), family_count, notes)
        for text, family_count, notes in _DP_TYPE_ROWS[degree]
    ]


def _blowup_descriptions(minimal: MinimalModel, count: int) -> list[SurfaceDescription]:
    """Blow-ups of ``minimal`` at a real points and b pairs with a + 2b = count."""
    descriptions = []
    locus_empty = base_topology(minimal).is_empty
    for pairs in range(count // 2 + 1):
        real = count - 2 * pairs
        if real and locus_empty:
            continue
        blowups = (BlowUp.real_point(),) * real + (BlowUp.conjugate_pair(),) * pairs
        descriptions.append(SurfaceDescription(minimal, blowups))
    return descriptions


def derived_topologies(degree: int) -> set[Manifold2]:
    """Real loci of degree ``degree`` surfaces built by blowing up P2, quadrics and conic bundles.

    Odd degrees below 9 also include every real blow-up of an even degree type.
    """
    if not 3 <= degree <= 9:
        raise OutOfRangeError("Derived topologies are available for degrees 3 to 9.")
    found: set[Manifold2] = set()
    for description in _blowup_descriptions(MinimalModel(ModelKind.P2), 9 - degree):
        found.add(topology(description))
    if degree <= 8:
        for kind in (ModelKind.Q22, ModelKind.Q31, ModelKind.Q40, ModelKind.Q30xP1):
            for description in _blowup_descriptions(MinimalModel(kind), 8 - degree):
                found.add(topology(description))
    if degree == 4:
        found.add(topology(SurfaceDescription(MinimalModel.conic_bundle(2))))
    if degree % 2 and degree < 9:
        for manifold in derived_topologies(degree + 1):
            for index in range(manifold.component_count):
                found.add(blow_up_real_point(manifold, index))
    return found


@dataclass(frozen=True, slots=True)
class MaximalChain:
    """Numbers that all describe the maximally real surface of degree 2 or 1."""

    degree: int
    real_lines: int
    bitangents: int | None
    f_plus: Manifold2
    f_minus: Manifold2
    picard_number_f_plus: int

    def to_document(self) -> dict[str, object]:
        return {
            "degree": self.degree,
            "real_lines": self.real_lines,
            "bitangents": self.bitangents,
            "f_plus": self.f_plus.to_document(),
            "f_minus": self.f_minus.to_document(),
            "picard_number_f_plus": self.picard_number_f_plus,
        }


def maximal_real_chain(degree: int) -> MaximalChain:
    """Check that the maximal table row agrees with line counts and blow-ups of P2.

    In degree 2 all 28 bitangents are real, F- is P2 blown up at 7 real points
    with all 56 lines real, and F+ is the minimal surface with four spheres.
    Degree 1 is the same with 8 points, 240 lines and the minimal surface
    RP2 + 4 S2.
    """
    if degree not in (1, 2):
        raise OutOfRangeError("Maximal chains exist for degrees 1 and 2.")
    points = 9 - degree
    if degree == 2:
        f_plus, f_minus = dp2_table(QuarticConfig(QuarticKind.OVALS, 4))
        bitangents: int | None = bitangent_count(4)
        minimal = MinimalModel(ModelKind.DP2_MIN)
    else:
        f_plus, f_minus = dp1_table(SexticConfig(SexticKind.ONE_CIRCLE, 4))
        bitangents = None
        minimal = MinimalModel(ModelKind.DP1_MIN)
    blown_up = SurfaceDescription(MinimalModel(ModelKind.P2), (BlowUp.real_point(),) * points)
    lines = real_line_count(GaloisAction.standard(points, points, 0))
    if topology(blown_up) != f_minus:
        raise TableConsistencyError(
            f"F- of the maximal degree {degree} row is {f_minus.render()}, "
            f"but P2 blown up at {points} real points has {topology(blown_up).render()}."
        )
    if base_topology(minimal) != f_plus:
        raise TableConsistencyError(
            f"F+ of the maximal degree {degree} row does not match the minimal model."
        )
    if lines != len(minus_one_classes(points)):
        raise TableConsistencyError("Not every line of the maximal surface is real.")
    return MaximalChain(
        degree=degree,
        real_lines=lines,
        bitangents=bitangents,
        f_plus=f_plus,
        f_minus=f_minus,
        picard_number_f_plus=picard_number(SurfaceDescription(minimal)),
    )

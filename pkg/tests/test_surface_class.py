from __future__ import annotations

from itertools import product
import random

import pytest

from realsurf_app.core.errors import BadIndexError, InvalidMinimalModelError, RealBlowupOnEmptyLocusError
from realsurf_app.core.manifold2 import TORUS, Component2, Manifold2, parse_manifold
from realsurf_app.core.surface_class import (
    BlowUp,
    BlowUpKind,
    ClassKind,
    MinimalModel,
    ModelKind,
    SurfaceDescription,
    base_topology,
    birational_class,
    classify,
    comessatti_check,
    is_rational_over_reals,
    k_squared,
    picard_number,
    topology,
)

REAL = BlowUp.real_point()
PAIR = BlowUp.conjugate_pair()

ALL_MODELS = [MinimalModel(kind) for kind in ModelKind if kind is not ModelKind.MINIMAL_CONIC_BUNDLE] + [
    MinimalModel.conic_bundle(m) for m in (2, 3, 5)
]


def surface(kind: str, *blowups: BlowUp, m: int = 0) -> SurfaceDescription:
    return SurfaceDescription(MinimalModel(ModelKind.parse(kind), m), tuple(blowups))


def random_legal_description(rng: random.Random) -> SurfaceDescription:
    minimal = rng.choice(ALL_MODELS)
    manifold = base_topology(minimal)
    blowups: list[BlowUp] = []
    for _ in range(rng.randint(0, 8)):
        if manifold.is_empty or rng.random() < 0.3:
            blowups.append(PAIR)
            continue
        index = rng.randrange(manifold.component_count)
        blowups.append(BlowUp.real_point(index))
        manifold = topology(SurfaceDescription(minimal, tuple(blowups)))
    return SurfaceDescription(minimal, tuple(blowups))


# --- models ---


def test_minimal_model_validation() -> None:
    with pytest.raises(InvalidMinimalModelError):
        MinimalModel.conic_bundle(1)
    with pytest.raises(InvalidMinimalModelError):
        MinimalModel(ModelKind.P2, 3)
    with pytest.raises(InvalidMinimalModelError):
        ModelKind.parse("K3")
    assert MinimalModel.conic_bundle(4).render() == "MinimalConicBundle(4)"


def test_description_render() -> None:
    description = surface("P2", BlowUp.real_point(0), PAIR)
    assert description.render() == "P2 [RealPoint(0), ConjugatePair]"
    assert description.real_point_count == 1
    assert description.pair_count == 1


@pytest.mark.parametrize(
    ("kind", "expected"),
    [
        ("P2", "RP2"),
        ("Q22", "T2"),
        ("Q31", "S2"),
        ("Q40", "empty"),
        ("Q30xP1", "empty"),
        ("DP2min", "4 S2"),
        ("DP1min", "RP2 + 4 S2"),
    ],
)
def test_base_topology(kind: str, expected: str) -> None:
    assert base_topology(MinimalModel(ModelKind.parse(kind))).render() == expected


def test_conic_bundle_base_topology() -> None:
    assert base_topology(MinimalModel.conic_bundle(3)) == Manifold2.spheres(3)


# --- topology ---


@pytest.mark.parametrize(
    ("description", "expected"),
    [
        (surface("P2", REAL), "#2RP2"),
        (surface("Q31", PAIR), "S2"),
        (surface("MinimalConicBundle", m=3), "3 S2"),
        (surface("Q22", REAL), "#3RP2"),
        (surface("DP2min", BlowUp.real_point(3), BlowUp.real_point(0)), "#2RP2 + 3 S2"),
        (surface("DP2min", BlowUp.real_point(3), BlowUp.real_point(3)), "2 RP2 + 2 S2"),
        (surface("DP1min", BlowUp.real_point(0)), "#2RP2 + 4 S2"),
    ],
)
def test_topology(description: SurfaceDescription, expected: str) -> None:
    assert topology(description).render() == expected


def test_real_point_on_empty_locus() -> None:
    with pytest.raises(RealBlowupOnEmptyLocusError):
        topology(surface("Q40", PAIR, REAL))


def test_real_point_index_out_of_range() -> None:
    with pytest.raises(BadIndexError):
        topology(surface("MinimalConicBundle", BlowUp.real_point(2), m=2))
    with pytest.raises(BadIndexError):
        BlowUp.real_point(-1)


# --- numerical invariants ---


@pytest.mark.parametrize(
    ("description", "expected"),
    [
        (surface("P2", REAL, PAIR), 6),
        (surface("MinimalConicBundle", m=3), 2),
        (surface("DP1min"), 1),
        (surface("Q30xP1", PAIR), 6),
    ],
)
def test_k_squared(description: SurfaceDescription, expected: int) -> None:
    assert k_squared(description) == expected


@pytest.mark.parametrize(
    ("description", "expected"),
    [
        (surface("P2"), 1),
        (surface("Q22"), 2),
        (surface("Q31", PAIR, PAIR), 3),
        (surface("MinimalConicBundle", REAL, m=2), 3),
    ],
)
def test_picard_number(description: SurfaceDescription, expected: int) -> None:
    assert picard_number(description) == expected


def test_blow_up_arithmetic_to_depth_four() -> None:
    for minimal in ALL_MODELS:
        start = SurfaceDescription(minimal)
        for depth in range(1, 5):
            for steps in product((REAL, PAIR), repeat=depth):
                if base_topology(minimal).is_empty and REAL in steps:
                    continue
                description = SurfaceDescription(minimal, steps)
                reals = sum(1 for step in steps if step.kind is BlowUpKind.REAL_POINT)
                pairs = depth - reals
                assert k_squared(description) == k_squared(start) - reals - 2 * pairs
                assert picard_number(description) == picard_number(start) + depth


# --- birational class ---


@pytest.mark.parametrize(
    ("description", "expected"),
    [
        (surface("Q30xP1", PAIR, PAIR), "Empty"),
        (surface("Q22", REAL), "Rational"),
        (surface("MinimalConicBundle", PAIR, m=3), "ConicBundle(3)"),
        (surface("DP2min", REAL), "DP2"),
        (surface("DP1min"), "DP1"),
    ],
)
def test_birational_class(description: SurfaceDescription, expected: str) -> None:
    assert birational_class(description).render() == expected


def test_component_count_matches_class() -> None:
    rng = random.Random(1)
    for _ in range(300):
        description = random_legal_description(rng)
        klass = birational_class(description)
        assert topology(description).component_count == klass.component_count


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("#2T2", False),
        ("T2", True),
        ("3 S2", True),
        ("empty", True),
        ("T2 + S2", False),
        ("#5RP2 + S2 + RP2", True),
    ],
)
def test_comessatti_check(text: str, expected: bool) -> None:
    assert comessatti_check(parse_manifold(text)) is expected


def test_comessatti_holds_for_random_surfaces() -> None:
    rng = random.Random(500)
    for _ in range(500):
        assert comessatti_check(topology(random_legal_description(rng)))


def test_torus_only_without_real_blowups_of_q22() -> None:
    rng = random.Random(9)
    for _ in range(300):
        description = random_legal_description(rng)
        if Manifold2.of(TORUS) == topology(description):
            assert description.minimal.kind is ModelKind.Q22
            assert description.real_point_count == 0


def test_rationality_over_reals() -> None:
    assert is_rational_over_reals(surface("Q22", PAIR))
    assert not is_rational_over_reals(surface("Q40"))
    assert not is_rational_over_reals(surface("MinimalConicBundle", m=2))
    assert not is_rational_over_reals(surface("DP2min"))


def test_classify_report() -> None:
    document = classify(surface("MinimalConicBundle", m=3)).to_document()
    assert document["class"] == ClassKind.CONIC_BUNDLE.value
    assert document["m"] == 3
    assert document["components"] == 3
    assert document["k_squared"] == 2
    assert document["picard_number"] == 2
    assert document["topology"]["render"] == "3 S2"
    assert document["comessatti"] is True
    assert document["rational_over_reals"] is False


def test_genus_two_is_never_a_real_locus() -> None:
    assert not comessatti_check(Manifold2.of(Component2(True, 2)))

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
import random

import pytest

from realsurf_app.core.conic_bundle import (
    ConicBundleInput,
    ConicBundleNF,
    EquivalenceResult,
    fibration_equivalent,
    interval_set,
    k_squared,
    match_roots,
    moduli_dimension,
    normalize,
    normalize_with_trace,
    surface_equivalent,
    topology,
    transport_normal_form,
)
from realsurf_app.core.errors import (
    InvalidInputError,
    NonRationalRootError,
    ZeroFunctionError,
    ZeroPolynomialError,
)
from realsurf_app.core.interval_set import IntervalKind, IntervalSet, ProjPoint
from realsurf_app.core.manifold2 import TORUS, Manifold2
from realsurf_app.core.moebius import MoebiusMap, cross_ratio, from_three_points
from realsurf_app.core.poly import RationalPoly

Z = RationalPoly.variable()


def lin(root: object) -> RationalPoly:
    return RationalPoly.linear(root)


def nf(sign: int, *roots: object) -> ConicBundleNF:
    return ConicBundleNF.from_rationals(sign, list(roots))


def exact_roots(normal_form: ConicBundleNF) -> list[Fraction]:
    return normal_form.exact_roots()


def random_nf(rng: random.Random, m: int) -> ConicBundleNF:
    roots: set[Fraction] = set()
    while len(roots) < 2 * m:
        roots.add(Fraction(rng.randint(-30, 30), rng.randint(1, 4)))
    return ConicBundleNF.from_rationals(rng.choice([1, -1]), sorted(roots))


def random_map(rng: random.Random) -> MoebiusMap:
    while True:
        entries = [rng.randint(-6, 6) for _ in range(4)]
        if entries[0] * entries[3] != entries[1] * entries[2]:
            return MoebiusMap(*entries)


def unimodular_map(rng: random.Random) -> tuple[int, int, int, int]:
    """Integer matrix of determinant +-1 built from shears, a swap and a reflection."""
    a, b, c, d = 1, 0, 0, 1
    for _ in range(rng.randint(1, 4)):
        k = rng.choice([-3, -2, -1, 1, 2, 3])
        e, f, g, h = rng.choice([(1, k, 0, 1), (1, 0, k, 1), (0, 1, 1, 0), (-1, 0, 0, 1)])
        a, b, c, d = a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h
    return a, b, c, d


def planted_function(rng: random.Random, roots: list[Fraction]) -> tuple[RationalPoly, RationalPoly, int]:
    """``g`` with sign changes exactly at ``roots``, hidden among squares and definite quadratics."""
    lead = rng.choice([-3, -1, Fraction(1, 2), 2, Fraction(-5, 7)])
    numerator = RationalPoly.from_roots(roots, lead)
    for _ in range(rng.randint(0, 3)):
        numerator = numerator * lin(Fraction(rng.randint(-15, 15), rng.randint(1, 3))) ** 2
    for _ in range(rng.randint(0, 2)):
        u, v = Fraction(rng.randint(-9, 9), rng.randint(1, 3)), Fraction(rng.randint(1, 6), rng.randint(1, 2))
        numerator = numerator * (lin(u) ** 2 + v * v)
    denominator = RationalPoly.constant(1)
    if rng.random() < 0.4:
        u, v = Fraction(rng.randint(-9, 9)), Fraction(rng.randint(1, 4))
        denominator = (lin(u) ** 2 + v * v) * lin(rng.randint(-9, 9)) ** 2
    return numerator, denominator, 1 if lead > 0 else -1


def compose(first: EquivalenceResult, second: EquivalenceResult) -> tuple[MoebiusMap, tuple[int, ...]]:
    """Witness and root permutation for A ~ C from A ~ B and B ~ C."""
    assert first.witness is not None and second.witness is not None
    permutation = tuple(second.permutation[i] for i in first.permutation or ())
    return second.witness.compose(first.witness), permutation


# --- normal form ---


def test_normalize_strips_definite_factor() -> None:
    g = (Z * Z + 1) * lin(1) * lin(-1)
    result = normalize(ConicBundleInput(g))
    assert result.sign == 1
    assert exact_roots(result) == [-1, 1]
    assert result.m == 1


def test_normalize_strips_square_factor() -> None:
    nf_, trace = normalize_with_trace(ConicBundleInput(lin(1) ** 2 * lin(2) * lin(3)))
    assert nf_.sign == 1
    assert exact_roots(nf_) == [2, 3]
    assert trace.square_factor_degree == 2
    assert not trace.inverted
    assert trace.reference_point == 4


def test_normalize_inverts_odd_root_count() -> None:
    nf_, trace = normalize_with_trace(ConicBundleInput(lin(1) * lin(2) * lin(3)))
    assert exact_roots(nf_) == [0, Fraction(1, 3), Fraction(1, 2), 1]
    assert nf_.sign == -1
    assert trace.inverted
    assert trace.translation == 0


def test_normalize_inversion_translates_away_from_roots() -> None:
    nf_, trace = normalize_with_trace(ConicBundleInput(Z * lin(1) * lin(2)))
    assert trace.translation == 3
    assert nf_.m == 2
    # w = 1 / (z - 3) keeps the sign chart of g.
    for z in (Fraction(-1), Fraction(1, 2), Fraction(3, 2), Fraction(5, 2), Fraction(4), Fraction(7)):
        w = 1 / (z - 3)
        g_sign = (Z * lin(1) * lin(2))(z) >= 0
        assert interval_set(nf_).contains(ProjPoint(w)) == g_sign


def test_normalize_clears_denominator() -> None:
    result = normalize(ConicBundleInput(lin(1), lin(2)))
    assert exact_roots(result) == [1, 2]
    assert result.sign == 1


def test_normalize_keeps_irrational_roots() -> None:
    result = normalize(ConicBundleInput(Z * Z - 2))
    assert result.m == 1
    assert not result.is_exact
    assert result.sign_at(Fraction(0)) == -1
    assert result.sign_at(Fraction(2)) == 1
    assert result.sign_at(None) == 1
    with pytest.raises(NonRationalRootError):
        interval_set(result)


def test_normalize_constant_functions() -> None:
    assert normalize(ConicBundleInput(RationalPoly.constant(5))) == nf(1)
    assert normalize(ConicBundleInput(RationalPoly.constant(-2), Z * Z + 1)) == nf(-1)


def test_normalize_rejects_zero() -> None:
    with pytest.raises(ZeroFunctionError):
        normalize(ConicBundleInput(RationalPoly()))
    with pytest.raises(ZeroPolynomialError):
        normalize(ConicBundleInput(Z, RationalPoly()))


def test_normalize_is_idempotent() -> None:
    rng = random.Random(4)
    for _ in range(30):
        original = random_nf(rng, rng.randint(0, 4))
        again = normalize(ConicBundleInput(original.polynomial()))
        assert again == original


def test_planted_roots_are_recovered() -> None:
    rng = random.Random(21)
    for _ in range(100):
        planted: set[Fraction] = set()
        target = 2 * rng.randint(0, 4)
        while len(planted) < target:
            planted.add(Fraction(rng.randint(-12, 12), rng.randint(1, 3)))
        numerator, denominator, lead_sign = planted_function(rng, sorted(planted))
        normal_form, trace = normalize_with_trace(ConicBundleInput(numerator, denominator))
        assert not trace.inverted
        assert normal_form.exact_roots() == sorted(planted)
        assert normal_form.sign == lead_sign
        intervals = interval_set(normal_form)
        for _ in range(20):
            z = Fraction(rng.randint(-60, 60), rng.randint(1, 5))
            if numerator(z) == 0 or denominator(z) == 0:
                continue
            assert intervals.contains(ProjPoint(z)) == (numerator(z) * denominator(z) > 0)


def test_odd_planted_root_counts_are_inverted() -> None:
    rng = random.Random(22)
    for _ in range(100):
        planted: set[Fraction] = set()
        target = 2 * rng.randint(0, 3) + 1
        while len(planted) < target:
            planted.add(Fraction(rng.randint(-12, 12), rng.randint(1, 3)))
        numerator, denominator, _ = planted_function(rng, sorted(planted))
        normal_form, trace = normalize_with_trace(ConicBundleInput(numerator, denominator))
        assert trace.inverted
        assert normal_form.m == (target + 1) // 2
        intervals = interval_set(normal_form)
        for _ in range(20):
            z = Fraction(rng.randint(-60, 60), rng.randint(1, 5))
            if z == trace.translation or numerator(z) == 0 or denominator(z) == 0:
                continue
            w = 1 / (z - trace.translation)
            assert intervals.contains(ProjPoint(w)) == (numerator(z) * denominator(z) > 0)


def test_normal_form_validation() -> None:
    with pytest.raises(InvalidInputError):
        nf(1, 0, 0)
    with pytest.raises(InvalidInputError):
        ConicBundleNF(2)
    with pytest.raises(InvalidInputError):
        nf(1, 0)


def test_normal_form_document() -> None:
    assert nf(-1, 1, "1/2").to_document() == {"sign": "-", "m": 1, "roots": ["1/2", "1"]}


# --- interval set and invariants ---


def test_interval_set_examples() -> None:
    assert interval_set(nf(-1, 0, 1)) == IntervalSet.from_arcs([(ProjPoint.finite(0), ProjPoint.finite(1))])
    through_infinity = interval_set(nf(1, 0, 1))
    assert through_infinity.arcs == ((ProjPoint.finite(1), ProjPoint.finite(0)),)
    assert through_infinity.contains(ProjPoint.infinity())
    assert interval_set(nf(-1)).kind is IntervalKind.EMPTY
    assert interval_set(nf(1)).kind is IntervalKind.FULL


def test_interval_set_has_m_components() -> None:
    rng = random.Random(6)
    for m in range(1, 7):
        for _ in range(5):
            assert interval_set(random_nf(rng, m)).component_count == m


@pytest.mark.parametrize(("m", "genus", "expected"), [(3, 0, 2), (0, 0, 8), (2, 0, 4), (1, 1, -2)])
def test_k_squared(m: int, genus: int, expected: int) -> None:
    assert k_squared(m, genus) == expected


def test_k_squared_rejects_negative() -> None:
    with pytest.raises(InvalidInputError):
        k_squared(-1)


def test_topology() -> None:
    assert topology(nf(1, 0, 1, 2, 3)) == Manifold2.spheres(2)
    assert topology(nf(1)) == Manifold2.of(TORUS)
    assert topology(nf(-1)).is_empty


def test_moduli_dimension() -> None:
    assert [moduli_dimension(m) for m in range(5)] == [0, 0, 1, 3, 5]


# --- equivalence ---


def test_equivalent_to_itself_with_identity() -> None:
    normal_form = nf(1, 0, 1, 2, 5)
    result = fibration_equivalent(normal_form, normal_form)
    assert result.equivalent
    assert result.witness == MoebiusMap.identity()
    assert result.permutation == (0, 1, 2, 3)


def test_translation_witness() -> None:
    result = fibration_equivalent(nf(1, 0, 1, 2, 3), nf(1, 5, 6, 7, 8))
    assert result.equivalent
    assert result.witness == MoebiusMap(1, 5, 0, 1)
    assert result.to_document()["witness"] == {"matrix": [["1", "5"], ["0", "1"]]}


def test_cross_ratio_obstruction() -> None:
    assert not fibration_equivalent(nf(1, 0, 1, 2, 4), nf(1, 0, 1, 2, 5)).equivalent


def test_sign_matters_for_fibrations() -> None:
    # z -> -1/z swaps the two arcs and has a negative pole product.
    assert fibration_equivalent(nf(1, -1, 1), nf(-1, -1, 1)).equivalent
    assert not fibration_equivalent(nf(1), nf(-1)).equivalent
    assert not fibration_equivalent(nf(1, 0, 1), nf(1, 0, 1, 2, 3)).equivalent


def test_single_interval_is_always_equivalent() -> None:
    rng = random.Random(12)
    for _ in range(20):
        first, second = random_nf(rng, 1), random_nf(rng, 1)
        result = fibration_equivalent(first, second)
        assert result.equivalent
        assert transport_normal_form(first, result.witness) == second


def test_transported_forms_are_equivalent() -> None:
    rng = random.Random(31)
    trials = 0
    while trials < 100:
        original = random_nf(rng, rng.randint(2, 4))
        mapping = random_map(rng)
        if any(mapping.pole_factor(value) == 0 for value in original.exact_roots()):
            continue
        trials += 1
        image = transport_normal_form(original, mapping)
        result = fibration_equivalent(original, image)
        assert result.equivalent
        assert match_roots(original, image, result.witness) == result.permutation


def test_unimodular_images_are_equivalent() -> None:
    rng = random.Random(32)
    trials = 0
    while trials < 100:
        original = random_nf(rng, rng.randint(2, 5))
        a, b, c, d = unimodular_map(rng)
        assert abs(a * d - b * c) == 1
        mapping = MoebiusMap(a, b, c, d)
        if any(mapping.pole_factor(value) == 0 for value in original.exact_roots()):
            continue
        trials += 1
        image = transport_normal_form(original, mapping)
        result = fibration_equivalent(original, image)
        assert result.equivalent
        assert transport_normal_form(original, result.witness) == image
        assert match_roots(original, image, result.witness) == result.permutation


def test_equivalence_relation_on_random_pool() -> None:
    rng = random.Random(77)
    base = [random_nf(rng, 2) for _ in range(3)]
    pool = list(base)
    for normal_form in base:
        mapping = random_map(rng)
        if all(mapping.pole_factor(value) != 0 for value in normal_form.exact_roots()):
            pool.append(transport_normal_form(normal_form, mapping))
    for a in pool:
        assert fibration_equivalent(a, a).equivalent
        for b in pool:
            forward = fibration_equivalent(a, b)
            assert forward.equivalent == fibration_equivalent(b, a).equivalent
            if not forward.equivalent:
                continue
            for c in pool:
                onward = fibration_equivalent(b, c)
                if not onward.equivalent:
                    continue
                witness, permutation = compose(forward, onward)
                assert match_roots(a, c, witness) == permutation


def test_equivalence_needs_rational_roots() -> None:
    irrational = normalize(ConicBundleInput(Z * Z - 2))
    with pytest.raises(NonRationalRootError):
        fibration_equivalent(irrational, nf(1, 0, 1))
    with pytest.raises(NonRationalRootError):
        surface_equivalent(nf(1, 0, 1), irrational)


def test_surface_equivalence() -> None:
    assert surface_equivalent(nf(1, 0, 1, 2, 4), nf(1, 0, 1, 2, 5))
    assert not surface_equivalent(nf(1), nf(-1))
    assert surface_equivalent(nf(-1, 3, 7), nf(1, 0, 1))
    assert not surface_equivalent(nf(1, 0, 1), nf(1, 0, 1, 2, 3))
    first = nf(1, 0, 1, 2, 3, 5, 8, 13, 21)
    second = transport_normal_form(first, MoebiusMap(2, 1, 1, 5))
    assert surface_equivalent(first, second)
    third, fourth = nf(1, 0, 1, 2, 3, 4, 5), nf(1, 0, 1, 2, 3, 4, 7)
    assert surface_equivalent(third, fourth) == fibration_equivalent(third, fourth).equivalent


def brute_force_equivalent(first: ConicBundleNF, second: ConicBundleNF) -> bool:
    """Try every image of the first three roots, comparing cross-ratios and then the sign.

    With three points fixed the cross-ratio is injective in the fourth, so this
    covers every bijection of the roots.
    """
    sources = [ProjPoint(x) for x in first.exact_roots()]
    targets = [ProjPoint(x) for x in second.exact_roots()]
    if len(sources) != len(targets) or len(sources) < 4:
        raise ValueError("Oracle needs at least four roots on each side.")
    for triple in permutations(range(len(targets)), 3):
        images = [targets[i] for i in triple]
        rest = [target for i, target in enumerate(targets) if i not in triple]
        wanted = {cross_ratio(*sources[:3], point) for point in sources[3:]}
        if wanted != {cross_ratio(*images, point) for point in rest}:
            continue
        mapping = from_three_points(tuple(sources[:3]), tuple(images))
        sign = first.sign
        for point in sources:
            sign *= 1 if mapping.pole_factor(point.value) > 0 else -1
        if sign == second.sign:
            return True
    return False


def test_perturbed_roots_agree_with_brute_force() -> None:
    rng = random.Random(606)
    trials = 0
    while trials < 100:
        original = random_nf(rng, rng.randint(2, 5))
        mapping = MoebiusMap(*unimodular_map(rng))
        if any(mapping.pole_factor(value) == 0 for value in original.exact_roots()):
            continue
        image = transport_normal_form(original, mapping)
        roots = image.exact_roots()
        moved = rng.randrange(len(roots))
        replacement = roots[moved] + Fraction(rng.randint(1, 9), rng.randint(1, 9))
        if replacement in roots:
            continue
        trials += 1
        assert brute_force_equivalent(original, image)
        perturbed = ConicBundleNF.from_rationals(image.sign, roots[:moved] + [replacement] + roots[moved + 1 :])
        assert fibration_equivalent(original, perturbed).equivalent == brute_force_equivalent(original, perturbed)

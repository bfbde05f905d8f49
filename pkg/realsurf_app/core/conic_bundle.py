"""Real conic bundles ``x^2 + y^2 = g(z)`` over the projective line.

Every such bundle reduces to the normal form ``x^2 + y^2 = sign * prod(z - a_i)``
with 2m distinct real roots. The set of base points with real fibers is a union
of m closed arcs of the projective line and, together with the sign, decides
when two bundles are birational over the base.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
import logging

from realsurf_app.core.errors import (
    InvalidInputError,
    NonRationalRootError,
    ZeroFunctionError,
    ZeroPolynomialError,
)
from realsurf_app.core.interval_set import IntervalSet, ProjPoint, arc_sample
from realsurf_app.core.manifold2 import TORUS, Manifold2
from realsurf_app.core.moebius import MoebiusMap, from_three_points
from realsurf_app.core.poly import (
    ExactRational,
    IsolatedRoot,
    RationalPoly,
    count_real_roots,
    format_rational,
    isolate_real_roots,
    sign_at as poly_sign_at,
    squarefree_decomposition,
    to_rational,
)

logger = logging.getLogger(__name__)


def _one() -> RationalPoly:
    return RationalPoly.constant(1)


@dataclass(frozen=True, slots=True)
class ConicBundleInput:
    """The rational function ``g = numerator / denominator``."""

    numerator: RationalPoly
    denominator: RationalPoly = field(default_factory=_one)

    def sign_at(self, z: Fraction) -> int:
        return poly_sign_at(self.numerator, z) * poly_sign_at(self.denominator, z)


@dataclass(frozen=True, slots=True)
class ConicBundleNF:
    sign: int
    roots: tuple[IsolatedRoot, ...] = ()

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise InvalidInputError("Normal form sign must be +1 or -1.")
        if len(self.roots) % 2:
            raise InvalidInputError("A normal form has an even number of roots.")

    @classmethod
    def from_rationals(cls, sign: int, roots: list[object]) -> ConicBundleNF:
        values = sorted(to_rational(r) for r in roots)
        if len(set(values)) != len(values):
            raise InvalidInputError("Normal form roots must be distinct.")
        return cls(sign, tuple(ExactRational(v) for v in values))

    @property
    def m(self) -> int:
        return len(self.roots) // 2

    @property
    def is_exact(self) -> bool:
        return all(root.is_exact for root in self.roots)

    def exact_roots(self) -> list[Fraction]:
        if not self.is_exact:
            raise NonRationalRootError("Exact decisions need every root to be rational.")
        return [root.value for root in self.roots]

    def sign_at(self, z: Fraction | None) -> int:
        """Sign of ``sign * prod(z - a_i)``; ``None`` stands for infinity."""
        if z is None:
            return self.sign
        above = 0
        for root in self.roots:
            relation = root.compare(z)
            if relation == 0:
                return 0
            above += relation > 0
        return self.sign * (-1) ** above

    def polynomial(self) -> RationalPoly:
        return RationalPoly.from_roots(self.exact_roots(), self.sign)

    def to_document(self) -> dict[str, object]:
        roots: list[object] = []
        for root in self.roots:
            if root.is_exact:
                roots.append(format_rational(root.value))
            else:
                roots.append({"interval": [format_rational(root.lower), format_rational(root.upper)]})
        return {"sign": "+" if self.sign > 0 else "-", "m": self.m, "roots": roots}


@dataclass(frozen=True, slots=True)
class NormalizationTrace:
    """Degrees stripped and substitutions made while reaching the normal form."""

    cleared_denominator_degree: int
    square_factor_degree: int
    definite_factor_degree: int
    translation: Fraction | None
    inverted: bool
    reference_point: Fraction

    def to_document(self) -> dict[str, object]:
        return {
            "cleared_denominator_degree": self.cleared_denominator_degree,
            "square_factor_degree": self.square_factor_degree,
            "definite_factor_degree": self.definite_factor_degree,
            "translation": None if self.translation is None else format_rational(self.translation),
            "inverted": self.inverted,
            "reference_point": format_rational(self.reference_point),
        }


def _odd_part(product: RationalPoly) -> tuple[RationalPoly, int]:
    # Needs the multiplicity of each factor, which squarefree_part does not report.
    odd = _one()
    square_degree = 0
    for factor, multiplicity in squarefree_decomposition(product):
        if multiplicity % 2:
            odd = odd * factor
        square_degree += factor.degree * (multiplicity - multiplicity % 2)
    return odd, square_degree


def _first_integer_above(roots: list[IsolatedRoot]) -> int:
    return max((root.floor_above() for root in roots), default=0)


def normalize_with_trace(bundle: ConicBundleInput) -> tuple[ConicBundleNF, NormalizationTrace]:
    if bundle.numerator.is_zero:
        raise ZeroFunctionError("g is identically zero.")
    if bundle.denominator.is_zero:
        raise ZeroPolynomialError("The denominator of g is the zero polynomial.")

    # g * denominator^2 has the sign of g wherever both are defined.
    product = bundle.numerator * bundle.denominator
    odd, square_degree = _odd_part(product)
    real_root_count = count_real_roots(odd)
    definite_degree = odd.degree - real_root_count
    logger.debug(
        "Cleared denominator of degree %d, stripped squares of degree %d and definite factors of degree %d",
        bundle.denominator.degree,
        square_degree,
        definite_degree,
    )

    translation: Fraction | None = None
    inverted = False
    if real_root_count % 2:
        translation = Fraction(0)
        while poly_sign_at(odd, translation) == 0:
            translation += 1
        degree = odd.degree
        # w^(deg + 1) * odd(t + 1/w); the extra factor w is a new root at 0.
        inverted_odd = odd.shift(translation).reversed_to(degree) * RationalPoly.variable()
        roots = isolate_real_roots(inverted_odd)
        inverted = True
        logger.debug("Odd number of real roots: translated by %s and inverted", translation)
    else:
        roots = isolate_real_roots(odd)

    reference = Fraction(_first_integer_above(roots))
    while True:
        z = translation + 1 / reference if inverted else reference
        if poly_sign_at(product, z) != 0:
            break
        reference += 1
    # Past the largest root the product of linear factors is positive.
    sign = bundle.sign_at(z)
    nf = ConicBundleNF(sign, tuple(roots))
    trace = NormalizationTrace(
        cleared_denominator_degree=max(bundle.denominator.degree, 0),
        square_factor_degree=square_degree,
        definite_factor_degree=definite_degree,
        translation=translation,
        inverted=inverted,
        reference_point=reference,
    )
    logger.debug("Normal form has sign %+d and m=%d", nf.sign, nf.m)
    return nf, trace


def normalize(bundle: ConicBundleInput) -> ConicBundleNF:
    return normalize_with_trace(bundle)[0]


def interval_set(nf: ConicBundleNF) -> IntervalSet:
    """Base points ``z`` (infinity included) where ``sign * prod(z - a_i) >= 0``."""
    roots = [ProjPoint(value) for value in nf.exact_roots()]
    if not roots:
        return IntervalSet.full() if nf.sign > 0 else IntervalSet.empty()
    arcs = []
    for index, start in enumerate(roots):
        end = roots[(index + 1) % len(roots)]
        if nf.sign_at(arc_sample(start, end).value) > 0:
            arcs.append((start, end))
    return IntervalSet.from_arcs(arcs)


def k_squared(m: int, base_genus: int = 0) -> int:
    if m < 0 or base_genus < 0:
        raise InvalidInputError("m and the base genus must be nonnegative.")
    return 8 * (1 - base_genus) - 2 * m


def topology(nf: ConicBundleNF) -> Manifold2:
    if nf.m >= 1:
        return Manifold2.spheres(nf.m)
    # Without singular fibers the real locus over the whole circle is a torus or a
    # Klein bottle; the torus stands for both.
    return Manifold2.of(TORUS) if nf.sign > 0 else Manifold2.empty()


def moduli_dimension(m: int) -> int:
    """Dimension of the space of normal forms with 2m roots up to equivalence."""
    return max(2 * m - 3, 0)


@dataclass(frozen=True, slots=True)
class EquivalenceResult:
    equivalent: bool
    witness: MoebiusMap | None = None
    permutation: tuple[int, ...] | None = None

    def to_document(self) -> dict[str, object]:
        document: dict[str, object] = {"equivalent": self.equivalent}
        if self.witness is not None:
            document["witness"] = self.witness.to_document()
            document["permutation"] = list(self.permutation or ())
        return document


NOT_EQUIVALENT = EquivalenceResult(False)


def match_roots(first: ConicBundleNF, second: ConicBundleNF, mapping: MoebiusMap) -> tuple[int, ...] | None:
    """Permutation realized by ``mapping`` if it is a witness from ``first`` to ``second``."""
    sources = first.exact_roots()
    targets = {value: index for index, value in enumerate(second.exact_roots())}
    if len(sources) != len(targets):
        return None
    permutation = []
    pole_sign = 1
    for value in sources:
        factor = mapping.pole_factor(value)
        if factor == 0:
            return None
        image = mapping.apply(ProjPoint(value)).value
        if image not in targets:
            return None
        permutation.append(targets[image])
        pole_sign *= 1 if factor > 0 else -1
    if second.sign != first.sign * pole_sign:
        return None
    return tuple(permutation)


def fibration_equivalent(first: ConicBundleNF, second: ConicBundleNF) -> EquivalenceResult:
    """Search for a Möbius map carrying one normal form onto the other.

    Candidates send the first three roots of ``first`` to ordered triples of
    roots of ``second``, tried in lexicographic order of the target indices.
    """
    sources = first.exact_roots()
    targets = second.exact_roots()
    if first.m != second.m:
        return NOT_EQUIVALENT
    if first.m == 0:
        if first.sign == second.sign:
            return EquivalenceResult(True, MoebiusMap.identity(), ())
        return NOT_EQUIVALENT
    if first.m == 1:
        return _match_single_arcs(first, second)
    source_points = tuple(ProjPoint(value) for value in sources[:3])
    tried = 0
    for triple in permutations(range(len(targets)), 3):
        tried += 1
        candidate = from_three_points(source_points, tuple(ProjPoint(targets[i]) for i in triple))
        permutation = match_roots(first, second, candidate)
        if permutation is not None:
            logger.debug("Witness found after %d candidate maps", tried)
            return EquivalenceResult(True, candidate, permutation)
    logger.debug("No witness among %d candidate maps", tried)
    return NOT_EQUIVALENT


def _match_single_arcs(first: ConicBundleNF, second: ConicBundleNF) -> EquivalenceResult:
    # Any arc can be carried onto any other arc: send endpoints to endpoints and
    # an interior point to an interior point.
    (source_start, source_end), = interval_set(first).arcs
    (target_start, target_end), = interval_set(second).arcs
    candidate = from_three_points(
        (source_start, source_end, arc_sample(source_start, source_end)),
        (target_start, target_end, arc_sample(target_start, target_end)),
    )
    permutation = match_roots(first, second, candidate)
    if permutation is None:
        raise RuntimeError("Arc-to-arc map failed to match a single interval.")
    return EquivalenceResult(True, candidate, permutation)


def surface_equivalent(first: ConicBundleNF, second: ConicBundleNF) -> bool:
    """Birational equivalence of the total spaces, not just of the fibrations."""
    first.exact_roots()
    second.exact_roots()
    if first.m != second.m:
        return False
    if first.m == 0:
        return first.sign == second.sign
    if first.m <= 2:
        return True
    return fibration_equivalent(first, second).equivalent


def transport_normal_form(nf: ConicBundleNF, mapping: MoebiusMap) -> ConicBundleNF:
    """The normal form obtained by moving every root with ``mapping``."""
    pole_sign = 1
    images = []
    for value in nf.exact_roots():
        factor = mapping.pole_factor(value)
        if factor == 0:
            raise InvalidInputError(f"Root {format_rational(value)} is sent to infinity.")
        pole_sign *= 1 if factor > 0 else -1
        images.append(mapping.apply(ProjPoint(value)).value)
    return ConicBundleNF.from_rationals(nf.sign * pole_sign, images)

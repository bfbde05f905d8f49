"""Statements each computed fact instantiates, keyed by fact name.

Every statement starts with its label so a reader can find it in the
classification literature; responses map each result key to one of these.
"""

from __future__ import annotations

from collections.abc import Mapping

PROVENANCE: dict[str, str] = {
    "normal_form": "Theorem (conic bundle normal form): every real conic bundle x^2 + y^2 = g(z) is "
    "birational over the base to x^2 + y^2 = +-prod(z - a_i) with 2m distinct real a_i",
    "normalization_steps": "Lemma (conic bundle reduction): square factors and positive definite quadratics "
    "are absorbed into x, y; an odd root count is made even by z -> t + 1/z",
    "interval_set": "Exercise (image of the real locus): the real locus maps onto a union of m closed "
    "intervals of the base",
    "k_squared_bundle": "Theorem (real minimal models, conic bundle case): K^2 = 8(1 - g(B)) - 2m for a "
    "conic bundle with 2m singular fibers",
    "fibration_equivalence": "Exercise (conic bundle isomorphism): two normal forms are fiberwise birational "
    "iff a real Moebius map permutes the roots and sign(c') = sign(c * prod(gamma a_i + delta))",
    "surface_equivalence_small_m": "Exercise (small conic bundles): conic bundles with m <= 2 and the same "
    "root count are birational as surfaces",
    "surface_equivalence_large_m": "Theorem (uniqueness of conic bundle structures): for K^2 <= 0 birational "
    "conic bundles have birational fibrations, so surface equivalence is fiberwise equivalence",
    "components_invariant": "Exercise (components are birational invariants): the number of connected "
    "components of the real locus is preserved by birational maps",
    "bundle_topology": "Theorem (topology of real minimal models): a conic bundle over P1 with 2m singular "
    "fibers has real locus m S2 (m >= 1)",
    "moduli_dimension": "Remark (conic bundle moduli): normal forms with 2m roots modulo equivalence form a "
    "(2m - 3)-dimensional space",
    "base_topology": "Theorem (topology of real minimal models): P2 -> RP2, Q22 -> T2, Q31 -> S2, "
    "Q40 and Q30xP1 -> empty, minimal DP2 -> 4 S2, minimal DP1 -> RP2 + 4 S2",
    "blowup_topology": "Exercise (blowing up real points): a real point adds RP2 by connected sum; a "
    "conjugate pair leaves the real locus unchanged",
    "k_squared_surface": "Exercise (canonical class of a blow-up): a real point lowers K^2 by 1, a conjugate "
    "pair by 2",
    "picard_number": "Exercise (Picard group of a blow-up): each blow-up raises the Picard number by 1",
    "birational_class": "Corollary (birational classification over R): a geometrically rational real surface "
    "is birational to exactly one of empty, P2, a minimal conic bundle with m >= 2, a minimal DP2, a minimal DP1",
    "comessatti": "Theorem (Comessatti): the real locus of a geometrically rational surface is never "
    "orientable of genus >= 2",
    "rational_over_reals": "Corollary (rationality over R): a geometrically rational real surface is rational "
    "iff its real locus is nonempty and connected",
    "lines": "Proposition (lines on Del Pezzo surfaces): lines on P2 blown up in r <= 8 points are the classes "
    "with D^2 = -1 and -K.D = 1",
    "real_lines": "Exercise (real lines): a line is real iff complex conjugation fixes its class",
    "bitangents": "Exercise (Zeuthen): a real quartic with d outer ovals has 4 + 2d(d - 1) real bitangents",
    "dp_types": "Corollary (Del Pezzo topological types): the real topological types of Del Pezzo surfaces "
    "of each degree",
    "dp2_table": "Proposition (degree 2 Del Pezzo surfaces): double planes branched along a real quartic, "
    "F+ and F- per quartic type",
    "dp1_table": "Proposition (degree 1 Del Pezzo surfaces): double quadric cones branched along a real "
    "sextic, F+ and F- per sextic type",
    "dp2_partner": "Theorem (degree 2 twisted forms): F+ and F- are the two real forms of one double plane",
    "derived_types": "Lemma (blow-ups of minimal surfaces): types obtained by blowing up P2, quadrics and "
    "conic bundles",
    "maximal_chain": "Proposition (maximally real surfaces): all bitangents real <-> all lines real <-> F- is "
    "P2 blown up at real points",
    "split_witness": "Lemma (quadrics with a quadratic point): a zero over Q(sqrt(a)) splits Q as "
    "b(y0^2 - a y1^2) + Q'",
}


def provenance_for(
    result: Mapping[str, object], default: str, facts: Mapping[str, str] | None = None
) -> dict[str, str]:
    """Statement behind every key of ``result``.

    ``facts`` overrides ``default`` per key; a dotted key such as
    ``"topology.minimal_model"`` adds a second statement for ``topology``.
    Keys whose result entry is absent are skipped.
    """
    chosen = {key: default for key in result}
    for key, fact in (facts or {}).items():
        if key.split(".")[0] in result:
            chosen[key] = fact
    return {key: PROVENANCE[fact] for key, fact in chosen.items()}

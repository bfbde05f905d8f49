"""Facade dispatching requests to the classification modules."""

from __future__ import annotations

from collections.abc import Callable
import logging
from typing import Any

from realsurf_app.core import conic_bundle, del_pezzo, surface_class
from realsurf_app.core.errors import InvalidInputError, RealSurfError
from realsurf_app.core.models import STATUS_ERROR, STATUS_OK, ErrorInfo, Request, Response
from realsurf_app.core.quadform import split_witness
from realsurf_app.core.request_importer import (
    BitangentsPayload,
    DpTablePayload,
    EquivPayload,
    IntervalsPayload,
    LinesPayload,
    NormalizePayload,
    QfSplitPayload,
    SurfacePayload,
    TopologyPayload,
    parse_request_document,
)
from realsurf_app.core.services.batch_runner import run_batch
from realsurf_app.core.services.provenance import provenance_for

logger = logging.getLogger(__name__)

HandlerResult = tuple[dict[str, Any], dict[str, str]]


def _parse_curve_config(text: str) -> del_pezzo.QuarticConfig | del_pezzo.SexticConfig:
    try:
        return del_pezzo.QuarticConfig.parse(text)
    except InvalidInputError:
        return del_pezzo.SexticConfig.parse(text)


class ClassificationManager:
    """Runs one request at a time; holds no state between requests."""

    def __init__(self) -> None:
        self._handlers: dict[str, Callable[[Any], HandlerResult]] = {
            "normalize": self._normalize,
            "intervals": self._intervals,
            "equiv": self._equiv,
            "surface-equiv": self._surface_equiv,
            "topology": self._topology,
            "classify": self._classify,
            "lines": self._lines,
            "bitangents": self._bitangents,
            "dp-table": self._dp_table,
            "qf-split": self._qf_split,
        }

    # --- entry points ---

    def run(self, request: Request) -> Response:
        logger.info("Dispatching %s", request.subcommand)
        result, provenance = self._handlers[request.subcommand](request.payload)
        return Response(request.subcommand, STATUS_OK, result, provenance)

    def run_document(self, document: Any, subcommand: str | None = None) -> Response:
        """Validate and run a document, turning every failure into an error response."""
        name = subcommand
        if name is None and isinstance(document, dict):
            name = document.get("subcommand")
        try:
            return self.run(parse_request_document(document, subcommand))
        except RealSurfError as exc:
            logger.info("%s failed with %s: %s", name, exc.code, exc)
            return Response(name, STATUS_ERROR, error=ErrorInfo(exc.code, str(exc)))
        except Exception as exc:  # noqa: BLE001 - reported as an internal error response
            logger.exception("Unexpected failure while running %s", name)
            return Response(name, STATUS_ERROR, error=ErrorInfo("InternalError", str(exc)))

    def run_batch(self, documents: list[Any], subcommand: str | None = None) -> list[Response]:
        return run_batch(lambda document: self.run_document(document, subcommand), documents)

    # --- conic bundles ---

    def _normalize(self, payload: NormalizePayload) -> HandlerResult:
        nf, trace = conic_bundle.normalize_with_trace(payload.to_input())
        result: dict[str, Any] = {
            "normal_form": nf.to_document(),
            "steps": trace.to_document(),
            "k_squared": conic_bundle.k_squared(nf.m),
            "topology": conic_bundle.topology(nf).to_document(),
        }
        if nf.is_exact:
            result["interval_set"] = conic_bundle.interval_set(nf).to_document()
        return result, provenance_for(
            result,
            "normal_form",
            {
                "steps": "normalization_steps",
                "k_squared": "k_squared_bundle",
                "topology": "bundle_topology",
                "interval_set": "interval_set",
            },
        )

    def _intervals(self, payload: IntervalsPayload) -> HandlerResult:
        nf, trace = payload.to_normal_form()
        intervals = conic_bundle.interval_set(nf)
        result: dict[str, Any] = {
            "normal_form": nf.to_document(),
            "interval_set": intervals.to_document(),
            "components": intervals.component_count,
            "membership": [
                {"point": point.render(), "inside": intervals.contains(point)} for point in payload.points
            ],
        }
        facts = {} if trace is None else {"normal_form": "normal_form"}
        return result, provenance_for(result, "interval_set", facts)

    def _equiv(self, payload: EquivPayload) -> HandlerResult:
        first, _ = payload.first.to_normal_form()
        second, _ = payload.second.to_normal_form()
        decision = conic_bundle.fibration_equivalent(first, second)
        result = decision.to_document()
        if decision.witness is not None:
            result["image"] = conic_bundle.transport_normal_form(first, decision.witness).to_document()
        result["m"] = [first.m, second.m]
        return result, provenance_for(result, "fibration_equivalence", {"m": "components_invariant"})

    def _surface_equiv(self, payload: EquivPayload) -> HandlerResult:
        first, _ = payload.first.to_normal_form()
        second, _ = payload.second.to_normal_form()
        equivalent = conic_bundle.surface_equivalent(first, second)
        if first.m != second.m:
            decided_by = "components_invariant"
        elif first.m >= 3:
            decided_by = "surface_equivalence_large_m"
        else:
            decided_by = "surface_equivalence_small_m"
        result: dict[str, Any] = {"equivalent": equivalent, "m": [first.m, second.m]}
        facts = {"m": "components_invariant", "moduli_dimension": "moduli_dimension"}
        if decided_by == "surface_equivalence_large_m":
            facts["equivalent.fibration"] = "fibration_equivalence"
        if first.m == second.m:
            result["moduli_dimension"] = conic_bundle.moduli_dimension(first.m)
        return result, provenance_for(result, decided_by, facts)

    # --- surfaces ---

    def _topology(self, payload: TopologyPayload) -> HandlerResult:
        if payload.bundle is not None:
            nf, _ = payload.bundle.to_normal_form()
            manifold = conic_bundle.topology(nf)
            default, facts = "bundle_topology", {}
        else:
            manifold = surface_class.topology(payload.to_description())
            default, facts = "blowup_topology", {"topology.minimal_model": "base_topology"}
        result = {
            "topology": manifold.to_document(),
            "components": manifold.component_count,
            "orientable": manifold.is_orientable,
        }
        return result, provenance_for(result, default, facts)

    def _classify(self, payload: SurfacePayload) -> HandlerResult:
        result = surface_class.classify(payload.to_description()).to_document()
        return result, provenance_for(
            result,
            "birational_class",
            {
                "components": "components_invariant",
                "topology": "blowup_topology",
                "topology.minimal_model": "base_topology",
                "k_squared": "k_squared_surface",
                "picard_number": "picard_number",
                "comessatti": "comessatti",
                "rational_over_reals": "rational_over_reals",
            },
        )

    # --- Del Pezzo surfaces ---

    def _lines(self, payload: LinesPayload) -> HandlerResult:
        action = del_pezzo.GaloisAction.standard(payload.r, payload.real_count, payload.pairs)
        lines = del_pezzo.minus_one_classes(payload.r)
        result: dict[str, Any] = {
            "r": payload.r,
            "real": action.fixed_count,
            "pairs": len(action.pairs),
            "count": del_pezzo.real_line_count(action),
            "total": len(lines),
        }
        if payload.checks:
            result["wide_search_agrees"] = del_pezzo.wide_minus_one_classes(payload.r) == lines
        return result, provenance_for(
            result, "real_lines", {"r": "lines", "total": "lines", "wide_search_agrees": "lines"}
        )

    def _bitangents(self, payload: BitangentsPayload) -> HandlerResult:
        result: dict[str, Any] = {}
        outer = payload.outer_ovals
        if payload.config is not None:
            config = del_pezzo.QuarticConfig.parse(payload.config)
            outer = del_pezzo.outer_oval_count(config)
            result["config"] = config.render()
        result["outer_ovals"] = outer
        result["count"] = del_pezzo.bitangent_count(outer)
        return result, provenance_for(result, "bitangents")

    def _dp_table(self, payload: DpTablePayload) -> HandlerResult:
        if payload.config is not None:
            config = _parse_curve_config(payload.config)
            if isinstance(config, del_pezzo.QuarticConfig):
                f_plus, f_minus = del_pezzo.dp2_table(config)
                degree, fact = 2, "dp2_table"
            else:
                f_plus, f_minus = del_pezzo.dp1_table(config)
                degree, fact = 1, "dp1_table"
            result = {
                "config": config.render(),
                "degree": degree,
                "f_plus": f_plus.to_document(),
                "f_minus": f_minus.to_document(),
            }
            return result, provenance_for(result, fact)

        degree = payload.degree
        types = del_pezzo.dp_types(degree)
        result = {"degree": degree, "count": len(types), "types": [t.to_document() for t in types]}
        if degree == 2:
            result["partners"] = [
                {"type": t.topology.render(), "partner": del_pezzo.dp2_partner(t.topology).render()} for t in types
            ]
        if payload.checks and degree >= 3:
            derived = del_pezzo.derived_topologies(degree)
            listed = {t.topology for t in types}
            result["derived"] = sorted(m.render() for m in derived)
            result["derived_not_listed"] = sorted(m.render() for m in derived - listed)
        elif payload.checks:
            result["maximal_chain"] = del_pezzo.maximal_real_chain(degree).to_document()
        return result, provenance_for(
            result,
            "dp_types",
            {
                "partners": "dp2_partner",
                "derived": "derived_types",
                "derived_not_listed": "derived_types",
                "maximal_chain": "maximal_chain",
            },
        )

    # --- quadratic forms ---

    def _qf_split(self, payload: QfSplitPayload) -> HandlerResult:
        split = split_witness(payload.to_form(), payload.a, payload.to_witness())
        result = split.to_document()
        result["split_diagonal"] = [str(x) for x in split.split_diagonal]
        return result, provenance_for(result, "split_witness")

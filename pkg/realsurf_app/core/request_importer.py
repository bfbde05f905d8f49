"""Parse JSON request documents into validated payloads and domain objects.

A request document looks like::

    {"subcommand": "classify",
     "payload": {"minimal": "MinimalConicBundle", "m": 3, "blowups": []}}

Rationals are written as ``"p/q"`` strings or JSON integers. Polynomials are
either ascending coefficient lists or products of factors::

    {"coefficients": ["-2", 0, 1]}
    {"factors": [{"linear": "1", "power": 2}, {"quadratic": [0, 1]}], "constant": "-3"}

where ``{"linear": a}`` is ``z - a`` and ``{"quadratic": [u, v]}`` is
``(z - u)^2 + v^2``.
"""

from __future__ import annotations

from fractions import Fraction
import json
import re
from typing import Annotated, Any, Literal

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainValidator, ValidationError, model_validator

from realsurf_app.constants.cli_constants import SUBCOMMANDS
from realsurf_app.core.conic_bundle import ConicBundleInput, ConicBundleNF, NormalizationTrace, normalize_with_trace
from realsurf_app.core.errors import ParseError, SchemaError
from realsurf_app.core.interval_set import ProjPoint
from realsurf_app.core.models import Request
from realsurf_app.core.poly import RationalPoly, to_rational
from realsurf_app.core.quadform import DiagForm, QuadExtElem
from realsurf_app.core.surface_class import BlowUp, BlowUpKind, MinimalModel, ModelKind, SurfaceDescription

_REAL_POINT_PATTERN = re.compile(r"^RealPoint(?:\((\d+)\))?$")


def _rational(value: Any) -> Fraction:
    try:
        return to_rational(value)
    except TypeError as exc:
        raise ValueError(str(exc)) from exc


Rational = Annotated[Fraction, BeforeValidator(_rational)]


class _Payload(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, extra="forbid", frozen=True)


class FactorPayload(_Payload):
    linear: Rational | None = None
    quadratic: tuple[Rational, Rational] | None = None
    power: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _one_kind(self) -> FactorPayload:
        if (self.linear is None) == (self.quadratic is None):
            raise ValueError("A factor is either linear or quadratic.")
        return self

    def to_poly(self) -> RationalPoly:
        if self.linear is not None:
            base = RationalPoly.linear(self.linear)
        else:
            u, v = self.quadratic
            base = RationalPoly.linear(u) ** 2 + v * v
        return base ** self.power


class PolynomialPayload(_Payload):
    coefficients: list[Rational] | None = None
    factors: list[FactorPayload] | None = None
    constant: Rational = Fraction(1)

    @model_validator(mode="before")
    @classmethod
    def _bare_list(cls, data: Any) -> Any:
        if isinstance(data, list):
            return {"coefficients": data}
        return data

    @model_validator(mode="after")
    def _one_form(self) -> PolynomialPayload:
        if (self.coefficients is None) == (self.factors is None):
            raise ValueError("Give either coefficients or factors.")
        return self

    def to_poly(self) -> RationalPoly:
        if self.coefficients is not None:
            return RationalPoly(tuple(self.coefficients)).scale(self.constant)
        product = RationalPoly.constant(self.constant)
        for factor in self.factors or ():
            product = product * factor.to_poly()
        return product


def _sign(value: Any) -> int:
    if value in ("+", "+1", 1):
        return 1
    if value in ("-", "-1", -1):
        return -1
    raise ValueError(f"Sign must be '+' or '-', got {value!r}.")


Sign = Annotated[int, BeforeValidator(_sign)]


class BundlePayload(_Payload):
    """A conic bundle given by its normal form or by the function g."""

    sign: Sign | None = None
    roots: list[Rational] | None = None
    numerator: PolynomialPayload | None = None
    denominator: PolynomialPayload | None = None

    @model_validator(mode="after")
    def _one_form(self) -> BundlePayload:
        normal = self.sign is not None and self.roots is not None
        if normal == (self.numerator is not None):
            raise ValueError("Give either sign and roots, or a numerator.")
        if self.denominator is not None and self.numerator is None:
            raise ValueError("A denominator needs a numerator.")
        return self

    def to_normal_form(self) -> tuple[ConicBundleNF, NormalizationTrace | None]:
        if self.numerator is None:
            return ConicBundleNF.from_rationals(self.sign, list(self.roots or ())), None
        return normalize_with_trace(self.to_input())

    def to_input(self) -> ConicBundleInput:
        denominator = self.denominator.to_poly() if self.denominator else RationalPoly.constant(1)
        return ConicBundleInput(self.numerator.to_poly(), denominator)


class NormalizePayload(_Payload):
    numerator: PolynomialPayload
    denominator: PolynomialPayload | None = None

    def to_input(self) -> ConicBundleInput:
        denominator = self.denominator.to_poly() if self.denominator else RationalPoly.constant(1)
        return ConicBundleInput(self.numerator.to_poly(), denominator)


def _point(value: Any) -> ProjPoint:
    if isinstance(value, ProjPoint):
        return value
    try:
        return ProjPoint.parse(value)
    except TypeError as exc:
        raise ValueError(str(exc)) from exc


Point = Annotated[ProjPoint, PlainValidator(_point)]


class IntervalsPayload(BundlePayload):
    points: list[Point] = Field(default_factory=list)


class EquivPayload(_Payload):
    first: BundlePayload
    second: BundlePayload


def _blowup(value: Any) -> BlowUp:
    if isinstance(value, BlowUp):
        return value
    if isinstance(value, str):
        text = value.strip()
        if text == BlowUpKind.CONJUGATE_PAIR.value:
            return BlowUp.conjugate_pair()
        match = _REAL_POINT_PATTERN.match(text)
        if match:
            return BlowUp.real_point(int(match.group(1) or 0))
        raise ValueError(f"Unknown blow-up {value!r}.")
    if isinstance(value, dict):
        kind = value.get("kind")
        if kind == BlowUpKind.CONJUGATE_PAIR.value:
            return BlowUp.conjugate_pair()
        if kind == BlowUpKind.REAL_POINT.value:
            index = value.get("component", 0)
            if not isinstance(index, int) or isinstance(index, bool):
                raise ValueError("The blow-up component must be an integer.")
            return BlowUp.real_point(index)
    raise ValueError(f"Unknown blow-up {value!r}.")


BlowUpEntry = Annotated[BlowUp, PlainValidator(_blowup)]


class SurfacePayload(_Payload):
    minimal: str
    m: int = 0
    blowups: list[BlowUpEntry] = Field(default_factory=list)

    def to_description(self) -> SurfaceDescription:
        return SurfaceDescription(MinimalModel(ModelKind.parse(self.minimal), self.m), tuple(self.blowups))


class TopologyPayload(_Payload):
    """Either a surface description (flat fields) or ``{"bundle": ...}``."""

    minimal: str | None = None
    m: int = 0
    blowups: list[BlowUpEntry] = Field(default_factory=list)
    bundle: BundlePayload | None = None

    @model_validator(mode="after")
    def _one_form(self) -> TopologyPayload:
        if (self.minimal is None) == (self.bundle is None):
            raise ValueError("Give either a minimal model or a bundle.")
        return self

    def to_description(self) -> SurfaceDescription:
        return SurfacePayload(minimal=self.minimal, m=self.m, blowups=self.blowups).to_description()


class LinesPayload(_Payload):
    r: int
    real: int | None = None
    pairs: int = Field(default=0, ge=0)
    checks: bool = False

    @property
    def real_count(self) -> int:
        return self.r - 2 * self.pairs if self.real is None else self.real


class BitangentsPayload(_Payload):
    outer_ovals: int | None = None
    config: str | None = None

    @model_validator(mode="after")
    def _one_form(self) -> BitangentsPayload:
        if (self.outer_ovals is None) == (self.config is None):
            raise ValueError("Give either outer_ovals or a quartic config.")
        return self


class DpTablePayload(_Payload):
    degree: int | None = None
    config: str | None = None
    checks: bool = False

    @model_validator(mode="after")
    def _one_form(self) -> DpTablePayload:
        if (self.degree is None) == (self.config is None):
            raise ValueError("Give either a degree or a curve config.")
        return self


def _quad_entry(value: Any) -> tuple[Fraction, Fraction]:
    if isinstance(value, dict):
        return _rational(value.get("p", 0)), _rational(value.get("q", 0))
    return _rational(value), Fraction(0)


QuadEntry = Annotated[tuple[Fraction, Fraction], BeforeValidator(_quad_entry)]


class QfSplitPayload(_Payload):
    form: list[Rational]
    a: int
    witness: list[QuadEntry]

    def to_form(self) -> DiagForm:
        return DiagForm(tuple(self.form))

    def to_witness(self) -> list[QuadExtElem]:
        return [QuadExtElem(p, q, self.a) for p, q in self.witness]


PAYLOAD_MODELS: dict[str, type[_Payload]] = {
    "normalize": NormalizePayload,
    "intervals": IntervalsPayload,
    "equiv": EquivPayload,
    "surface-equiv": EquivPayload,
    "topology": TopologyPayload,
    "classify": SurfacePayload,
    "lines": LinesPayload,
    "bitangents": BitangentsPayload,
    "dp-table": DpTablePayload,
    "qf-split": QfSplitPayload,
}


class RequestDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    subcommand: Literal[SUBCOMMANDS]  # type: ignore[valid-type]
    payload: dict[str, Any]


def _schema_message(exc: ValidationError) -> str:
    details = "; ".join(
        f"{'.'.join(str(part) for part in error['loc']) or 'document'}: {error['msg']}"
        for error in exc.errors()
    )
    return f"Invalid request: {details}"


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"Malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}.") from exc


def parse_request_document(document: Any, subcommand: str | None = None) -> Request:
    """Validate ``document``; when ``subcommand`` is given it is the bare payload."""
    try:
        if subcommand is None:
            envelope = RequestDocument.model_validate(document)
            subcommand, payload = envelope.subcommand, envelope.payload
        else:
            if subcommand not in PAYLOAD_MODELS:
                raise SchemaError(f"Unknown subcommand {subcommand!r}.")
            payload = document
        return Request(subcommand, PAYLOAD_MODELS[subcommand].model_validate(payload))
    except ValidationError as exc:
        raise SchemaError(_schema_message(exc)) from exc

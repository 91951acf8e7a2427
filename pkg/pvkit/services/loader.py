"""
Turn validated input documents into library objects over one differential field.
"""

import json
import logging
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from pvkit.cocycle.actions import GammaAction, Target, TargetKind
from pvkit.cocycle.cohomology import Cocycle
from pvkit.config.fixtures import ACTION, EXTENSION, fixture_path, get_fixture_by_key, get_fixture_keys
from pvkit.exceptions import InputError, ParseError
from pvkit.fieldcore.matrix import RatMatrix
from pvkit.fieldcore.ratfunc import DiffField, RatFunc
from pvkit.models.inputs import (
    ActionFile,
    CoactionOverride,
    CocycleValue,
    GroupSpec,
    HopfFile,
    HopfKind,
    MatrixFile,
    PhiObjectFile,
)
from pvkit.phihopf.extension import FinHopfGalois
from pvkit.phihopf.groups import FinGroupHopf
from pvkit.phihopf.objects import PhiObject, PhiType, trivial_object

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a JSON object; malformed JSON is reported with its character position."""
    source = str(path)
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.pos, source=source) from e
    if not isinstance(document, dict):
        raise InputError("expected a JSON object at the top level", source=source)
    return document


def _describe_validation(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ()))
    return f"{location}: {first['msg']}" if location else first["msg"]


def validate_document(model: Type[ModelT], document: Dict[str, Any], source: str) -> ModelT:
    try:
        return model.model_validate(document)
    except ValidationError as e:
        raise InputError(_describe_validation(e), source=source) from e


def load_fixture_document(key: str, kind: str) -> Dict[str, Any]:
    info = get_fixture_by_key(key)
    if info is None:
        raise InputError(f"unknown fixture {key!r}; available: {', '.join(get_fixture_keys())}")
    if info.kind != kind:
        raise InputError(f"fixture {key!r} is an {info.kind}, expected an {kind}")
    return read_json(fixture_path(key))


class InputLoader:
    """Parses expression strings and builds library objects for one field."""

    def __init__(self, field: DiffField):
        self.field = field

    # scalars and matrices

    def scalar(self, text: str, source: Optional[str] = None) -> RatFunc:
        try:
            return self.field.parse(text)
        except ParseError as e:
            raise ParseError(f"{e.message} in {text!r}", e.position, source=source) from e

    def matrix_entries(self, entries: Sequence[Sequence[str]], source: Optional[str] = None) -> RatMatrix:
        rows = [[self.scalar(text, source) for text in row] for row in entries]
        return RatMatrix(self.field, rows)

    def matrix_file(self, document: Dict[str, Any], source: str) -> MatrixFile:
        return validate_document(MatrixFile, document, source)

    def matrix(self, document: Dict[str, Any], source: str) -> RatMatrix:
        return self.matrix_entries(self.matrix_file(document, source).entries, source)

    # groups and extensions

    @staticmethod
    def group(spec: GroupSpec) -> FinGroupHopf:
        if spec.cyclic is not None:
            return FinGroupHopf.cyclic(spec.cyclic)
        return FinGroupHopf(tuple(spec.labels), tuple(tuple(row) for row in spec.table))

    def extension(self, spec: HopfFile, source: Optional[str] = None) -> FinHopfGalois:
        field = self.field
        if spec.kind == HopfKind.KUMMER:
            S = FinHopfGalois.kummer(field, spec.degree)
        elif spec.kind == HopfKind.SPLIT:
            S = FinHopfGalois.split(field, self.group(spec.group))
        else:
            tables = spec.tables
            mult = tuple(
                tuple(tuple(self.scalar(text, source) for text in vector) for vector in row) for row in tables.mult
            )
            derivation = self.matrix_entries(tables.derivation, source)
            coaction = tuple(self.matrix_entries(m, source) for m in tables.coaction)
            S = FinHopfGalois(field, self.group(spec.group), mult, derivation, coaction)
        if spec.coaction_override == CoactionOverride.TRIVIAL:
            S = S.with_trivial_coaction()
        elif spec.coaction_override == CoactionOverride.ZERO:
            S = S.with_zero_coaction()
        if spec.name:
            S = replace(S, name=spec.name)
        logger.debug(f"loaded extension {S.name} of degree {S.dim}")
        return S

    def extension_document(self, document: Dict[str, Any], source: str) -> FinHopfGalois:
        return self.extension(validate_document(HopfFile, document, source), source)

    def extension_reference(self, reference: Union[str, HopfFile], source: str) -> FinHopfGalois:
        if isinstance(reference, str):
            return self.fixture_extension(reference)
        return self.extension(reference, source)

    def fixture_extension(self, key: str) -> FinHopfGalois:
        return self.extension_document(load_fixture_document(key, EXTENSION), f"fixture:{key}")

    # Phi-objects

    def phi_object(self, spec: PhiObjectFile, source: Optional[str] = None) -> PhiObject:
        derivation = self.matrix_entries(spec.derivation, source)
        hopf = self.group(spec.hopf_group) if spec.hopf_group is not None else None
        signatures = tuple(tuple(m.signature) for m in spec.structure_maps)
        maps = tuple(self.matrix_entries(m.matrix, source) for m in spec.structure_maps)
        return PhiObject(self.field, derivation, PhiType(hopf, signatures), maps)

    def phi_object_document(self, document: Dict[str, Any], source: str) -> PhiObject:
        return self.phi_object(validate_document(PhiObjectFile, document, source), source)

    def base_object(self, spec: Optional[PhiObjectFile], dim: int, source: Optional[str] = None) -> PhiObject:
        if spec is None:
            return trivial_object(self.field, dim)
        return self.phi_object(spec, source)

    # actions and cocycles

    def action(self, spec: ActionFile, source: Optional[str] = None) -> GammaAction:
        try:
            kind = TargetKind(spec.target.kind)
        except ValueError:
            raise InputError(f"unknown target kind {spec.target.kind!r}", source=source) from None
        target = Target(kind, spec.target.rank, spec.target.order)
        data = spec.action
        conjugators = exponents = scalars = None
        if data is not None:
            if data.conjugators is not None:
                conjugators = tuple(self.matrix_entries(m, source) for m in data.conjugators)
            if data.exponents is not None:
                exponents = tuple(tuple(tuple(row) for row in m) for m in data.exponents)
            if data.scalars is not None:
                scalars = tuple(self.scalar(text, source) for text in data.scalars)
        act = GammaAction(self.field, self.group(spec.group), target, conjugators, exponents, scalars)
        if not act.check_homomorphism():
            raise InputError("the action is not a group homomorphism", source=source)
        return act

    def action_document(self, document: Dict[str, Any], source: str) -> GammaAction:
        return self.action(validate_document(ActionFile, document, source), source)

    def fixture_action(self, key: str) -> GammaAction:
        return self.action_document(load_fixture_document(key, ACTION), f"fixture:{key}")

    def cocycle_value(self, value: CocycleValue, source: Optional[str] = None) -> RatMatrix:
        if isinstance(value, str):
            return RatMatrix(self.field, [[self.scalar(value, source)]])
        return self.matrix_entries(value, source)

    def cocycle(self, values: List[CocycleValue], source: Optional[str] = None) -> Cocycle:
        return Cocycle(tuple(self.cocycle_value(v, source) for v in values))

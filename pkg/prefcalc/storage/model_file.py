"""
JSON model files

    {
      "attributes": [
        {"name": "x", "levels": [0, 10, 20], "curve": {"family": "exponential", "params": [0.1]}},
        ...
      ],
      "joint": {"type": "product"}
             | {"type": "table", "values": [...row-major, last attribute fastest...]},
      "context": "optional state-of-preference label"
    }
"""

import logging
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from prefcalc.domain.space import AttributeSpace
from prefcalc.errors import ModelFileError, ModelValidationError, PrefCalcError
from prefcalc.utility.curves import UtilityCurve
from prefcalc.utility.model import DEFAULT_CONTEXT, ProductOfCurves, TableJoint, UtilityModel
from prefcalc.utility.validation import validate_model
from prefcalc.utils.validators import errors_of, warnings_of

logger = logging.getLogger(__name__)


class CurveSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: Literal["exponential", "linear", "power"]
    params: List[float] = Field(default_factory=list)


class AttributeSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    levels: List[float] = Field(min_length=2)
    curve: Optional[CurveSchema] = None

    @field_validator("levels")
    @classmethod
    def levels_strictly_increasing(cls, levels: List[float]) -> List[float]:
        for lower, upper in zip(levels, levels[1:]):
            if not lower < upper:
                raise ValueError(f"levels must be strictly increasing ({lower} followed by {upper})")
        return levels


class ProductJointSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["product"]


class TableJointSchema(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["table"]
    values: List[float]


JointSchema = Annotated[Union[ProductJointSchema, TableJointSchema], Field(discriminator="type")]


class ModelFileSchema(BaseModel):
    """Top-level model document"""
    model_config = ConfigDict(extra="forbid")

    attributes: List[AttributeSchema] = Field(min_length=1)
    joint: JointSchema
    context: str = DEFAULT_CONTEXT

    @model_validator(mode="after")
    def check_consistency(self) -> "ModelFileSchema":
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise ValueError(f"attribute names must be unique, got {names}")
        if isinstance(self.joint, ProductJointSchema):
            missing = [a.name for a in self.attributes if a.curve is None]
            if missing:
                raise ValueError(f"product joint needs a curve for every attribute, missing {missing}")
        else:
            expected = 1
            for a in self.attributes:
                expected *= len(a.levels)
            if len(self.joint.values) != expected:
                raise ValueError(f"table joint needs {expected} values, got {len(self.joint.values)}")
        return self


def _format_validation_error(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(p) for p in item["loc"]) or "<document>"
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)


def model_from_schema(document: ModelFileSchema) -> UtilityModel:
    """
    Build a validated model from a parsed document

    Raises:
        ModelFileError: If the document describes an impossible space or curve
        ModelValidationError: If the model fails validate_model
    """
    try:
        space = AttributeSpace.from_levels([(a.name, a.levels) for a in document.attributes])
        if isinstance(document.joint, ProductJointSchema):
            curves = tuple(
                UtilityCurve(a.curve.family, tuple(a.curve.params), a.levels[0], a.levels[-1])
                for a in document.attributes
            )
            joint = ProductOfCurves(curves)
        else:
            joint = TableJoint(np.asarray(document.joint.values, dtype=np.float64).reshape(space.shape))
        model = UtilityModel(space, joint, document.context)
    except ModelValidationError:
        raise
    except PrefCalcError as e:
        raise ModelFileError(str(e)) from e

    diagnostics = validate_model(model)
    errors = errors_of(diagnostics)
    if errors:
        raise ModelValidationError(
            "model failed validation: " + "; ".join(d.message for d in errors), diagnostics
        )
    for warning in warnings_of(diagnostics):
        logger.info(f"model '{model.context}': {warning}")
    return model


def load_model(path: Union[str, Path]) -> UtilityModel:
    """
    Load and validate a model file

    Args:
        path: Path to a JSON model document

    Returns:
        UtilityModel

    Raises:
        ModelFileError: Missing file, unreadable file or schema violation
        ModelValidationError: Model fails validate_model; carries the diagnostics
    """
    path = Path(path)
    if not path.is_file():
        raise ModelFileError(f"model file not found: {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ModelFileError(f"cannot read model file {path}: {e}") from e

    try:
        document = ModelFileSchema.model_validate_json(text)
    except ValidationError as e:
        raise ModelFileError(f"{path}: {_format_validation_error(e)}") from e

    model = model_from_schema(document)
    logger.info(f"Loaded model '{model.context}' from {path} ({len(model.space)} attributes, {model.space.size} cells)")
    return model


def model_to_schema(model: UtilityModel) -> ModelFileSchema:
    """
    Document for a model

    Raises:
        ModelFileError: If a product curve range differs from its attribute range
    """
    attributes = []
    if isinstance(model.joint, ProductOfCurves):
        for attr, curve in zip(model.space.attributes, model.joint.curves):
            if curve.minimum != attr.minimum or curve.maximum != attr.maximum:
                raise ModelFileError(f"curve range of '{attr.name}' does not match its levels")
            attributes.append(AttributeSchema(
                name=attr.name,
                levels=list(attr.levels),
                curve=CurveSchema(family=curve.family.value, params=list(curve.params)),
            ))
        joint: Union[ProductJointSchema, TableJointSchema] = ProductJointSchema(type="product")
    else:
        attributes = [AttributeSchema(name=a.name, levels=list(a.levels)) for a in model.space.attributes]
        joint = TableJointSchema(type="table", values=[float(v) for v in model.joint.values.ravel()])
    return ModelFileSchema(attributes=attributes, joint=joint, context=model.context)


def save_model(model: UtilityModel, path: Union[str, Path]) -> Path:
    """
    Write a model file that load_model reads back

    Returns:
        Path written
    """
    path = Path(path)
    document = model_to_schema(model)
    try:
        path.write_text(document.model_dump_json(indent=2, exclude_none=True) + "\n", encoding="utf-8")
    except OSError as e:
        raise ModelFileError(f"cannot write model file {path}: {e}") from e
    logger.info(f"Saved model '{model.context}' to {path}")
    return path

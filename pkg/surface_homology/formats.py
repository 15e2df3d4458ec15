"""
Module for the JSON instance and certificate files.

Instance:    {"surface": {"crosscaps": n, "punctures": m}, "matrix": [[...]]}
Certificate: {"level": "integer" | "mod2", "moves": [{"type": ..., ...}], "meta": {...}}

Integers at or beyond 2**SAFE_INT_BITS in magnitude are written as decimal
strings; either form is accepted on input. Output is key-sorted so equal
objects serialize to identical bytes.
"""
import json
from pathlib import Path
from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, ValidationError

from surface_homology import config
from surface_homology.errors import InstanceFormatError
from surface_homology.integer_homology import SurfaceSignature
from surface_homology.move_classes import BoundarySlide, CrosscapSlide, DehnTwist, PuncturePerm
from surface_homology.pipeline import Certificate, Instance


def _parse_big_int(value):
  if isinstance(value, bool):
    raise ValueError("booleans are not matrix entries")
  if isinstance(value, int):
    return value
  if isinstance(value, str):
    try:
      return int(value.strip(), 10)
    except ValueError:
      raise ValueError(f"not a decimal integer: {value!r}") from None
  raise ValueError(f"matrix entries must be integers, got {value!r}")


def _dump_big_int(value):
  return str(value) if abs(value) >= 2 ** config.SAFE_INT_BITS else value


BigInt = Annotated[int, BeforeValidator(_parse_big_int), PlainSerializer(_dump_big_int)]


class SurfaceModel(BaseModel):
  model_config = ConfigDict(extra="forbid")

  crosscaps: int = Field(ge=1)
  punctures: int = Field(default=0, ge=0)


class InstanceModel(BaseModel):
  model_config = ConfigDict(extra="forbid")

  surface: SurfaceModel
  matrix: list[list[BigInt]]


class CrosscapSlideModel(BaseModel):
  type: Literal["crosscap_slide"]
  i: int
  j: int


class DehnTwistModel(BaseModel):
  type: Literal["dehn_twist"]
  support: list[int]


class BoundarySlideModel(BaseModel):
  type: Literal["boundary_slide"]
  i: int
  j: int


class PuncturePermModel(BaseModel):
  type: Literal["puncture_perm"]
  perm: list[int]


MoveModel = Annotated[
  Union[CrosscapSlideModel, DehnTwistModel, BoundarySlideModel, PuncturePermModel],
  Field(discriminator="type"),
]


class CertificateModel(BaseModel):
  level: str
  moves: list[MoveModel] = Field(default_factory=list)
  meta: dict[str, Any] = Field(default_factory=dict)


### _______________ Conversion _______________ ###

def move_to_model(move):
  if isinstance(move, CrosscapSlide):
    return CrosscapSlideModel(type=move.kind, i=move.i, j=move.j)
  if isinstance(move, DehnTwist):
    return DehnTwistModel(type=move.kind, support=list(move.support))
  if isinstance(move, BoundarySlide):
    return BoundarySlideModel(type=move.kind, i=move.i, j=move.j)
  return PuncturePermModel(type=move.kind, perm=list(move.perm))


def model_to_move(model):
  """Build the move value; invalid index data raises InvalidGenerator."""
  if isinstance(model, CrosscapSlideModel):
    return CrosscapSlide(model.i, model.j)
  if isinstance(model, DehnTwistModel):
    return DehnTwist(tuple(model.support))
  if isinstance(model, BoundarySlideModel):
    return BoundarySlide(model.i, model.j)
  return PuncturePerm(tuple(model.perm))


def _dumps(model):
  return json.dumps(model.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def instance_to_json(inst):
  model = InstanceModel(
    surface=SurfaceModel(crosscaps=inst.signature.crosscaps, punctures=inst.signature.punctures),
    matrix=[[int(x) for x in row] for row in inst.matrix.tolist()],
  )
  return _dumps(model)


def parse_instance(text):
  """
  Parse instance JSON.

  Raises:
      InstanceFormatError: malformed JSON or schema violation.
      HomologyError: the matrix is not square or not integral.
  """
  try:
    model = InstanceModel.model_validate_json(text)
  except ValidationError as err:
    raise InstanceFormatError(f"bad instance file: {err.error_count()} schema errors; {err.errors()[0]['msg']}") from None
  signature = SurfaceSignature(model.surface.crosscaps, model.surface.punctures)
  return Instance(signature, model.matrix)


def certificate_to_json(cert):
  model = CertificateModel(
    level=str(getattr(cert.level, "value", cert.level)),
    moves=[move_to_model(move) for move in cert.moves],
    meta=dict(cert.meta),
  )
  return _dumps(model)


def parse_certificate(text):
  """
  Parse certificate JSON. The level string is kept as read so that an
  unknown level is rejected by verification rather than here.
  """
  try:
    model = CertificateModel.model_validate_json(text)
  except ValidationError as err:
    raise InstanceFormatError(f"bad certificate file: {err.errors()[0]['msg']}") from None
  moves = tuple(model_to_move(m) for m in model.moves)
  split = next((k for k, move in enumerate(moves) if not isinstance(move, DehnTwist)), len(moves))
  return Certificate(model.level, moves[:split], moves[split:], model.meta)


def read_instance(path):
  try:
    text = Path(path).read_text(encoding="utf-8")
  except OSError as err:
    raise InstanceFormatError(f"cannot read instance {path}: {err.strerror}") from None
  return parse_instance(text)


def read_certificate(path):
  try:
    text = Path(path).read_text(encoding="utf-8")
  except OSError as err:
    raise InstanceFormatError(f"cannot read certificate {path}: {err.strerror}") from None
  return parse_certificate(text)


def write_text(path, text):
  path = Path(path)
  if path.parent and not path.parent.exists():
    path.parent.mkdir(parents=True, exist_ok=True)
  path.write_text(text, encoding="utf-8")

"""Realizability of homology automorphisms of non-orientable surfaces by homeomorphisms."""
from surface_homology.errors import HomologyError, InvariantViolation
from surface_homology.integer_homology import Level, SurfaceSignature
from surface_homology.pipeline import (
  Certificate,
  Completeness,
  Decision,
  Instance,
  Reason,
  decide,
  decide_closed,
  decide_punctured,
  generate_instance,
  verify_certificate,
)

__all__ = [
  "Certificate",
  "Completeness",
  "Decision",
  "HomologyError",
  "Instance",
  "InvariantViolation",
  "Level",
  "Reason",
  "SurfaceSignature",
  "decide",
  "decide_closed",
  "decide_punctured",
  "generate_instance",
  "verify_certificate",
]

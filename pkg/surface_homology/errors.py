"""
Module for the exception classes raised across the package.

Every rejection of user input is a HomologyError (a ValueError) carrying a
machine-readable `code`, so the CLI and the certificate verifier can report
the violated condition by name. Broken internal invariants raise
InvariantViolation instead and are never caught.
"""


class HomologyError(ValueError):
  """Base class for rejected inputs. `code` names the violated condition."""

  code = "HomologyError"

  def __init__(self, message, **details):
    super().__init__(message)
    self.details = details

  def __str__(self):
    return f"{self.code}: {self.args[0]}"


class ConfigError(HomologyError):
  code = "ConfigError"


class DimensionMismatch(HomologyError):
  code = "DimensionMismatch"


class ShapeMismatch(HomologyError):
  code = "ShapeMismatch"


class InvalidGenerator(HomologyError):
  code = "InvalidGenerator"


class MoveIndexError(HomologyError, IndexError):
  code = "IndexError"


class TwistHasNoIntegerMatrix(HomologyError):
  code = "TwistHasNoIntegerMatrix"


class RowSumViolation(HomologyError):
  code = "RowSumViolation"


class NonUnimodular(HomologyError):
  code = "NonUnimodular"


class NonUnimodularQuotient(HomologyError):
  code = "NonUnimodularQuotient"


class BadBoundaryColumn(HomologyError):
  code = "BadBoundaryColumn"


class RelationNotPreserved(HomologyError):
  code = "RelationNotPreserved"


class NonAutomorphism(HomologyError):
  code = "NonAutomorphism"


class InconsistentSinglePuncture(HomologyError):
  code = "InconsistentSinglePuncture"


class NotOrthogonal(HomologyError):
  code = "NotOrthogonal"


class NotInKernel(HomologyError):
  code = "NotInKernel"


class NotResidual(HomologyError):
  code = "NotResidual"


class EnumerationTooLarge(HomologyError):
  code = "EnumerationTooLarge"


class InstanceFormatError(HomologyError):
  code = "InstanceFormatError"


class InvariantViolation(AssertionError):
  """A factorization reached a state its descent argument rules out."""

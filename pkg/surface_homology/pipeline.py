"""
Module for the end-to-end realizability decisions, certificates and instance generation.

A matrix is realizable exactly when its mod-2 image preserves the
intersection pairing (plus the boundary shape for punctured surfaces).
Certificates are stronger evidence: an integer word whenever the closed part
lies in the mod-2 kernel, otherwise a mod-2 word tagged mod2-only.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from surface_homology.boundary_factor import factor_residual, factor_residual_mod2, split_residual
from surface_homology.errors import (
  BadBoundaryColumn,
  HomologyError,
  InstanceFormatError,
  MoveIndexError,
)
from surface_homology.integer_homology import (
  Level,
  SurfaceSignature,
  equal_mod2_relation,
  equal_mod_relation,
  int_identity,
  reduce_mod2,
  to_int_matrix,
  validate_closed,
  validate_punctured,
  word_product,
)
from surface_homology.kernel_factor import factor_kernel, is_mod2_kernel
from surface_homology.mod2_core import Mod2Matrix, embed, is_orthogonal
from surface_homology.mod2_factor import TwistWord, factor_orthogonal, mod2_word_product
from surface_homology.move_classes import (
  MOVE_TYPES,
  BoundarySlide,
  CrosscapSlide,
  DehnTwist,
  PuncturePerm,
)

_logger = logging.getLogger(__name__)


class Reason(str, Enum):
  PAIRING_PRESERVED = "PairingPreserved"
  PAIRING_NOT_PRESERVED = "PairingNotPreserved"
  BOUNDARY_CONDITION_VIOLATED = "BoundaryConditionViolated"


class Completeness(str, Enum):
  FULL_INTEGER = "full-integer"
  MOD2_ONLY = "mod2-only"


@dataclass(frozen=True, eq=False)
class Instance:
  """A surface and a candidate matrix on its generators; validity is decided later."""

  signature: SurfaceSignature
  matrix: np.ndarray

  def __post_init__(self):
    object.__setattr__(self, "matrix", to_int_matrix(self.matrix))


@dataclass(frozen=True)
class Certificate:
  """
  Word certifying a decision.
  Features:
  - twist_word: Dehn twists on the alpha coordinates (mod2 level only).
  - slide_word: crosscap slides, boundary slides and puncture permutations.
  - moves = twist_word + slide_word, multiplied left to right.
  """

  level: Level
  twist_word: tuple = ()
  slide_word: tuple = ()
  meta: dict = field(default_factory=dict, compare=False)

  @property
  def moves(self):
    return tuple(self.twist_word) + tuple(self.slide_word)


@dataclass(frozen=True)
class Decision:
  realizable: bool
  reason: Reason
  certificate: Certificate = None
  completeness: Completeness = None


@dataclass(frozen=True)
class Verdict:
  accepted: bool
  reason: str = "Accepted"

  def __bool__(self):
    return self.accepted


def _trace_records(trace):
  return [
    {"phase": s.phase, "row": s.row, "move": str(s.move), "before": s.before, "after": s.after}
    for s in trace
  ]


def _meta(completeness, twist_word, kernel_word=(), boundary_word=(), boundary_complexity=None, trace=None):
  meta = {
    "completeness": completeness.value,
    "twist_moves": len(twist_word),
    "kernel_moves": len(kernel_word),
    "boundary_moves": len(boundary_word),
    "boundary_slides": sum(isinstance(move, BoundarySlide) for move in boundary_word),
  }
  if boundary_complexity is not None:
    meta["boundary_complexity"] = boundary_complexity
  if trace is not None:
    meta["trace"] = _trace_records(trace)
  return meta


### _______________ Decisions _______________ ###

def decide_closed(inst, trace=None):
  """
  Decide realizability on a closed surface.

  Raises:
      HomologyError: the matrix is not a valid normalized lift.
  """
  A = validate_closed(inst.matrix, inst.signature.crosscaps)
  A_bar = reduce_mod2(A).matrix
  if not is_orthogonal(A_bar):
    _logger.info("[decide] surface=%s realizable=False reason=PairingNotPreserved", inst.signature)
    return Decision(False, Reason.PAIRING_NOT_PRESERVED)

  twist_word = factor_orthogonal(A_bar).moves
  if A_bar.is_identity:
    kernel_word = factor_kernel(A, trace).moves
    cert = Certificate(
      Level.INTEGER,
      (),
      kernel_word,
      _meta(Completeness.FULL_INTEGER, (), kernel_word, trace=trace),
    )
    completeness = Completeness.FULL_INTEGER
  else:
    cert = Certificate(Level.MOD2, twist_word, (), _meta(Completeness.MOD2_ONLY, twist_word, trace=trace))
    completeness = Completeness.MOD2_ONLY
  _logger.info(
    "[decide] surface=%s realizable=True completeness=%s moves=%d",
    inst.signature, completeness.value, len(cert.moves),
  )
  return Decision(True, Reason.PAIRING_PRESERVED, cert, completeness)


def _normalized_punctured(A):
  # shift alpha_1 by r when A r = -r so the alpha block has row sums 1
  if A.relation_sign == 1:
    return np.array(A.matrix, dtype=object)
  shifted = np.array(A.matrix, dtype=object)
  shifted[:, 0] = shifted[:, 0] + A.signature.relation_vector
  return shifted


def decide_punctured(inst, trace=None):
  """
  Decide realizability on a punctured surface.

  A beta column that is not +-(a boundary class) is answered as not
  realizable (BoundaryConditionViolated); every other validation failure
  propagates as a HomologyError.
  """
  sig = inst.signature
  n, m = sig.crosscaps, sig.punctures
  try:
    A = validate_punctured(inst.matrix, n, m)
  except BadBoundaryColumn as err:
    _logger.info("[decide] surface=%s realizable=False reason=BoundaryConditionViolated (%s)", sig, err)
    return Decision(False, Reason.BOUNDARY_CONDITION_VIOLATED)

  image = reduce_mod2(A)
  if not image.preserves_pairing():
    _logger.info("[decide] surface=%s realizable=False reason=PairingNotPreserved", sig)
    return Decision(False, Reason.PAIRING_NOT_PRESERVED)

  normalized = _normalized_punctured(A)
  block = normalized[:n, :n]
  closed = None
  if is_mod2_kernel(block):
    try:
      closed = validate_closed(block, n)
    except HomologyError as err:
      _logger.debug("[decide] closed part rejected for the kernel stage: %s", err)

  if closed is not None:
    kernel_word = factor_kernel(closed, trace).moves
    undo = word_product(tuple(reversed(kernel_word)), sig, Level.INTEGER)
    residual = split_residual(validate_punctured(undo @ normalized, n, m))
    boundary_word = tuple(factor_residual(residual, trace))
    slide_word = tuple(kernel_word) + boundary_word
    cert = Certificate(
      Level.INTEGER,
      (),
      slide_word,
      _meta(Completeness.FULL_INTEGER, (), kernel_word, boundary_word, residual.complexity, trace),
    )
    completeness = Completeness.FULL_INTEGER
  else:
    _logger.warning(
      "[decide] surface=%s closed part is outside the mod-2 kernel; certificate is mod2-only", sig
    )
    closed_bar = Mod2Matrix(np.array(block, dtype=object) % 2)
    twist_word = factor_orthogonal(closed_bar).moves
    undo = embed(mod2_word_product(TwistWord(n, tuple(reversed(twist_word)))), n + m)
    residual_bar = undo @ image.matrix
    boundary_word = tuple(factor_residual_mod2(residual_bar, sig, A.sigma))
    cert = Certificate(
      Level.MOD2,
      twist_word,
      boundary_word,
      _meta(Completeness.MOD2_ONLY, twist_word, (), boundary_word, trace=trace),
    )
    completeness = Completeness.MOD2_ONLY
  _logger.info(
    "[decide] surface=%s realizable=True completeness=%s moves=%d",
    sig, completeness.value, len(cert.moves),
  )
  return Decision(True, Reason.PAIRING_PRESERVED, cert, completeness)


def decide(inst, trace=None):
  if inst.signature.is_closed:
    return decide_closed(inst, trace)
  return decide_punctured(inst, trace)


### _______________ Verification _______________ ###

def verify_certificate(inst, cert):
  """
  Replay a certificate against an instance. Never raises; rejection is a Verdict.
  """
  try:
    try:
      level = Level(cert.level)
    except ValueError:
      return Verdict(False, "LevelUnknown")
    try:
      moves = cert.moves
    except TypeError:
      return Verdict(False, "MalformedMove")
    if any(not isinstance(move, MOVE_TYPES) for move in moves):
      return Verdict(False, "MalformedMove")
    sig = inst.signature
    for move in moves:
      try:
        sig.check(move)
      except MoveIndexError:
        return Verdict(False, "MoveOutOfRange")
    if level is Level.INTEGER and any(isinstance(move, DehnTwist) for move in moves):
      return Verdict(False, "TwistAtIntegerLevel")
    target = np.asarray(inst.matrix, dtype=object)
    if target.shape != (sig.rank, sig.rank):
      return Verdict(False, "ShapeMismatch")

    if level is Level.INTEGER:
      product = word_product(moves, sig, Level.INTEGER)
      same = equal_mod_relation(product, target, sig)
    else:
      product = word_product(moves, sig, Level.MOD2)
      same = equal_mod2_relation(product, Mod2Matrix(target % 2), sig)
    return Verdict(True) if same else Verdict(False, "ProductMismatch")
  except HomologyError as err:
    return Verdict(False, err.code)


### _______________ Instance generation _______________ ###

@dataclass(frozen=True, eq=False)
class GeneratedInstance:
  """
  Instance plus the hidden ground truth.
  Features:
  - truth: the sampled word, multiplied out into the instance matrix first.
  - crosscap_perm: 1-based images of the scrambling crosscap permutation, if any.
  - corruption: (a, b, c) of the pairing-breaking column operation, if any.
  """

  instance: Instance
  truth: tuple
  crosscap_perm: tuple = None
  corruption: tuple = None


def _move_kinds(sig):
  kinds = []
  if sig.crosscaps >= 2:
    kinds.append(CrosscapSlide)
  if not sig.is_closed:
    kinds.extend([BoundarySlide, PuncturePerm])
  return kinds


def _sample_move(rng, kind, sig):
  n, m = sig.crosscaps, sig.punctures
  if kind is CrosscapSlide:
    i, j = rng.choice(n, size=2, replace=False)
    return CrosscapSlide(int(i) + 1, int(j) + 1)
  if kind is BoundarySlide:
    return BoundarySlide(int(rng.integers(1, n + 1)), int(rng.integers(1, m + 1)))
  return PuncturePerm(tuple(int(p) + 1 for p in rng.permutation(m)))


def generate_instance(signature, word_length, seed, corrupt=False, scramble=False):
  """
  Sample a random generator word and multiply it out.

  Args:
      signature (SurfaceSignature): target surface.
      word_length (int): exact number of moves.
      seed (int): numpy default_rng seed; equal inputs give equal instances.
      corrupt (bool, optional): post-multiply by I + e_a (e_b - e_c)^T, which keeps
          row sums, determinant and the relation but breaks the mod-2 pairing.
      scramble (bool, optional): post-multiply by a random crosscap permutation.

  Returns:
      GeneratedInstance
  """
  if word_length < 0:
    raise InstanceFormatError(f"word length must be non-negative, got {word_length}")
  n = signature.crosscaps
  if corrupt and n < 3:
    raise InstanceFormatError(f"corruption needs at least 3 crosscaps, got {n}")
  rng = np.random.default_rng(seed)
  kinds = _move_kinds(signature)
  truth = []
  if kinds:
    for _ in range(word_length):
      kind = kinds[int(rng.integers(len(kinds)))]
      truth.append(_sample_move(rng, kind, signature))
  matrix = word_product(truth, signature, Level.INTEGER)

  perm = None
  if scramble:
    perm = tuple(int(p) + 1 for p in rng.permutation(n))
    Q = int_identity(signature.rank)
    Q[:n, :n] = 0
    for i, image in enumerate(perm):
      Q[image - 1, i] = 1
    matrix = matrix @ Q

  corruption = None
  if corrupt:
    a, b, c = (int(x) + 1 for x in rng.choice(n, size=3, replace=False))
    K = int_identity(signature.rank)
    K[a - 1, b - 1] += 1
    K[a - 1, c - 1] -= 1
    matrix = matrix @ K
    corruption = (a, b, c)

  _logger.debug(
    "[generate] surface=%s length=%d seed=%s corrupt=%s scramble=%s", signature, len(truth), seed, corrupt, scramble
  )
  return GeneratedInstance(Instance(signature, matrix), tuple(truth), perm, corruption)

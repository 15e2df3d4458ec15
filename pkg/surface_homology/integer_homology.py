"""
Module for the exact integer homology models of non-orientable surfaces.

Closed surface with n crosscaps: H1 is generated by alpha_1..alpha_n modulo
2(alpha_1 + ... + alpha_n); automorphisms are stored as their normalized
lifts, n x n matrices with every row summing to 1.

Punctured surface with m >= 1 boundary circles: H1 is generated by
alpha_1..alpha_n, beta_1..beta_m modulo the relation vector
r = (2, ..., 2, -1, ..., -1); matrices are (n+m) x (n+m) on that redundant
generating set.

Matrices are numpy arrays with dtype=object holding Python ints, column j
being the image of generator j. Nothing here ever narrows to a fixed width.
"""
import logging
import numbers
from dataclasses import dataclass
from enum import Enum

import numpy as np
import sympy

from surface_homology.errors import (
  BadBoundaryColumn,
  InconsistentSinglePuncture,
  InstanceFormatError,
  InvalidGenerator,
  NonAutomorphism,
  NonUnimodular,
  NonUnimodularQuotient,
  RelationNotPreserved,
  RowSumViolation,
  ShapeMismatch,
  TwistHasNoIntegerMatrix,
)
from surface_homology.mod2_core import Mod2Matrix, embed, twist_matrix
from surface_homology.move_classes import (
  MOVE_TYPES,
  BoundarySlide,
  CrosscapSlide,
  DehnTwist,
  PuncturePerm,
)

_logger = logging.getLogger(__name__)

IntMatrix = np.ndarray


class Level(str, Enum):
  INTEGER = "integer"
  MOD2 = "mod2"


@dataclass(frozen=True)
class SurfaceSignature:
  """(crosscaps n >= 1, punctures m >= 0); fixes the surface and its homology model."""

  crosscaps: int
  punctures: int = 0

  def __post_init__(self):
    for name in ("crosscaps", "punctures"):
      value = getattr(self, name)
      if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise InstanceFormatError(f"{name} must be an integer, got {value!r}")
      object.__setattr__(self, name, int(value))
    if self.crosscaps < 1:
      raise InstanceFormatError(f"need at least one crosscap, got {self.crosscaps}")
    if self.punctures < 0:
      raise InstanceFormatError(f"puncture count cannot be negative, got {self.punctures}")

  @property
  def is_closed(self):
    return self.punctures == 0

  @property
  def rank(self):
    """Size of the generating set, n for closed and n + m for punctured."""
    return self.crosscaps + self.punctures

  @property
  def relation_vector(self):
    if self.is_closed:
      raise ShapeMismatch("the closed model has no relation vector on its generators")
    return np.array([2] * self.crosscaps + [-1] * self.punctures, dtype=object)

  def check(self, move):
    if not isinstance(move, MOVE_TYPES):
      raise InvalidGenerator(f"not a generator move: {move!r}")
    move.check(self.crosscaps, self.punctures)

  def __str__(self):
    return f"N({self.crosscaps},{self.punctures})"


@dataclass(frozen=True, eq=False)
class ClosedAutomorphism:
  """Normalized lift: A @ 1 = 1 and det(A) = +-1."""

  signature: SurfaceSignature
  matrix: IntMatrix


@dataclass(frozen=True, eq=False)
class PuncturedAutomorphism:
  """
  Validated punctured automorphism.
  Features:
  - beta_j -> eps[j] * beta_sigma[j], with sigma 1-based.
  - relation_sign s with A @ r = s r.
  """

  signature: SurfaceSignature
  matrix: IntMatrix
  sigma: tuple
  eps: tuple
  relation_sign: int


@dataclass(frozen=True)
class QuotientAutomorphismInput:
  """
  Automorphism of H1(F, Z) in the basis e_1 = alpha_1, ..., e_{n-1} = alpha_{n-1},
  e_n = alpha_1 + ... + alpha_n. images[j] = (coefficients along e_1..e_{n-1},
  parity bit along e_n) of the image of e_{j+1}.
  """

  n: int
  images: tuple

  def __post_init__(self):
    if isinstance(self.n, bool) or not isinstance(self.n, numbers.Integral) or self.n < 1:
      raise InstanceFormatError(f"n must be a positive integer, got {self.n!r}")
    images = tuple((tuple(int(c) for c in coeffs), int(parity)) for coeffs, parity in self.images)
    if len(images) != self.n - 1:
      raise ShapeMismatch(f"need {self.n - 1} images, got {len(images)}")
    for coeffs, parity in images:
      if len(coeffs) != self.n - 1:
        raise ShapeMismatch(f"each image needs {self.n - 1} coefficients, got {len(coeffs)}")
      if parity not in (0, 1):
        raise InstanceFormatError(f"parity bit must be 0 or 1, got {parity}")
    object.__setattr__(self, "images", images)

  def quotient_block(self):
    block = np.zeros((self.n - 1, self.n - 1), dtype=object)
    for j, (coeffs, _) in enumerate(self.images):
      block[:, j] = coeffs
    return block


@dataclass(frozen=True, eq=False)
class Mod2Image:
  """Mod-2 reduction together with the Gram matrix of the pairing on the generators."""

  matrix: Mod2Matrix
  gram: Mod2Matrix

  def preserves_pairing(self):
    return (self.matrix.T @ self.gram @ self.matrix) == self.gram


### _______________ Exact integer helpers _______________ ###

def to_int_matrix(entries):
  """Copy entries into a square object array of Python ints, rejecting non-integers."""
  try:
    rows = [list(row) for row in entries]
  except TypeError:
    raise ShapeMismatch("matrix must be a sequence of rows") from None
  if not rows or any(len(row) != len(rows) for row in rows):
    raise ShapeMismatch(f"matrix must be square and non-empty, got {len(rows)} rows")
  for row in rows:
    for x in row:
      if isinstance(x, bool) or not isinstance(x, numbers.Integral):
        raise InstanceFormatError(f"matrix entries must be integers, got {x!r}")
  arr = np.empty((len(rows), len(rows)), dtype=object)
  for r, row in enumerate(rows):
    arr[r, :] = [int(x) for x in row]
  return arr


def int_identity(k):
  arr = np.zeros((k, k), dtype=object)
  for i in range(k):
    arr[i, i] = 1
  return arr


def determinant(M):
  """Exact determinant by Bareiss' fraction-free elimination."""
  rows = [[int(x) for x in row] for row in np.asarray(M, dtype=object).tolist()]
  if not rows:
    return 1
  return int(sympy.Matrix(rows).det(method="bareiss"))


def _in_relation_span(v, r):
  t = -v[-1]
  return all(v[k] == t * r[k] for k in range(len(r)))


def _quotient_matrix(A, r):
  # beta_m = r[:-1] . (other generators); drop it to get a free basis
  return A[:-1, :-1] + np.outer(r[:-1], A[-1, :-1])


### _______________ Validation _______________ ###

def validate_closed(matrix, n):
  """
  Validate a closed-surface automorphism given as its normalized lift.

  Raises:
      RowSumViolation: some row does not sum to 1.
      NonUnimodular: det(A) is not +-1.
  """
  signature = SurfaceSignature(n, 0)
  A = to_int_matrix(matrix)
  if A.shape != (n, n):
    raise ShapeMismatch(f"expected a {n}x{n} matrix, got {A.shape}")
  sums = [int(s) for s in A.sum(axis=1)]
  bad_rows = [i + 1 for i, s in enumerate(sums) if s != 1]
  if bad_rows:
    raise RowSumViolation(f"rows {bad_rows} do not sum to 1 (row sums {sums})", rows=bad_rows)
  det = determinant(A)
  if det not in (1, -1):
    raise NonUnimodular(f"determinant is {det}, not +-1", det=det)
  A.setflags(write=False)
  return ClosedAutomorphism(signature, A)


def validate_punctured(matrix, n, m):
  """
  Validate a punctured-surface automorphism on the redundant generating set.

  Raises:
      BadBoundaryColumn: a beta column is not +-(unit beta vector), or two
          boundary classes land on the same puncture.
      InconsistentSinglePuncture: m = 1 and phi(beta_1) != 2 sum phi(alpha_i).
      RelationNotPreserved: A @ r is not +-r.
      NonAutomorphism: the induced map on the free quotient is not unimodular.
  """
  signature = SurfaceSignature(n, m)
  if signature.is_closed:
    raise ShapeMismatch("a punctured automorphism needs at least one puncture")
  A = to_int_matrix(matrix)
  k = signature.rank
  if A.shape != (k, k):
    raise ShapeMismatch(f"expected a {k}x{k} matrix, got {A.shape}")

  sigma, eps = [], []
  for j in range(m):
    col = A[:, n + j]
    if any(x != 0 for x in col[:n]):
      raise BadBoundaryColumn(f"image of beta_{j + 1} has a nonzero alpha part", column=j + 1)
    hits = [t for t in range(m) if col[n + t] != 0]
    if len(hits) != 1 or col[n + hits[0]] not in (1, -1):
      raise BadBoundaryColumn(f"image of beta_{j + 1} is not +-beta_k", column=j + 1)
    sigma.append(hits[0] + 1)
    eps.append(int(col[n + hits[0]]))
  if sorted(sigma) != list(range(1, m + 1)):
    raise BadBoundaryColumn(f"boundary images {sigma} do not permute the punctures")

  r = signature.relation_vector
  image = A @ r
  if m == 1 and not _in_relation_span(image, r):
    raise InconsistentSinglePuncture("phi(beta_1) differs from 2 * sum_i phi(alpha_i) in H1")
  if all(image[t] == r[t] for t in range(k)):
    sign = 1
  elif all(image[t] == -r[t] for t in range(k)):
    sign = -1
  else:
    raise RelationNotPreserved(f"A r = {list(image)} is not +-r")

  det = determinant(_quotient_matrix(A, r))
  if det not in (1, -1):
    raise NonAutomorphism(f"induced map on H1 has determinant {det}", det=det)
  A.setflags(write=False)
  return PuncturedAutomorphism(signature, A, tuple(sigma), tuple(eps), sign)


def alpha_block(A):
  """Induced closed-surface map: the alpha rows and columns of a punctured matrix."""
  n = A.signature.crosscaps
  return np.array(A.matrix[:n, :n], dtype=object)


### _______________ Lemma: quotient lift _______________ ###

def _e_basis(n):
  # columns of P are e_1..e_n written in the alpha basis
  P = int_identity(n)
  P[:, n - 1] = 1
  P_inv = int_identity(n)
  P_inv[:n - 1, n - 1] = -1
  return P, P_inv


def lift_quotient(q):
  """
  Lift an automorphism of H1(F, Z) to the normalized lift on H1 of the
  once-holed surface, fixing e_n = alpha_1 + ... + alpha_n.

  Parity bits become coefficient 0 or 1 on e_n; any lift works, this one is
  fixed so the round trip through reduce_quotient is exact.
  """
  n = q.n
  block = q.quotient_block()
  det = determinant(block)
  if det not in (1, -1):
    raise NonUnimodularQuotient(f"quotient block has determinant {det}", det=det)
  E = np.zeros((n, n), dtype=object)
  E[:n - 1, :n - 1] = block
  for j, (_, parity) in enumerate(q.images):
    E[n - 1, j] = parity
  E[n - 1, n - 1] = 1
  P, P_inv = _e_basis(n)
  A = validate_closed(P @ E @ P_inv, n)
  _logger.debug("[lift] n=%d det=%d", n, det)
  return A


def reduce_quotient(A):
  """Read back the quotient data of a closed automorphism (inverse of lift_quotient)."""
  n = A.signature.crosscaps
  P, P_inv = _e_basis(n)
  E = P_inv @ A.matrix @ P
  images = tuple(
    (tuple(int(x) for x in E[:n - 1, j]), int(E[n - 1, j]) % 2)
    for j in range(n - 1)
  )
  return QuotientAutomorphismInput(n, images)


### _______________ Mod 2 _______________ ###

def pairing_gram(signature):
  """Gram matrix diag(I_n, 0_m); boundary classes pair trivially."""
  bits = np.zeros((signature.rank, signature.rank), dtype=np.uint8)
  bits[:signature.crosscaps, :signature.crosscaps] = np.eye(signature.crosscaps, dtype=np.uint8)
  return Mod2Matrix(bits)


def _mod2(M):
  return Mod2Matrix(np.array(M, dtype=object) % 2)


def reduce_mod2(A):
  """Entrywise mod-2 image of a validated automorphism, with its pairing Gram matrix."""
  return Mod2Image(_mod2(A.matrix), pairing_gram(A.signature))


### _______________ Generator moves _______________ ###

def generator_matrix(move, signature):
  """Integer matrix of a crosscap slide, boundary slide or puncture permutation."""
  signature.check(move)
  if isinstance(move, DehnTwist):
    raise TwistHasNoIntegerMatrix(f"{move} acts on mod-2 homology only")
  n = signature.crosscaps
  M = int_identity(signature.rank)
  if isinstance(move, CrosscapSlide):
    M[move.j - 1, move.i - 1] = 2
    M[move.j - 1, move.j - 1] = -1
  elif isinstance(move, BoundarySlide):
    M[n + move.j - 1, move.i - 1] = -1
    M[n + move.j - 1, n + move.j - 1] = -1
  elif isinstance(move, PuncturePerm):
    for j in range(len(move.perm)):
      M[n + j, n + j] = 0
    for j, image in enumerate(move.perm):
      M[n + image - 1, n + j] = 1
  return M


def generator_matrix_mod2(move, signature):
  """Mod-2 image of a move; crosscap slides vanish, twists act on the alpha block."""
  signature.check(move)
  if isinstance(move, CrosscapSlide):
    return Mod2Matrix.identity(signature.rank)
  if isinstance(move, DehnTwist):
    return embed(twist_matrix(move, signature.crosscaps), signature.rank)
  return _mod2(generator_matrix(move, signature))


def word_product(word, signature, level=Level.INTEGER):
  """
  Product M(w_1) @ ... @ M(w_L) of a move word; the last move acts first.

  Returns an object IntMatrix at the integer level and a Mod2Matrix at mod2.
  """
  level = Level(level)
  if level is Level.INTEGER:
    result = int_identity(signature.rank)
    for move in word:
      result = result @ generator_matrix(move, signature)
    return result
  result = Mod2Matrix.identity(signature.rank)
  for move in word:
    result = result @ generator_matrix_mod2(move, signature)
  return result


### _______________ Equality on the quotient _______________ ###

def equal_mod_relation(A, B, signature):
  """True iff A and B induce the same map on H1: columns of A - B lie in <r>."""
  A = np.asarray(A, dtype=object)
  B = np.asarray(B, dtype=object)
  if A.shape != B.shape or A.shape != (signature.rank, signature.rank):
    raise ShapeMismatch(f"cannot compare shapes {A.shape} and {B.shape} on {signature}")
  if signature.is_closed:
    return bool(np.array_equal(A, B))
  r = signature.relation_vector
  diff = A - B
  return all(_in_relation_span(diff[:, j], r) for j in range(signature.rank))


def equal_mod2_relation(A, B, signature):
  """Mod-2 analogue: columns of A + B lie in {0, r mod 2}."""
  if A.dim != B.dim or A.dim != signature.rank:
    raise ShapeMismatch(f"cannot compare dims {A.dim} and {B.dim} on {signature}")
  if signature.is_closed:
    return A == B
  r_bar = (signature.relation_vector % 2).astype(np.uint8)
  diff = (A + B).entries
  return all(
    not diff[:, j].any() or np.array_equal(diff[:, j], r_bar)
    for j in range(signature.rank)
  )

"""
Module for factoring the boundary part of a punctured automorphism.

A residual automorphism fixes every alpha_i up to boundary classes:
  phi(alpha_i) = alpha_i + sum_j c_ij beta_j,   phi(beta_j) = eps_j beta_sigma(j)
It is reduced to the identity by one puncture permutation and then boundary
slides, each slide lowering sum |c_ij| by exactly one.
"""
import logging
from dataclasses import dataclass

import numpy as np

from surface_homology import config
from surface_homology.errors import InvariantViolation, NotResidual
from surface_homology.integer_homology import PuncturedAutomorphism, SurfaceSignature
from surface_homology.kernel_factor import DescentStep
from surface_homology.mod2_core import Mod2Matrix
from surface_homology.move_classes import BoundarySlide, PuncturePerm

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResidualForm:
  """
  Normalized residual automorphism.
  Features:
  - c[i][k]: coefficient of beta_{k+1} in phi(alpha_{i+1}).
  - eps, sigma: boundary signs and 1-based permutation.
  - Column sums obey sum_i c_ik = (eps_j - 1) / 2 where sigma(j) = k.
  """

  signature: SurfaceSignature
  c: tuple
  eps: tuple
  sigma: tuple

  @property
  def complexity(self):
    return sum(abs(x) for row in self.c for x in row)

  def matrix(self):
    n, m = self.signature.crosscaps, self.signature.punctures
    M = np.zeros((n + m, n + m), dtype=object)
    for i in range(n):
      M[i, i] = 1
      for k in range(m):
        M[n + k, i] = self.c[i][k]
    for j in range(m):
      M[n + self.sigma[j] - 1, n + j] = self.eps[j]
    return M


def _check_column_sums(c, eps, sigma):
  m = len(eps)
  for j in range(m):
    k = sigma[j] - 1
    total = sum(row[k] for row in c)
    if 2 * total != eps[j] - 1:
      raise InvariantViolation(
        f"column {k + 1} of c sums to {total}, expected {(eps[j] - 1) // 2} for eps={eps[j]}"
      )


def split_residual(A):
  """
  Normalize a punctured automorphism whose closed part is the identity.

  Each alpha column must read e_i + 2t(1, ..., 1) on the alpha coordinates;
  it is shifted by -t r so the alpha part is exactly e_i.

  Raises:
      NotResidual: some alpha column is not the identity modulo the relation.
  """
  if not isinstance(A, PuncturedAutomorphism):
    raise NotResidual(f"expected a validated PuncturedAutomorphism, got {type(A).__name__}")
  n, m = A.signature.crosscaps, A.signature.punctures
  r = A.signature.relation_vector
  shifted = np.array(A.matrix, dtype=object)
  for i in range(n):
    diff = [int(shifted[k, i]) - (1 if k == i else 0) for k in range(n)]
    if len(set(diff)) != 1 or diff[0] % 2:
      raise NotResidual(f"alpha_{i + 1} does not map to alpha_{i + 1} modulo boundary classes")
    t = diff[0] // 2
    shifted[:, i] = shifted[:, i] - t * r
  image = shifted @ r
  if any(image[k] != r[k] for k in range(n + m)):
    raise InvariantViolation("normalized residual does not fix the relation vector")
  c = tuple(tuple(int(shifted[n + k, i]) for k in range(m)) for i in range(n))
  _check_column_sums(c, A.eps, A.sigma)
  return ResidualForm(A.signature, c, tuple(A.eps), tuple(A.sigma))


def _slide(c, eps, i, j):
  # right multiplication by h(i, j) with sigma = id
  c[i - 1][j - 1] -= eps[j - 1]
  eps[j - 1] = -eps[j - 1]


def factor_residual(R, trace=None):
  """
  Factor a residual form into a puncture permutation and boundary slides.

  Args:
      R (ResidualForm): output of split_residual.
      trace (list, optional): receives a DescentStep per slide, judged by sum |c|.

  Returns:
      list: moves whose integer product equals R.matrix() exactly, so the
      input automorphism modulo the relation.
  """
  n, m = R.signature.crosscaps, R.signature.punctures
  identity = tuple(range(1, m + 1))
  c = [list(row) for row in R.c]
  # after P(sigma^-1) on the right, beta_j carries eps_{sigma^-1(j)}
  inverse = [0] * m
  for j, image in enumerate(R.sigma, start=1):
    inverse[image - 1] = j
  eps = [R.eps[inverse[k] - 1] for k in range(m)]
  applied = []

  def apply(i, j, phase):
    before = sum(abs(x) for row in c for x in row)
    _slide(c, eps, i, j)
    move = BoundarySlide(i, j)
    applied.append(move)
    after = sum(abs(x) for row in c for x in row)
    _logger.debug("[boundary] column=%d phase=%s move=%s C=%d->%d", j, phase, move, before, after)
    if trace is not None:
      trace.append(DescentStep(phase, j, move, before, after))
    if config.CHECK_INVARIANTS:
      if after != before - 1:
        raise InvariantViolation(f"{move} changed sum |c| by {after - before}, not -1")
      _check_column_sums(c, eps, identity)

  def first(j, predicate):
    i = next((i for i in range(1, n + 1) if predicate(c[i - 1][j - 1])), None)
    if i is None:
      raise InvariantViolation(f"column {j} of c has no entry of the required sign: {[row[j - 1] for row in c]}")
    return i

  for j in range(1, m + 1):
    if eps[j - 1] == -1:
      if not any(row[j - 1] for row in c):
        raise InvariantViolation(f"eps_{j} = -1 with an all-zero column of c")
      apply(first(j, lambda x: x < 0), j, "eps")

  while True:
    j = next((j for j in range(1, m + 1) if any(row[j - 1] for row in c)), None)
    if j is None:
      break
    apply(first(j, lambda x: x > 0), j, "pair")
    apply(first(j, lambda x: x < 0), j, "pair")

  if any(e != 1 for e in eps):
    raise InvariantViolation(f"c reached zero with boundary signs {eps}")
  word = list(reversed(applied))
  if tuple(R.sigma) != identity:
    word.append(PuncturePerm(tuple(R.sigma)))
  _logger.info("[boundary] n=%d m=%d slides=%d complexity=%d", n, m, len(applied), R.complexity)
  return word


def factor_residual_mod2(R, signature, sigma):
  """
  Mod-2 boundary stage: R has identity alpha part and beta_j -> beta_sigma(j).

  Returns [P(sigma)] followed by h(i, j) for every j, i with
  s_{i, sigma(j)} = 1, where s is the beta part of the alpha columns.
  """
  n, m = signature.crosscaps, signature.punctures
  if not isinstance(R, Mod2Matrix) or R.dim != n + m:
    raise NotResidual(f"expected a mod-2 matrix of dim {n + m}")
  bits = R.entries
  if not np.array_equal(bits[:n, :n], np.eye(n, dtype=np.uint8)):
    raise NotResidual("alpha part of the mod-2 residual is not the identity")
  perm = PuncturePerm(tuple(sigma))
  perm.check(n, m)
  word = [] if perm.is_identity else [perm]
  for j in range(1, m + 1):
    for i in range(1, n + 1):
      if bits[n + sigma[j - 1] - 1, i - 1]:
        word.append(BoundarySlide(i, j))
  return word

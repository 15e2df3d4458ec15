"""
Module for factoring mod-2 isometries into Dehn-twist involutions.

factor_orthogonal is the constructive half: it reduces an isometry to the
identity one column at a time with at most two transvections per column.
enumerate_orthogonal, filter_orthogonal and orthogonal_group_order are
independent oracles used to check that the R(i1, ..., i2k) generate the
whole isometry group at small dimension.
"""
import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd
from tqdm import tqdm

from surface_homology import config
from surface_homology.errors import (
  DimensionMismatch,
  EnumerationTooLarge,
  InvalidGenerator,
  InvariantViolation,
  NotOrthogonal,
)
from surface_homology.mod2_core import Mod2Matrix, is_orthogonal, twist_matrix
from surface_homology.move_classes import TwistGenerator, format_word

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwistWord:
  """
  Word in the twist involutions acting on F2^dim.
  The product is M(moves[0]) @ M(moves[1]) @ ...; the last move acts first.
  """

  dim: int
  moves: tuple = ()

  def __post_init__(self):
    if isinstance(self.dim, bool) or not isinstance(self.dim, int) or self.dim < 1:
      raise DimensionMismatch(f"twist word dim must be a positive integer, got {self.dim!r}")
    moves = tuple(self.moves)
    for move in moves:
      if not isinstance(move, TwistGenerator):
        raise InvalidGenerator(f"twist words hold twists only, got {move!r}")
      move.check(self.dim, 0)
    object.__setattr__(self, "moves", moves)

  def __len__(self):
    return len(self.moves)

  def __iter__(self):
    return iter(self.moves)

  def __str__(self):
    return format_word(self.moves)


def mod2_word_product(W):
  """Exact product of a twist word over F2."""
  result = Mod2Matrix.identity(W.dim)
  for move in W.moves:
    result = result @ twist_matrix(move, W.dim)
  return result


def _left_transvect(work, gamma):
  # work <- (I + g g^T) work, column by column
  hits = (gamma.astype(np.int64) @ work.astype(np.int64)) & 1
  work ^= np.outer(gamma, hits).astype(np.uint8)


def factor_orthogonal(M):
  """
  Factor an isometry of the mod-2 form into twist involutions.

  For each column c the current image u of e_c is moved back to e_c:
  directly by the transvection along u + e_c when u.e_c = 0, otherwise after
  a first twist R(c, j) at the smallest j > c with u_j = 0. Each emitted
  twist is left-multiplied onto the working matrix, so the emitted order is
  the word order.

  Args:
      M (Mod2Matrix): matrix with M^T M = I.

  Returns:
      TwistWord: word whose product is M, of length at most 2(dim - 1).
  """
  if not is_orthogonal(M):
    raise NotOrthogonal("matrix does not preserve the mod-2 intersection pairing")
  dim = M.dim
  work = np.array(M.entries, dtype=np.uint8)
  moves = []

  def emit(support):
    gamma = np.zeros(dim, dtype=np.uint8)
    gamma[list(support)] = 1
    _left_transvect(work, gamma)
    move = TwistGenerator(tuple(int(i) + 1 for i in support))
    moves.append(move)
    _logger.debug("[mod2] column=%d move=%s", c + 1, move)

  for c in range(dim - 1):
    u = work[:, c]
    if u[c] == 1 and np.count_nonzero(u) == 1:
      continue
    if u[c] == 1:
      zeros = np.flatnonzero(u[c + 1:] == 0)
      if zeros.size == 0:
        raise InvariantViolation(
          f"column {c + 1} maps onto the all-ones vector of the active block; "
          "an isometry fixes that vector, so this cannot happen"
        )
      emit((c, c + 1 + int(zeros[0])))
    gamma_support = np.flatnonzero(work[:, c] ^ (np.arange(dim) == c))
    emit(tuple(int(i) for i in gamma_support))
    if work[c, c] != 1 or np.count_nonzero(work[:, c]) != 1 or np.count_nonzero(work[c, :]) != 1:
      raise InvariantViolation(f"e_{c + 1} did not split off orthogonally after its column was fixed")

  if not np.array_equal(work, np.eye(dim, dtype=np.uint8)):
    raise InvariantViolation("last column was not forced to e_dim")
  word = TwistWord(dim, tuple(moves))
  _logger.debug("[mod2] dim=%d twists=%d word=%s", dim, len(word), word)
  return word


### _______________ Oracles _______________ ###

def all_twist_generators(dim):
  """Every R(i1, ..., i2k) fitting dim, by support size then lexicographically."""
  return [
    TwistGenerator(tuple(i + 1 for i in support))
    for size in range(2, dim + 1, 2)
    for support in itertools.combinations(range(dim), size)
  ]


def _columns_to_matrix(columns, dim):
  bits = np.zeros((dim, dim), dtype=np.uint8)
  for j, col in enumerate(columns):
    for r in range(dim):
      bits[r, j] = (col >> r) & 1
  return Mod2Matrix(bits)


def _symplectic_order(k):
  return 2 ** (k * k) * math.prod(4 ** i - 1 for i in range(1, k + 1))


def orthogonal_group_order(dim):
  """Order of the isometry group of the standard form on F2^dim."""
  if dim < 1:
    raise DimensionMismatch(f"dimension must be positive, got {dim}")
  if dim % 2:
    return _symplectic_order((dim - 1) // 2)
  k = dim // 2
  return 2 ** (2 * k - 1) * _symplectic_order(k - 1)


def enumerate_orthogonal(dim, max_dim=None, progress=False):
  """
  Breadth-first closure of {I} under left multiplication by every twist.

  Args:
      dim (int): ambient dimension.
      max_dim (int, optional): resource guard. Defaults to config.MAX_ENUM_DIM.
      progress (bool, optional): show a tqdm bar sized by the expected order.

  Raises:
      EnumerationTooLarge: if dim exceeds the guard.

  Returns:
      dict: Mod2Matrix -> minimal word length in the twists.
  """
  bound = config.MAX_ENUM_DIM if max_dim is None else max_dim
  if dim < 1:
    raise DimensionMismatch(f"dimension must be positive, got {dim}")
  if dim > bound:
    raise EnumerationTooLarge(f"dim {dim} exceeds the enumeration bound {bound}", bound=bound)

  # columns as int masks, bit r = coordinate r + 1
  generators = [sum(1 << (i - 1) for i in g.support) for g in all_twist_generators(dim)]
  start = tuple(1 << j for j in range(dim))
  lengths = {start: 0}
  frontier = [start]
  pbar = tqdm(total=orthogonal_group_order(dim), ncols=100, disable=not progress)
  pbar.update(1)
  try:
    while frontier:
      nxt = []
      for columns in frontier:
        depth = lengths[columns] + 1
        for gamma in generators:
          image = tuple(col ^ gamma if (col & gamma).bit_count() & 1 else col for col in columns)
          if image not in lengths:
            lengths[image] = depth
            nxt.append(image)
      pbar.update(len(nxt))
      frontier = nxt
  finally:
    pbar.close()

  _logger.info("[enumerate] dim=%d order=%d generators=%d", dim, len(lengths), len(generators))
  return {_columns_to_matrix(columns, dim): length for columns, length in lengths.items()}


def filter_orthogonal(dim, max_dim=None):
  """Exhaustive M^T M = I filter over all 2^(dim^2) matrices."""
  bound = config.MAX_FILTER_DIM if max_dim is None else max_dim
  if dim < 1:
    raise DimensionMismatch(f"dimension must be positive, got {dim}")
  if dim > bound:
    raise EnumerationTooLarge(f"dim {dim} exceeds the filter bound {bound}", bound=bound)
  mask = (1 << dim) - 1
  found = set()
  for code in range(1 << (dim * dim)):
    columns = tuple((code >> (dim * j)) & mask for j in range(dim))
    if all(
      ((columns[a] & columns[b]).bit_count() & 1) == (a == b)
      for a in range(dim)
      for b in range(a, dim)
    ):
      found.add(_columns_to_matrix(columns, dim))
  return found


def word_length_histogram(enumeration):
  """Number of group elements at each minimal word length."""
  counts = pd.Series(list(enumeration.values()), dtype="int64").value_counts().sort_index()
  counts.index.name = "word_length"
  counts.name = "elements"
  return counts

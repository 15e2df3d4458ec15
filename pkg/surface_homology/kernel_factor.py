"""
Module for factoring mod-2-trivial closed automorphisms into crosscap slides.

The working matrix B starts at A and is driven to the identity by right
multiplication with slides e(i, j) (col_i += 2 col_j, col_j = -col_j),
each reducing move lowering a row complexity:
  - row 1:  C1  = sum_j |b_1j|
  - row i:  Ci  = sum_{j >= i} |b_ij|   (columns right of the diagonal)
  - row i:  C'i = sum_{j <= i} |b_ij|   (diagonal and left of it)
Row 1 is cleared first. The Ci descents then run for rows 2..n top-down,
leaving B lower triangular with diagonal +-1, and the C'i descents run
bottom-up, when every column they add is +-e_i and entries cannot grow.
Every slide is an involution, so the recorded sequence read backwards is a
word for A.
"""
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from surface_homology import config
from surface_homology.errors import InvalidGenerator, InvariantViolation, NotInKernel
from surface_homology.integer_homology import ClosedAutomorphism, SurfaceSignature
from surface_homology.move_classes import CrosscapSlide, format_word

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SlideWord:
  """Word of crosscap slides; reversing it inverts it."""

  signature: SurfaceSignature
  moves: tuple = ()

  def __post_init__(self):
    moves = tuple(self.moves)
    for move in moves:
      if not isinstance(move, CrosscapSlide):
        raise InvalidGenerator(f"slide words hold crosscap slides only, got {move!r}")
      move.check(self.signature.crosscaps, self.signature.punctures)
    object.__setattr__(self, "moves", moves)

  def inverse(self):
    return SlideWord(self.signature, tuple(reversed(self.moves)))

  def __len__(self):
    return len(self.moves)

  def __iter__(self):
    return iter(self.moves)

  def __str__(self):
    return format_word(self.moves)


@dataclass(frozen=True)
class DescentStep:
  """One recorded move with the complexity it was judged by."""

  phase: str
  row: int
  move: object
  before: int
  after: int


def descent_frame(trace):
  """Trace records as a DataFrame, one row per move in application order."""
  frame = pd.DataFrame(
    [
      {
        "step": k,
        "phase": s.phase,
        "row": s.row,
        "move": str(s.move),
        "before": s.before,
        "after": s.after,
      }
      for k, s in enumerate(trace, start=1)
    ],
    columns=["step", "phase", "row", "move", "before", "after"],
  )
  frame["delta"] = frame["after"] - frame["before"]
  return frame


def _sign(x):
  return (x > 0) - (x < 0)


class _KernelDescent:
  """
  Working state of one factorization.
  Features:
  - B is a private object-dtype copy; moves are recorded in application order.
  - Row 1 is cleared first, then every row's tail (columns right of the
    diagonal) top-down, then every row's left part bottom-up.
  - Invariant checks after every move when config.CHECK_INVARIANTS is set.
  """

  def __init__(self, matrix, trace):
    self.B = np.array(matrix, dtype=object)
    self.n = self.B.shape[0]
    self.applied = []
    self.trace = trace

  def row(self, i):
    return [int(x) for x in self.B[i - 1, :]]

  def complexity(self, i, kind):
    row = self.row(i)
    if kind == "left":
      return sum(abs(x) for x in row[:i])
    return sum(abs(x) for x in row[i - 1:])

  def apply(self, i, j, phase, row, kind):
    before = self.complexity(row, kind)
    ci, cj = i - 1, j - 1
    self.B[:, ci] = self.B[:, ci] + 2 * self.B[:, cj]
    self.B[:, cj] = -self.B[:, cj]
    move = CrosscapSlide(i, j)
    self.applied.append(move)
    after = self.complexity(row, kind)
    _logger.debug("[kernel] row=%d phase=%s move=%s C=%d->%d", row, phase, move, before, after)
    if self.trace is not None:
      self.trace.append(DescentStep(phase, row, move, before, after))
    if config.CHECK_INVARIANTS:
      if phase == "sign":
        if after != before:
          raise InvariantViolation(f"sign normalization {move} changed C{row}: {before} -> {after}")
      elif after >= before:
        raise InvariantViolation(f"reducing move {move} did not lower C{row}: {before} -> {after}")
      self._check_state(row, phase)

  def _check_state(self, row, phase):
    rows = [[int(x) for x in r] for r in self.B.tolist()]
    finished = range(row + 1, self.n + 1) if phase == "C" else range(1, row)
    for r in finished:
      if phase == "C" and rows[r - 1] != [int(c == r) for c in range(1, self.n + 1)]:
        raise InvariantViolation(f"row {r} left the unit vector while clearing row {row}")
      if any(rows[r - 1][r:]) or abs(rows[r - 1][r - 1]) != 1:
        raise InvariantViolation(f"row {r} lost its cleared tail while processing row {row}")
    if any(sum(r) != 1 for r in rows):
      raise InvariantViolation("row sums drifted from 1")
    if any((x - int(a == b)) % 2 for a, r in enumerate(rows) for b, x in enumerate(r)):
      raise InvariantViolation("working matrix left the mod-2 kernel")

  def clear_first_row(self):
    while True:
      row = self.row(1)
      if row[0] == 1 and not any(row[1:]):
        return
      a11 = row[0]
      j = next(
        (j for j in range(2, self.n + 1) if row[j - 1] != 0 and _sign(row[j - 1]) == -_sign(a11)),
        None,
      )
      if j is None:
        raise InvariantViolation(f"row 1 has no entry of sign opposite to a_11: {row}")
      if abs(a11) > abs(row[j - 1]):
        self.apply(1, j, "row1", 1, "right")
      else:
        self.apply(j, 1, "row1", 1, "right")

  def shrink(self, i, target, source):
    """Lower |b_i,target| below |b_i,source| by e(target, source) steps."""
    while True:
      row = self.row(i)
      x, y = row[target - 1], row[source - 1]
      if abs(x) <= abs(y):
        return
      # e(1, k) flips column k and only moves column 1 otherwise
      if _sign(x) == _sign(y):
        self.apply(1, source, "sign", i, "right")
      self.apply(target, source, "B", i, "right")

  def clear_right(self, i):
    while True:
      for k in range(i + 1, self.n + 1):
        self.shrink(i, k, i)
      row = self.row(i)
      rest = [k for k in range(i + 1, self.n + 1) if row[k - 1] != 0]
      if not rest:
        break
      k = min(rest, key=lambda k: (abs(row[k - 1]), k))
      self.shrink(i, i, k)
    if abs(self.row(i)[i - 1]) != 1:
      raise InvariantViolation(f"diagonal entry b_{i}{i} = {self.row(i)[i - 1]} is not a unit")

  def clear_left(self, i):
    # column i is +-e_i here, so these moves only touch row i
    while True:
      row = self.row(i)
      if not any(row[:i - 1]):
        break
      aii = row[i - 1]
      j = next((j for j in range(1, i) if row[j - 1] != 0 and _sign(row[j - 1]) == -_sign(aii)), None)
      if j is None:
        raise InvariantViolation(f"row {i} has no entry left of the diagonal opposite in sign: {row}")
      self.apply(j, i, "C", i, "left")
    if self.row(i)[i - 1] != 1:
      raise InvariantViolation(f"row {i} ended with diagonal {self.row(i)[i - 1]}")

  def run(self):
    self.clear_first_row()
    for i in range(2, self.n + 1):
      self.clear_right(i)
    for i in range(self.n, 1, -1):
      self.clear_left(i)
    if any(self.row(r) != [int(r == c) for c in range(1, self.n + 1)] for r in range(1, self.n + 1)):
      raise InvariantViolation("descent finished without reaching the identity")


def is_mod2_kernel(matrix):
  M = np.asarray(matrix, dtype=object)
  return bool(np.array_equal((M % 2).astype(np.int64), np.eye(M.shape[0], dtype=np.int64)))


def factor_kernel(A, trace=None):
  """
  Factor a closed automorphism that is the identity mod 2 into crosscap slides.

  Args:
      A (ClosedAutomorphism): validated normalized lift with A = I mod 2.
      trace (list, optional): receives a DescentStep per applied move.

  Raises:
      NotInKernel: A is not congruent to I mod 2.

  Returns:
      SlideWord: word whose integer product is exactly A.matrix.
  """
  if not isinstance(A, ClosedAutomorphism):
    raise NotInKernel(f"expected a validated ClosedAutomorphism, got {type(A).__name__}")
  if not is_mod2_kernel(A.matrix):
    raise NotInKernel("automorphism is not the identity on mod-2 homology")
  descent = _KernelDescent(A.matrix, trace)
  descent.run()
  word = SlideWord(A.signature, tuple(reversed(descent.applied)))
  _logger.info("[kernel] n=%d slides=%d", A.signature.crosscaps, len(word))
  return word

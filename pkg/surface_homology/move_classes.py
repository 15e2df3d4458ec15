"""
Module for defining the single generator-move classes.
Classes included:
  - CrosscapSlide
  - DehnTwist (also exported as TwistGenerator)
  - BoundarySlide
  - PuncturePerm

Indices are 1-based everywhere so words read the same as the homology
generators alpha_1..alpha_n, beta_1..beta_m they act on.
"""
import numbers
from dataclasses import dataclass
from typing import ClassVar, Union

from surface_homology.errors import InvalidGenerator, MoveIndexError


def _as_index(value, name):
  if isinstance(value, bool) or not isinstance(value, numbers.Integral):
    raise InvalidGenerator(f"{name} must be an integer, got {value!r}")
  value = int(value)
  if value < 1:
    raise InvalidGenerator(f"{name} must be >= 1, got {value}")
  return value


@dataclass(frozen=True)
class CrosscapSlide:
  """
  Cross-cap slide e(i, j).
  Features:
  - Drags crosscap j once around the one-sided curve of crosscap i.
  - Integer action: alpha_i -> alpha_i + 2 alpha_j, alpha_j -> -alpha_j.
  - Trivial on mod-2 homology; an involution.
  """

  i: int
  j: int
  kind: ClassVar[str] = "crosscap_slide"

  def __post_init__(self):
    object.__setattr__(self, "i", _as_index(self.i, "i"))
    object.__setattr__(self, "j", _as_index(self.j, "j"))
    if self.i == self.j:
      raise InvalidGenerator(f"crosscap slide needs i != j, got ({self.i}, {self.j})")

  def check(self, crosscaps, punctures):
    if max(self.i, self.j) > crosscaps:
      raise MoveIndexError(f"{self} does not fit {crosscaps} crosscaps")

  def __str__(self):
    return f"e({self.i},{self.j})"


@dataclass(frozen=True)
class DehnTwist:
  """
  Dehn twist R(i1, ..., i2k) about a two-sided curve.
  Features:
  - Stores the sorted support, not the curve's class, so words serialize
    canonically.
  - Acts on mod-2 homology only, as the transvection v -> v + (v.g)g.
  """

  support: tuple
  kind: ClassVar[str] = "dehn_twist"

  def __post_init__(self):
    support = tuple(_as_index(i, "support index") for i in self.support)
    if len(support) < 2 or len(support) % 2:
      raise InvalidGenerator(f"twist support must have even size >= 2, got {list(support)}")
    if any(a >= b for a, b in zip(support, support[1:])):
      raise InvalidGenerator(f"twist support must be strictly increasing, got {list(support)}")
    object.__setattr__(self, "support", support)

  def check(self, crosscaps, punctures):
    if self.support[-1] > crosscaps:
      raise MoveIndexError(f"{self} does not fit {crosscaps} crosscaps")

  def __str__(self):
    return "R(" + ",".join(str(i) for i in self.support) + ")"


TwistGenerator = DehnTwist


@dataclass(frozen=True)
class BoundarySlide:
  """
  Boundary slide h(i, j): boundary circle j dragged around crosscap i.
  Integer action: alpha_i -> alpha_i - beta_j, beta_j -> -beta_j.
  """

  i: int
  j: int
  kind: ClassVar[str] = "boundary_slide"

  def __post_init__(self):
    object.__setattr__(self, "i", _as_index(self.i, "i"))
    object.__setattr__(self, "j", _as_index(self.j, "j"))

  def check(self, crosscaps, punctures):
    if self.i > crosscaps or self.j > punctures:
      raise MoveIndexError(f"{self} does not fit {crosscaps} crosscaps, {punctures} punctures")

  def __str__(self):
    return f"h({self.i},{self.j})"


@dataclass(frozen=True)
class PuncturePerm:
  """
  Permutation of the punctures, beta_j -> beta_perm[j].
  `perm` lists the 1-based image of each puncture in order.
  """

  perm: tuple
  kind: ClassVar[str] = "puncture_perm"

  def __post_init__(self):
    perm = tuple(_as_index(p, "perm entry") for p in self.perm)
    if sorted(perm) != list(range(1, len(perm) + 1)):
      raise InvalidGenerator(f"not a permutation of 1..{len(perm)}: {list(perm)}")
    object.__setattr__(self, "perm", perm)

  def check(self, crosscaps, punctures):
    if len(self.perm) != punctures:
      raise MoveIndexError(f"{self} does not act on {punctures} punctures")

  def inverse(self):
    inv = [0] * len(self.perm)
    for j, image in enumerate(self.perm, start=1):
      inv[image - 1] = j
    return PuncturePerm(tuple(inv))

  @property
  def is_identity(self):
    return all(image == j for j, image in enumerate(self.perm, start=1))

  def __str__(self):
    return "P(" + ",".join(str(p) for p in self.perm) + ")"


GeneratorMove = Union[CrosscapSlide, DehnTwist, BoundarySlide, PuncturePerm]
MOVE_TYPES = (CrosscapSlide, DehnTwist, BoundarySlide, PuncturePerm)


def format_word(word):
  """Readable rendering of a move word, e.g. `e(1,2) h(1,1)`; `1` for empty."""
  return " ".join(str(move) for move in word) if word else "1"

"""
Module for F2 vectors and matrices carrying the mod-2 intersection form.

In the basis alpha_1..alpha_n of H1(F, Z/2Z) the intersection pairing is the
standard inner product, so isometries are exactly the matrices with
M^T M = I. Dehn twists act as the involutions R(i1, ..., i2k) = I + g g^T.

Bits are stored in read-only numpy uint8 arrays. Products go through int64
and `& 1`, never through a wrapping narrow type.
"""
import numbers

import numpy as np

from surface_homology.errors import DimensionMismatch, InvalidGenerator, MoveIndexError
from surface_homology.move_classes import TwistGenerator


def _as_bits(data, ndim):
  arr = np.asarray(data)
  if arr.dtype == bool:
    arr = arr.astype(np.uint8)
  if arr.dtype.kind not in "iuO":
    raise InvalidGenerator(f"bit entries must be integers 0/1, got dtype {arr.dtype}")
  if arr.ndim != ndim:
    raise DimensionMismatch(f"expected a {ndim}-d bit array, got shape {arr.shape}")
  if arr.size and not ((arr == 0) | (arr == 1)).all():
    raise InvalidGenerator("bit entries must be 0 or 1")
  bits = arr.astype(np.uint8)
  bits.setflags(write=False)
  return bits


def _check_dim(dim):
  if isinstance(dim, bool) or not isinstance(dim, numbers.Integral) or dim < 1:
    raise DimensionMismatch(f"dimension must be a positive integer, got {dim!r}")
  return int(dim)


class Mod2Vector:
  """
  Vector over F2, coordinates indexed 1..dim.
  Features:
  - Immutable; hashable by its bits.
  - Addition, weight, 1-based support and the standard inner product.
  """

  __slots__ = ("_bits",)

  def __init__(self, coords):
    bits = _as_bits(coords, ndim=1)
    if bits.size < 1:
      raise DimensionMismatch("a mod-2 vector needs dim >= 1")
    self._bits = bits

  @classmethod
  def unit(cls, i, dim):
    dim = _check_dim(dim)
    if not 1 <= i <= dim:
      raise MoveIndexError(f"unit index {i} outside 1..{dim}")
    bits = np.zeros(dim, dtype=np.uint8)
    bits[i - 1] = 1
    return cls(bits)

  @classmethod
  def from_support(cls, support, dim):
    dim = _check_dim(dim)
    bits = np.zeros(dim, dtype=np.uint8)
    for i in support:
      if not 1 <= i <= dim:
        raise MoveIndexError(f"support index {i} outside 1..{dim}")
      bits[i - 1] ^= 1
    return cls(bits)

  @property
  def dim(self):
    return self._bits.size

  @property
  def bits(self):
    return self._bits

  @property
  def weight(self):
    return int(np.count_nonzero(self._bits))

  @property
  def support(self):
    return tuple(int(i) + 1 for i in np.flatnonzero(self._bits))

  def coord(self, i):
    return int(self._bits[i - 1])

  def dot(self, other):
    return inner_product(self, other)

  def __add__(self, other):
    if not isinstance(other, Mod2Vector):
      return NotImplemented
    if other.dim != self.dim:
      raise DimensionMismatch(f"cannot add vectors of dims {self.dim} and {other.dim}")
    return Mod2Vector(self._bits ^ other._bits)

  def __eq__(self, other):
    if not isinstance(other, Mod2Vector):
      return NotImplemented
    return self.dim == other.dim and np.array_equal(self._bits, other._bits)

  def __hash__(self):
    return hash((self.dim, self._bits.tobytes()))

  def __iter__(self):
    return (int(b) for b in self._bits)

  def __repr__(self):
    return "Mod2Vector(" + "".join(str(int(b)) for b in self._bits) + ")"


class Mod2Matrix:
  """
  Square matrix over F2. Column j holds the image of e_j.
  Features:
  - Immutable; equality and hashing through a canonical row-major bit key.
  - `@` with a Mod2Matrix or a Mod2Vector.
  """

  __slots__ = ("_bits",)

  def __init__(self, entries):
    bits = _as_bits(entries, ndim=2)
    rows, cols = bits.shape
    if rows != cols or rows < 1:
      raise DimensionMismatch(f"a mod-2 matrix must be square with dim >= 1, got {bits.shape}")
    self._bits = bits

  @classmethod
  def identity(cls, dim):
    return cls(np.eye(_check_dim(dim), dtype=np.uint8))

  @classmethod
  def from_columns(cls, columns):
    columns = list(columns)
    if not columns:
      raise DimensionMismatch("need at least one column")
    return cls(np.stack([c.bits for c in columns], axis=1))

  @property
  def dim(self):
    return self._bits.shape[0]

  @property
  def entries(self):
    return self._bits

  @property
  def T(self):
    return Mod2Matrix(self._bits.T)

  @property
  def is_identity(self):
    return np.array_equal(self._bits, np.eye(self.dim, dtype=np.uint8))

  @property
  def key(self):
    """Canonical row-major bit key."""
    return self.dim.to_bytes(4, "big") + np.packbits(self._bits, axis=None).tobytes()

  def column(self, j):
    return Mod2Vector(self._bits[:, j - 1])

  def row(self, i):
    return Mod2Vector(self._bits[i - 1, :])

  def __matmul__(self, other):
    if isinstance(other, Mod2Matrix):
      if other.dim != self.dim:
        raise DimensionMismatch(f"cannot multiply dims {self.dim} and {other.dim}")
      return Mod2Matrix((self._bits.astype(np.int64) @ other._bits.astype(np.int64)) & 1)
    if isinstance(other, Mod2Vector):
      if other.dim != self.dim:
        raise DimensionMismatch(f"matrix of dim {self.dim} cannot act on a dim {other.dim} vector")
      return Mod2Vector((self._bits.astype(np.int64) @ other.bits.astype(np.int64)) & 1)
    return NotImplemented

  def __add__(self, other):
    if not isinstance(other, Mod2Matrix):
      return NotImplemented
    if other.dim != self.dim:
      raise DimensionMismatch(f"cannot add dims {self.dim} and {other.dim}")
    return Mod2Matrix(self._bits ^ other._bits)

  def __eq__(self, other):
    if not isinstance(other, Mod2Matrix):
      return NotImplemented
    return self.dim == other.dim and np.array_equal(self._bits, other._bits)

  def __hash__(self):
    return hash(self.key)

  def __str__(self):
    return "\n".join("".join(str(int(b)) for b in row) for row in self._bits)

  def __repr__(self):
    return "Mod2Matrix(" + "/".join("".join(str(int(b)) for b in row) for row in self._bits) + ")"


### _______________ Operations _______________ ###

def inner_product(u, v):
  """Standard inner product sum_i u_i v_i over F2; equals the intersection pairing."""
  if u.dim != v.dim:
    raise DimensionMismatch(f"inner product of dims {u.dim} and {v.dim}")
  return int(np.count_nonzero(u.bits & v.bits) & 1)


def is_orthogonal(M):
  """True iff M^T M = I, i.e. M preserves the mod-2 intersection pairing."""
  return (M.T @ M).is_identity


def characteristic_vector(dim):
  """The all-ones vector, the unique u with u.v = v.v for every v."""
  return Mod2Vector(np.ones(_check_dim(dim), dtype=np.uint8))


def is_orientation_reversing(v):
  """A class is carried by a one-sided curve exactly when v.v = 1."""
  return inner_product(v, v) == 1


def support_vector(g, dim):
  """The class g = e_i1 + ... + e_i2k of the twisting curve of R(i1, ..., i2k)."""
  dim = _check_dim(dim)
  if g.support[-1] > dim:
    raise MoveIndexError(f"{g} does not fit dim {dim}")
  return Mod2Vector.from_support(g.support, dim)


def twist_matrix(g, dim):
  """
  Matrix of R(i1, ..., i2k) on F2^dim.

  Args:
      g (TwistGenerator): the twist, support sorted and of even size.
      dim (int): ambient dimension.

  Returns:
      Mod2Matrix: I + g g^T; sends e_ij to the sum of the other support
      vectors and fixes every e_j off the support.
  """
  if not isinstance(g, TwistGenerator):
    raise InvalidGenerator(f"expected a twist generator, got {g!r}")
  gamma = support_vector(g, dim).bits
  return Mod2Matrix(np.eye(gamma.size, dtype=np.uint8) ^ np.outer(gamma, gamma).astype(np.uint8))


def apply_transvection(v, gamma):
  """v + (v.gamma) gamma, the action of the Dehn twist about a curve of class gamma."""
  if gamma.weight < 2 or gamma.weight % 2:
    raise InvalidGenerator(f"twist class needs even weight >= 2, got weight {gamma.weight}")
  if v.dim != gamma.dim:
    raise DimensionMismatch(f"vector dim {v.dim} vs twist class dim {gamma.dim}")
  if inner_product(v, gamma):
    return v + gamma
  return v


def embed(M, dim, offset=0):
  """Block-embed M into F2^dim at coordinates offset+1..offset+M.dim, identity elsewhere."""
  dim = _check_dim(dim)
  if offset < 0 or offset + M.dim > dim:
    raise DimensionMismatch(f"cannot embed dim {M.dim} at offset {offset} into dim {dim}")
  bits = np.eye(dim, dtype=np.uint8)
  bits[offset:offset + M.dim, offset:offset + M.dim] = M.entries
  return Mod2Matrix(bits)

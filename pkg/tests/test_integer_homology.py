import numpy as np
import pytest

from conftest import as_rows, random_slide_word
from surface_homology.errors import (
  BadBoundaryColumn,
  InconsistentSinglePuncture,
  MoveIndexError,
  NonAutomorphism,
  NonUnimodular,
  NonUnimodularQuotient,
  RelationNotPreserved,
  RowSumViolation,
  ShapeMismatch,
  TwistHasNoIntegerMatrix,
)
from surface_homology.integer_homology import (
  Level,
  QuotientAutomorphismInput,
  SurfaceSignature,
  alpha_block,
  determinant,
  equal_mod2_relation,
  equal_mod_relation,
  generator_matrix,
  int_identity,
  lift_quotient,
  pairing_gram,
  reduce_mod2,
  reduce_quotient,
  validate_closed,
  validate_punctured,
  word_product,
)
from surface_homology.mod2_core import Mod2Matrix
from surface_homology.move_classes import BoundarySlide, CrosscapSlide, DehnTwist, PuncturePerm


def test_validate_closed_examples():
  assert validate_closed(as_rows(np.eye(3, dtype=int)), 3).signature == SurfaceSignature(3, 0)
  validate_closed([[1, 0], [2, -1]], 2)
  with pytest.raises(RowSumViolation) as err:
    validate_closed([[1, 1], [0, 1]], 2)
  assert err.value.code == "RowSumViolation"
  assert err.value.details["rows"] == [1]
  with pytest.raises(NonUnimodular):
    validate_closed([[2, -1], [0, 1]], 2)
  with pytest.raises(ShapeMismatch):
    validate_closed([[1, 0], [2, -1]], 3)


def test_validate_punctured_examples():
  identity = validate_punctured(as_rows(np.eye(3, dtype=int)), 1, 2)
  assert identity.sigma == (1, 2) and identity.eps == (1, 1) and identity.relation_sign == 1

  h11 = validate_punctured([[1, 0], [-1, -1]], 1, 1)
  assert h11.eps == (-1,)
  assert list(h11.matrix @ SurfaceSignature(1, 1).relation_vector) == [2, -1]

  with pytest.raises(BadBoundaryColumn):
    validate_punctured([[1, 1, 0], [0, 0, 0], [0, 0, 1]], 1, 2)
  with pytest.raises(BadBoundaryColumn):
    validate_punctured([[1, 0, 0], [0, 1, 1], [0, 0, 0]], 1, 2)


def test_validate_punctured_relation_checks():
  with pytest.raises(InconsistentSinglePuncture):
    validate_punctured([[1, 0], [1, 1]], 1, 1)
  with pytest.raises(RelationNotPreserved):
    validate_punctured([[1, 0, 0], [1, 1, 0], [0, 0, 1]], 1, 2)
  with pytest.raises(NonAutomorphism):
    validate_punctured([[3, -2, 0], [1, 0, 0], [0, 0, 1]], 2, 1)


def test_negated_relation_is_accepted():
  A = validate_punctured([[-1, 0], [1, 1]], 1, 1)
  assert A.relation_sign == -1


def test_determinant(rng):
  assert determinant([[2, -1], [0, 1]]) == 2
  assert determinant([[0, 1], [1, 0]]) == -1
  assert determinant(np.zeros((0, 0), dtype=object)) == 1
  for _ in range(50):
    M = rng.integers(-5, 6, size=(4, 4))
    assert determinant(M) == round(np.linalg.det(M.astype(float)))


def test_determinant_is_exact_on_large_entries():
  big = 3 ** 80
  assert determinant([[big + 1, big], [big, big - 1]]) == -1


def test_determinant_of_slide_words(rng):
  for _ in range(20):
    n = int(rng.integers(2, 7))
    M = word_product(random_slide_word(rng, n, 40), SurfaceSignature(n))
    det = determinant(M)
    assert type(det) is int
    assert det in (1, -1)


def test_generator_matrices():
  closed3 = SurfaceSignature(3)
  assert as_rows(generator_matrix(CrosscapSlide(1, 2), closed3)) == [[1, 0, 0], [2, -1, 0], [0, 0, 1]]
  punctured = SurfaceSignature(1, 2)
  h = generator_matrix(BoundarySlide(1, 1), punctured)
  assert as_rows(h) == [[1, 0, 0], [-1, -1, 0], [0, 0, 1]]
  assert list(h @ punctured.relation_vector) == [2, -1, -1]
  P = generator_matrix(PuncturePerm((2, 1)), punctured)
  assert as_rows(P) == [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
  with pytest.raises(TwistHasNoIntegerMatrix):
    generator_matrix(DehnTwist((1, 2)), SurfaceSignature(2))
  with pytest.raises(MoveIndexError):
    generator_matrix(BoundarySlide(1, 1), SurfaceSignature(2))
  with pytest.raises(MoveIndexError):
    generator_matrix(CrosscapSlide(1, 4), closed3)


@pytest.mark.parametrize("n", range(2, 11))
def test_crosscap_slides_are_involutions(n):
  sig = SurfaceSignature(n)
  for i in range(1, n + 1):
    for j in range(1, n + 1):
      if i != j:
        E = generator_matrix(CrosscapSlide(i, j), sig)
        assert as_rows(E @ E) == as_rows(int_identity(n))


def test_word_product_examples():
  sig = SurfaceSignature(3)
  assert as_rows(word_product([], sig)) == as_rows(int_identity(3))
  product = word_product([CrosscapSlide(1, 2), CrosscapSlide(2, 3)], sig, Level.INTEGER)
  assert as_rows(product) == [[1, 0, 0], [2, -1, 0], [0, 2, -1]]
  swap = word_product([DehnTwist((1, 2))], SurfaceSignature(2), "mod2")
  assert swap == Mod2Matrix([[0, 1], [1, 0]])


def test_crosscap_slides_vanish_mod_2(rng):
  for _ in range(100):
    n = int(rng.integers(2, 9))
    word = random_slide_word(rng, n, int(rng.integers(0, 30)))
    assert word_product(word, SurfaceSignature(n), Level.MOD2).is_identity
    assert reduce_mod2(validate_closed(word_product(word, SurfaceSignature(n)), n)).matrix.is_identity


def test_reduce_mod2_examples():
  assert reduce_mod2(validate_closed([[1, 0], [2, -1]], 2)).matrix.is_identity
  assert reduce_mod2(validate_closed([[0, 1], [1, 0]], 2)).matrix == Mod2Matrix([[0, 1], [1, 0]])
  image = reduce_mod2(validate_punctured([[1, 0], [-1, -1]], 1, 1))
  assert image.matrix == Mod2Matrix([[1, 0], [1, 1]])
  assert image.gram == pairing_gram(SurfaceSignature(1, 1))
  assert image.preserves_pairing()


def test_pairing_gram():
  assert pairing_gram(SurfaceSignature(2, 1)) == Mod2Matrix([[1, 0, 0], [0, 1, 0], [0, 0, 0]])


def test_lift_quotient_examples():
  assert as_rows(lift_quotient(QuotientAutomorphismInput(3, (((1, 0), 0), ((0, 1), 0)))).matrix) == as_rows(int_identity(3))
  swap = lift_quotient(QuotientAutomorphismInput(2, (((-1,), 1),)))
  assert as_rows(swap.matrix) == [[0, 1], [1, 0]]
  with pytest.raises(NonUnimodularQuotient):
    lift_quotient(QuotientAutomorphismInput(2, (((0,), 0),)))


def _random_unimodular(rng, k):
  M = int_identity(k)
  for _ in range(3 * k if k >= 2 else 0):
    a, b = rng.choice(k, size=2, replace=False)
    M[:, a] = M[:, a] + int(rng.integers(-2, 3)) * M[:, b]
  if rng.integers(2):
    M[:, 0] = -M[:, 0]
  return M


def test_lift_round_trip(rng):
  for _ in range(100):
    n = int(rng.integers(2, 9))
    block = _random_unimodular(rng, n - 1)
    images = tuple(
      (tuple(int(x) for x in block[:, j]), int(rng.integers(2)))
      for j in range(n - 1)
    )
    q = QuotientAutomorphismInput(n, images)
    A = lift_quotient(q)
    assert all(int(s) == 1 for s in A.matrix.sum(axis=1))
    assert determinant(A.matrix) in (1, -1)
    assert reduce_quotient(A) == q


def test_equal_mod_relation():
  sig = SurfaceSignature(2, 1)
  A = int_identity(3)
  r = sig.relation_vector
  B = int_identity(3)
  B[:, 1] = B[:, 1] + r
  assert equal_mod_relation(A, A, sig)
  assert equal_mod_relation(A, B, sig)
  C = int_identity(3)
  C[0, 2] = 1
  assert not equal_mod_relation(A, C, sig)
  assert not equal_mod_relation(A, B, SurfaceSignature(3))


def test_equal_mod2_relation():
  sig = SurfaceSignature(1, 1)
  # r mod 2 is (0, 1): beta_1 may be added to any column
  assert equal_mod2_relation(Mod2Matrix([[1, 0], [1, 1]]), Mod2Matrix.identity(2), sig)
  assert not equal_mod2_relation(Mod2Matrix([[0, 1], [1, 0]]), Mod2Matrix.identity(2), SurfaceSignature(2))


def test_alpha_block():
  A = validate_punctured([[1, 0, 0], [2, -1, 0], [0, 0, 1]], 2, 1)
  assert as_rows(alpha_block(A)) == [[1, 0], [2, -1]]

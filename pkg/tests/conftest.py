import numpy as np
import pytest

from surface_homology.move_classes import BoundarySlide, CrosscapSlide, PuncturePerm

SEED = 1121


@pytest.fixture
def rng():
  return np.random.default_rng(SEED)


def random_slide_word(rng, n, length):
  word = []
  for _ in range(length):
    i, j = rng.choice(n, size=2, replace=False)
    word.append(CrosscapSlide(int(i) + 1, int(j) + 1))
  return word


def random_boundary_word(rng, n, m, length):
  word = []
  for _ in range(length):
    if rng.integers(2):
      word.append(BoundarySlide(int(rng.integers(1, n + 1)), int(rng.integers(1, m + 1))))
    else:
      word.append(PuncturePerm(tuple(int(p) + 1 for p in rng.permutation(m))))
  return word


def as_rows(matrix):
  return [[int(x) for x in row] for row in np.asarray(matrix, dtype=object).tolist()]

import numpy as np
import pytest

from conftest import as_rows, random_slide_word
from surface_homology.errors import InvalidGenerator, NotInKernel
from surface_homology.integer_homology import (
  SurfaceSignature,
  generator_matrix,
  int_identity,
  validate_closed,
  word_product,
)
from surface_homology.kernel_factor import SlideWord, descent_frame, factor_kernel
from surface_homology.move_classes import BoundarySlide, CrosscapSlide


@pytest.mark.parametrize("n", range(1, 11))
def test_identity_factors_to_empty_word(n):
  assert len(factor_kernel(validate_closed(int_identity(n), n))) == 0


def test_single_slide():
  sig = SurfaceSignature(2)
  A = validate_closed(generator_matrix(CrosscapSlide(1, 2), sig), 2)
  word = factor_kernel(A)
  assert as_rows(word_product(word.moves, sig)) == [[1, 0], [2, -1]]


def test_two_slide_product():
  A = validate_closed([[1, 0, 0], [2, -1, 0], [0, 2, -1]], 3)
  word = factor_kernel(A)
  assert as_rows(word_product(word.moves, SurfaceSignature(3))) == [[1, 0, 0], [2, -1, 0], [0, 2, -1]]


def test_rejects_matrices_outside_the_kernel():
  with pytest.raises(NotInKernel):
    factor_kernel(validate_closed([[0, 1], [1, 0]], 2))
  with pytest.raises(NotInKernel):
    factor_kernel([[1, 0], [2, -1]])


def _check_descent(trace):
  for step in trace:
    if step.phase == "sign":
      assert step.after == step.before
    else:
      assert step.after < step.before


def test_random_words_round_trip(rng):
  for _ in range(200):
    n = int(rng.integers(2, 11))
    sig = SurfaceSignature(n)
    word = random_slide_word(rng, n, int(rng.integers(0, 41)))
    target = word_product(word, sig)
    trace = []
    certificate = factor_kernel(validate_closed(target, n), trace)
    assert as_rows(word_product(certificate.moves, sig)) == as_rows(target)
    _check_descent(trace)
    assert len(trace) == len(certificate)


def test_descent_frame(rng):
  n = 4
  target = word_product(random_slide_word(rng, n, 12), SurfaceSignature(n))
  trace = []
  factor_kernel(validate_closed(target, n), trace)
  frame = descent_frame(trace)
  assert list(frame.columns) == ["step", "phase", "row", "move", "before", "after", "delta"]
  assert len(frame) == len(trace)
  reducing = frame[frame["phase"] != "sign"]
  assert (reducing["delta"] < 0).all()


def test_slide_word():
  sig = SurfaceSignature(3)
  word = SlideWord(sig, (CrosscapSlide(1, 2), CrosscapSlide(2, 3)))
  assert str(word) == "e(1,2) e(2,3)"
  assert word.inverse().moves == (CrosscapSlide(2, 3), CrosscapSlide(1, 2))
  product = word_product(word.moves, sig) @ word_product(word.inverse().moves, sig)
  assert as_rows(product) == as_rows(int_identity(3))
  with pytest.raises(InvalidGenerator):
    SlideWord(SurfaceSignature(1, 1), (BoundarySlide(1, 1),))


def test_phases_run_in_order(rng):
  n = 6
  target = word_product(random_slide_word(rng, n, 30), SurfaceSignature(n))
  trace = []
  factor_kernel(validate_closed(target, n), trace)
  stages = {"row1": 0, "sign": 1, "B": 1, "C": 2}
  order = [stages[step.phase] for step in trace]
  assert order == sorted(order)
  right_rows = [step.row for step in trace if step.phase in ("sign", "B")]
  assert right_rows == sorted(right_rows)
  left_rows = [step.row for step in trace if step.phase == "C"]
  assert left_rows == sorted(left_rows, reverse=True)
  # clearing the left part of a row changes |b_ij| by exactly 2 per move
  assert all(step.before - step.after == 2 for step in trace if step.phase == "C")


@pytest.mark.parametrize("seed", [8, 11, 29])
def test_long_words_stay_cheap(seed):
  rng = np.random.default_rng(seed)
  n = 8
  sig = SurfaceSignature(n)
  for _ in range(3):
    target = word_product(random_slide_word(rng, n, 40), sig)
    certificate = factor_kernel(validate_closed(target, n))
    assert as_rows(word_product(certificate.moves, sig)) == as_rows(target)
    assert len(certificate) < 50_000

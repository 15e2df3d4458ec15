import numpy as np
import pytest

from conftest import as_rows
from surface_homology.errors import InstanceFormatError, RowSumViolation
from surface_homology.formats import certificate_to_json
from surface_homology.integer_homology import Level, SurfaceSignature, word_product
from surface_homology.mod2_core import Mod2Matrix
from surface_homology.mod2_factor import all_twist_generators
from surface_homology.move_classes import BoundarySlide, CrosscapSlide, DehnTwist, PuncturePerm
from surface_homology.pipeline import (
  Certificate,
  Completeness,
  Instance,
  Reason,
  decide,
  decide_closed,
  decide_punctured,
  generate_instance,
  verify_certificate,
)

NOT_ORTHOGONAL_BLOCK = [[1, 0, 0], [1, 1, -1], [0, 0, 1]]


def _closed(rows):
  return Instance(SurfaceSignature(len(rows)), rows)


def test_closed_swap_is_mod2_only():
  inst = _closed([[0, 1], [1, 0]])
  decision = decide_closed(inst)
  assert decision.realizable
  assert decision.completeness is Completeness.MOD2_ONLY
  assert decision.certificate.twist_word == (DehnTwist((1, 2)),)
  assert decision.certificate.level is Level.MOD2
  assert verify_certificate(inst, decision.certificate).accepted


def test_closed_kernel_is_full_integer():
  inst = _closed([[1, 0], [2, -1]])
  decision = decide_closed(inst)
  assert decision.realizable
  assert decision.completeness is Completeness.FULL_INTEGER
  assert decision.certificate.twist_word == ()
  assert as_rows(word_product(decision.certificate.slide_word, inst.signature)) == [[1, 0], [2, -1]]
  assert verify_certificate(inst, decision.certificate).accepted


def test_closed_not_realizable():
  decision = decide_closed(_closed(NOT_ORTHOGONAL_BLOCK))
  assert not decision.realizable
  assert decision.reason is Reason.PAIRING_NOT_PRESERVED
  assert decision.certificate is None


def test_closed_invalid_input_raises():
  with pytest.raises(RowSumViolation):
    decide_closed(_closed([[1, 1], [0, 1]]))


@pytest.mark.parametrize("n, m", [(1, 1), (2, 3), (4, 2)])
def test_punctured_identity(n, m):
  inst = Instance(SurfaceSignature(n, m), as_rows(np.eye(n + m, dtype=int)))
  decision = decide_punctured(inst)
  assert decision.realizable
  assert decision.certificate.moves == ()
  assert decision.completeness is Completeness.FULL_INTEGER


def test_punctured_boundary_slide():
  inst = Instance(SurfaceSignature(1, 1), [[1, 0], [-1, -1]])
  decision = decide(inst)
  assert decision.realizable
  assert decision.certificate.slide_word == (BoundarySlide(1, 1),)
  assert decision.completeness is Completeness.FULL_INTEGER
  assert decision.certificate.meta["boundary_complexity"] == 1


def test_punctured_negated_relation():
  inst = Instance(SurfaceSignature(1, 1), [[-1, 0], [1, 1]])
  decision = decide(inst)
  assert decision.realizable
  assert decision.completeness is Completeness.FULL_INTEGER
  assert verify_certificate(inst, decision.certificate).accepted


def test_punctured_not_realizable():
  rows = [row + [0] for row in NOT_ORTHOGONAL_BLOCK] + [[0, 0, 0, 1]]
  decision = decide(Instance(SurfaceSignature(3, 1), rows))
  assert not decision.realizable
  assert decision.reason is Reason.PAIRING_NOT_PRESERVED


def test_punctured_boundary_condition():
  decision = decide(Instance(SurfaceSignature(1, 2), [[1, 1, 0], [0, 0, 0], [0, 1, 1]]))
  assert not decision.realizable
  assert decision.reason is Reason.BOUNDARY_CONDITION_VIOLATED


def test_punctured_scrambled_is_mod2_only():
  generated = generate_instance(SurfaceSignature(3, 2), 12, seed=5, scramble=True)
  decision = decide(generated.instance)
  assert decision.realizable
  if decision.completeness is Completeness.MOD2_ONLY:
    assert decision.certificate.level is Level.MOD2
  assert verify_certificate(generated.instance, decision.certificate).accepted


def test_verify_examples():
  e12 = _closed([[1, 0], [2, -1]])
  assert verify_certificate(e12, Certificate(Level.INTEGER, (), (CrosscapSlide(1, 2),))).accepted
  verdict = verify_certificate(e12, Certificate(Level.INTEGER, (), (CrosscapSlide(2, 1),)))
  assert not verdict.accepted and verdict.reason == "ProductMismatch"
  identity = _closed([[1, 0], [0, 1]])
  assert verify_certificate(identity, Certificate(Level.INTEGER)).accepted


def test_verify_is_total():
  inst = _closed([[0, 1], [1, 0]])
  assert verify_certificate(inst, Certificate("integral", (DehnTwist((1, 2)),))).reason == "LevelUnknown"
  assert verify_certificate(inst, Certificate(Level.INTEGER, (DehnTwist((1, 2)),))).reason == "TwistAtIntegerLevel"
  assert verify_certificate(inst, Certificate(Level.MOD2, (DehnTwist((1, 3)),))).reason == "MoveOutOfRange"
  assert verify_certificate(inst, Certificate(Level.MOD2, (), ("e(1,2)",))).reason == "MalformedMove"
  assert verify_certificate(inst, Certificate(Level.MOD2, (), (PuncturePerm((1,)),))).reason == "MoveOutOfRange"
  assert verify_certificate(inst, Certificate(Level.MOD2, (DehnTwist((1, 2)),))).accepted


def test_generation_is_deterministic():
  sig = SurfaceSignature(3, 2)
  first = generate_instance(sig, 15, seed=42)
  second = generate_instance(sig, 15, seed=42)
  assert as_rows(first.instance.matrix) == as_rows(second.instance.matrix)
  assert first.truth == second.truth
  assert len(first.truth) == 15


def test_generated_examples():
  sig = SurfaceSignature(3)
  assert decide_closed(generate_instance(sig, 10, seed=7).instance).realizable
  corrupted = generate_instance(sig, 10, seed=7, corrupt=True)
  assert corrupted.corruption is not None
  decision = decide_closed(corrupted.instance)
  assert not decision.realizable
  assert decision.reason is Reason.PAIRING_NOT_PRESERVED


def test_corruption_needs_three_crosscaps():
  with pytest.raises(InstanceFormatError):
    generate_instance(SurfaceSignature(2), 5, seed=1, corrupt=True)


def test_closed_decisions_have_no_crossover(rng):
  for k in range(100):
    n = int(rng.integers(3, 7))
    seed = int(rng.integers(2**31))
    scramble = bool(k % 2)
    generated = generate_instance(SurfaceSignature(n), int(rng.integers(0, 25)), seed, scramble=scramble)
    decision = decide_closed(generated.instance)
    assert decision.realizable
    assert verify_certificate(generated.instance, decision.certificate).accepted

    corrupted = generate_instance(SurfaceSignature(n), int(rng.integers(0, 25)), seed, corrupt=True, scramble=scramble)
    decision = decide_closed(corrupted.instance)
    assert not decision.realizable
    assert decision.reason is Reason.PAIRING_NOT_PRESERVED


def test_punctured_round_trip(rng):
  for _ in range(200):
    sig = SurfaceSignature(int(rng.integers(1, 7)), int(rng.integers(1, 5)))
    generated = generate_instance(sig, int(rng.integers(0, 31)), int(rng.integers(2**31)))
    decision = decide_punctured(generated.instance)
    assert decision.realizable
    assert decision.completeness is Completeness.FULL_INTEGER
    cert = decision.certificate
    assert verify_certificate(generated.instance, cert).accepted
    assert cert.meta["boundary_slides"] == sum(isinstance(m, BoundarySlide) for m in cert.slide_word)
    assert cert.meta["boundary_slides"] == cert.meta["boundary_complexity"]


def _replacement(rng, move, sig):
  """A different move of the same type fitting sig, or None if there is none."""
  if isinstance(move, CrosscapSlide):
    return CrosscapSlide(move.j, move.i)
  if isinstance(move, BoundarySlide):
    if sig.crosscaps > 1:
      return BoundarySlide(move.i % sig.crosscaps + 1, move.j)
    if sig.punctures > 1:
      return BoundarySlide(move.i, move.j % sig.punctures + 1)
    return None
  if isinstance(move, PuncturePerm):
    if len(move.perm) < 2:
      return None
    perm = list(move.perm)
    perm[0], perm[1] = perm[1], perm[0]
    return PuncturePerm(tuple(perm))
  others = [g for g in all_twist_generators(sig.crosscaps) if g != move]
  return others[int(rng.integers(len(others)))] if others else None


def _mutate(rng, cert, sig):
  moves = list(cert.moves)
  k = int(rng.integers(len(moves)))
  original = moves[k]
  replacement = _replacement(rng, original, sig) if rng.integers(2) else None
  if replacement is None:
    del moves[k]
  else:
    moves[k] = replacement
  twists = tuple(m for m in moves if isinstance(m, DehnTwist))
  slides = tuple(m for m in moves if not isinstance(m, DehnTwist))
  return original.kind, Certificate(cert.level, twists, slides)


def test_single_move_mutations_are_rejected(rng):
  mutated_kinds = set()
  rejected = 0
  while rejected < 120:
    punctures = int(rng.integers(0, 4))
    sig = SurfaceSignature(int(rng.integers(2, 6)), punctures)
    # scrambled closed instances give mod2-only certificates made of twists
    scramble = punctures == 0 and bool(rng.integers(2))
    generated = generate_instance(sig, int(rng.integers(3, 20)), int(rng.integers(2**31)), scramble=scramble)
    cert = decide(generated.instance).certificate
    # with one puncture a boundary slide is trivial modulo the mod-2 relation
    if not cert.moves or (cert.level is Level.MOD2 and punctures):
      continue
    kind, mutated = _mutate(rng, cert, sig)
    assert not verify_certificate(generated.instance, mutated).accepted
    mutated_kinds.add(kind)
    rejected += 1
  assert mutated_kinds == {"crosscap_slide", "dehn_twist", "boundary_slide", "puncture_perm"}


def test_verify_rejects_missing_word():
  inst = _closed([[1, 0], [2, -1]])
  verdict = verify_certificate(inst, Certificate(Level.INTEGER, None, (CrosscapSlide(1, 2),)))
  assert not verdict.accepted
  assert verdict.reason == "MalformedMove"


def test_decisions_are_byte_identical():
  generated = generate_instance(SurfaceSignature(4, 2), 20, seed=3)
  first = certificate_to_json(decide(generated.instance).certificate)
  second = certificate_to_json(decide(generated.instance).certificate)
  assert first == second


def test_mod2_certificate_replays_mod2_image():
  generated = generate_instance(SurfaceSignature(4), 10, seed=11, scramble=True)
  cert = decide(generated.instance).certificate
  product = word_product(cert.moves, generated.instance.signature, Level.MOD2)
  assert product == Mod2Matrix(generated.instance.matrix % 2)

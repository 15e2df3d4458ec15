"""
Command-line interface.

  crosscap check <instance.json> [--trace]
  crosscap factor <instance.json> -o <cert.json> [--trace]
  crosscap verify <instance.json> <cert.json>
  crosscap generate --crosscaps N [--punctures M] --length L [--seed S]
                    [--corrupt] [--scramble] [--truth <truth.json>] -o <instance.json>
  crosscap enumerate --dim N [--progress]

Exit codes: 0 realizable / accepted / done, 1 not realizable / rejected,
2 invalid input.
"""
import argparse
import logging
import sys

from surface_homology import config
from surface_homology.errors import HomologyError
from surface_homology.formats import (
  certificate_to_json,
  instance_to_json,
  read_certificate,
  read_instance,
  write_text,
)
from surface_homology.integer_homology import Level, SurfaceSignature
from surface_homology.kernel_factor import descent_frame
from surface_homology.mod2_factor import enumerate_orthogonal, orthogonal_group_order, word_length_histogram
from surface_homology.pipeline import Certificate, decide, generate_instance, verify_certificate

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NO = 1
EXIT_INVALID = 2


def _configure_logging(verbosity):
  if verbosity >= 2:
    level = logging.DEBUG
  elif verbosity == 1:
    level = logging.INFO
  else:
    level = config.LOG_LEVEL
  logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s %(message)s", force=True)


def _print_trace(trace):
  if trace:
    print(descent_frame(trace).to_string(index=False))


def _cmd_check(args):
  inst = read_instance(args.instance)
  trace = [] if args.trace else None
  decision = decide(inst, trace)
  if trace is not None:
    _print_trace(trace)
  if not decision.realizable:
    print(f"not realizable: {decision.reason.value}")
    return EXIT_NO
  print(f"realizable: {decision.completeness.value} certificate, {len(decision.certificate.moves)} moves")
  return EXIT_OK


def _cmd_factor(args):
  inst = read_instance(args.instance)
  trace = [] if args.trace else None
  decision = decide(inst, trace)
  if trace is not None:
    _print_trace(trace)
  if not decision.realizable:
    print(f"not realizable: {decision.reason.value}")
    return EXIT_NO
  write_text(args.output, certificate_to_json(decision.certificate))
  print(f"wrote {decision.completeness.value} certificate with {len(decision.certificate.moves)} moves to {args.output}")
  return EXIT_OK


def _cmd_verify(args):
  inst = read_instance(args.instance)
  try:
    cert = read_certificate(args.certificate)
  except HomologyError as err:
    print(f"reject: {err.code}")
    _logger.info("[verify] certificate unreadable: %s", err)
    return EXIT_NO
  verdict = verify_certificate(inst, cert)
  if verdict.accepted:
    print("accept")
    return EXIT_OK
  print(f"reject: {verdict.reason}")
  return EXIT_NO


def _cmd_generate(args):
  signature = SurfaceSignature(args.crosscaps, args.punctures)
  generated = generate_instance(
    signature, args.length, args.seed, corrupt=args.corrupt, scramble=args.scramble
  )
  write_text(args.output, instance_to_json(generated.instance))
  if args.truth:
    meta = {"seed": args.seed, "corrupted": generated.corruption is not None}
    if generated.crosscap_perm is not None:
      meta["crosscap_perm"] = list(generated.crosscap_perm)
    if generated.corruption is not None:
      meta["corruption"] = list(generated.corruption)
    write_text(args.truth, certificate_to_json(Certificate(Level.INTEGER, (), generated.truth, meta)))
  print(f"wrote {signature} instance from a {len(generated.truth)}-move word to {args.output}")
  return EXIT_OK


def _cmd_enumerate(args):
  enumeration = enumerate_orthogonal(args.dim, progress=args.progress)
  print(f"dim={args.dim} order={len(enumeration)} expected={orthogonal_group_order(args.dim)}")
  print(word_length_histogram(enumeration).to_string())
  return EXIT_OK


def build_parser():
  parser = argparse.ArgumentParser(
    prog="crosscap",
    description="Decide and certify whether homology automorphisms of non-orientable surfaces come from homeomorphisms.",
  )
  parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logs on stderr")
  sub = parser.add_subparsers(dest="command", required=True)

  check = sub.add_parser("check", help="decide realizability")
  check.add_argument("instance")
  check.add_argument("--trace", action="store_true", help="print the complexity descent per move")
  check.set_defaults(handler=_cmd_check)

  factor = sub.add_parser("factor", help="decide and write a certificate")
  factor.add_argument("instance")
  factor.add_argument("-o", "--output", required=True)
  factor.add_argument("--trace", action="store_true", help="print the complexity descent per move")
  factor.set_defaults(handler=_cmd_factor)

  verify = sub.add_parser("verify", help="replay a certificate against an instance")
  verify.add_argument("instance")
  verify.add_argument("certificate")
  verify.set_defaults(handler=_cmd_verify)

  generate = sub.add_parser("generate", help="sample a random instance")
  generate.add_argument("--crosscaps", type=int, required=True)
  generate.add_argument("--punctures", type=int, default=0)
  generate.add_argument("--length", type=int, required=True)
  generate.add_argument("--seed", type=int, default=config.BASE_SEED)
  generate.add_argument("--corrupt", action="store_true", help="break the mod-2 pairing")
  generate.add_argument("--scramble", action="store_true", help="permute the crosscaps afterwards")
  generate.add_argument("--truth", help="also write the hidden word in certificate format")
  generate.add_argument("-o", "--output", required=True)
  generate.set_defaults(handler=_cmd_generate)

  enum = sub.add_parser("enumerate", help="close the twist generators over F2^dim")
  enum.add_argument("--dim", type=int, required=True)
  enum.add_argument("--progress", action="store_true")
  enum.set_defaults(handler=_cmd_enumerate)
  return parser


def main(argv=None):
  parser = build_parser()
  args = parser.parse_args(argv)
  _configure_logging(args.verbose)
  try:
    return args.handler(args)
  except HomologyError as err:
    print(f"invalid input: {err}", file=sys.stderr)
    return EXIT_INVALID


if __name__ == "__main__":
  raise SystemExit(main())

"""
Package-wide configuration.

Values are read once at import; environment variables override the defaults.
"""
import logging
import os

from surface_homology.errors import ConfigError


def _env_int(name, default):
  raw = os.environ.get(name)
  if raw is None or raw.strip() == "":
    return default
  try:
    return int(raw)
  except ValueError:
    raise ConfigError(f"{name} must be an integer, got {raw!r}") from None


def _env_flag(name, default):
  raw = os.environ.get(name)
  if raw is None or raw.strip() == "":
    return default
  lowered = raw.strip().lower()
  if lowered in ("1", "true", "yes", "on"):
    return True
  if lowered in ("0", "false", "no", "off"):
    return False
  raise ConfigError(f"{name} must be a boolean flag, got {raw!r}")


def _env_log_level(name, default):
  raw = os.environ.get(name, default).strip().upper()
  level = logging.getLevelName(raw)
  if not isinstance(level, int):
    raise ConfigError(f"{name} must be a logging level name, got {raw!r}")
  return level


### _______________ Config _______________ ###
"""
- MAX_ENUM_DIM: largest dimension enumerate_orthogonal will close over.
- MAX_FILTER_DIM: largest dimension for the exhaustive 2^(dim^2) filter.
- BASE_SEED: default seed for instance generation.
- SAFE_INT_BITS: integers at or beyond 2**SAFE_INT_BITS serialize as strings.
- CHECK_INVARIANTS: per-move descent and stability assertions in factorizers.
- LOG_LEVEL: root level used by the CLI when no -v flag is given.
"""

MAX_ENUM_DIM = _env_int("CROSSCAP_MAX_ENUM_DIM", 6)
MAX_FILTER_DIM = 4
BASE_SEED = 1121
SAFE_INT_BITS = 53
CHECK_INVARIANTS = _env_flag("CROSSCAP_CHECK_INVARIANTS", True)
LOG_LEVEL = _env_log_level("CROSSCAP_LOG_LEVEL", "WARNING")

if MAX_ENUM_DIM < 1:
  raise ConfigError("CROSSCAP_MAX_ENUM_DIM must be at least 1.")

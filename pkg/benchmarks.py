"""
Module for testing the time and memory performance of the factorizers and decision procedures.

Ouptut: A CSV file and a parquet file with the results of the tests.
"""
import time
import os
import uuid
from datetime import datetime, timezone
import numpy as np
import pandas as pd
from collections import defaultdict
from tqdm import tqdm
import tracemalloc
import gc

from surface_homology.integer_homology import SurfaceSignature, validate_closed
from surface_homology.kernel_factor import factor_kernel
from surface_homology.pipeline import decide, generate_instance, verify_certificate

# Optional RSS (process) memory capture
try:
  import psutil
  _PROC = psutil.Process()
except Exception:
  psutil = None
  _PROC = None

def _rss_bytes():
  if _PROC is None:
    return None
  try:
    return _PROC.memory_info().rss
  except Exception:
    return None


### _______________ Config _______________ ###
"""
Configuration for the benchmarks.
- BASE_SEED: Seed for random number generation.
- RUNS: Number of runs per (operation, crosscap count).
- CROSSCAP_COUNTS: Surface sizes n to test.
- PUNCTURES: Puncture count m for the punctured operations.
- WORD_LENGTH: Length of the hidden generator word behind every instance.
- operations: Dictionary of operations to test; each takes a GeneratedInstance
  and returns the number of moves it produced.
"""

BASE_SEED = 1121
RUNS = 20
CROSSCAP_COUNTS = [2, 4, 6, 8, 10]
PUNCTURES = 2
WORD_LENGTH = 30


def _kernel_moves(generated):
  A = validate_closed(generated.instance.matrix, generated.instance.signature.crosscaps)
  return len(factor_kernel(A))


def _decide_moves(generated):
  return len(decide(generated.instance).certificate.moves)


def _verify_moves(generated):
  cert = decide(generated.instance).certificate
  if not verify_certificate(generated.instance, cert):
    raise RuntimeError("benchmark certificate failed to verify")
  return len(cert.moves)


operations = {
    'factor_kernel':   (_kernel_moves, {"punctured": False, "scramble": False}),
    'decide_closed':   (_decide_moves, {"punctured": False, "scramble": True}),
    'decide_punctured': (_decide_moves, {"punctured": True, "scramble": False}),
    'verify_punctured': (_verify_moves, {"punctured": True, "scramble": False}),
}

# Total steps for progress bar
TOTAL_STEPS = RUNS * len(CROSSCAP_COUNTS) * len(operations)

run_id = f"{datetime.now(timezone.utc).strftime('%Y-%m-%dT%H%M%SZ')}-{uuid.uuid4().hex[:6]}"


### _______________ RNG Helpers _______________ ###
"""
Seeded for reproducibility: one child seed per crosscap count, one instance seed per draw.
"""

def make_rngs_for_sizes(seed, sizes):
  master = np.random.SeedSequence(seed)
  size_seqs = master.spawn(len(sizes))
  return {
      size: np.random.default_rng(seq)
      for size, seq in zip(sizes, size_seqs)
  }


def max_entry_bits(matrix):
  return max(abs(int(x)).bit_length() for x in np.asarray(matrix, dtype=object).flat)


### _______________ Result Storage _______________ ###

results = {op: {n: defaultdict(list) for n in CROSSCAP_COUNTS} for op in operations}


### _______________ Error Handling _______________ ###
if len(operations) == 0:
  raise ValueError("No operations provided for testing.")
if len(CROSSCAP_COUNTS) == 0:
  raise ValueError("No crosscap counts provided for testing.")
if RUNS <= 0:
  raise ValueError("Number of runs must be greater than 0.")
if any(n < 2 for n in CROSSCAP_COUNTS):
  raise ValueError("Crosscap slides need at least 2 crosscaps.")
if WORD_LENGTH < 0 or PUNCTURES < 1:
  raise ValueError("WORD_LENGTH must be non-negative and PUNCTURES positive.")

### _______________ Test Execution _______________ ###

def measure_time_and_memory(fn, *args, **kwargs):
  """
  Runs fn(*args, **kwargs) and returns (metrics, return_value).

  metrics:
    - time_ns:      int
    - mem_peak_b:   int           (tracemalloc peak during the call)
    - rss_delta_b:  Optional[int] (rss_after - rss_before)
  """

  rss_before = _rss_bytes()
  tracemalloc.reset_peak()

  start = time.perf_counter_ns()
  ret = fn(*args, **kwargs)
  end = time.perf_counter_ns()

  _, peak = tracemalloc.get_traced_memory()

  rss_after = _rss_bytes()
  rss_delta = None
  if rss_before is not None and rss_after is not None:
    rss_delta = int(rss_after - rss_before)

  metrics = {
    "time_ns": int(end - start),
    "mem_peak_b": int(peak),
    "rss_delta_b": rss_delta,
  }
  return metrics, ret


def runTests(r, pbar):
  """
  Runs every operation once per crosscap count.

  Args:
      r (int): run number
      pbar (class: tqdm): progress bar object for tracking progress
  """
  gc.collect()
  rngs_by_size = make_rngs_for_sizes(BASE_SEED + r, CROSSCAP_COUNTS)

  for n in CROSSCAP_COUNTS:
    rng_size = rngs_by_size[n]
    for operation, (func, setup) in operations.items():
      signature = SurfaceSignature(n, PUNCTURES if setup["punctured"] else 0)
      seed = int(rng_size.integers(0, 2**32))
      generated = generate_instance(signature, WORD_LENGTH, seed, scramble=setup["scramble"])

      metrics, moves = measure_time_and_memory(func, generated)
      results[operation][n]["records"].append({
        "run_index": r,
        "instance_seed": seed,
        "time_ns": metrics["time_ns"],
        "mem_peak_b": metrics["mem_peak_b"],
        "rss_delta_b": metrics["rss_delta_b"],
        "moves": moves,
        "entry_bits": max_entry_bits(generated.instance.matrix),
      })
      pbar.update(1)


def run_benchmarks():
  tracemalloc.start()
  progress_bar = tqdm(total=TOTAL_STEPS, ncols=100)
  try:
    for r in range(1, RUNS + 1):
      runTests(r, progress_bar)
  finally:
    progress_bar.close()
    tracemalloc.stop()


def results_to_df(results, run_id, seed):
  rows = []
  ts = datetime.now(timezone.utc).isoformat()

  for op_name, by_size in results.items():
    for n, store in by_size.items():
      for trial_idx, rec in enumerate(store["records"]):
          ns = int(rec["time_ns"])
          rows.append({
              "run_id": run_id,
              "timestamp_utc": ts,
              "seed": seed,
              "run_index": int(rec["run_index"]),
              "instance_seed": int(rec["instance_seed"]),
              "operation": op_name,
              "crosscaps": int(n),
              "word_length": WORD_LENGTH,
              "trial": trial_idx,
            ## --- Time Fields --- ##
              "time_ns": ns,
              "time_s": ns / 1e9,
            ## --- Memory Fields --- ##
              "mem_peak_b": int(rec.get("mem_peak_b", 0)),
              "rss_delta_b": rec.get("rss_delta_b"),
            ## --- Output Fields --- ##
              "moves": int(rec["moves"]),
              "entry_bits": int(rec["entry_bits"]),
          })
  return pd.DataFrame(rows)


### ------------ Results Data Processing/Storage ----------- ###

def main():
  run_benchmarks()
  os.makedirs("benchmark_results", exist_ok=True)
  final_df = results_to_df(results, run_id, BASE_SEED)

  final_df["operation"] = final_df["operation"].astype("category")
  final_df["crosscaps"] = final_df["crosscaps"].astype("int32")
  final_df["trial"] = final_df["trial"].astype("int32")
  final_df["time_s"] = final_df["time_s"].astype("float32")
  final_df["time_ns"] = final_df["time_ns"].astype("int64")
  final_df["mem_peak_b"] = final_df["mem_peak_b"].astype("int64")
  final_df["rss_delta_b"] = final_df["rss_delta_b"].astype("Int64")
  final_df["moves"] = final_df["moves"].astype("int64")

  try:
    final_df.to_parquet(f"benchmark_results/{run_id}.parquet", index=False)
  except Exception as e:
    print("Parquet save failed (install pyarrow). Error:", e)

  final_df.to_csv(f"benchmark_results/{run_id}.csv", index=False)


if __name__ == "__main__":
  main()

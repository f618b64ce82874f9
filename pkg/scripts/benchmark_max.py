"""
Times max_f with the constant stack on triangulated k by k grids and reports how the wall time
grows each time the simplex count doubles.

Run from the repository root:

    python3 -m scripts.benchmark_max [--sizes 32 64 128 256] [--repeats 3]

Exits with 1 if any growth factor exceeds the failure threshold.
"""

import argparse
import logging
import math
import sys
import time

import pandas

from morse_sequences.generators import triangulated_grid
from morse_sequences.schedulers import max_f
from morse_sequences.stacks import constant_stack

EXPECTED_FACTOR = 2.6
FAIL_FACTOR = 4.0


def _time_grid(k: int, repeats: int) -> tuple[int, float]:
    K = triangulated_grid(k)
    F = constant_stack(K)
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        max_f(K, F)
        best = min(best, time.perf_counter() - start)
    return len(K), best


def run(sizes: list[int], repeats: int) -> pandas.DataFrame:
    rows = []
    for k in sizes:
        n, seconds = _time_grid(k, repeats)
        logging.info({"grid": k, "simplexes": n, "seconds": seconds})
        rows.append({"k": k, "simplexes": n, "seconds": seconds})
    df = pandas.DataFrame(rows)
    # time ratio normalized to a single doubling of the simplex count
    doublings = (df["simplexes"] / df["simplexes"].shift()).apply(math.log2)
    df["factor_per_doubling"] = (df["seconds"] / df["seconds"].shift()) ** (1 / doublings)
    return df


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument('--sizes', type=int, nargs='+', default=[32, 64, 128, 256])
    parser.add_argument('--repeats', type=int, default=3)
    args = parser.parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.INFO)

    df = run(args.sizes, args.repeats)
    print(df.to_string(index=False, float_format=lambda x: f"{x:.3f}"))
    worst = df["factor_per_doubling"].max()
    if worst > EXPECTED_FACTOR:
        logging.warning({"message": "growth above the expected near-linear factor",
                         "factor": worst, "expected": EXPECTED_FACTOR})
    if worst > FAIL_FACTOR:
        logging.error({"message": "growth factor too large", "factor": worst,
                       "limit": FAIL_FACTOR})
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

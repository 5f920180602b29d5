"""
FD Discovery Benchmark
======================
Times discover_minimal_fds on a wide random table (default 10,000 tuples x
12 attributes) and fails when it exceeds the time budget.

Usage:
    python benchmark_discovery.py                       # 10000 x 12, budget 30s
    python benchmark_discovery.py --tuples 50000 --attributes 10
    python benchmark_discovery.py --workers 4           # threaded partition products
    python benchmark_discovery.py --budget 60
"""

import sys
import time
import argparse
import logging

import numpy as np

from depfca.config import setup_logging
from depfca.fd_discovery import discover_minimal_fds, fd_cover_check
from depfca.relation import Relation

from generate_random_tables import random_frame


# ========================== CONFIGURATION ==========================

DEFAULT_TUPLES = 10_000
DEFAULT_ATTRIBUTES = 12
DEFAULT_ALPHABET = 10
DEFAULT_BUDGET_SECONDS = 30.0
DEFAULT_SEED = 42


# ========================== BENCHMARK ==========================

def run_benchmark(n_tuples, n_attributes, alphabet, workers, seed):
    """
    Returns:
        (number of FDs found, elapsed seconds)
    """
    logger = logging.getLogger("depfca.benchmark")
    rng = np.random.default_rng(seed)
    frame = random_frame(rng, n_tuples, n_attributes, alphabet)
    rel = Relation.from_rows(list(frame.columns), frame.itertuples(index=False, name=None))
    logger.info(f"Generated {len(rel)} tuples x {rel.arity} attributes (alphabet {alphabet}, seed {seed})")

    t0 = time.time()
    fds = discover_minimal_fds(rel, workers=workers)
    elapsed = time.time() - t0

    if not fd_cover_check(rel, fds):
        raise RuntimeError("discovered FDs do not all hold")
    return len(fds), elapsed


# ========================== CLI ==========================

def main():
    parser = argparse.ArgumentParser(
        description="Benchmark levelwise FD discovery on a random table",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--tuples", "-t", type=int, default=DEFAULT_TUPLES)
    parser.add_argument("--attributes", "-a", type=int, default=DEFAULT_ATTRIBUTES)
    parser.add_argument("--alphabet", type=int, default=DEFAULT_ALPHABET)
    parser.add_argument("--workers", "-w", type=int, default=1)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--budget", type=float, default=DEFAULT_BUDGET_SECONDS,
                        help=f"Time budget in seconds (default: {DEFAULT_BUDGET_SECONDS})")
    args = parser.parse_args()

    setup_logging("INFO")
    n_fds, elapsed = run_benchmark(args.tuples, args.attributes, args.alphabet, args.workers, args.seed)

    print(f"\n[*] FD Discovery Benchmark")
    print(f"    Table: {args.tuples} tuples x {args.attributes} attributes")
    print(f"    Minimal FDs: {n_fds}")
    print(f"    Time: {elapsed:.2f}s (budget {args.budget:.0f}s)")

    if elapsed > args.budget:
        print("    [!] Over budget")
        sys.exit(1)
    print("    OK")


if __name__ == "__main__":
    main()

"""
Random Table Generator
======================
Writes random CSV relations for trying out depfca by hand and for the
discovery benchmark. Values are drawn uniformly from a small alphabet per
column, so dependencies appear by chance on narrow tables.

Usage:
    python generate_random_tables.py                          # 10 tables, 5 x 20
    python generate_random_tables.py --count 50 --attributes 4 --tuples 8
    python generate_random_tables.py --alphabet 2 --seed 7    # binary values
    python generate_random_tables.py --output ./tables
"""

import os
import sys
import argparse
import logging

import numpy as np
import pandas as pd


# ========================== CONFIGURATION ==========================

DEFAULT_OUTPUT_DIR = os.path.join("data", "random_tables")
DEFAULT_COUNT = 10
DEFAULT_ATTRIBUTES = 5
DEFAULT_TUPLES = 20
DEFAULT_ALPHABET = 3
DEFAULT_SEED = 0


# ========================== LOGGING ==========================

def setup_logging():
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s [%(levelname)s] %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )
    return logging.getLogger(__name__)


# ========================== GENERATION ==========================

def attribute_names(count):
    """a, b, ..., z, a1, b1, ..."""
    names = []
    for i in range(count):
        suffix = "" if i < 26 else str(i // 26)
        names.append(chr(ord("a") + i % 26) + suffix)
    return names


def random_frame(rng, n_tuples, n_attributes, alphabet):
    """
    One random relation as a string-valued DataFrame

    Args:
        rng: numpy Generator
        n_tuples: Number of rows
        n_attributes: Number of columns
        alphabet: Distinct values per column (values 0..alphabet-1)
    """
    values = rng.integers(0, alphabet, size=(n_tuples, n_attributes))
    return pd.DataFrame(values.astype(str), columns=attribute_names(n_attributes))


def generate(output_dir, count, n_attributes, n_tuples, alphabet, seed):
    os.makedirs(output_dir, exist_ok=True)
    logger = setup_logging()
    rng = np.random.default_rng(seed)

    paths = []
    for k in range(count):
        frame = random_frame(rng, n_tuples, n_attributes, alphabet)
        path = os.path.join(output_dir, f"random_{n_attributes}x{n_tuples}_{k:03d}.csv")
        frame.to_csv(path, index=False)
        paths.append(path)

    logger.info(f"Wrote {len(paths)} tables ({n_tuples} tuples x {n_attributes} attributes) to {output_dir}")
    return paths


# ========================== CLI ==========================

def main():
    parser = argparse.ArgumentParser(
        description="Generate random CSV relations",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--output", "-o", type=str, default=DEFAULT_OUTPUT_DIR,
                        help=f"Output directory (default: {DEFAULT_OUTPUT_DIR})")
    parser.add_argument("--count", "-n", type=int, default=DEFAULT_COUNT,
                        help=f"Number of tables (default: {DEFAULT_COUNT})")
    parser.add_argument("--attributes", "-a", type=int, default=DEFAULT_ATTRIBUTES,
                        help=f"Attributes per table (default: {DEFAULT_ATTRIBUTES})")
    parser.add_argument("--tuples", "-t", type=int, default=DEFAULT_TUPLES,
                        help=f"Tuples per table (default: {DEFAULT_TUPLES})")
    parser.add_argument("--alphabet", type=int, default=DEFAULT_ALPHABET,
                        help=f"Distinct values per column (default: {DEFAULT_ALPHABET})")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"Random seed (default: {DEFAULT_SEED})")
    args = parser.parse_args()

    if args.attributes < 1 or args.alphabet < 1 or args.tuples < 0:
        print("Error: --attributes and --alphabet must be >= 1, --tuples >= 0")
        sys.exit(1)

    generate(args.output, args.count, args.attributes, args.tuples, args.alphabet, args.seed)


if __name__ == "__main__":
    main()

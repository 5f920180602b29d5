"""Shared fixtures: small hand-made relations and seeded random relation factories."""

import os
from itertools import combinations, permutations, product

import numpy as np
import pytest

from depfca.config import get_settings
from depfca.relation import Relation

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")


def names(m):
    return [chr(ord("a") + i) for i in range(m)]


def random_relation(rng, n_tuples, n_attributes, alphabet):
    values = rng.integers(0, alphabet, size=(n_tuples, n_attributes))
    return Relation.from_rows(names(n_attributes), values.astype(str).tolist())


def random_corpus(seed, count, max_attributes, max_tuples, alphabet=(2, 4), min_attributes=2, min_tuples=2):
    """Deterministic list of random relations with varying shape and alphabet size"""
    rng = np.random.default_rng(seed)
    corpus = []
    for _ in range(count):
        m = int(rng.integers(min_attributes, max_attributes + 1))
        n = int(rng.integers(min_tuples, max_tuples + 1))
        k = int(rng.integers(alphabet[0], alphabet[1] + 1))
        corpus.append(random_relation(rng, n, m, k))
    return corpus


def distinct_binary_relations(m, max_tuples):
    """Every relation over {0,1}^m whose rows are distinct, up to max_tuples rows"""
    universe = [tuple(str((code >> (m - 1 - x)) & 1) for x in range(m)) for code in range(2 ** m)]
    for n in range(1, max_tuples + 1):
        for rows in combinations(universe, n):
            yield Relation.from_rows(names(m), rows)


def binary_relation_classes(m, max_tuples):
    """
    One distinct-row relation over {0,1}^m per class, up to max_tuples rows.
    Relations that differ only by an attribute permutation or by swapping the
    two values of some attributes fall in the same class.
    """
    universe = [tuple((code >> (m - 1 - x)) & 1 for x in range(m)) for code in range(2 ** m)]
    index = {row: code for code, row in enumerate(universe)}
    # every symmetry as a permutation of row codes
    images = [
        [index[tuple(row[order[x]] ^ flips[x] for x in range(m))] for row in universe]
        for order in permutations(range(m))
        for flips in product((0, 1), repeat=m)
    ]
    seen = bytearray(2 ** len(universe))
    for mask in range(1, 2 ** len(universe)):
        if seen[mask] or bin(mask).count("1") > max_tuples:
            continue
        codes = [c for c in range(len(universe)) if mask >> c & 1]
        for image in images:
            seen[sum(1 << image[c] for c in codes)] = 1
        yield Relation.from_rows(names(m), [[str(v) for v in universe[c]] for c in codes])


def all_subsets(m):
    for size in range(m + 1):
        yield from combinations(range(m), size)


@pytest.fixture
def pair_rel():
    # {(1,2),(1,3)} over {a,b}
    return Relation.from_rows(["a", "b"], [["1", "2"], ["1", "3"]])


@pytest.fixture
def abc_rel():
    # {(1,1,1),(1,1,2),(2,3,3)} over {a,b,c}
    return Relation.from_rows(["a", "b", "c"], [["1", "1", "1"], ["1", "1", "2"], ["2", "3", "3"]])


@pytest.fixture
def grid_rel():
    # full 2x2 grid over {a,b}
    return Relation.from_rows(["a", "b"], [["1", "1"], ["1", "2"], ["2", "1"], ["2", "2"]])


@pytest.fixture
def diagonal_rel():
    # {(1,1),(2,2)} over {a,b}
    return Relation.from_rows(["a", "b"], [["1", "1"], ["2", "2"]])


@pytest.fixture
def course_rel():
    # A ->> B | C holds: the A-group is a full B x C grid
    return Relation.from_rows(
        ["A", "B", "C"],
        [["a", "b1", "c1"], ["a", "b1", "c2"], ["a", "b2", "c1"], ["a", "b2", "c2"]],
    )


@pytest.fixture
def data_path():
    def _path(name):
        return os.path.join(DATA_DIR, name)
    return _path


@pytest.fixture(scope="session", autouse=True)
def _default_settings():
    """Keep DEPFCA_* variables from the developer's shell out of the tests"""
    for key in list(os.environ):
        if key.startswith("DEPFCA_"):
            del os.environ[key]
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def settings_env(monkeypatch):
    """Set DEPFCA_* variables for one test"""
    def _set(**values):
        for key, value in values.items():
            monkeypatch.setenv(f"DEPFCA_{key.upper()}", str(value))
        get_settings.cache_clear()
    yield _set
    get_settings.cache_clear()

"""
Corpus-level checks: every characterization against its brute-force
reference on randomized and exhaustive small relations.
"""

import time

import numpy as np
import pytest

from depfca.context import binarize, implication_holds
from depfca.dmvd_lattice import lattice_inclusion_violations, vector_to_partition
from depfca.fd_discovery import discover_minimal_fds, fd_cover_check
from depfca.mvd import AttrPartition, GaloisConnection, GeneralizedMVD, all_attr_partitions
from depfca.oracle import oracle_fd, oracle_finest_matching, oracle_minimal_fds, oracle_mvd
from depfca.partitions import delta, fd_holds, meet, partition_of_set

from conftest import all_subsets, binary_relation_classes, distinct_binary_relations, random_corpus, random_relation


def binary_corpus():
    """
    Every distinct-row binary relation over at most 3 attributes, and over 4
    attributes with at most 8 rows one relation per permutation/value-swap
    class. All laws swept here are invariant under both symmetries.
    """
    corpus = []
    for m in (1, 2, 3):
        corpus.extend(distinct_binary_relations(m, 2 ** m))
    corpus.extend(binary_relation_classes(4, 8))
    return corpus


@pytest.fixture(scope="module")
def galois_corpus():
    return [GaloisConnection(rel) for rel in binary_corpus()]


def test_four_attribute_classes():
    classes = list(binary_relation_classes(4, 8))
    assert len(classes) == 237
    assert len({rel.tuples for rel in classes}) == 237
    assert {len(rel) for rel in classes} == set(range(1, 9))


@pytest.mark.slow
def test_fd_three_way_equivalence():
    corpus = random_corpus(seed=1, count=200, max_attributes=8, max_tuples=30)
    t0 = time.time()
    for rel in corpus:
        ctx = binarize(rel)
        # one partition per attribute set, each refined from its prefix
        box = {(): partition_of_set(rel, ())}
        for xs in all_subsets(rel.arity):
            if xs:
                box[xs] = meet(box[xs[:-1]], delta(rel, xs[-1]))
        for xs in all_subsets(rel.arity):
            for a in range(rel.arity):
                expected = oracle_fd(rel, xs, [a])
                with_a = tuple(sorted(set(xs) | {a}))
                assert (box[xs].n_blocks == box[with_a].n_blocks) == expected, (rel, xs, a)
                assert implication_holds(ctx, xs, [a]) == expected, (rel, xs, a)
                if len(xs) <= 1:
                    assert fd_holds(rel, xs, [a]) == expected, (rel, xs, a)
    assert time.time() - t0 < 60


@pytest.mark.slow
def test_fd_discovery_exact():
    for rel in random_corpus(seed=2, count=200, max_attributes=6, max_tuples=25):
        found = discover_minimal_fds(rel)
        assert found == oracle_minimal_fds(rel), rel
        assert fd_cover_check(rel, found)


@pytest.mark.slow
def test_mvd_closure_test_matches_oracle():
    for rel in random_corpus(seed=3, count=100, max_attributes=5, max_tuples=10):
        galois = GaloisConnection(rel)
        m = rel.arity
        for lhs in all_subsets(m):
            rest = [x for x in range(m) if x not in lhs]
            if len(lhs) > 2 or not rest:
                continue
            for q in all_attr_partitions(len(rest)):
                d = GeneralizedMVD(lhs, tuple(tuple(rest[i] for i in b) for b in q.blocks), m)
                assert galois.mvd_holds(d) == oracle_mvd(rel, d), (rel, d)


@pytest.mark.slow
def test_galois_and_closure_laws(galois_corpus):
    for galois in galois_corpus:
        rel = galois.rel
        n = len(rel)
        for p in all_attr_partitions(rel.arity):
            s = galois.phi(p)
            closed = galois.psi(s)
            assert galois.phi(closed) == s
            assert galois.psi(galois.phi(closed)) == closed
            assert galois.gamma(closed) == closed
            assert closed.refines(p)
            assert galois.gamma_prime(s) == s
        for s in ([set(range(n))], [{i} for i in range(n)], [set(range(0, n, 2)), set(range(1, n, 2))]):
            s = [c for c in s if c]
            once = galois.gamma_prime(s)
            assert galois.gamma_prime(once) == once
            assert all(any(c <= d for d in once) for c in s)


@pytest.mark.slow
def test_finest_matching_partition_is_unique(galois_corpus):
    for galois in galois_corpus:
        rel = galois.rel
        for p in all_attr_partitions(rel.arity):
            s = galois.phi(p)
            assert oracle_finest_matching(rel, s) == galois.psi(s)


def test_worked_example():
    assert vector_to_partition((1, 1, 0, 0, 1)) == AttrPartition([(0,), (1,), (2, 3), (4,)], 5)


@pytest.mark.slow
def test_mvd_lattice_inside_join_closed_dmvd_lattice(galois_corpus):
    for galois in galois_corpus:
        assert lattice_inclusion_violations(galois.rel, "join", connection=galois) == [], galois.rel


@pytest.mark.slow
def test_discovery_scales_to_wide_tables():
    rng = np.random.default_rng(42)
    rel = random_relation(rng, 10_000, 12, 10)
    t0 = time.time()
    found = discover_minimal_fds(rel)
    assert time.time() - t0 < 30
    assert fd_cover_check(rel, found)

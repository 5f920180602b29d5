"""Tests for the brute-force reference implementations."""

import pytest

from depfca.exceptions import CapacityError, InvariantViolation
from depfca.fd_discovery import FunctionalDependency
from depfca.mvd import AttrPartition, GeneralizedMVD
from depfca.oracle import (
    oracle_fd,
    oracle_finest_matching,
    oracle_maximal_classes,
    oracle_meet_closure,
    oracle_minimal_fds,
    oracle_mvd,
)
from depfca.relation import Relation


def P(*blocks):
    return AttrPartition(blocks, sum(len(b) for b in blocks))


class TestOracleFd:
    def test_violated(self, pair_rel):
        assert not oracle_fd(pair_rel, [0], [1])

    def test_empty_lhs_on_constant_column(self):
        rel = Relation.from_rows(["a", "b"], [["x", "1"], ["x", "2"]])
        assert oracle_fd(rel, [], [0])

    def test_reflexive(self, abc_rel):
        assert oracle_fd(abc_rel, [0, 2], [2])

    def test_null_distinct(self):
        rel = Relation.from_rows(["a", "b"], [["", "1"], ["", "2"]], null_distinct=True)
        assert oracle_fd(rel, [0], [1])
        assert not oracle_fd(Relation.from_rows(["a", "b"], [["", "1"], ["", "2"]]), [0], [1])


class TestOracleMinimalFds:
    def test_bijective(self):
        rel = Relation.from_rows(["a", "b"], [["1", "1"], ["2", "2"], ["3", "3"]])
        assert oracle_minimal_fds(rel) == [FunctionalDependency((0,), 1), FunctionalDependency((1,), 0)]

    def test_max_lhs_zero(self, abc_rel):
        assert oracle_minimal_fds(abc_rel, max_lhs=0) == []


class TestOracleMvd:
    def test_full_grid(self, course_rel):
        assert oracle_mvd(course_rel, GeneralizedMVD((0,), ((1,), (2,)), 3))

    def test_grid_minus_row(self):
        rel = Relation.from_rows(["A", "B", "C"], [["a", "b1", "c1"], ["a", "b1", "c2"], ["a", "b2", "c1"]])
        assert not oracle_mvd(rel, GeneralizedMVD((0,), ((1,), (2,)), 3))

    def test_lhs_is_everything(self, abc_rel):
        assert oracle_mvd(abc_rel, GeneralizedMVD((0, 1, 2), (), 3))

    def test_groups_checked_separately(self):
        # each A-group is a grid, the whole relation is not
        rows = [["1", "x", "p"], ["1", "x", "q"], ["2", "y", "r"]]
        rel = Relation.from_rows(["A", "B", "C"], rows)
        assert oracle_mvd(rel, GeneralizedMVD((0,), ((1,), (2,)), 3))
        assert not oracle_mvd(rel, GeneralizedMVD((), ((0,), (1, 2)), 3))


class TestOracleMaximalClasses:
    def test_single_block(self, diagonal_rel):
        assert oracle_maximal_classes(diagonal_rel, P((0, 1))) == {frozenset({0, 1})}

    def test_split(self, diagonal_rel):
        assert oracle_maximal_classes(diagonal_rel, P((0,), (1,))) == {frozenset({0}), frozenset({1})}

    def test_cap(self):
        rel = Relation.from_rows(["a"], [[str(i)] for i in range(13)])
        with pytest.raises(CapacityError, match="cap is 12"):
            oracle_maximal_classes(rel, P((0,)))


class TestOracleFinestMatching:
    def test_singletons(self, abc_rel):
        assert oracle_finest_matching(abc_rel, [{0}, {1}, {2}]) == AttrPartition.singletons(3)

    def test_full_grid(self, grid_rel):
        assert oracle_finest_matching(grid_rel, [{0, 1, 2, 3}]) == P((0,), (1,))

    def test_diagonal_pair(self, diagonal_rel):
        assert oracle_finest_matching(diagonal_rel, [{0, 1}]) == P((0, 1))

    def test_cap(self):
        rel = Relation.from_rows(list("abcdefg"), [list("1234567")])
        with pytest.raises(CapacityError):
            oracle_finest_matching(rel, [{0}])

    def test_reports_non_unique_minimum(self, monkeypatch):
        import depfca.oracle as oracle

        # two incomparable "matching" partitions and nothing finer
        monkeypatch.setattr(
            oracle, "_matches_by_product",
            lambda rows, blocks, arity: sorted(map(tuple, blocks)) in ([(0, 1), (2,)], [(0,), (1, 2)], [(0, 1, 2)]),
        )
        rel = Relation.from_rows(["a", "b", "c"], [["1", "1", "1"]])
        with pytest.raises(InvariantViolation, match="no unique finest"):
            oracle_finest_matching(rel, [{0}])


def test_meet_closure():
    closure = oracle_meet_closure([P((0,), (1,), (2, 3), (4,)), P((0, 1), (2,), (3,), (4,))])
    assert AttrPartition.singletons(5) in closure
    assert len(closure) == 3
    assert oracle_meet_closure([]) == frozenset()

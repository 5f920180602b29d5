"""
Partition algebra over tuple indices: the pattern structure (A, (D, meet), delta).

A partition is stored as a canonical label array (tuple index -> block id),
block ids assigned in order of each block's least tuple index, so two
partitions are equal iff their label arrays are equal.
"""

from functools import reduce
from typing import Iterable, List, Sequence, Tuple

import numpy as np
import pandas as pd

from .exceptions import ContractError
from .relation import Relation


class TuplePartition:
    """Partition of {0..n-1} into disjoint non-empty blocks"""

    __slots__ = ("_labels", "_n_blocks")

    def __init__(self, labels: np.ndarray):
        labels = np.asarray(labels)
        if labels.size:
            canonical = pd.factorize(labels, sort=False)[0].astype(np.int64)
            n_blocks = int(canonical.max()) + 1
        else:
            canonical = np.zeros(0, dtype=np.int64)
            n_blocks = 0
        canonical.setflags(write=False)
        self._labels = canonical
        self._n_blocks = n_blocks

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "TuplePartition":
        return cls(np.asarray(labels, dtype=np.int64))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int) -> "TuplePartition":
        """
        Build from explicit blocks

        Args:
            blocks: Disjoint non-empty blocks covering 0..n-1
            n: Number of tuples
        """
        labels = np.full(n, -1, dtype=np.int64)
        for block_id, block in enumerate(blocks):
            block = list(block)
            if not block:
                raise ContractError("partition blocks must be non-empty")
            for i in block:
                if i < 0 or i >= n:
                    raise ContractError(f"tuple index {i} out of range 0..{n - 1}")
                if labels[i] != -1:
                    raise ContractError(f"tuple index {i} appears in two blocks")
                labels[i] = block_id
        if (labels == -1).any():
            raise ContractError("blocks do not cover every tuple index")
        return cls(labels)

    @classmethod
    def top(cls, n: int) -> "TuplePartition":
        return cls(np.zeros(n, dtype=np.int64))

    @classmethod
    def bottom(cls, n: int) -> "TuplePartition":
        return cls(np.arange(n, dtype=np.int64))

    @property
    def labels(self) -> np.ndarray:
        return self._labels

    @property
    def size(self) -> int:
        return int(self._labels.size)

    @property
    def n_blocks(self) -> int:
        return self._n_blocks

    @property
    def blocks(self) -> List[Tuple[int, ...]]:
        """Canonical form: blocks sorted by least element, elements ascending"""
        groups: List[List[int]] = [[] for _ in range(self._n_blocks)]
        for i, label in enumerate(self._labels.tolist()):
            groups[label].append(i)
        return [tuple(g) for g in groups]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TuplePartition):
            return NotImplemented
        return np.array_equal(self._labels, other._labels)

    def __hash__(self) -> int:
        return hash(self._labels.tobytes())

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"TuplePartition({{{body}}})"


def _check_same_range(p: TuplePartition, q: TuplePartition):
    if p.size != q.size:
        raise ContractError(f"partitions over different ranges: {p.size} vs {q.size} tuples")


def delta(rel: Relation, a: int) -> TuplePartition:
    """Partition of the tuples induced by equality on attribute a"""
    (a,) = rel.attr_set([a])
    return TuplePartition(rel.codes[:, a])


def meet(p: TuplePartition, q: TuplePartition) -> TuplePartition:
    """Blockwise intersection: the coarsest common refinement of p and q"""
    _check_same_range(p, q)
    # Pair-hash of the two block ids; canonicalization renumbers it
    combined = p.labels * max(q.n_blocks, 1) + q.labels
    return TuplePartition(combined)


def partition_of_set(rel: Relation, xs: Iterable[int]) -> TuplePartition:
    """
    {X}^box: meet of delta(a) over a in xs; a single block for xs = {}

    Args:
        rel: Relation
        xs: Attribute indices
    """
    xs = rel.attr_set(xs)
    return reduce(meet, (delta(rel, a) for a in xs), TuplePartition.top(len(rel)))


def fd_holds(rel: Relation, xs: Iterable[int], ys: Iterable[int]) -> bool:
    """
    X -> Y holds iff {X}^box = {XY}^box. The XY partition always refines
    the X partition, so equal block counts decide equality.
    """
    xs = rel.attr_set(xs)
    ys = rel.attr_set(ys)
    p_x = partition_of_set(rel, xs)
    p_xy = partition_of_set(rel, set(xs) | set(ys))
    return p_x.n_blocks == p_xy.n_blocks


def refines(p: TuplePartition, q: TuplePartition) -> bool:
    """True iff every block of p lies inside some block of q"""
    _check_same_range(p, q)
    return meet(p, q).n_blocks == p.n_blocks

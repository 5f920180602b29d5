"""
Level-wise discovery of minimal non-trivial functional dependencies by
partition refinement.

Level k holds attribute sets Y of size k with their tuple partitions.
For each a in Y the candidate (Y - a) -> a holds iff the two partitions have
the same number of blocks. Candidates whose left side already contains a
recorded left side for the same right side are skipped (not minimal).
A set whose partition equals the partition of all attributes (all-singletons
when rows are distinct) is a key: it determines every remaining attribute,
so those FDs are emitted directly and the set takes no part in generating
the next level. Any FD whose test is lost with it is either covered by the
key itself or has a left side that is a key in its own right.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterable, List, Optional, Tuple

from .config import get_settings
from .exceptions import CapacityError, ContractError
from .partitions import TuplePartition, delta, fd_holds, meet
from .relation import AttrSet, Relation

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class FunctionalDependency:
    """X -> a with a single right-hand attribute, a not in X"""

    lhs: AttrSet
    rhs: int

    def __post_init__(self):
        if self.rhs in self.lhs:
            raise ContractError(f"trivial FD: rhs {self.rhs} is in lhs {self.lhs}")
        if tuple(sorted(set(self.lhs))) != tuple(self.lhs):
            raise ContractError(f"lhs {self.lhs} is not a canonical attribute set")

    def sort_key(self) -> Tuple[int, AttrSet, int]:
        return (len(self.lhs), self.lhs, self.rhs)

    def render(self, rel: Relation) -> str:
        lhs = ",".join(rel.names(self.lhs)) or "{}"
        return f"{lhs} -> {rel.attributes[self.rhs]}"


def _mask(xs: Iterable[int]) -> int:
    m = 0
    for x in xs:
        m |= 1 << x
    return m


def _attrs(mask: int) -> AttrSet:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class _Cover:
    """Recorded minimal left sides per right-hand attribute, as bitmasks"""

    def __init__(self, arity: int):
        self.lhs_by_rhs: List[List[int]] = [[] for _ in range(arity)]
        self.found: List[FunctionalDependency] = []

    def covers(self, lhs: int, a: int) -> bool:
        return any(z & ~lhs == 0 for z in self.lhs_by_rhs[a])

    def record(self, lhs: int, a: int):
        self.lhs_by_rhs[a].append(lhs)
        self.found.append(FunctionalDependency(_attrs(lhs), a))


def _next_level(survivors: List[int]) -> List[int]:
    """Apriori join: sets of size k+1 all of whose k-subsets survived"""
    alive = set(survivors)
    ordered = sorted(survivors, key=_attrs)
    candidates = []
    for i, left in enumerate(ordered):
        left_attrs = _attrs(left)
        prefix = left_attrs[:-1]
        for right in ordered[i + 1:]:
            right_attrs = _attrs(right)
            if right_attrs[:-1] != prefix:
                break
            joined = left | right
            if all((joined & ~(1 << x)) in alive for x in _attrs(joined)):
                candidates.append(joined)
    return candidates


def discover_minimal_fds(
    rel: Relation,
    max_lhs: Optional[int] = None,
    max_attributes: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[FunctionalDependency]:
    """
    All minimal non-trivial FDs X -> a with |X| <= max_lhs

    Args:
        rel: Relation
        max_lhs: Largest left-hand side size; defaults to arity - 1
        max_attributes: Hard cap on the relation's arity (default from settings)
        workers: Threads computing a level's partition products (default from settings)

    Returns:
        FDs sorted by (|lhs|, lhs, rhs)
    """
    settings = get_settings()
    max_attributes = settings.max_attributes if max_attributes is None else max_attributes
    workers = settings.workers if workers is None else workers
    m, n = rel.arity, len(rel)

    if m > max_attributes:
        raise CapacityError(
            f"relation has {m} attributes, discovery cap is {max_attributes}", max_attributes
        )
    if max_lhs is None:
        max_lhs = max(m - 1, 0)
    if max_lhs < 0:
        raise ContractError(f"max_lhs must be >= 0, got {max_lhs}")

    t0 = time.time()
    cover = _Cover(m)

    singles = [delta(rel, a) for a in range(m)]
    # Block count of the partition induced by all attributes; equals n
    # unless the relation has duplicate rows
    n_blocks_all = reduce(meet, singles, TuplePartition.top(n)).n_blocks
    previous: Dict[int, TuplePartition] = {0: TuplePartition.top(n)}
    survivors = [0]
    level = 0

    with ThreadPoolExecutor(max_workers=max(workers, 1)) as executor:
        while True:
            # Keys determine every remaining attribute; emit and stop extending them
            next_survivors = []
            for y in survivors:
                if previous[y].n_blocks == n_blocks_all:
                    if level <= max_lhs:
                        for a in range(m):
                            if not (y >> a) & 1 and not cover.covers(y, a):
                                cover.record(y, a)
                else:
                    next_survivors.append(y)

            level += 1
            if level > max_lhs + 1 or level > m:
                break
            if level == 1:
                candidates = [1 << a for a in range(m)] if next_survivors else []
            else:
                candidates = _next_level(next_survivors)
            if not candidates:
                break

            def product(y: int) -> TuplePartition:
                attrs = _attrs(y)
                return meet(previous[y & ~(1 << attrs[-1])], singles[attrs[-1]])

            current = dict(zip(candidates, executor.map(product, candidates)))
            logger.debug(f"Level {level}: {len(candidates)} candidate sets")

            # (Y - a) -> a for every a in Y; all left sides have size level - 1
            for y in sorted(candidates, key=_attrs):
                for a in _attrs(y):
                    lhs = y & ~(1 << a)
                    if cover.covers(lhs, a):
                        continue
                    if previous[lhs].n_blocks == current[y].n_blocks:
                        cover.record(lhs, a)

            previous = current
            survivors = candidates

    result = sorted(cover.found, key=FunctionalDependency.sort_key)
    logger.info(
        f"Discovered {len(result)} minimal FDs over {m} attributes, {n} tuples "
        f"in {time.time() - t0:.2f}s"
    )
    return result


def fd_cover_check(rel: Relation, fds: Iterable[FunctionalDependency]) -> bool:
    """True iff every listed FD holds in the relation"""
    return all(fd_holds(rel, fd.lhs, (fd.rhs,)) for fd in fds)

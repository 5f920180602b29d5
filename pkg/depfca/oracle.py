"""
Brute-force reference implementations, straight from the definitions.

Nothing here calls into context, partitions, fd_discovery, mvd or
dmvd_lattice logic: only their value types are shared, so a disagreement
between an oracle and a characterization always points at a real defect.
"""

from itertools import chain, combinations, product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .exceptions import CapacityError, InvariantViolation
from .fd_discovery import FunctionalDependency
from .mvd import AttrPartition, GeneralizedMVD
from .relation import AttrSet, Relation, Row

ORACLE_MAX_TUPLES = 12
ORACLE_MAX_ATTRIBUTES = 6


def _same(rel: Relation, u: Row, v: Row, a: int) -> bool:
    if rel.null_distinct and u[a] == "":
        return False
    return u[a] == v[a]


def oracle_fd(rel: Relation, xs: Iterable[int], ys: Iterable[int]) -> bool:
    """Every pair of tuples agreeing on all of xs agrees on all of ys"""
    xs, ys = list(xs), list(ys)
    if set(ys) <= set(xs):
        return True
    rows = rel.tuples
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            u, v = rows[i], rows[j]
            if all(_same(rel, u, v, x) for x in xs) and not all(_same(rel, u, v, y) for y in ys):
                return False
    return True


def oracle_minimal_fds(rel: Relation, max_lhs: Optional[int] = None) -> List[FunctionalDependency]:
    """
    Minimal non-trivial FDs X -> a by testing every (X, a) and every proper subset of X

    Args:
        rel: Relation
        max_lhs: Largest left-hand side size; defaults to arity - 1
    """
    m = rel.arity
    max_lhs = max(m - 1, 0) if max_lhs is None else max_lhs
    found = []
    for size in range(0, min(max_lhs, m) + 1):
        for lhs in combinations(range(m), size):
            for a in range(m):
                if a in lhs or not oracle_fd(rel, lhs, [a]):
                    continue
                proper = chain.from_iterable(combinations(lhs, k) for k in range(size))
                if not any(oracle_fd(rel, sub, [a]) for sub in proper):
                    found.append(FunctionalDependency(lhs, a))
    return sorted(found, key=lambda fd: (len(fd.lhs), fd.lhs, fd.rhs))


def oracle_mvd(rel: Relation, d: GeneralizedMVD) -> bool:
    """
    For every X-value, the group's projection onto A - X equals the cross
    product of its projections onto the right-hand blocks
    """
    rest = [x for x in range(rel.arity) if x not in d.lhs]
    if not rest:
        return True
    groups: Dict[Tuple[str, ...], Set[Row]] = {}
    for row in rel.tuples:
        groups.setdefault(tuple(row[x] for x in d.lhs), set()).add(row)

    position = {x: k for k, x in enumerate(rest)}
    for rows in groups.values():
        actual = {tuple(row[x] for x in rest) for row in rows}
        pieces = [sorted({tuple(row[x] for x in block) for row in rows}) for block in d.rhs_blocks]
        expected = set()
        for combo in product(*pieces):
            assembled: List[str] = [""] * len(rest)
            for block, values in zip(d.rhs_blocks, combo):
                for x, value in zip(block, values):
                    assembled[position[x]] = value
            expected.add(tuple(assembled))
        if actual != expected:
            return False
    return True


def _matches_by_product(rows: Set[Row], blocks: Sequence[AttrSet], arity: int) -> bool:
    pieces = [sorted({tuple(row[x] for x in block) for row in rows}) for block in blocks]
    expected = set()
    for combo in product(*pieces):
        assembled: List[str] = [""] * arity
        for block, values in zip(blocks, combo):
            for x, value in zip(block, values):
                assembled[x] = value
        expected.add(tuple(assembled))
    return expected == rows


def oracle_maximal_classes(rel: Relation, p: AttrPartition) -> FrozenSet[FrozenSet[int]]:
    """Every non-empty subset of tuples that p matches, filtered to the maximal ones"""
    n = len(rel)
    if n > ORACLE_MAX_TUPLES:
        raise CapacityError(f"oracle sweep over {n} tuples, cap is {ORACLE_MAX_TUPLES}", ORACLE_MAX_TUPLES)
    matched: List[FrozenSet[int]] = []
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            rows = {rel.tuples[i] for i in subset}
            if _matches_by_product(rows, p.blocks, rel.arity):
                matched.append(frozenset(subset))
    return frozenset(c for c in matched if not any(c < other for other in matched))


def _set_partitions(items: List[int]) -> Iterator[List[List[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in _set_partitions(rest):
        yield [[first]] + smaller
        for k in range(len(smaller)):
            yield smaller[:k] + [[first] + smaller[k]] + smaller[k + 1:]


def _finer_or_equal(p: List[List[int]], q: List[List[int]]) -> bool:
    return all(any(set(block) <= set(other) for other in q) for block in p)


def oracle_finest_matching(rel: Relation, s: Iterable[Iterable[int]]) -> AttrPartition:
    """
    The refinement-least partition matching every class of s, found by
    sweeping all attribute partitions. Raises InvariantViolation when the
    minimal matching partitions are not unique.
    """
    m = rel.arity
    if m > ORACLE_MAX_ATTRIBUTES:
        raise CapacityError(f"oracle sweep over {m} attributes, cap is {ORACLE_MAX_ATTRIBUTES}", ORACLE_MAX_ATTRIBUTES)
    class_rows = [{rel.tuples[i] for i in c} for c in s]

    matching = [
        blocks for blocks in _set_partitions(list(range(m)))
        if all(_matches_by_product(rows, [tuple(b) for b in blocks], m) for rows in class_rows)
    ]
    minimal = [
        p for p in matching
        if not any(q is not p and _finer_or_equal(q, p) and not _finer_or_equal(p, q) for q in matching)
    ]
    if len(minimal) != 1:
        rendered = [AttrPartition(p, m) for p in minimal]
        raise InvariantViolation(f"no unique finest matching partition: {rendered}")
    return AttrPartition(minimal[0], m)


def oracle_meet_closure(parts: Iterable[AttrPartition]) -> FrozenSet[AttrPartition]:
    """Round-based fixpoint of pairwise blockwise intersections"""
    current: Set[Tuple[int, FrozenSet[FrozenSet[int]]]] = {
        (p.arity, frozenset(frozenset(b) for b in p.blocks)) for p in parts
    }
    while True:
        added = set()
        for (arity, p), (_, q) in product(current, repeat=2):
            blocks = frozenset(b & c for b in p for c in q if b & c)
            if (arity, blocks) not in current:
                added.add((arity, blocks))
        if not added:
            break
        current |= added
    return frozenset(AttrPartition(blocks, arity) for arity, blocks in current)

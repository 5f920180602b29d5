"""
Galois connection between attribute partitions and families of tuple classes.

A partition P = <P1 | ... | Pn> of the attributes matches a class C of tuples
iff C = proj_P1(C) x ... x proj_Pn(C) (set semantics). phi(P) returns the
maximal classes matched by P; psi(S) returns the finest partition matching
every class of S. Gamma = psi.phi and Gamma' = phi.psi are their closures,
and a generalized MVD X ->> Y1 | ... | Ym holds iff
Gamma(<X1|...|Xn|Y>) = Gamma(<X1|...|Xn|Y1|...|Ym>).

Orientation: Gamma(P) always refines P, i.e. Gamma is a closure for the
reversed refinement order (coarser-or-equal as "smaller").
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .config import DEFAULT_MAX_TUPLES, get_settings
from .exceptions import CapacityError, ContractError
from .relation import AttrSet, Relation, Row

logger = logging.getLogger(__name__)

TupleClass = FrozenSet[int]
ClassFamily = FrozenSet[TupleClass]


class AttrPartition:
    """Partition of the attribute indices 0..arity-1, kept in canonical form"""

    __slots__ = ("arity", "blocks")

    def __init__(self, blocks: Iterable[Iterable[int]], arity: int):
        canonical = [tuple(sorted(set(int(x) for x in block))) for block in blocks]
        seen: Set[int] = set()
        for block in canonical:
            if not block:
                raise ContractError("attribute partition blocks must be non-empty")
            for x in block:
                if x < 0 or x >= arity:
                    raise ContractError(f"attribute index {x} out of range 0..{arity - 1}")
                if x in seen:
                    raise ContractError(f"attribute {x} appears in two blocks")
                seen.add(x)
        if len(seen) != arity:
            raise ContractError(f"blocks cover {len(seen)} of {arity} attributes")
        canonical.sort(key=lambda block: block[0])
        self.arity = arity
        self.blocks: Tuple[AttrSet, ...] = tuple(canonical)

    @classmethod
    def singletons(cls, arity: int) -> "AttrPartition":
        return cls([(x,) for x in range(arity)], arity)

    @classmethod
    def single_block(cls, arity: int) -> "AttrPartition":
        return cls([tuple(range(arity))] if arity else [], arity)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "AttrPartition":
        groups: Dict[int, List[int]] = {}
        for x, label in enumerate(labels):
            groups.setdefault(label, []).append(x)
        return cls(groups.values(), len(labels))

    def labels(self) -> List[int]:
        out = [0] * self.arity
        for block_id, block in enumerate(self.blocks):
            for x in block:
                out[x] = block_id
        return out

    def refines(self, other: "AttrPartition") -> bool:
        """p <= q iff every block of p lies inside a block of q"""
        self._check(other)
        theirs = other.labels()
        return all(len({theirs[x] for x in block}) == 1 for block in self.blocks)

    def meet(self, other: "AttrPartition") -> "AttrPartition":
        """Common refinement: non-empty blockwise intersections"""
        self._check(other)
        theirs = other.labels()
        mine = self.labels()
        return AttrPartition.from_labels([(mine[x], theirs[x]) for x in range(self.arity)])

    def join(self, other: "AttrPartition") -> "AttrPartition":
        """Coarsest common coarsening: blocks merged through shared attributes"""
        self._check(other)
        parent = list(range(self.arity))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for block in self.blocks + other.blocks:
            root = find(block[0])
            for x in block[1:]:
                parent[find(x)] = root
        return AttrPartition.from_labels([find(x) for x in range(self.arity)])

    def render(self, names: Sequence[str]) -> str:
        return "|".join(",".join(names[x] for x in block) for block in self.blocks)

    def _check(self, other: "AttrPartition"):
        if self.arity != other.arity:
            raise ContractError(f"partitions over {self.arity} and {other.arity} attributes")

    def __eq__(self, other) -> bool:
        if not isinstance(other, AttrPartition):
            return NotImplemented
        return self.arity == other.arity and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.arity, self.blocks))

    def __lt__(self, other: "AttrPartition") -> bool:
        # Display order only: fewer blocks first, then lexicographic blocks
        return (len(self.blocks), self.blocks) < (len(other.blocks), other.blocks)

    def __repr__(self) -> str:
        return "<" + " | ".join("".join(map(str, b)) for b in self.blocks) + ">"


def all_attr_partitions(arity: int) -> Iterator[AttrPartition]:
    """Every partition of 0..arity-1 (Bell(arity) of them), via restricted growth strings"""
    if arity == 0:
        yield AttrPartition([], 0)
        return
    labels = [0] * arity
    maxima = [0] * arity
    while True:
        yield AttrPartition.from_labels(labels)
        i = arity - 1
        while i > 0 and labels[i] == maxima[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        labels[i] += 1
        maxima[i] = max(maxima[i - 1], labels[i])
        for j in range(i + 1, arity):
            labels[j] = 0
            maxima[j] = maxima[i]


@dataclass(frozen=True)
class GeneralizedMVD:
    """X ->> Y1 | ... | Ym with the Yi partitioning A - X"""

    lhs: AttrSet
    rhs_blocks: Tuple[AttrSet, ...]
    arity: int

    def __post_init__(self):
        lhs = tuple(sorted(set(self.lhs)))
        blocks = tuple(sorted((tuple(sorted(set(b))) for b in self.rhs_blocks), key=lambda b: b[0] if b else -1))
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs_blocks", blocks)
        for x in lhs:
            if x < 0 or x >= self.arity:
                raise ContractError(f"attribute index {x} out of range 0..{self.arity - 1}")
        rest = set(range(self.arity)) - set(lhs)
        covered: Set[int] = set()
        for block in blocks:
            if not block:
                raise ContractError("rhs blocks must be non-empty")
            if covered & set(block):
                raise ContractError(f"rhs blocks overlap on {sorted(covered & set(block))}")
            covered |= set(block)
        if covered != rest:
            raise ContractError(
                f"rhs blocks cover {sorted(covered)}, expected the complement of lhs {sorted(rest)}"
            )
        # m = 0 only when X is every attribute (vacuous dependency)

    @property
    def rhs(self) -> AttrSet:
        return tuple(sorted(x for block in self.rhs_blocks for x in block))

    def as_partition(self, rhs_blocks: Iterable[Iterable[int]]) -> AttrPartition:
        return AttrPartition([(x,) for x in self.lhs] + [tuple(b) for b in rhs_blocks], self.arity)

    def render(self, names: Sequence[str]) -> str:
        rhs = " | ".join(",".join(names[x] for x in b) for b in self.rhs_blocks)
        return f"{','.join(names[x] for x in self.lhs)} ->> {rhs}"


def _class_rows(rel: Relation, c: Iterable[int]) -> Set[Row]:
    rows = set()
    for i in c:
        if i < 0 or i >= len(rel):
            raise ContractError(f"tuple index {i} out of range 0..{len(rel) - 1}")
        rows.add(rel.tuples[i])
    return rows


def _rows_match(rows: Set[Row], blocks: Sequence[AttrSet]) -> bool:
    # rows always lie inside the product of their projections, so equal sizes decide
    sizes = [len({tuple(row[x] for x in block) for row in rows}) for block in blocks]
    return len(rows) == prod(sizes)


def matches(rel: Relation, p: AttrPartition, c: Iterable[int]) -> bool:
    """
    True iff the rows of class c equal the cross product of their
    projections onto the blocks of p

    Args:
        rel: Relation
        p: Partition of all attributes of rel
        c: Non-empty set of tuple indices
    """
    if p.arity != rel.arity:
        raise ContractError(f"partition over {p.arity} attributes, relation has {rel.arity}")
    rows = _class_rows(rel, c)
    if not rows:
        raise ContractError("cannot match an empty class of tuples")
    return _rows_match(rows, p.blocks)


def _separable(rows: Set[Row], block: Sequence[int], scope: Sequence[int]) -> bool:
    """proj_scope(rows) = proj_block x proj_(scope - block)"""
    rest = [x for x in scope if x not in block]
    whole = {tuple(row[x] for x in scope) for row in rows}
    left = {tuple(row[x] for x in block) for row in rows}
    right = {tuple(row[x] for x in rest) for row in rows}
    return len(whole) == len(left) * len(right)


class GaloisConnection:
    """
    phi / psi over one relation, with phi cached per partition

    Args:
        rel: Relation
        max_tuples: Enumeration cap for phi (default from settings)
    """

    def __init__(self, rel: Relation, max_tuples: Optional[int] = None):
        self.rel = rel
        self.max_tuples = get_settings().max_tuples if max_tuples is None else max_tuples
        if self.max_tuples > DEFAULT_MAX_TUPLES and len(rel) > DEFAULT_MAX_TUPLES:
            logger.warning(
                f"phi enumerates up to 2^{len(rel)} tuple classes "
                f"(cap raised to {self.max_tuples}); this may take a long time"
            )
        self._phi_cache: Dict[AttrPartition, ClassFamily] = {}

        # Duplicate tuples always travel together inside a maximal class
        groups: Dict[Row, List[int]] = {}
        for i, row in enumerate(rel.tuples):
            groups.setdefault(row, []).append(i)
        self._distinct: List[Row] = list(groups)
        self._members: List[Tuple[int, ...]] = [tuple(v) for v in groups.values()]

    def _check_capacity(self):
        if len(self.rel) > self.max_tuples:
            raise CapacityError(
                f"relation has {len(self.rel)} tuples, phi enumeration cap is {self.max_tuples}",
                self.max_tuples,
            )

    def _check_partition(self, p: AttrPartition):
        if p.arity != self.rel.arity:
            raise ContractError(f"partition over {p.arity} attributes, relation has {self.rel.arity}")

    def phi(self, p: AttrPartition) -> ClassFamily:
        """Maximal classes of tuples matched by p (an antichain covering every tuple)"""
        self._check_partition(p)
        self._check_capacity()
        cached = self._phi_cache.get(p)
        if cached is not None:
            return cached

        d = len(self._distinct)
        codes = []
        for block in p.blocks:
            index: Dict[Row, int] = {}
            codes.append([index.setdefault(tuple(row[x] for x in block), len(index)) for row in self._distinct])

        maximal: List[int] = []
        for size in range(d, 0, -1):
            for combo in combinations(range(d), size):
                mask = 0
                for r in combo:
                    mask |= 1 << r
                if any(mask & ~found == 0 for found in maximal):
                    continue
                product = 1
                for block_codes in codes:
                    product *= len({block_codes[r] for r in combo})
                    if product > size:
                        break
                if product == size:
                    maximal.append(mask)

        family = frozenset(
            frozenset(i for r in range(d) if (mask >> r) & 1 for i in self._members[r])
            for mask in maximal
        )
        self._phi_cache[p] = family
        logger.debug(f"phi{p!r}: {len(family)} maximal classes")
        return family

    def psi(self, s: Iterable[Iterable[int]]) -> AttrPartition:
        """
        Finest attribute partition matching every class of s.

        Attributes are added one at a time; the new attribute's block absorbs
        exactly those current blocks that stop being product factors of
        the classes projected onto the attributes seen so far.
        """
        class_rows = []
        for c in s:
            rows = _class_rows(self.rel, c)
            if not rows:
                raise ContractError("class families cannot contain an empty class")
            class_rows.append(rows)

        blocks: List[List[int]] = []
        scope: List[int] = []
        for a in range(self.rel.arity):
            scope.append(a)
            merged = [a]
            kept = []
            for block in blocks:
                if all(_separable(rows, block, scope) for rows in class_rows):
                    kept.append(block)
                else:
                    merged.extend(block)
            blocks = kept + [sorted(merged)]
        return AttrPartition(blocks, self.rel.arity)

    def gamma(self, p: AttrPartition) -> AttrPartition:
        return self.psi(self.phi(p))

    def gamma_prime(self, s: Iterable[Iterable[int]]) -> ClassFamily:
        return self.phi(self.psi(s))

    def mvd_holds(self, d: GeneralizedMVD) -> bool:
        """Theorem-1 test: Gamma of the joined and of the split right-hand side agree"""
        if d.arity != self.rel.arity:
            raise ContractError(f"MVD over {d.arity} attributes, relation has {self.rel.arity}")
        self._check_capacity()
        if len(d.rhs_blocks) <= 1:
            return True
        joined = d.as_partition([d.rhs])
        split = d.as_partition(d.rhs_blocks)
        return self.gamma(joined) == self.gamma(split)


def phi(rel: Relation, p: AttrPartition, max_tuples: Optional[int] = None) -> ClassFamily:
    return GaloisConnection(rel, max_tuples).phi(p)


def psi(rel: Relation, s: Iterable[Iterable[int]]) -> AttrPartition:
    return GaloisConnection(rel).psi(s)


def gamma(rel: Relation, p: AttrPartition, max_tuples: Optional[int] = None) -> AttrPartition:
    return GaloisConnection(rel, max_tuples).gamma(p)


def gamma_prime(rel: Relation, s: Iterable[Iterable[int]], max_tuples: Optional[int] = None) -> ClassFamily:
    return GaloisConnection(rel, max_tuples).gamma_prime(s)


def mvd_holds(rel: Relation, d: GeneralizedMVD, max_tuples: Optional[int] = None) -> bool:
    return GaloisConnection(rel, max_tuples).mvd_holds(d)


def is_antichain(family: Iterable[TupleClass]) -> bool:
    classes = list(family)
    return not any(a < b for a in classes for b in classes)

"""
Attribute-partition lattices built from the binarization of a relation.

Every pair of distinct tuples yields an agreement vector; part(t) turns it
into a partition where the disagreeing attributes form one block and every
agreeing attribute is a singleton. The DMVD lattice is the closure of these
partitions under meet; the MVD lattice is the set of Gamma-closed partitions.
"""

import logging
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .config import get_settings
from .exceptions import CapacityError, ContractError
from .mvd import AttrPartition, GaloisConnection, GeneralizedMVD, all_attr_partitions
from .relation import Relation

logger = logging.getLogger(__name__)

AgreementVector = Tuple[bool, ...]

MEET = "meet"
JOIN = "join"


class PartitionLattice:
    """A finite set of attribute partitions of one arity"""

    def __init__(self, elements: Iterable[AttrPartition], arity: int):
        elements = frozenset(elements)
        for p in elements:
            if p.arity != arity:
                raise ContractError(f"lattice element {p!r} has arity {p.arity}, expected {arity}")
        self.elements: FrozenSet[AttrPartition] = elements
        self.arity = arity

    def __contains__(self, p: AttrPartition) -> bool:
        return p in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> List[AttrPartition]:
        return sorted(self.elements)

    def is_meet_closed(self) -> bool:
        return all(p.meet(q) in self.elements for p in self.elements for q in self.elements)

    def is_join_closed(self) -> bool:
        return all(p.join(q) in self.elements for p in self.elements for q in self.elements)

    def render(self, names: Sequence[str]) -> List[str]:
        return [p.render(names) for p in self.sorted()]

    def __repr__(self) -> str:
        return f"PartitionLattice({len(self)} elements over {self.arity} attributes)"


def bin_vectors(rel: Relation) -> Set[AgreementVector]:
    """Distinct agreement vectors over all unordered pairs of distinct tuples"""
    left, right = np.triu_indices(len(rel), k=1)
    if left.size == 0:
        return set()
    agree = rel.codes[left] == rel.codes[right]
    unique = np.unique(agree, axis=0)
    return {tuple(bool(v) for v in row) for row in unique}


def vector_to_partition(t: Sequence[bool], arity: Optional[int] = None) -> AttrPartition:
    """
    part(t): the 0-attributes form one block, every 1-attribute is a singleton.
    <1,1,0,0,1> over {a,b,c,d,e} gives <a | b | cd | e>.

    Args:
        t: Agreement vector
        arity: Expected length, checked when given
    """
    t = tuple(bool(v) for v in t)
    if arity is not None and len(t) != arity:
        raise ContractError(f"agreement vector of length {len(t)}, expected {arity}")
    zeros = tuple(x for x, v in enumerate(t) if not v)
    blocks = [(x,) for x, v in enumerate(t) if v]
    if zeros:
        blocks.append(zeros)
    return AttrPartition(blocks, len(t))


def _closure(parts: Iterable[AttrPartition], operation: str) -> Set[AttrPartition]:
    combine = AttrPartition.meet if operation == MEET else AttrPartition.join
    closed: Set[AttrPartition] = set(parts)
    worklist = list(closed)
    while worklist:
        p = worklist.pop()
        for q in list(closed):
            r = combine(p, q)
            if r not in closed:
                closed.add(r)
                worklist.append(r)
    return closed


def meet_closure(parts: Iterable[AttrPartition]) -> PartitionLattice:
    """Smallest superset of parts closed under blockwise intersection"""
    parts = list(parts)
    arity = parts[0].arity if parts else 0
    return PartitionLattice(_closure(parts, MEET), arity)


def join_closure(parts: Iterable[AttrPartition]) -> PartitionLattice:
    """Smallest superset of parts closed under coarsest common coarsening"""
    parts = list(parts)
    arity = parts[0].arity if parts else 0
    return PartitionLattice(_closure(parts, JOIN), arity)


def generators(rel: Relation) -> List[AttrPartition]:
    return [vector_to_partition(t, rel.arity) for t in sorted(bin_vectors(rel))]


def dmvd_lattice(rel: Relation, closure: str = MEET) -> PartitionLattice:
    """
    Closure of part(bin(T)); meet closure unless closure="join"

    Args:
        rel: Relation
        closure: "meet" (blockwise intersection) or "join" (merging)
    """
    if closure not in (MEET, JOIN):
        raise ContractError(f"unknown closure {closure!r}; expected 'meet' or 'join'")
    parts = generators(rel)
    if not parts:
        lattice = PartitionLattice([], rel.arity)
    else:
        lattice = meet_closure(parts) if closure == MEET else join_closure(parts)
    logger.debug(f"DMVD lattice ({closure}): {len(parts)} generators, {len(lattice)} elements")
    return lattice


def mvd_lattice(
    rel: Relation,
    max_tuples: Optional[int] = None,
    max_attributes: Optional[int] = None,
    connection: Optional[GaloisConnection] = None,
) -> PartitionLattice:
    """
    Gamma-closed attribute partitions, by sweeping all Bell(|A|) partitions

    Args:
        rel: Relation
        max_tuples: phi enumeration cap
        max_attributes: Cap on |A| for the sweep (default from settings)
        connection: Reuse an existing GaloisConnection (and its phi cache)
    """
    cap = get_settings().max_partition_attributes if max_attributes is None else max_attributes
    if rel.arity > cap:
        raise CapacityError(f"relation has {rel.arity} attributes, partition sweep cap is {cap}", cap)
    galois = connection or GaloisConnection(rel, max_tuples)
    closed = [p for p in all_attr_partitions(rel.arity) if galois.gamma(p) == p]
    return PartitionLattice(closed, rel.arity)


def lattice_inclusion_violations(
    rel: Relation,
    closure: str = JOIN,
    connection: Optional[GaloisConnection] = None,
) -> List[AttrPartition]:
    """
    Gamma-closed partitions missing from the DMVD lattice.

    The extreme element that every relation's MVD lattice contains for free
    is excluded: the all-singleton partition for the join closure, the
    single-block partition for the meet closure.
    """
    dmvd = dmvd_lattice(rel, closure)
    mvd = mvd_lattice(rel, connection=connection)
    extreme = AttrPartition.singletons(rel.arity) if closure == JOIN else AttrPartition.single_block(rel.arity)
    return [p for p in mvd.sorted() if p not in dmvd and p != extreme]


def dmvd_holds(rel: Relation, d: GeneralizedMVD) -> bool:
    """
    Degenerated MVD: every pair of tuples agreeing on X disagrees inside at
    most one right-hand block
    """
    if d.arity != rel.arity:
        raise ContractError(f"DMVD over {d.arity} attributes, relation has {rel.arity}")
    if len(d.rhs_blocks) <= 1:
        return True
    left, right = np.triu_indices(len(rel), k=1)
    if left.size == 0:
        return True
    agree = rel.codes[left] == rel.codes[right]
    on_lhs = agree[:, list(d.lhs)].all(axis=1) if d.lhs else np.ones(left.size, dtype=bool)
    agree = agree[on_lhs]
    broken_blocks = np.zeros(agree.shape[0], dtype=np.int64)
    for block in d.rhs_blocks:
        broken_blocks += ~agree[:, list(block)].all(axis=1)
    return bool((broken_blocks <= 1).all())

"""
Binarization of a relation into a formal context over tuple pairs.
An FD X -> Y holds in the relation iff the implication X -> Y holds in
K = (pairs of tuples, attributes, agreement).
"""

import logging
from typing import FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np

from .exceptions import ContractError
from .relation import AttrSet, Relation, make_attr_set

logger = logging.getLogger(__name__)

ObjectSet = FrozenSet[int]
TuplePair = Tuple[int, int]


class FormalContext:
    """Objects x attributes boolean incidence; one bit-row per object"""

    def __init__(self, objects: Sequence[TuplePair], attributes: Sequence[str], incidence: np.ndarray):
        objects = tuple((int(i), int(j)) for i, j in objects)
        attributes = tuple(attributes)
        incidence = np.asarray(incidence, dtype=bool)
        if len(set(objects)) != len(objects):
            raise ContractError("duplicate object labels in formal context")
        if incidence.shape != (len(objects), len(attributes)):
            raise ContractError(
                f"incidence shape {incidence.shape} does not match "
                f"{len(objects)} objects x {len(attributes)} attributes"
            )
        incidence = incidence.copy()
        incidence.setflags(write=False)
        self.objects = objects
        self.attributes = attributes
        self.incidence = incidence

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    def __repr__(self) -> str:
        return f"FormalContext({self.n_objects} objects x {self.n_attributes} attributes)"


def binarize(rel: Relation) -> FormalContext:
    """
    One object per unordered pair {i, j} (i < j) of tuples; the pair is
    incident with attribute a iff both tuples agree on a

    Args:
        rel: Relation

    Returns:
        FormalContext with C(n, 2) objects
    """
    n = len(rel)
    left, right = np.triu_indices(n, k=1)
    codes = rel.codes
    incidence = codes[left] == codes[right]
    objects = list(zip(left.tolist(), right.tolist()))
    logger.debug(f"Binarized {n} tuples into {len(objects)} tuple pairs")
    return FormalContext(objects, rel.attributes, incidence.reshape(len(objects), rel.arity))


def _extent_mask(ctx: FormalContext, xs: AttrSet) -> np.ndarray:
    if not xs:
        return np.ones(ctx.n_objects, dtype=bool)
    return ctx.incidence[:, list(xs)].all(axis=1)


def extent(ctx: FormalContext, xs: Iterable[int]) -> ObjectSet:
    """Objects incident with every attribute of xs; all objects for xs = {}"""
    xs = make_attr_set(xs, ctx.n_attributes)
    return frozenset(np.flatnonzero(_extent_mask(ctx, xs)).tolist())


def intent(ctx: FormalContext, objects: Iterable[int]) -> AttrSet:
    """Attributes shared by every object in the set; all attributes for the empty set"""
    rows = sorted(set(int(o) for o in objects))
    for o in rows:
        if o < 0 or o >= ctx.n_objects:
            raise ContractError(f"object index {o} out of range 0..{ctx.n_objects - 1}")
    if not rows:
        return tuple(range(ctx.n_attributes))
    shared = ctx.incidence[rows].all(axis=0)
    return tuple(np.flatnonzero(shared).tolist())


def attr_closure(ctx: FormalContext, xs: Iterable[int]) -> AttrSet:
    """
    Double derivation X'' of an attribute set

    Args:
        ctx: Formal context
        xs: Attribute indices

    Returns:
        All attributes incident with every object of extent(xs)
    """
    xs = make_attr_set(xs, ctx.n_attributes)
    mask = _extent_mask(ctx, xs)
    if not mask.any():
        return tuple(range(ctx.n_attributes))
    shared = ctx.incidence[mask].all(axis=0)
    return tuple(np.flatnonzero(shared).tolist())


def implication_holds(ctx: FormalContext, xs: Iterable[int], ys: Iterable[int]) -> bool:
    """True iff ys is contained in the closure of xs"""
    ys = make_attr_set(ys, ctx.n_attributes)
    closure = set(attr_closure(ctx, xs))
    return all(y in closure for y in ys)


def to_burmeister(ctx: FormalContext) -> str:
    """
    Burmeister-style plain text: "B", object count, attribute count,
    object labels "i,j", attribute names, then one '.'/'X' row per object
    """
    lines: List[str] = ["B", str(ctx.n_objects), str(ctx.n_attributes)]
    lines.extend(f"{i},{j}" for i, j in ctx.objects)
    lines.extend(ctx.attributes)
    for row in ctx.incidence:
        lines.append("".join("X" if bit else "." for bit in row))
    return "\n".join(lines) + "\n"

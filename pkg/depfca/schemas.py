"""
JSON output models for the CLI. Shapes are documented in docs/json_schemas.md.
"""

from typing import List, Literal, Sequence

from pydantic import BaseModel, TypeAdapter

from .fd_discovery import FunctionalDependency
from .mvd import AttrPartition
from .relation import Relation


class FDRecord(BaseModel):
    lhs: List[str]
    rhs: str

    @classmethod
    def from_fd(cls, fd: FunctionalDependency, rel: Relation) -> "FDRecord":
        return cls(lhs=rel.names(fd.lhs), rhs=rel.attributes[fd.rhs])


class CheckResult(BaseModel):
    kind: Literal["fd", "mvd", "dmvd"]
    lhs: List[str]
    # fd: one block; mvd / dmvd: the right-hand blocks in canonical order
    rhs: List[List[str]]
    method: str
    holds: bool


class PartitionRecord(BaseModel):
    blocks: List[List[str]]


class TuplePartitionRecord(BaseModel):
    attributes: List[str]
    blocks: List[List[int]]


class ContextRecord(BaseModel):
    objects: List[List[int]]
    attributes: List[str]
    incidence: List[List[bool]]


class LatticeRecord(BaseModel):
    kind: Literal["dmvd", "mvd"]
    closure: Literal["meet", "join", "gamma"]
    elements: List[List[List[str]]]


def partition_blocks(p: AttrPartition, names: Sequence[str]) -> List[List[str]]:
    return [[names[x] for x in block] for block in p.blocks]


def dump_json(model_type, value) -> str:
    """Serialize with indent=2; deterministic for identical input"""
    return TypeAdapter(model_type).dump_json(value, indent=2).decode("utf-8")

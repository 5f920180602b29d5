"""
Relational data model and CSV ingestion.
A Relation is the database DB = (T, A) every other module consumes.
"""

import csv
import logging
import os
from typing import Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
import pandas as pd

from .config import IngestOptions
from .exceptions import ContractError, IngestionError

logger = logging.getLogger(__name__)

# Ascending tuple of attribute indices without duplicates
AttrSet = Tuple[int, ...]
Row = Tuple[str, ...]


class Relation:
    """Immutable table: named attributes over indexed tuples of string values"""

    def __init__(
        self,
        attributes: Sequence[str],
        tuples: Sequence[Sequence[str]],
        provenance: str = "inline",
        null_distinct: bool = False,
    ):
        """
        Build a relation and validate its shape

        Args:
            attributes: Attribute names, unique
            tuples: Rows, each with exactly len(attributes) values
            provenance: File path or "inline"
            null_distinct: Treat each empty cell as unequal to every cell
        """
        attributes = tuple(str(a) for a in attributes)
        seen = set()
        for name in attributes:
            if name in seen:
                raise ContractError(f"duplicate attribute: {name!r}")
            seen.add(name)

        rows = tuple(tuple(str(v) for v in row) for row in tuples)
        for i, row in enumerate(rows):
            if len(row) != len(attributes):
                raise ContractError(
                    f"tuple {i} has {len(row)} values, expected {len(attributes)}"
                )

        self._attributes = attributes
        self._tuples = rows
        self._provenance = provenance
        self._null_distinct = null_distinct
        self._codes = _encode(attributes, rows, null_distinct)

    @classmethod
    def from_rows(
        cls,
        attributes: Sequence[str],
        rows: Iterable[Sequence],
        provenance: str = "inline",
        null_distinct: bool = False,
    ) -> "Relation":
        return cls(attributes, list(rows), provenance=provenance, null_distinct=null_distinct)

    @property
    def attributes(self) -> Tuple[str, ...]:
        return self._attributes

    @property
    def tuples(self) -> Tuple[Row, ...]:
        return self._tuples

    @property
    def provenance(self) -> str:
        return self._provenance

    @property
    def null_distinct(self) -> bool:
        return self._null_distinct

    @property
    def arity(self) -> int:
        return len(self._attributes)

    @property
    def codes(self) -> np.ndarray:
        """
        Integer matrix (n_tuples x arity); two cells of a column share a code
        iff their values are equal under the relation's null semantics
        """
        return self._codes

    def __len__(self) -> int:
        return len(self._tuples)

    def __repr__(self) -> str:
        return f"Relation({len(self)} tuples over {list(self._attributes)}, from {self._provenance})"

    def attr_set(self, indices: Iterable[int]) -> AttrSet:
        """Canonical AttrSet from attribute indices; out-of-range is a contract error"""
        return make_attr_set(indices, self.arity)

    def resolve(self, names: Iterable[str]) -> AttrSet:
        """
        Resolve attribute names (case-sensitive) to a canonical AttrSet

        Args:
            names: Header names

        Returns:
            Ascending tuple of attribute indices
        """
        index = {name: i for i, name in enumerate(self._attributes)}
        missing = [name for name in names if name not in index]
        if missing:
            raise ContractError(
                f"unknown attribute(s) {missing}; available: {list(self._attributes)}"
            )
        return tuple(sorted({index[name] for name in names}))

    def names(self, xs: Iterable[int]) -> List[str]:
        return [self._attributes[i] for i in xs]


def make_attr_set(indices: Iterable[int], arity: int) -> AttrSet:
    xs = tuple(sorted(set(int(i) for i in indices)))
    for i in xs:
        if i < 0 or i >= arity:
            raise ContractError(f"attribute index {i} out of range 0..{arity - 1}")
    return xs


def _encode(attributes: Tuple[str, ...], rows: Tuple[Row, ...], null_distinct: bool) -> np.ndarray:
    n, m = len(rows), len(attributes)
    codes = np.zeros((n, m), dtype=np.int64)
    if n == 0 or m == 0:
        return codes
    frame = pd.DataFrame(list(rows), columns=range(m), dtype=str)
    for j in range(m):
        column = frame[j]
        col_codes, uniques = pd.factorize(column, sort=False)
        col_codes = col_codes.astype(np.int64)
        if null_distinct:
            empty = (column == "").to_numpy()
            n_empty = int(empty.sum())
            if n_empty:
                col_codes[empty] = len(uniques) + np.arange(n_empty, dtype=np.int64)
        codes[:, j] = col_codes
    codes.setflags(write=False)
    return codes


def load_csv(path: str, opts: Optional[IngestOptions] = None) -> Relation:
    """
    Load a CSV file (RFC 4180, UTF-8 with or without BOM, header row mandatory)

    Args:
        path: Path to the CSV file
        opts: Ingestion options (dedupe, null semantics, delimiter)

    Returns:
        Relation with raw string values
    """
    opts = opts or IngestOptions()
    if not os.path.exists(path):
        raise IngestionError(f"file not found: {path}")

    # pandas pads short rows silently, so rows are read with csv to keep
    # per-row field counts for the ragged-row diagnostic
    try:
        with open(path, newline="", encoding="utf-8-sig") as handle:
            records = list(csv.reader(handle, delimiter=opts.delimiter, strict=True))
    except (csv.Error, UnicodeDecodeError) as e:
        raise IngestionError(f"cannot parse {path}: {e}") from e

    if not records:
        raise IngestionError(f"empty file: {path}")

    header = records[0]
    if not header:
        raise IngestionError(f"empty header row in {path}")
    duplicates = sorted({name for name in header if header.count(name) > 1})
    if duplicates:
        raise IngestionError(f"duplicate attribute(s) {duplicates} in header of {path}")

    body = []
    # a one-column row holding only an empty value reads back as []; it is
    # a tuple unless it trails the last non-blank record
    last = max((k for k, record in enumerate(records) if record), default=0)
    for row_number, record in enumerate(records[1:last + 1], start=2):
        if not record:
            if len(header) != 1:
                continue  # blank line
            record = [""]
        if len(record) != len(header):
            raise IngestionError(
                f"ragged row {row_number} in {path}: {len(record)} fields, header has {len(header)}"
            )
        body.append(record)

    frame = pd.DataFrame(body, columns=range(len(header)), dtype=str)
    if opts.dedupe_rows:
        before = len(frame)
        frame = frame.drop_duplicates(keep="first")
        if len(frame) != before:
            logger.info(f"Removed {before - len(frame)} duplicate rows from {path}")

    rel = Relation(
        header,
        list(frame.itertuples(index=False, name=None)),
        provenance=path,
        null_distinct=opts.null_distinct,
    )
    logger.info(f"Loaded {len(rel)} tuples over {rel.arity} attributes from {path}")
    return rel


def project(rel: Relation, xs: Iterable[int]) -> Set[Row]:
    """
    Set-semantics projection of the relation onto an attribute set

    Args:
        rel: Relation
        xs: Attribute indices

    Returns:
        Set of distinct projected rows; {()} for the empty attribute set
        on a non-empty relation
    """
    xs = rel.attr_set(xs)
    return {tuple(row[i] for i in xs) for row in rel.tuples}

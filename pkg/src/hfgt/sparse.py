"""Coordinate-list sparse structures for boolean matrices and 3-way tensors.

All coordinates are 1-based, matching the resource/process indexing used
throughout the toolbox and the Matrix Market export convention.  Entry sets
are frozen; every operation returns a new structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

Coord2 = tuple[int, int]
Coord3 = tuple[int, int, int]

# Dense materialization guard: products of dimensions above this are refused.
DENSE_LIMIT = 10**6


def _check_bounds2(rows: int, cols: int, entries: Iterable[Coord2]) -> None:
    for r, c in entries:
        if not (1 <= r <= rows and 1 <= c <= cols):
            raise ValueError(f"entry ({r}, {c}) outside {rows}x{cols}")


@dataclass(frozen=True)
class SparseBoolMatrix:
    """Boolean matrix stored as a set of (row, col) coordinates."""

    rows: int
    cols: int
    entries: frozenset[Coord2] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", frozenset(self.entries))
        _check_bounds2(self.rows, self.cols, self.entries)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def __contains__(self, coord: Coord2) -> bool:
        return coord in self.entries

    def sorted_entries(self) -> list[Coord2]:
        return sorted(self.entries)

    def and_not(self, other: SparseBoolMatrix) -> SparseBoolMatrix:
        """Elementwise self AND NOT other (same shape required)."""
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return SparseBoolMatrix(self.rows, self.cols, self.entries - other.entries)

    def transpose(self) -> SparseBoolMatrix:
        return SparseBoolMatrix(self.cols, self.rows, frozenset((c, r) for r, c in self.entries))

    def bool_matmul(self, other: SparseBoolMatrix) -> SparseBoolMatrix:
        """Boolean matrix product: (i,k) set iff some j links i to k."""
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        by_row: dict[int, set[int]] = {}
        for j, k in other.entries:
            by_row.setdefault(j, set()).add(k)
        out: set[Coord2] = set()
        for i, j in self.entries:
            for k in by_row.get(j, ()):
                out.add((i, k))
        return SparseBoolMatrix(self.rows, other.cols, frozenset(out))

    def restrict_cols(self, keep: Iterable[int]) -> SparseBoolMatrix:
        """Keep the given columns (in the given order) and renumber from 1."""
        order = list(keep)
        remap = {old: new for new, old in enumerate(order, start=1)}
        kept = frozenset((r, remap[c]) for r, c in self.entries if c in remap)
        return SparseBoolMatrix(self.rows, len(order), kept)

    def restrict_rows(self, keep: Iterable[int]) -> SparseBoolMatrix:
        order = list(keep)
        remap = {old: new for new, old in enumerate(order, start=1)}
        kept = frozenset((remap[r], c) for r, c in self.entries if r in remap)
        return SparseBoolMatrix(len(order), self.cols, kept)

    def to_dense(self) -> np.ndarray:
        if self.rows * self.cols > DENSE_LIMIT:
            raise ValueError("refusing to densify above the size guard")
        out = np.zeros((self.rows, self.cols), dtype=bool)
        for r, c in self.entries:
            out[r - 1, c - 1] = True
        return out


@dataclass(frozen=True)
class SparseBoolTensor3:
    """Boolean 3-way tensor stored as a set of coordinate triples."""

    dims: Coord3
    entries: frozenset[Coord3] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", frozenset(self.entries))
        d1, d2, d3 = self.dims
        for i, j, k in self.entries:
            if not (1 <= i <= d1 and 1 <= j <= d2 and 1 <= k <= d3):
                raise ValueError(f"entry ({i}, {j}, {k}) outside {self.dims}")

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def __contains__(self, coord: Coord3) -> bool:
        return coord in self.entries

    def sorted_entries(self) -> list[Coord3]:
        return sorted(self.entries)


@dataclass(frozen=True)
class SparseIntTensor3:
    """Integer 3-way tensor as a coordinate->value map (zeros dropped)."""

    dims: Coord3
    data: Mapping[Coord3, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {c: int(v) for c, v in self.data.items() if v != 0}
        object.__setattr__(self, "data", cleaned)
        d1, d2, d3 = self.dims
        for i, j, k in cleaned:
            if not (1 <= i <= d1 and 1 <= j <= d2 and 1 <= k <= d3):
                raise ValueError(f"entry ({i}, {j}, {k}) outside {self.dims}")

    @property
    def nnz(self) -> int:
        return len(self.data)

    def value(self, coord: Coord3) -> int:
        return self.data.get(coord, 0)

    def sorted_items(self) -> list[tuple[Coord3, int]]:
        return sorted(self.data.items())

    @staticmethod
    def difference(pos: SparseBoolTensor3, neg: SparseBoolTensor3) -> SparseIntTensor3:
        """Signed combination pos - neg of two boolean tensors."""
        if pos.dims != neg.dims:
            raise ValueError("shape mismatch")
        values: dict[Coord3, int] = {}
        for c in pos.entries:
            values[c] = values.get(c, 0) + 1
        for c in neg.entries:
            values[c] = values.get(c, 0) - 1
        return SparseIntTensor3(pos.dims, values)

"""Square Boolean matrices stored as row bitsets.

Row ``i`` is an int whose bit ``j`` is entry ``(i, j)``.  A subset of states is
encoded the same way, so ``v @ M`` (row vector times matrix) is the image of
a power state under ``M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


def bits(mask: int) -> Iterable[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class BoolMatrix:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        if any(r & ~full for r in self.rows):
            raise ValueError("row has bits outside the matrix dimension")

    @classmethod
    def identity(cls, n: int) -> BoolMatrix:
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> BoolMatrix:
        return cls(n, (0,) * n)

    @classmethod
    def ones(cls, n: int) -> BoolMatrix:
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> BoolMatrix:
        rows = [0] * n
        for i, j in pairs:
            rows[i] |= 1 << j
        return cls(n, tuple(rows))

    @classmethod
    def from_array(cls, array) -> BoolMatrix:
        a = np.asarray(array, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square 2-d array, got shape {a.shape}")
        n = a.shape[0]
        weights = 1 << np.arange(n, dtype=object)
        return cls(n, tuple(int(np.sum(weights[row])) for row in a))

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=bool)
        for i, r in enumerate(self.rows):
            for j in bits(r):
                out[i, j] = True
        return out

    def __getitem__(self, ij: tuple[int, int]) -> bool:
        i, j = ij
        return bool(self.rows[i] >> j & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j in bits(r)]

    def nnz(self) -> int:
        return sum(popcount(r) for r in self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_ones(self) -> bool:
        full = (1 << self.n) - 1
        return all(r == full for r in self.rows)

    def has_full_diagonal(self) -> bool:
        return all(r >> i & 1 for i, r in enumerate(self.rows))

    def transpose(self) -> BoolMatrix:
        cols = [0] * self.n
        for i, r in enumerate(self.rows):
            for j in bits(r):
                cols[j] |= 1 << i
        return BoolMatrix(self.n, tuple(cols))

    def image(self, vector: int) -> int:
        """Row vector ``vector`` (a bitset) multiplied by this matrix."""
        out = 0
        rows = self.rows
        while vector:
            low = vector & -vector
            out |= rows[low.bit_length() - 1]
            vector ^= low
        return out

    def __matmul__(self, other: BoolMatrix) -> BoolMatrix:
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        return BoolMatrix(self.n, tuple(other.image(r) for r in self.rows))

    def __pow__(self, k: int) -> BoolMatrix:
        if k < 0:
            raise ValueError("negative power")
        result = BoolMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def image_table(self) -> list[int]:
        """``table[v] == self.image(v)`` for every bitset ``v``; size ``2**n``."""
        table = [0] * (1 << self.n)
        for i, r in enumerate(self.rows):
            step = 1 << i
            for v in range(step, step << 1):
                table[v] = table[v - step] | r
        return table

    def __str__(self):
        return "\n".join(
            "".join("1" if r >> j & 1 else "0" for j in range(self.n)) for r in self.rows
        )


def bool_matmul(x: BoolMatrix, y: BoolMatrix) -> BoolMatrix:
    """Boolean product: ``(xy)[i, j] = OR_k x[i, k] AND y[k, j]``."""
    return x @ y


def vector_from_states(states: Sequence[int] | frozenset[int]) -> int:
    mask = 0
    for q in states:
        mask |= 1 << q
    return mask

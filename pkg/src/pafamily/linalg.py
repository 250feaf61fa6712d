"""Exact integer matrices.

Small immutable container plus the handful of exact operations the rest of the
package needs. Entries are Python ints, so nothing overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix, row-major.

    ``basis`` optionally labels rows and columns (same order for both). Under
    the column convention used throughout, column ``u`` is the image of basis
    vector ``u``.
    """

    rows: tuple[tuple[int, ...], ...]
    basis: tuple[Any, ...] | None = None

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")
        if self.basis is not None and len(self.basis) != n:
            raise ValueError(f"basis has {len(self.basis)} labels for dimension {n}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], basis=None) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows), None if basis is None else tuple(basis))

    @classmethod
    def identity(cls, n: int, basis=None) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], basis)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def labels(self) -> tuple:
        return self.basis if self.basis is not None else tuple(range(self.dim))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)) if self.rows else (), self.basis)

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.dim))

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for r in self.rows for x in r)

    def max_row_sum(self) -> int:
        return max(sum(r) for r in self.rows)

    def entry_sum(self) -> int:
        return sum(sum(r) for r in self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        cols = other.transpose().rows
        # sparse rows: skip zeros, the transition matrices have ~6 nonzeros per column
        out = []
        for r in self.rows:
            nz = [(k, x) for k, x in enumerate(r) if x]
            out.append(tuple(sum(x * c[k] for k, x in nz) for c in cols))
        return IntMatrix(tuple(out), self.basis if self.basis is not None else other.basis)

    def __pow__(self, k: int) -> "IntMatrix":
        if k < 0:
            raise ValueError("negative powers are not supported")
        fast = _int64_power(self, k)
        if fast is not None:
            return fast
        result = IntMatrix.identity(self.dim, self.basis)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def matvec(self, v: Sequence) -> list:
        if len(v) != self.dim:
            raise ValueError(f"vector of length {len(v)} for matrix of dimension {self.dim}")
        return [sum(x * v[k] for k, x in enumerate(r) if x) for r in self.rows]

    def to_numpy(self, dtype=float) -> np.ndarray:
        return np.array(self.rows, dtype=dtype).reshape(self.dim, self.dim)


_INT64_SAFE = 1 << 62


def _int64_power(m: IntMatrix, k: int) -> IntMatrix | None:
    """Repeated multiplication in int64 for nonnegative matrices, None if it could overflow.

    Each entry of ``P @ M`` is at most ``max_row_sum(P) * max(M)``, so checking
    that product before every step rules out overflow.
    """
    if not m.is_nonnegative() or m.dim == 0:
        return None
    a = np.array(m.rows, dtype=np.int64).reshape(m.dim, m.dim)
    top = int(a.max())
    p = np.identity(m.dim, dtype=np.int64)
    for _ in range(k):
        if int(p.sum(axis=1).max()) * max(top, 1) >= _INT64_SAFE // max(m.dim, 1):
            return None
        p = p @ a
    return IntMatrix(tuple(tuple(int(x) for x in r) for r in p), m.basis)


def determinant(m: IntMatrix) -> int:
    """Bareiss fraction-free elimination; every intermediate division is exact."""
    n = m.dim
    a = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1] if n else 1

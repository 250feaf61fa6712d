"""Digraph of a nonnegative integer matrix: paths, reachability, mixing."""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from typing import Any, Hashable

import numpy as np

from .linalg import IntMatrix


class Orientation(str, enum.Enum):
    """How matrix entries become edges.

    ``COLUMNS``: ``M[v][u]`` edges ``u -> v`` (a curve points at the curves in its image).
    ``ROWS``: ``M[u][v]`` edges ``u -> v``.
    """

    COLUMNS = "columns"
    ROWS = "rows"


@dataclass(frozen=True)
class Digraph:
    vertices: tuple[Any, ...]
    adjacency: tuple[tuple[int, ...], ...]  # adjacency[u][v] = number of edges u -> v
    orientation: Orientation = Orientation.COLUMNS

    @property
    def size(self) -> int:
        return len(self.vertices)

    def index(self, v: Hashable) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise KeyError(f"no vertex {v}") from None

    def multiplicity(self, u, v) -> int:
        return self.adjacency[self.index(u)][self.index(v)]

    def edge_count(self) -> int:
        return sum(map(sum, self.adjacency))

    def successors(self, i: int) -> list[int]:
        return [j for j, k in enumerate(self.adjacency[i]) if k]

    def to_edge_list(self) -> str:
        """One ``u v multiplicity`` line per edge class, vertices as ``a1``, ``d7``."""
        lines = []
        for i, u in enumerate(self.vertices):
            for j, k in enumerate(self.adjacency[i]):
                if k:
                    lines.append(f"{u} {self.vertices[j]} {k}")
        return "\n".join(lines) + "\n"


def from_matrix(m: IntMatrix, orientation: Orientation | str = Orientation.COLUMNS) -> Digraph:
    orientation = Orientation(orientation)
    if not m.is_nonnegative():
        raise ValueError("digraph needs a nonnegative matrix")
    adj = m.rows if orientation is Orientation.ROWS else m.transpose().rows
    return Digraph(tuple(m.labels), adj, orientation)


def self_loop_census(d: Digraph) -> dict:
    return {v: d.adjacency[i][i] for i, v in enumerate(d.vertices) if d.adjacency[i][i]}


def path_counts(d: Digraph, j: int) -> dict:
    """Number of directed edge-paths of length ``j`` starting at each vertex (with multiplicity)."""
    if j < 0:
        raise ValueError("path length must be nonnegative")
    counts = [1] * d.size
    for _ in range(j):
        counts = [sum(k * counts[w] for w, k in enumerate(row) if k) for row in d.adjacency]
    return dict(zip(d.vertices, counts))


def path_count_series(d: Digraph, j_max: int) -> list[dict]:
    """``path_counts`` for every length 0..j_max, sharing the work."""
    out = []
    counts = [1] * d.size
    out.append(dict(zip(d.vertices, counts)))
    for _ in range(j_max):
        counts = [sum(k * counts[w] for w, k in enumerate(row) if k) for row in d.adjacency]
        out.append(dict(zip(d.vertices, counts)))
    return out


def exact_length_cover(d: Digraph, v, k: int) -> set:
    """Vertices at the end of some directed path of length exactly ``k`` from ``v``."""
    if k < 0:
        raise ValueError("path length must be nonnegative")
    front = {d.index(v)}
    for _ in range(k):
        front = {w for u in front for w in d.successors(u)}
        if not front:
            break
    return {d.vertices[i] for i in front}


def _reach(d: Digraph, start: int, reverse: bool = False) -> set[int]:
    seen = {start}
    queue = deque([start])
    n = d.size
    while queue:
        u = queue.popleft()
        nbrs = (w for w in range(n) if d.adjacency[w][u]) if reverse else d.successors(u)
        for w in nbrs:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def is_strongly_connected(d: Digraph) -> bool:
    if d.size == 0:
        return False
    if d.size == 1:
        # a lone vertex counts as irreducible only with a loop (the 1x1 zero matrix is reducible)
        return d.adjacency[0][0] > 0
    return len(_reach(d, 0)) == d.size and len(_reach(d, 0, reverse=True)) == d.size


def period(d: Digraph) -> int:
    """gcd of cycle lengths of a strongly connected digraph (BFS level differences)."""
    if not is_strongly_connected(d):
        raise ValueError("period is only defined for strongly connected digraphs")
    level = {0: 0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in d.successors(u):
            if w not in level:
                level[w] = level[u] + 1
                queue.append(w)
    g = 0
    for u in range(d.size):
        for w in d.successors(u):
            g = math.gcd(g, level[u] + 1 - level[w])
    return g


def is_primitive(d: Digraph) -> bool:
    return is_strongly_connected(d) and period(d) == 1


def primitivity_exponent(m: IntMatrix, cap: int) -> int | None:
    """Least ``r <= cap`` with ``M^r`` entrywise positive, or None when it exceeds ``cap``.

    Positivity of a power of a nonnegative matrix depends only on the zero
    pattern, so the powers are tracked as exact 0/1 supports.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if not m.is_nonnegative():
        raise ValueError("primitivity is defined for nonnegative matrices")
    s = np.array(m.rows, dtype=np.int64).reshape(m.dim, m.dim) > 0
    step = s.astype(np.int64)
    power = s.copy()
    for r in range(1, cap + 1):
        if power.all():
            return r
        power = (power.astype(np.int64) @ step) > 0
    return None

"""The curve family a_j, b_j, c_j, d_j on the genus-g surface.

There are ``g - 1`` curves in each of the four families, indexed mod ``g - 1``.
Only the d-curves meet anything: d_j crosses a_j, a_{j+1}, b_j, b_{j+1} once
each and c_j twice. The order-(g-1) rotation shifts every index by one.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property

MIN_GENUS = 4


class Family(str, enum.Enum):
    A = "a"
    B = "b"
    C = "c"
    D = "d"


FAMILIES = (Family.A, Family.B, Family.C, Family.D)

# (family, index offset, weight) of the curves crossing d_j
_D_CROSSINGS = ((Family.A, 0, 1), (Family.A, 1, 1), (Family.B, 0, 1), (Family.B, 1, 1), (Family.C, 0, 2))


class GenusError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CurveId:
    family: Family
    index: int

    def __str__(self) -> str:
        return f"{self.family.value}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "CurveId":
        m = re.fullmatch(r"\s*([abcdABCD])_?(\d+)\s*", text)
        if not m:
            raise ValueError(f"not a curve name: {text!r}")
        return cls(Family(m.group(1).lower()), int(m.group(2)))


def check_genus(g: int) -> None:
    if g < MIN_GENUS:
        raise GenusError(f"construction requires g >= {MIN_GENUS}, got g={g}")


def basis(g: int) -> tuple[CurveId, ...]:
    """Canonical ordering: the a-block, then b, c, d, each by ascending index."""
    check_genus(g)
    return tuple(CurveId(f, j) for f in FAMILIES for j in range(g - 1))


@dataclass(frozen=True)
class CurveSystem:
    """Curves of one genus with their intersection pairing.

    ``rotation`` is the index step (+1 or -1) taken by one application of the
    rotational symmetry.
    """

    genus: int
    rotation: int = 1

    def __post_init__(self):
        check_genus(self.genus)
        if self.rotation not in (1, -1):
            raise ValueError("rotation step must be +1 or -1")

    @property
    def period(self) -> int:
        return self.genus - 1

    @cached_property
    def basis(self) -> tuple[CurveId, ...]:
        return basis(self.genus)

    @cached_property
    def _position(self) -> dict[CurveId, int]:
        return {c: i for i, c in enumerate(self.basis)}

    def curve(self, family: Family | str, index: int) -> CurveId:
        return CurveId(Family(family), index % self.period)

    def position(self, u: CurveId) -> int:
        try:
            return self._position[u]
        except KeyError:
            raise ValueError(f"{u} is not a curve of the genus-{self.genus} system") from None

    @cached_property
    def pairing(self) -> dict[tuple[CurveId, CurveId], int]:
        """Nonzero intersection numbers only, stored in both orders."""
        table: dict[tuple[CurveId, CurveId], int] = {}
        for j in range(self.period):
            d = self.curve(Family.D, j)
            for fam, off, w in _D_CROSSINGS:
                x = self.curve(fam, j + off)
                table[(d, x)] = table.get((d, x), 0) + w
                table[(x, d)] = table[(d, x)]
        return table

    def intersection(self, u: CurveId, v: CurveId) -> int:
        self.position(u), self.position(v)
        return self.pairing.get((u, v), 0)

    def rotate(self, u: CurveId, steps: int = 1) -> CurveId:
        self.position(u)
        return self.curve(u.family, u.index + self.rotation * steps)

    def total_intersection(self, u: CurveId) -> int:
        return sum(self.intersection(u, v) for v in self.basis)

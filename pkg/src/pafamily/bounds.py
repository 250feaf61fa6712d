"""Closed-form bounds on dilatations, translation lengths and kappa_g.

All logarithms are natural. Floating point results that enter interval
arithmetic are rounded outward by a couple of ulps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .spectral import RootEnclosure


def _down(x: float, ulps: int = 2) -> float:
    for _ in range(ulps):
        x = math.nextafter(x, -math.inf)
    return x


def _up(x: float, ulps: int = 2) -> float:
    for _ in range(ulps):
        x = math.nextafter(x, math.inf)
    return x


def _float_below(q: Fraction) -> float:
    f = float(q)
    return math.nextafter(f, -math.inf) if Fraction(f) > q else f


def _float_above(q: Fraction) -> float:
    f = float(q)
    return math.nextafter(f, math.inf) if Fraction(f) < q else f


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, other: "Interval | float") -> bool:
        if isinstance(other, Interval):
            return self.lo <= other.lo and other.hi <= self.hi
        return self.lo <= other <= self.hi

    def as_list(self) -> list[float]:
        return [self.lo, self.hi]


def log_enclosure(enc: RootEnclosure) -> Interval:
    """Outward-rounded natural log of a positive rational enclosure."""
    if enc.lower <= 0:
        raise ValueError("logarithm needs a positive enclosure")
    return Interval(_down(math.log(_float_below(enc.lower))), _up(math.log(_float_above(enc.upper))))


# --- the closed forms --------------------------------------------------------


def dil_lower(g: int) -> float:
    return math.log(4 * g - 4) / (2 * g - 2)


def dil_upper(g: int) -> float:
    return math.log(10 * g - 21) / (g - 2)


def dil_upper_sharp(g: int) -> float:
    return 3 * math.log(4 * g - 4) / (4 * g - 4)


def ellC_lower(g: int) -> Fraction:
    return Fraction(1, 2 * g - 1)


def kappa_upper(g: int) -> float:
    return 2 / math.log(g - 0.5)


def filling_floor(g: int) -> int:
    return 2 * g - 1


def euler_identity_check(i: int, F: int, g: int) -> bool:
    """Filling pair with ``i`` crossings and ``F`` complementary disks: ``i - F = 2g - 2``."""
    if i < 1 or F < 1:
        raise ValueError("need at least one crossing and one disk")
    return i - F == 2 * g - 2


@dataclass
class BoundsReport:
    genus: int
    dil_lower: float | None = None
    dil_upper: float | None = None
    dil_upper_sharp: float | None = None
    ellC_lower: Fraction | None = None
    kappa_upper: float | None = None
    filling_floor: int | None = None
    dilatation: RootEnclosure | None = None
    log_dilatation: Interval | None = None
    log_dilatation_source: str | None = None
    kappa_lower: Interval | None = None
    mixing_exponent: int | None = None
    in_lemma_range: bool = False
    notes: list[str] = field(default_factory=list)
    conventions: dict = field(default_factory=dict)


def closed_form_bounds(g: int) -> BoundsReport:
    """Evaluate every closed form valid at ``g``; fields out of range stay None with a note."""
    rep = BoundsReport(genus=g)
    if g < 2:
        rep.notes.append(f"g={g}: every closed form needs g >= 2")
        return rep
    rep.kappa_upper = kappa_upper(g)
    rep.filling_floor = filling_floor(g)
    rep.ellC_lower = ellC_lower(g)
    if g >= 4:
        rep.dil_lower = dil_lower(g)
        rep.dil_upper = dil_upper(g)
        rep.dil_upper_sharp = dil_upper_sharp(g)
        rep.in_lemma_range = g > 4
        if g == 4:
            rep.notes.append("g=4 lies outside the dilatation lemma's hypothesis g > 4")
    else:
        rep.notes.append(f"g={g}: dilatation bounds and the curve construction need g >= 4")
    return rep


def kappa_interval(g: int, log_dil: Interval) -> tuple[Interval, float]:
    """(lower bound on kappa_g as an interval, closed-form upper bound)."""
    if log_dil.lo <= 0:
        raise ValueError("log dilatation must be a positive interval")
    ell = float(ellC_lower(g))
    lower = Interval(_down(ell / log_dil.hi), _up(ell / log_dil.lo))
    return lower, kappa_upper(g)


def log_uniform_genera(g_min: int, g_max: int, count: int) -> list[int]:
    if count < 2:
        return [g_min]
    ratio = math.log(g_max / g_min)
    gs = {round(g_min * math.exp(ratio * k / (count - 1))) for k in range(count)}
    return sorted(gs)


@dataclass(frozen=True)
class AsymptoticRow:
    genus: int
    kappa_lower: float
    kappa_upper: float
    kappa_lower_log_g: float
    kappa_upper_log_g: float
    source: str = "closed-form dilatation upper bound"


def asymptotic_row(g: int) -> AsymptoticRow:
    # closed-form dilatation upper bound stands in for log(lambda), still a valid kappa lower bound
    lower, upper = kappa_interval(g, Interval.point(dil_upper(g)))
    lg = math.log(g)
    return AsymptoticRow(g, lower.lo, upper, lower.lo * lg, upper * lg)


def asymptotic_report(g_min: int, g_max: int, step: int = 1, genera: Iterable[int] | None = None) -> list[AsymptoticRow]:
    if genera is None:
        if not 4 <= g_min <= g_max:
            raise ValueError("need 4 <= g_min <= g_max")
        genera = range(g_min, g_max + 1, step)
    return [asymptotic_row(g) for g in genera]

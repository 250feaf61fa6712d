"""Exact characteristic polynomials and certified Perron roots."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np
import sympy

from .curves import check_genus
from .linalg import IntMatrix

DEFAULT_TOL = Fraction(1, 10**10)


def as_fraction(x) -> Fraction:
    # str() first so that 1e-9 means the decimal, not the nearest double
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coefficients)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coefficients", c or (0,))

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> "IntPolynomial":
        deg = max(terms)
        c = [0] * (deg + 1)
        for e, v in terms.items():
            c[e] += v
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1

    def is_palindromic(self) -> bool:
        return self.coefficients == self.coefficients[::-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Fraction) -> int:
        # clear the denominator so evaluation stays in integers
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        acc = 0
        qpow = 1
        for c in reversed(self.coefficients):
            acc = acc * p + c * qpow
            qpow *= q
        return (acc > 0) - (acc < 0)

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coefficients]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "IntPolynomial":
        return cls(tuple(int(s) for s in items))

    def __str__(self) -> str:
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coefficients[e]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            body = str(mag) if (mag != 1 or e == 0) else ""
            parts.append((sign, body + mono))
        if not parts:
            return "0"
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {t}" for s, t in parts[1:]])

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def divmod_monic(self, d: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        if not d.is_monic:
            raise ValueError("divisor must be monic")
        rem = list(self.coefficients)
        q = [0] * max(1, self.degree - d.degree + 1)
        for k in range(self.degree - d.degree, -1, -1):
            c = rem[k + d.degree]
            if c:
                q[k] = c
                for i, b in enumerate(d.coefficients):
                    rem[k + i] -= c * b
        return IntPolynomial(tuple(q)), IntPolynomial(tuple(rem[: max(1, d.degree)]))


def seven_term_poly(h: int) -> IntPolynomial:
    """x^(2h) - x^(2h-1) - x^(h+1) - 10x^h - x^(h-1) - x + 1, for h >= 3."""
    if h < 3:
        raise ValueError("need h >= 3 for seven distinct exponents")
    return IntPolynomial.from_terms({2 * h: 1, 2 * h - 1: -1, h + 1: -1, h: -10, h - 1: -1, 1: -1, 0: 1})


def expected_char_poly(g: int) -> IntPolynomial:
    """x^(4g-4) - x^(4g-5) - x^(2g-1) - 10x^(2g-2) - x^(2g-3) - x + 1."""
    check_genus(g)
    return seven_term_poly(2 * g - 2)


def char_poly(m: IntMatrix) -> IntPolynomial:
    """Exact det(xI - M) over the integers."""
    if m.dim == 0:
        return IntPolynomial((1,))
    coeffs = sympy.Matrix(m.rows).charpoly().all_coeffs()
    return IntPolynomial(tuple(int(c) for c in reversed(coeffs)))


# --- Perron root ------------------------------------------------------------


@dataclass(frozen=True)
class RootEnclosure:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lower", Fraction(self.lower))
        object.__setattr__(self, "upper", Fraction(self.upper))
        if self.lower > self.upper:
            raise ValueError("lower end exceeds upper end")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def contains(self, x) -> bool:
        return self.lower <= x <= self.upper

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def floats(self) -> tuple[float, float]:
        return float(self.lower), float(self.upper)


class NotPerronFrobenius(ValueError):
    pass


def _float_seed(m: IntMatrix) -> list[int]:
    """Strictly positive integer vector close to the Perron eigenvector."""
    a = m.to_numpy(float)
    n = m.dim
    try:
        vals, vecs = np.linalg.eig(a)
        k = int(np.argmax(vals.real))
        x = np.abs(vecs[:, k].real)
        if not np.all(np.isfinite(x)) or x.max() <= 0:
            raise np.linalg.LinAlgError
    except np.linalg.LinAlgError:
        x = np.ones(n)
    x = x / x.max()
    scale = 1 << 62
    return [max(1, int(round(xi * scale))) for xi in x]


def _collatz_wielandt(m: IntMatrix, v: Sequence[int]) -> tuple[Fraction, Fraction, list[int]]:
    w = m.matvec(v)
    ratios = [Fraction(wi, vi) for wi, vi in zip(w, v)]
    return min(ratios), max(ratios), w


def _renormalize(v: list[int], keep_bits: int = 160) -> list[int]:
    top = max(v).bit_length()
    if top <= keep_bits:
        return v
    s = top - keep_bits
    return [max(1, x >> s) for x in v]


def _check_perron_input(m: IntMatrix) -> None:
    from .digraph import from_matrix, is_strongly_connected

    if not m.is_nonnegative():
        raise NotPerronFrobenius("matrix has negative entries")
    if not is_strongly_connected(from_matrix(m)):
        raise NotPerronFrobenius("matrix is reducible")


def _perron_iterate(m: IntMatrix, tol: Fraction, max_iter: int, relative: bool):
    _check_perron_input(m)
    v = _float_seed(m)
    lo, hi, w = _collatz_wielandt(m, v)
    # row and column sums bound the Perron root too
    col_sums = [sum(c) for c in zip(*m.rows)]
    lo = max(lo, min(sum(r) for r in m.rows), min(col_sums))
    hi = min(hi, m.max_row_sum(), max(col_sums))
    # M + I is primitive whenever M is irreducible
    shifted = IntMatrix(tuple(tuple(x + (i == j) for j, x in enumerate(r)) for i, r in enumerate(m.rows)))
    it = 0
    while hi - lo > (tol * lo if relative else tol):
        if it >= max_iter:
            raise ArithmeticError(f"Perron enclosure did not reach width {float(tol):.3g} in {max_iter} iterations")
        v = _renormalize(shifted.matvec(v))
        clo, chi, w = _collatz_wielandt(m, v)
        # every positive vector gives a valid enclosure, so keep the tightest ends
        lo, hi = max(lo, clo), min(hi, chi)
        it += 1
    return RootEnclosure(lo, hi), v


def perron_root(m: IntMatrix, tol=DEFAULT_TOL, max_iter: int = 100_000) -> RootEnclosure:
    """Certified enclosure of the spectral radius of a nonnegative irreducible matrix.

    For any strictly positive ``v`` the ratios ``(Mv)_i / v_i`` bracket the
    Perron root (Collatz-Wielandt). The vector starts from a floating point
    eigenvector and is refined by exact power iteration with ``M + I``.
    """
    tol = as_fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    enc, _ = _perron_iterate(m, tol, max_iter, relative=False)
    return enc


def perron_vector(m: IntMatrix, tol=DEFAULT_TOL, max_iter: int = 100_000) -> tuple[Fraction, ...]:
    """Positive eigenvector normalized to sum 1, residual at most ``tol * lambda``."""
    from .digraph import from_matrix, is_primitive

    tol = as_fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if not m.is_nonnegative() or not is_primitive(from_matrix(m)):
        raise NotPerronFrobenius("matrix is not primitive")
    enc, v = _perron_iterate(m, tol, max_iter, relative=True)
    total = sum(v)
    return tuple(Fraction(x, total) for x in v)


def residual(m: IntMatrix, v: Sequence[Fraction], lam) -> Fraction:
    mv = m.matvec(list(v))
    lam = Fraction(lam)
    return max(abs(a - lam * b) for a, b in zip(mv, v))


def bisect_largest_root(p: IntPolynomial, lo, hi, tol=DEFAULT_TOL) -> RootEnclosure:
    """Shrink a sign-change bracket ``p(lo) <= 0 < p(hi)`` by exact bisection.

    With ``p`` monic and no real root above ``hi``, the bracket keeps the
    largest real root.
    """
    lo, hi, tol = Fraction(lo), Fraction(hi), as_fraction(tol)
    if p.sign_at(hi) <= 0:
        raise ValueError("polynomial must be positive at the upper end")
    if p.sign_at(lo) > 0:
        raise ValueError("no sign change on the bracket")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if p.sign_at(mid) > 0:
            hi = mid
        else:
            lo = mid
    return RootEnclosure(lo, hi)


def perron_root_by_bisection(m: IntMatrix, tol=DEFAULT_TOL, poly: IntPolynomial | None = None) -> RootEnclosure:
    """Independent route: largest real root of the characteristic polynomial on [1, max row sum].

    The Perron root is the largest real root, is simple for irreducible input,
    and is bounded by the maximum row sum. The scan walks down from the top of
    the bracket until the polynomial turns nonpositive.
    """
    _check_perron_input(m)
    poly = poly or char_poly(m)
    hi = Fraction(m.max_row_sum())
    lo = Fraction(min(sum(r) for r in m.rows))
    if poly.sign_at(lo) > 0:
        # another root may sit between the min row sum and the Perron root;
        # walk down from the top on finer and finer grids until p turns nonpositive
        for refine in range(6, 40):
            step = (hi - lo) / (1 << refine)
            x = hi
            while x > lo and poly.sign_at(x) > 0:
                x -= step
            if poly.sign_at(x) <= 0:
                lo = x
                break
        else:
            raise ArithmeticError("no sign change found below the Perron root")
    return bisect_largest_root(poly, lo, hi, tol)


# --- root moduli ------------------------------------------------------------


def _inclusion_radii(coeffs: list[int], roots) -> list:
    """Radius ``n |p(z) / p'(z)|`` around each approximation contains a root of ``p``."""
    n = len(coeffs) - 1
    radii = []
    for z in roots:
        val, der = mpmath.polyval(coeffs, z, derivative=True)
        radii.append(mpmath.inf if der == 0 else n * abs(val / der))
    return radii


def _disjoint(roots, radii) -> bool:
    pts = sorted(zip(roots, radii), key=lambda t: (float(t[0].real), float(t[0].imag)))
    for i, (z, r) in enumerate(pts):
        for w, s in pts[i + 1 :]:
            if float(w.real - z.real) > float(r + s):
                break
            if abs(z - w) <= r + s:
                return False
    return True


def max_root_modulus(p: IntPolynomial, accuracy: float = 1e-12) -> tuple[float, float]:
    """Largest root modulus of ``p`` and a bound on its error.

    Companion-matrix roots are polished by Newton steps in extended precision.
    If the ``n`` inclusion disks are pairwise disjoint, every root is accounted
    for and the largest radius bounds the error. Otherwise (clustered or
    repeated roots) fall back to mpmath's simultaneous iteration.
    """
    if p.degree < 1:
        raise ValueError("constant polynomial has no roots")
    coeffs = [int(c) for c in reversed(p.coefficients)]
    digits = max(30, int(-math.log10(accuracy)) + 10)
    with mpmath.workdps(digits):
        roots = [mpmath.mpc(complex(z)) for z in np.roots([float(c) for c in coeffs])]
        for _ in range(8):
            polished = []
            for z in roots:
                val, der = mpmath.polyval(coeffs, z, derivative=True)
                polished.append(z - val / der if der != 0 else z)
            roots = polished
        radii = _inclusion_radii(coeffs, roots)
        if _disjoint(roots, radii) and max(radii) <= accuracy:
            k = max(range(len(roots)), key=lambda i: abs(roots[i]))
            return float(abs(roots[k])), float(max(radii))
        steps = 50 + 4 * p.degree
        for _ in range(4):
            try:
                roots, err = mpmath.polyroots(coeffs, maxsteps=steps, extraprec=2 * p.degree + 20, error=True)
                break
            except mpmath.libmp.NoConvergence:
                steps *= 4
        else:
            raise ArithmeticError("root finder did not converge")
        return float(max(abs(r) for r in roots)), float(err)


def dominant_root_check(p: IntPolynomial, enc: RootEnclosure, tol=1e-9) -> bool:
    """True iff every root of ``p`` has modulus at most ``enc.upper + tol``."""
    if not p.is_monic:
        raise ValueError("polynomial must be monic")
    tol = float(tol)
    mod, err = max_root_modulus(p, accuracy=min(tol, 1e-12))
    if err > tol:
        raise ArithmeticError(f"roots only resolved to {err:.2g}, requested {tol:.2g}")
    return mod <= float(enc.upper) + tol

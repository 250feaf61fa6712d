from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pafamily.linalg import IntMatrix, determinant
from pafamily.spectral import (
    IntPolynomial,
    NotPerronFrobenius,
    RootEnclosure,
    bisect_largest_root,
    char_poly,
    dominant_root_check,
    expected_char_poly,
    max_root_modulus,
    perron_root,
    perron_root_by_bisection,
    perron_vector,
    residual,
    seven_term_poly,
)
from pafamily.twists import phi_matrix

def det_oracle_holds(m: IntMatrix, p: IntPolynomial) -> bool:
    """p(k) == det(kI - M) at n + 1 integer points pins a monic degree-n polynomial down."""
    n = m.dim
    if p.degree != n or not p.is_monic:
        return False
    for k in range(-(n // 2), n - n // 2 + 1):
        shifted = IntMatrix.from_rows([[k * (i == j) - m[i, j] for j in range(n)] for i in range(n)])
        if p(k) != determinant(shifted):
            return False
    return True


def numpy_spectral_radius(m: IntMatrix) -> float:
    return float(max(abs(np.linalg.eigvals(m.to_numpy()))))


def test_char_poly_identity():
    assert char_poly(IntMatrix.identity(2)) == IntPolynomial((1, -2, 1))


@pytest.mark.parametrize("g", [4, 5, 6, 7])
def test_char_poly_phi_against_determinants(g):
    m = phi_matrix(g)
    assert det_oracle_holds(m, char_poly(m))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.lists(st.lists(st.integers(-50, 50), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_char_poly_random_against_determinants(rows):
    m = IntMatrix.from_rows(rows)
    assert det_oracle_holds(m, char_poly(m))


def test_char_poly_large_entries_against_determinants():
    rows = [[(7**i * 13**j) % 10**12 - 5 * 10**11 for j in range(6)] for i in range(6)]
    m = IntMatrix.from_rows(rows)
    assert det_oracle_holds(m, char_poly(m))


def test_expected_char_poly_values():
    for g in (4, 5, 9):
        n = 4 * g - 4
        want = {n: 1, n - 1: -1, 2 * g - 1: -1, 2 * g - 2: -10, 2 * g - 3: -1, 1: -1, 0: 1}
        assert expected_char_poly(g).coefficients == tuple(want.get(e, 0) for e in range(n + 1))
    assert str(expected_char_poly(9)) == "x^32 - x^31 - x^17 - 10x^16 - x^15 - x + 1"
    assert str(expected_char_poly(4)) == "x^12 - x^11 - x^7 - 10x^6 - x^5 - x + 1"


@pytest.mark.parametrize("g", [4, 7, 20])
def test_expected_char_poly_palindromic(g):
    assert expected_char_poly(g).is_palindromic()


@pytest.mark.parametrize("g", [4, 5, 6, 9, 15, 30])
def test_phi_char_poly_structure(g):
    """The constructed char poly is (x^(g-1) - 1)^2 times the seven-term family at g - 1."""
    p = char_poly(phi_matrix(g))
    cyc = IntPolynomial.from_terms({g - 1: 1, 0: -1})
    assert p == cyc * cyc * seven_term_poly(g - 1)
    assert p.is_palindromic()
    assert p.coefficients[-2] == -1
    assert p.coefficients[0] == 1


def test_polynomial_helpers():
    p = IntPolynomial((2, -3, 1))
    assert p(2) == 0 and p(Fraction(1, 2)) == Fraction(3, 4)
    assert p.sign_at(Fraction(3, 2)) == -1 and p.sign_at(3) == 1
    q, r = p.divmod_monic(IntPolynomial((-1, 1)))
    assert q == IntPolynomial((-2, 1)) and r == IntPolynomial((0,))
    assert IntPolynomial.from_strings(p.to_strings()) == p
    assert str(IntPolynomial((1, 0, -1))) == "-x^2 + 1"


def test_perron_root_scalar():
    enc = perron_root(IntMatrix.from_rows([[2]]))
    assert enc.lower == enc.upper == 2


@pytest.mark.parametrize("g", [4, 7])
def test_perron_root_rotation_permutation(g):
    # the rotation alone is reducible (four cycles), so use one (g-1)-cycle block
    n = g - 1
    enc = perron_root(IntMatrix.from_rows([[int(j == (i + 1) % n) for j in range(n)] for i in range(n)]))
    assert enc.contains(1)


def test_perron_root_phi5_within_lemma_window():
    enc = perron_root(phi_matrix(5), Fraction(1, 10**9))
    assert enc.width <= Fraction(1, 10**9)
    # 16^(1/8) <= lambda <= 29^(1/3)
    assert enc.lower**8 >= 16 and enc.upper**3 <= 29


@pytest.mark.parametrize("g", [4, 5, 9, 16])
def test_perron_root_matches_numpy_and_bisection(g):
    m = phi_matrix(g)
    enc = perron_root(m, Fraction(1, 10**12))
    assert abs(float(enc.midpoint) - numpy_spectral_radius(m)) < 1e-9
    cross = perron_root_by_bisection(m, Fraction(1, 10**12))
    assert enc.lower <= cross.upper and cross.lower <= enc.upper
    poly = char_poly(m)
    assert poly.sign_at(enc.upper) >= 0 and poly.sign_at(enc.lower) <= 0


def test_perron_root_rejects_reducible_and_bad_tol():
    with pytest.raises(NotPerronFrobenius):
        perron_root(IntMatrix.identity(3))
    with pytest.raises(NotPerronFrobenius):
        perron_root(IntMatrix.from_rows([[1, -1], [1, 1]]))
    with pytest.raises(ValueError):
        perron_root(IntMatrix.from_rows([[1, 1], [1, 1]]), 0)


positive_matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 9), min_size=n, max_size=n), min_size=n, max_size=n)
).filter(lambda rows: all(any(r) for r in rows))


@settings(max_examples=60, deadline=None)
@given(positive_matrices)
def test_perron_root_properties(rows):
    m = IntMatrix.from_rows([[x + 1 for x in r] for r in rows])  # strictly positive, so irreducible
    tol = Fraction(1, 10**9)
    enc = perron_root(m, tol)
    assert enc.width <= tol
    assert enc.upper <= m.max_row_sum()
    assert abs(float(enc.midpoint) - numpy_spectral_radius(m)) < 1e-7 * max(1, float(enc.upper))
    t = perron_root(m.transpose(), tol)
    assert t.lower <= enc.upper and enc.lower <= t.upper
    sq = perron_root(m**2, tol)
    assert sq.lower <= enc.upper**2 and enc.lower**2 <= sq.upper


@pytest.mark.parametrize("g", [5, 7])
def test_row_sum_bound_on_powers(g):
    m = phi_matrix(g)
    enc = perron_root(m)
    for k in (1, 2, g - 2):
        assert enc.upper**k <= (m**k).max_row_sum() or enc.lower**k <= (m**k).max_row_sum()
        assert float(enc.lower) <= (m**k).max_row_sum() ** (1 / k) + 1e-12


def test_perron_vector_symmetric():
    v = perron_vector(IntMatrix.from_rows([[1, 1], [1, 1]]))
    assert v == (Fraction(1, 2), Fraction(1, 2))


@pytest.mark.parametrize("g", [9])
def test_perron_vector_phi(g):
    m = phi_matrix(g)
    tol = Fraction(1, 10**9)
    v = perron_vector(m, tol)
    enc = perron_root(m, tol)
    assert len(v) == 32 and all(x > 0 for x in v) and sum(v) == 1
    assert residual(m, v, enc.midpoint) <= tol * enc.lower


def test_perron_vector_rejects_periodic():
    cyc = IntMatrix.from_rows([[0, 1], [1, 0]])
    with pytest.raises(NotPerronFrobenius):
        perron_vector(cyc)


def test_bisect_largest_root():
    p = IntPolynomial((-2, 0, 1))  # x^2 - 2
    enc = bisect_largest_root(p, 1, 2, Fraction(1, 10**12))
    assert enc.lower**2 <= 2 <= enc.upper**2 and enc.width <= Fraction(1, 10**12)
    with pytest.raises(ValueError):
        bisect_largest_root(p, 0, 1)


def test_max_root_modulus_against_numpy():
    for g in (4, 6, 11):
        p = expected_char_poly(g)
        want = max(abs(np.roots([float(c) for c in reversed(p.coefficients)])))
        got, err = max_root_modulus(p)
        assert abs(got - want) < 1e-8 and err < 1e-12


def test_max_root_modulus_repeated_roots():
    got, _ = max_root_modulus(IntPolynomial((1, -2, 1)))
    assert abs(got - 1) < 1e-9


def test_dominant_root_check_examples():
    assert dominant_root_check(IntPolynomial((2, -3, 1)), RootEnclosure(2, 2))
    assert dominant_root_check(expected_char_poly(5), perron_root(phi_matrix(5)))
    assert not dominant_root_check(IntPolynomial((4, 0, 1)), RootEnclosure(1, 1))

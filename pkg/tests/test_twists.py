import random

import pytest
from hypothesis import given, settings, strategies as st

from pafamily.curves import CurveId, CurveSystem
from pafamily.linalg import IntMatrix, determinant
from pafamily.twists import (
    PHI_TWISTS,
    WeightVector,
    apply,
    phi_matrix,
    phi_sequential,
    rotation_map,
    twist_map,
    twist_weights,
)


def c(name):
    return CurveId.parse(name)


def column(m: IntMatrix, curve: CurveId) -> dict:
    j = m.basis.index(curve)
    return {str(u): x for u, x in zip(m.basis, m.column(j)) if x}


def test_twist_d0_on_a0():
    s = CurveSystem(6)
    assert apply(twist_map(s, c("d0")), WeightVector.unit(s, c("a0"))).as_dict() == {c("a0"): 1, c("d0"): 1}


def test_twist_c0_on_d0():
    s = CurveSystem(6)
    assert apply(twist_map(s, c("c0")), WeightVector.unit(s, c("d0"))).as_dict() == {c("d0"): 1, c("c0"): 2}


def test_twist_disjoint_curve_fixed():
    s = CurveSystem(6)
    unit = WeightVector.unit(s, c("c1"))
    assert apply(twist_map(s, c("a0")), unit) == unit


def test_twist_rule_matches_direct_evaluation():
    s = CurveSystem(5)
    w = WeightVector.from_mapping(s, {"a0": 3, "d0": 2, "c0": 5, "d3": 1})
    for x in s.basis:
        assert apply(twist_map(s, x), w) == twist_weights(s, w, x)


@pytest.mark.parametrize("g", [4, 5, 7])
def test_rotation_map(g):
    s = CurveSystem(g)
    r = rotation_map(s)
    assert apply(r, WeightVector.unit(s, c("a0"))).as_dict() == {c("a1"): 1}
    assert r ** (g - 1) == IntMatrix.identity(r.dim, r.basis)
    assert determinant(r) == 1


@pytest.mark.parametrize("g", [4, 5, 6, 9, 12])
def test_phi_a1_column(g):
    assert column(phi_matrix(g), c("a1")) == {"a1": 1, "a2": 1, "b2": 1, "c1": 2, "d1": 1}


@pytest.mark.parametrize("g", [5, 6, 9])
def test_phi_a2_column_is_rotation(g):
    assert column(phi_matrix(g), c("a2")) == {"a3": 1}


@pytest.mark.parametrize("g", [4, 5, 8])
def test_phi_trace_and_nonnegative(g):
    m = phi_matrix(g)
    assert m.dim == 4 * (g - 1)
    assert m.trace() == 1
    assert m.is_nonnegative()


@pytest.mark.parametrize("g", [4, 5, 6, 7, 8])
def test_determinants(g):
    s = CurveSystem(g)
    for x in s.basis:
        assert determinant(twist_map(s, x)) == 1
    assert determinant(phi_matrix(g)) == 1


def test_determinant_against_sympy():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(7)
    for n in range(1, 7):
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert determinant(IntMatrix.from_rows(rows)) == sympy.Matrix(rows).det()


def test_twists_of_phi_commute():
    s = CurveSystem(7)
    ta, tb, tc = (twist_map(s, s.curve(f, j)) for f, j in [("a", 0), ("b", 1), ("c", 0)])
    assert ta @ (tb @ tc) == (tb @ tc) @ ta


def test_apply_identity_and_dimension_check():
    s = CurveSystem(4)
    w = WeightVector.from_mapping(s, {"a0": 1, "d2": 7})
    assert apply(IntMatrix.identity(12, s.basis), w) == w
    with pytest.raises(ValueError):
        apply(IntMatrix.identity(3), w)


def test_negative_weights_rejected():
    s = CurveSystem(4)
    with pytest.raises(ValueError):
        WeightVector.from_mapping(s, {"a0": -1})


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 10), st.integers(0, 2**32), st.sampled_from([1, -1]))
def test_matrix_agrees_with_sequential_twists(g, seed, rot):
    s = CurveSystem(g, rot)
    m = phi_matrix(g, rot)
    rng = random.Random(seed)
    w = WeightVector(tuple(rng.randint(0, 10**6) for _ in s.basis), s.basis)
    img = apply(m, w)
    assert img == phi_sequential(s, w)
    assert all(x >= 0 for x in img.coefficients)


def test_phi_order_of_application():
    # composing in the other order gives a different matrix; guards the right-to-left convention
    s = CurveSystem(6)
    m = IntMatrix.identity(len(s.basis), s.basis)
    for fam, j in reversed(PHI_TWISTS):
        m = twist_map(s, s.curve(fam, j)) @ m
    assert rotation_map(s) @ m != phi_matrix(6)

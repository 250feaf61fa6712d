import pytest
from hypothesis import given, strategies as st

from pafamily.curves import CurveId, CurveSystem, Family, GenusError, basis


def c(name):
    return CurveId.parse(name)


def test_basis_genus_4_order():
    assert [str(x) for x in basis(4)] == ["a0", "a1", "a2", "b0", "b1", "b2", "c0", "c1", "c2", "d0", "d1", "d2"]


def test_basis_genus_9_size():
    assert len(basis(9)) == 32
    assert len(set(basis(9))) == 32


def test_basis_rejects_genus_3():
    with pytest.raises(GenusError, match="g >= 4"):
        basis(3)


@pytest.mark.parametrize(
    "u, v, expected",
    [("d0", "a1", 1), ("d2", "c2", 2), ("a0", "b0", 0), ("d0", "a0", 1), ("d1", "b2", 1), ("c0", "c0", 0)],
)
def test_intersection_table(u, v, expected):
    assert CurveSystem(6).intersection(c(u), c(v)) == expected


def test_intersection_wraparound():
    g = 7
    sys_ = CurveSystem(g)
    assert sys_.intersection(c(f"d{g - 2}"), c("a0")) == 1
    assert sys_.intersection(c(f"d{g - 2}"), c("b0")) == 1


def test_rotation():
    sys_ = CurveSystem(8)
    assert sys_.rotate(c("a0"), 1) == c("a1")
    assert sys_.rotate(c("d6"), 1) == c("d0")
    assert sys_.rotate(c("b3"), 7) == c("b3")
    assert CurveSystem(8, rotation=-1).rotate(c("a0"), 1) == c("a6")


def test_unknown_curve_rejected():
    with pytest.raises(ValueError):
        CurveSystem(4).intersection(c("a3"), c("d0"))


@pytest.mark.parametrize("g", [4, 5, 9, 13])
def test_census(g):
    sys_ = CurveSystem(g)
    expected = {Family.A: 2, Family.B: 2, Family.C: 2, Family.D: 6}
    for u in sys_.basis:
        assert sys_.total_intersection(u) == expected[u.family]


@pytest.mark.parametrize("g", [4, 5, 10])
def test_only_listed_pairs_nonzero(g):
    sys_ = CurveSystem(g)
    # 5 crossing curves per d_j, each pair stored in both orders
    assert len(sys_.pairing) == 2 * 5 * (g - 1)
    for (u, v), w in sys_.pairing.items():
        assert Family.D in (u.family, v.family) and u.family != v.family and w > 0


genus = st.integers(min_value=4, max_value=15)


@given(genus, st.data())
def test_pairing_symmetric_and_rotation_invariant(g, data):
    sys_ = CurveSystem(g, rotation=data.draw(st.sampled_from([1, -1])))
    u = data.draw(st.sampled_from(sys_.basis))
    v = data.draw(st.sampled_from(sys_.basis))
    k = data.draw(st.integers(-30, 30))
    assert sys_.intersection(u, v) == sys_.intersection(v, u)
    assert sys_.intersection(u, u) == 0
    assert sys_.intersection(sys_.rotate(u, k), sys_.rotate(v, k)) == sys_.intersection(u, v)


def test_parse_and_str_round_trip():
    for name in ["a0", "b12", "c3", "d7"]:
        assert str(CurveId.parse(name)) == name
    assert CurveId.parse("d_7") == CurveId(Family.D, 7)
    with pytest.raises(ValueError):
        CurveId.parse("e1")

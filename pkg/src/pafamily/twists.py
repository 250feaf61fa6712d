"""Dehn twists and the rotation acting on curve weights.

On the cone of measures spanned by the curve family, a twist along ``x`` (the
positive twists along a, b, c curves and the inverse twist along d curves
alike) acts by ``mu -> mu + i(mu, x) x``. The monodromy of the family is

    phi = rho . T_{a_0} . T_{b_1} . T_{c_0} . T_{d_0}^{-1}

applied right to left.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .curves import CurveId, CurveSystem, Family
from .linalg import IntMatrix

Number = Union[int, Fraction]

# twists in application order (rightmost factor first)
PHI_TWISTS = ((Family.D, 0), (Family.C, 0), (Family.B, 1), (Family.A, 0))


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative weights on the curve basis (an element of the carried cone)."""

    coefficients: tuple[Number, ...]
    basis: tuple[CurveId, ...]

    def __post_init__(self):
        if len(self.coefficients) != len(self.basis):
            raise ValueError("one coefficient per basis curve is required")
        if any(c < 0 for c in self.coefficients):
            raise ValueError("weights must be nonnegative")

    @classmethod
    def unit(cls, system: CurveSystem, curve: CurveId) -> "WeightVector":
        k = system.position(curve)
        return cls(tuple(int(i == k) for i in range(len(system.basis))), system.basis)

    @classmethod
    def from_mapping(cls, system: CurveSystem, weights: dict) -> "WeightVector":
        coeffs = [0] * len(system.basis)
        for c, w in weights.items():
            c = CurveId.parse(c) if isinstance(c, str) else c
            coeffs[system.position(c)] = w
        return cls(tuple(coeffs), system.basis)

    def as_dict(self, nonzero: bool = True) -> dict[CurveId, Number]:
        return {c: w for c, w in zip(self.basis, self.coefficients) if w or not nonzero}

    def __getitem__(self, curve: CurveId) -> Number:
        return self.coefficients[self.basis.index(curve)]


def twist_map(system: CurveSystem, x: CurveId) -> IntMatrix:
    """Identity plus the rank-one update adding ``i(v, x)`` copies of ``x`` to column ``v``."""
    n = len(system.basis)
    k = system.position(x)
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for j, v in enumerate(system.basis):
        rows[k][j] += system.intersection(v, x)
    return IntMatrix.from_rows(rows, system.basis)


def rotation_map(system: CurveSystem) -> IntMatrix:
    n = len(system.basis)
    rows = [[0] * n for _ in range(n)]
    for j, u in enumerate(system.basis):
        rows[system.position(system.rotate(u, 1))][j] = 1
    return IntMatrix.from_rows(rows, system.basis)


def phi_matrix(g: int, rotation: int = 1) -> IntMatrix:
    """Transition matrix of the monodromy on the curve basis (column convention)."""
    system = CurveSystem(g, rotation)
    m = IntMatrix.identity(len(system.basis), system.basis)
    for fam, j in PHI_TWISTS:
        m = twist_map(system, system.curve(fam, j)) @ m
    return rotation_map(system) @ m


def apply(m: IntMatrix, w: WeightVector | Sequence[Number]) -> WeightVector:
    coeffs = w.coefficients if isinstance(w, WeightVector) else tuple(w)
    if len(coeffs) != m.dim:
        raise ValueError(f"weight vector of length {len(coeffs)} for a {m.dim}-dimensional map")
    basis = m.basis if m.basis is not None else getattr(w, "basis", None)
    if basis is None:
        raise ValueError("cannot label the result: neither the map nor the vector carries a basis")
    return WeightVector(tuple(m.matvec(coeffs)), tuple(basis))


def twist_weights(system: CurveSystem, w: WeightVector, x: CurveId) -> WeightVector:
    """Apply the twist rule directly through the intersection pairing, no matrices."""
    mu = w.as_dict()
    i_mu_x = sum(c * system.intersection(v, x) for v, c in mu.items())
    out = dict(mu)
    out[x] = out.get(x, 0) + i_mu_x
    return WeightVector.from_mapping(system, out)


def rotate_weights(system: CurveSystem, w: WeightVector) -> WeightVector:
    return WeightVector.from_mapping(system, {system.rotate(v, 1): c for v, c in w.as_dict().items()})


def phi_sequential(system: CurveSystem, w: WeightVector) -> WeightVector:
    """Image of ``w`` under the monodromy, one twist at a time."""
    for fam, j in PHI_TWISTS:
        w = twist_weights(system, w, system.curve(fam, j))
    return rotate_weights(system, w)

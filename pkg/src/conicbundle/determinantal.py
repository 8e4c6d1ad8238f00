"""Symmetric matrices of plane forms and the cubic threefolds they define.

A symmetric matrix::

    A = [[l1, l2, q1],
         [l2, l3, q2],
         [q1, q2, f ]]

with ``l_i`` linear, ``q_i`` quadratic and ``f`` cubic in ``x, y, z`` is the
quadratic form of a conic bundle.  Reading it in the fibre coordinates
``(w, t, 1)`` gives the cubic threefold::

    F = l1 w^2 + 2 l2 w t + l3 t^2 + 2 q1 w + 2 q2 t + f

which contains the line ``x = y = z = 0``.  ``det A`` is the plane quintic
over which the conics degenerate and ``h = l1 l3 - l2^2`` is the conic
cut out by the upper 2x2 minor.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .poly_core import QQ, Field, Poly, Rationals, determinant, hessian, linalg
from .textio import PLANE_VARS, SPACE_VARS

__all__ = [
    "SymmetricMatrixRep",
    "CubicThreefold",
    "PlaneQuintic",
    "Conic",
    "LineNotContainedError",
    "build_cubic",
    "extract_matrix",
    "discriminant",
    "verify_det_identity",
    "associated_conic",
    "sheaf_cohomology_twist",
    "cokernel_h0_and_chi",
    "euler_characteristic",
    "random_matrix",
    "rank_at",
    "RESOLUTION_LEFT",
    "RESOLUTION_RIGHT",
]

ENTRY_DEGREES = {"l1": 1, "l2": 1, "l3": 1, "q1": 2, "q2": 2, "f": 3}

# O(-2)^2 + O(-3) --A--> O(-1)^2 + O
RESOLUTION_LEFT = (-2, -2, -3)
RESOLUTION_RIGHT = (-1, -1, 0)


class LineNotContainedError(ValueError):
    """The cubic does not vanish on the line x = y = z = 0."""


def _plane(p: Poly) -> Poly:
    return p if p.vars == PLANE_VARS else p.with_vars(PLANE_VARS)


@dataclass(frozen=True)
class SymmetricMatrixRep:
    l1: Poly
    l2: Poly
    l3: Poly
    q1: Poly
    q2: Poly
    f: Poly

    def __post_init__(self):
        fields = {e.field for e in self.entries()}
        if len(fields) != 1:
            raise ValueError("matrix entries must share one coefficient field")
        for name in ENTRY_DEGREES:
            entry = _plane(getattr(self, name))
            object.__setattr__(self, name, entry)
            if entry and (not entry.is_homogeneous() or entry.total_degree() != ENTRY_DEGREES[name]):
                raise ValueError(
                    f"{name} must be homogeneous of degree {ENTRY_DEGREES[name]}, got {entry}"
                )

    @property
    def field(self) -> Field:
        return self.l1.field

    def entries(self) -> tuple[Poly, ...]:
        return (self.l1, self.l2, self.l3, self.q1, self.q2, self.f)

    def matrix(self) -> list[list[Poly]]:
        return [
            [self.l1, self.l2, self.q1],
            [self.l2, self.l3, self.q2],
            [self.q1, self.q2, self.f],
        ]

    def change_field(self, field: Field) -> "SymmetricMatrixRep":
        return SymmetricMatrixRep(*(e.change_field(field) for e in self.entries()))

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries())

    @classmethod
    def from_strings(cls, field: Field = QQ, **entries: str) -> "SymmetricMatrixRep":
        from .textio import parse_poly

        polys = {
            name: parse_poly(entries.get(name, "0"), PLANE_VARS, field)
            for name in ENTRY_DEGREES
        }
        return cls(**polys)


@dataclass(frozen=True)
class CubicThreefold:
    F: Poly

    def __post_init__(self):
        F = self.F if self.F.vars == SPACE_VARS else self.F.with_vars(SPACE_VARS)
        object.__setattr__(self, "F", F)
        if F.is_zero():
            raise ValueError("the zero polynomial does not define a cubic threefold")
        if not F.is_homogeneous() or F.total_degree() != 3:
            raise ValueError(f"F must be homogeneous of degree 3, got {F}")


@dataclass(frozen=True)
class PlaneQuintic:
    delta: Poly
    degenerate: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "degenerate", self.delta.is_zero())
        if not self.degenerate and (
            not self.delta.is_homogeneous() or self.delta.total_degree() != 5
        ):
            raise ValueError(f"expected a quintic form, got {self.delta}")


@dataclass(frozen=True)
class Conic:
    h: Poly
    degenerate: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "degenerate", self.h.is_zero())

    def is_smooth(self) -> bool:
        """Nonzero discriminant of the quadratic form (characteristic != 2)."""
        if self.degenerate:
            return False
        F = self.h.field
        hess = hessian(self.h, PLANE_VARS)
        raw = [[e.constant_value() for e in row] for row in hess]
        return not F.is_zero(linalg.det(raw, F))


def build_cubic(A: SymmetricMatrixRep) -> CubicThreefold:
    if A.is_zero():
        raise ValueError("all-zero matrix gives F = 0")
    w, t = (Poly.var(SPACE_VARS, A.field, v) for v in ("w", "t"))
    l1, l2, l3, q1, q2, f = (e.with_vars(SPACE_VARS) for e in A.entries())
    F = l1 * w * w + (l2 * w * t).scale(2) + l3 * t * t + (q1 * w).scale(2) + (q2 * t).scale(2) + f
    return CubicThreefold(F)


# (w-degree, t-degree) -> (entry name, factor in F)
_FIBRE_SLOTS = {
    (2, 0): ("l1", 1),
    (1, 1): ("l2", 2),
    (0, 2): ("l3", 1),
    (1, 0): ("q1", 2),
    (0, 1): ("q2", 2),
    (0, 0): ("f", 1),
}


def extract_matrix(X: CubicThreefold) -> SymmetricMatrixRep:
    """Inverse of :func:`build_cubic` for cubics through ``x = y = z = 0``."""
    F = X.F
    K = F.field
    if K.characteristic == 2:
        raise ValueError("cannot halve cross terms in characteristic 2")
    parts: dict[str, dict] = {name: {} for name in ENTRY_DEGREES}
    for e, c in F.items():
        dw, dt = e[3], e[4]
        if dw + dt >= 3:
            raise LineNotContainedError(
                "F does not vanish on the line x = y = z = 0 "
                f"(nonzero coefficient of w^{dw}*t^{dt})"
            )
        name, factor = _FIBRE_SLOTS[(dw, dt)]
        if factor == 2:
            c = K.div(c, K.coerce(2))
        parts[name][e[:3]] = c
    return SymmetricMatrixRep(**{n: Poly(PLANE_VARS, K, parts[n]) for n in ENTRY_DEGREES})


def discriminant(A: SymmetricMatrixRep) -> PlaneQuintic:
    return PlaneQuintic(determinant(A.matrix()))


def verify_det_identity(A: SymmetricMatrixRep) -> bool:
    """Check ``det A == f*h - (l3*q1^2 - 2*l2*q1*q2 + l1*q2^2)``."""
    l1, l2, l3, q1, q2, f = A.entries()
    h = l1 * l3 - l2 * l2
    closed = f * h - (l3 * q1 * q1 - (l2 * q1 * q2).scale(2) + l1 * q2 * q2)
    return determinant(A.matrix()) == closed


def associated_conic(A: SymmetricMatrixRep) -> Conic:
    return Conic(A.l1 * A.l3 - A.l2 * A.l2)


def rank_at(A: SymmetricMatrixRep, point: Sequence, field: Field | None = None) -> int:
    """Rank of the scalar matrix ``A(point)``; ``point`` has raw coordinates in ``field``."""
    field = field or A.field
    vals = [[e.change_field(field).evaluate(point) for e in row] for row in A.matrix()]
    return linalg.rank(vals, field)


# -- cohomology of line bundles on the projective plane -------------------------


def sheaf_cohomology_twist(d: int, i: int) -> int:
    """``h^i(P^2, O(d))``."""
    if i == 0:
        return comb(d + 2, 2) if d >= 0 else 0
    if i == 1:
        return 0
    if i == 2:
        return comb(-d - 1, 2) if d <= -3 else 0
    raise ValueError(f"cohomological degree must be 0, 1 or 2, got {i}")


def euler_characteristic(twists: Sequence[int]) -> int:
    return sum(
        sheaf_cohomology_twist(d, 0) - sheaf_cohomology_twist(d, 1) + sheaf_cohomology_twist(d, 2)
        for d in twists
    )


def cokernel_h0_and_chi(left: Sequence[int], right: Sequence[int]) -> tuple[int, int]:
    """``(h^0, chi)`` of the cokernel of an injective map ``O(left) -> O(right)``.

    Every line bundle on the plane has ``h^1 = 0``, so the long exact
    sequence gives ``h^0 = h^0(right) - h^0(left)``.  An empty ``left`` is
    the zero sheaf.
    """
    h0 = sum(sheaf_cohomology_twist(d, 0) for d in right) - sum(
        sheaf_cohomology_twist(d, 0) for d in left
    )
    chi = euler_characteristic(right) - euler_characteristic(left)
    return h0, chi


# -- random instances ------------------------------------------------------------


def _monomials(degree: int):
    return [(a, b, degree - a - b) for a in range(degree, -1, -1) for b in range(degree - a, -1, -1)]


def random_form(field: Field, degree: int, rng: random.Random, bound: int = 9) -> Poly:
    if isinstance(field, Rationals):
        draw = lambda: QQ.coerce(rng.randint(-bound, bound))  # noqa: E731
    else:
        draw = lambda: field.random_element(rng)  # noqa: E731
    return Poly(PLANE_VARS, field, {m: draw() for m in _monomials(degree)})


def random_matrix(field: Field, rng: random.Random, bound: int = 9) -> SymmetricMatrixRep:
    """Uniform coefficients (``[-bound, bound]`` integers over QQ)."""
    return SymmetricMatrixRep(
        **{name: random_form(field, deg, rng, bound) for name, deg in ENTRY_DEGREES.items()}
    )

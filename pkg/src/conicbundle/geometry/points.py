"""Points, lines and linear changes of coordinates in projective space."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..poly_core import GF, Field, Poly, Rationals, linalg, linear_pullback


@dataclass(frozen=True)
class ProjPoint:
    """A point of ``P^n`` stored with its first nonzero coordinate equal to 1.

    ``coords`` are raw values of ``field`` (integers ``0..q-1`` encode
    ``GF(p^k)``; see :meth:`from_values` for integer coordinates).  Two
    points are equal iff they are proportional.
    """

    field: Field
    coords: tuple

    @classmethod
    def from_values(cls, field: Field, values) -> "ProjPoint":
        return cls(field, tuple(field.coerce(v) for v in values))

    def __post_init__(self):
        F = self.field
        coords = tuple(F.raw(c) for c in self.coords)
        lead = next((c for c in coords if not F.is_zero(c)), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        inv = F.inv(lead)
        object.__setattr__(self, "coords", tuple(F.mul(inv, c) for c in coords))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    @property
    def pivot(self) -> int:
        return next(i for i, c in enumerate(self.coords) if not self.field.is_zero(c))

    def field_degree(self) -> int:
        """Degree over the prime field of the smallest field holding the coordinates."""
        F = self.field
        if isinstance(F, Rationals) or F.k == 1:
            return 1
        # for k <= 3 the only proper subfield is GF(p), encoded as 0..p-1
        return 1 if all(c < F.p for c in self.coords) else F.k

    def descend(self) -> "ProjPoint":
        """The same point over its field of definition (prime field or self)."""
        if self.field_degree() == 1 and not isinstance(self.field, Rationals) and self.field.k > 1:
            return ProjPoint(GF(self.field.p), self.coords)
        return self

    def over(self, field: Field) -> "ProjPoint":
        return ProjPoint(field, tuple(field.embed(self.field, c) for c in self.coords))

    def to_json(self) -> dict:
        F = self.field
        return {"field": repr(F), "coords": [F.format(c) for c in self.coords]}

    def __str__(self):
        return "(" + " : ".join(self.field.format(c) for c in self.coords) + ")"


def as_point(field: Field, coords: Sequence) -> ProjPoint:
    return coords if isinstance(coords, ProjPoint) else ProjPoint(field, tuple(coords))


@dataclass(frozen=True)
class ProjLine:
    """The line spanned by two distinct points."""

    p1: ProjPoint
    p2: ProjPoint

    def __post_init__(self):
        if self.p1.field != self.p2.field or self.p1.dim != self.p2.dim:
            raise ValueError("spanning points must live in the same projective space")
        if linalg.rank([self.p1.coords, self.p2.coords], self.p1.field) != 2:
            raise ValueError("spanning points coincide")

    @property
    def field(self) -> Field:
        return self.p1.field

    @classmethod
    def standard(cls, field: Field, n: int = 4) -> "ProjLine":
        """``x_0 = ... = x_{n-2} = 0``, spanned by the last two basis vectors."""
        e = [[0] * (n + 1) for _ in range(2)]
        e[0][n - 1] = 1
        e[1][n] = 1
        return cls(ProjPoint(field, tuple(e[0])), ProjPoint(field, tuple(e[1])))

    def restrict(self, F: Poly) -> Poly:
        """Binary form ``F(s*p1 + u*p2)`` in variables ``(s, u)``."""
        K = F.field
        P1 = _coords_in(self.p1, K)
        P2 = _coords_in(self.p2, K)
        rows = [[a, b] for a, b in zip(P1, P2)]
        return linear_pullback(F, rows, ("s", "u"))


def _coords_in(point: ProjPoint, field: Field):
    if point.field == field:
        return point.coords
    if isinstance(point.field, Rationals):
        return tuple(point.field.reduce_into(field, c) for c in point.coords)
    return tuple(field.embed(point.field, c) for c in point.coords)


@dataclass(frozen=True)
class ProjTransform:
    """Invertible matrix (raw entries) acting on column vectors of coordinates."""

    field: Field
    matrix: tuple

    def __post_init__(self):
        F = self.field
        m = tuple(tuple(F.raw(c) for c in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if F.is_zero(linalg.det(m, F)):
            raise ValueError("transform is singular")

    def apply(self, point: ProjPoint) -> ProjPoint:
        coords = _coords_in(point, self.field)
        out = linalg.matmul(self.matrix, [[c] for c in coords], self.field)
        return ProjPoint(self.field, tuple(r[0] for r in out))

    def apply_line(self, line: ProjLine) -> ProjLine:
        return ProjLine(self.apply(line.p1), self.apply(line.p2))

    def inverse(self) -> "ProjTransform":
        return ProjTransform(self.field, tuple(map(tuple, linalg.inverse(self.matrix, self.field))))

    def transform_form(self, F: Poly) -> Poly:
        """Equation of the image hypersurface: ``F(T^{-1} v)``."""
        F = F.change_field(self.field) if F.field != self.field else F
        return linear_pullback(F, self.inverse().matrix)

    def is_identity(self) -> bool:
        F = self.field
        n = len(self.matrix)
        return all(
            self.matrix[i][j] == (F.one() if i == j else F.zero()) for i in range(n) for j in range(n)
        )

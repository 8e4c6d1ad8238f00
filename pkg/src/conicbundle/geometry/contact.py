"""Local intersection numbers of plane curves and the even-contact test."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .. import kernels
from ..poly_core import (
    GF,
    DomainError,
    Field,
    Poly,
    Rationals,
    linalg,
    linear_pullback,
    sylvester_resultant,
)
from .points import ProjLine, ProjPoint
from .singular import local_expansion

__all__ = [
    "CommonComponentError",
    "intersection_multiplicity",
    "local_length",
    "have_common_component",
    "ContactPoint",
    "ContactReport",
    "even_contact_check",
    "linear_factors",
]

DEFAULT_ORDER_BOUND = 12


class CommonComponentError(ValueError):
    """The curves share a component (the local length does not stabilize)."""


def _truncated_quotient_dim(f: Poly, g: Poly, u: str, v: str, N: int) -> int:
    """``dim k[u,v] / ((f, g) + m^N)`` at the origin."""
    K = f.field
    iu, iv = f.vars.index(u), f.vars.index(v)
    monos = [(a, d - a) for d in range(N) for a in range(d, -1, -1)]
    index = {m: j for j, m in enumerate(monos)}

    def local_terms(h):
        return [((e[iu], e[iv]), c) for e, c in h.items() if e[iu] + e[iv] < N]

    gens = [local_terms(f), local_terms(g)]
    rows = []
    for (a, b) in monos:
        for terms in gens:
            row = {}
            for (ea, eb), c in terms:
                m = (ea + a, eb + b)
                if m[0] + m[1] < N:
                    row[index[m]] = c
            if row:
                rows.append(row)
    return len(monos) - linalg.rank(rows, K)


def local_length(f: Poly, g: Poly, u: str, v: str, order_bound: int = DEFAULT_ORDER_BOUND) -> int:
    """``dim`` of the local ring at the origin modulo ``(f, g)``.

    Truncation at ``m^N`` for ``N = 1, 2, ...``; the first ``N`` with equal
    dimensions at ``N`` and ``N + 1`` gives the exact length (then
    ``m^N`` lies in the ideal by Nakayama).
    """
    K = f.field
    if not K.is_zero(f.constant_value()) or not K.is_zero(g.constant_value()):
        return 0
    prev = _truncated_quotient_dim(f, g, u, v, 1)
    for N in range(2, order_bound + 1):
        cur = _truncated_quotient_dim(f, g, u, v, N)
        if cur == prev:
            return prev
        prev = cur
    raise CommonComponentError(
        f"local length did not stabilize below order {order_bound}; "
        "the curves probably share a component through the point"
    )


def intersection_multiplicity(delta: Poly, h: Poly, point: ProjPoint,
                              order_bound: int = DEFAULT_ORDER_BOUND) -> int:
    """Local intersection number of the plane curves ``delta = 0`` and ``h = 0`` at ``point``."""
    f, (u, v) = local_expansion(delta, point)
    g, _ = local_expansion(h, point)
    return local_length(f, g, u, v, order_bound)


def _field_points(field: Field, bound: int = 4):
    if isinstance(field, Rationals):
        for a, b in itertools.product(range(-bound, bound + 1), repeat=2):
            yield (field.coerce(a), field.coerce(b))
    else:
        yield from itertools.product(range(field.order), repeat=2)


def have_common_component(f: Poly, g: Poly) -> bool:
    """Whether plane forms ``f`` and ``g`` share a factor of positive degree.

    Moves a point off both curves to ``(0:0:1)`` so that both forms have
    full degree in ``z``; then a common factor exists iff ``Res_z`` is 0.
    """
    if f.is_zero() or g.is_zero():
        return True
    if f.total_degree() == 0 or g.total_degree() == 0:
        return False
    x, y, z = f.vars
    K = f.field
    fields = [K] if isinstance(K, Rationals) else [GF(K.p, k) for k in (1, 2, 3)]
    for L in fields:
        fl, gl = f.change_field(L), g.change_field(L)
        for a, b in _field_points(L):
            if L.is_zero(fl.evaluate((a, b, L.one()))) or L.is_zero(gl.evaluate((a, b, L.one()))):
                continue
            T = [[L.one(), L.zero(), a], [L.zero(), L.one(), b], [L.zero(), L.zero(), L.one()]]
            f2, g2 = linear_pullback(fl, T), linear_pullback(gl, T)
            return sylvester_resultant(f2, g2, z).is_zero()
    raise DomainError("no point off both curves found")  # pragma: no cover


@dataclass(frozen=True)
class ContactPoint:
    point: ProjPoint
    multiplicity: int
    extension_degree: int

    @property
    def even(self) -> bool:
        return self.multiplicity % 2 == 0

    def to_json(self) -> dict:
        return {
            "point": self.point.to_json(),
            "extension_degree": self.extension_degree,
            "multiplicity": self.multiplicity,
            "even": self.even,
        }


@dataclass(frozen=True)
class ContactReport:
    points: tuple
    total: int
    expected_total: int
    p: int
    k_max: int
    common_component: bool = False
    notes: tuple = dc_field(default=())

    @property
    def all_even(self) -> bool:
        return not self.common_component and all(c.even for c in self.points)

    @property
    def complete(self) -> bool:
        return self.total == self.expected_total

    @property
    def passed(self) -> bool:
        return self.all_even and self.complete

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "k_max": self.k_max,
            "common_component": self.common_component,
            "points": [c.to_json() for c in self.points],
            "total": self.total,
            "expected_total": self.expected_total,
            "all_even": self.all_even,
            "complete": self.complete,
            "notes": list(self.notes),
        }


def even_contact_check(delta: Poly, h: Poly, p: int, k_max: int = 2,
                       order_bound: int = DEFAULT_ORDER_BOUND, workers: int = 1) -> ContactReport:
    """Local intersection numbers of ``delta`` and ``h`` at every common point over ``GF(p^k)``.

    Points over a subfield are counted once.  A total below
    ``deg delta * deg h`` means some intersection points are defined only
    over larger extensions.
    """
    if delta.is_zero() or h.is_zero():
        raise ValueError("both curves must be nonzero")
    for poly in (delta, h):
        if isinstance(poly.field, Rationals):
            raise DomainError(f"reduce to GF({p}) before enumerating points")
    expected = delta.total_degree() * h.total_degree()
    if have_common_component(delta, h):
        raise CommonComponentError("the curves share a component")
    seen = set()
    contacts = []
    for k in range(1, k_max + 1):
        K = GF(p, k)
        for coords in kernels.find_zeros([h, delta], K, workers=workers):
            pt = ProjPoint(K, coords)
            deg = pt.field_degree()
            key = (deg, pt.descend().coords)
            if key in seen:
                continue
            seen.add(key)
            mult = intersection_multiplicity(delta, h, pt, order_bound)
            contacts.append(ContactPoint(pt.descend(), mult, deg))
    total = sum(c.multiplicity for c in contacts)
    notes = []
    if total < expected:
        notes.append(
            f"found {total} of {expected}: remaining intersections lie over extensions "
            f"of degree > {k_max}"
        )
    return ContactReport(tuple(contacts), total, expected, p, k_max, False, tuple(notes))


def linear_factors(delta: Poly) -> list[Poly]:
    """Lines over the coefficient field (a prime field) on which ``delta`` vanishes."""
    K = delta.field
    if isinstance(K, Rationals) or K.k != 1:
        raise DomainError("line search runs over a prime field")
    x, y, z = delta.vars
    gens = Poly.gens(delta.vars, K)
    found = []
    for coeffs in _canonical_vectors(K, 3):
        a, b, c = coeffs
        # two points spanning {a x + b y + c z = 0}
        basis = _kernel_basis(K, coeffs)
        line = ProjLine(ProjPoint(K, basis[0]), ProjPoint(K, basis[1]))
        if line.restrict(delta).is_zero():
            found.append(gens[0].scale(a) + gens[1].scale(b) + gens[2].scale(c))
    return found


def _canonical_vectors(K, n):
    for pivot in range(n):
        for tail in itertools.product(range(K.order), repeat=n - pivot - 1):
            yield (0,) * pivot + (1,) + tail


def _kernel_basis(K, coeffs):
    pivot = next(i for i, c in enumerate(coeffs) if c)
    basis = []
    for j in range(3):
        if j == pivot:
            continue
        v = [0, 0, 0]
        v[j] = 1
        v[pivot] = K.neg(coeffs[j])  # coeffs[pivot] == 1
        basis.append(tuple(v))
    return basis

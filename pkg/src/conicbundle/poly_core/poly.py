"""Sparse multivariate polynomials with exact coefficients."""
from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from .fields import QQ, DomainError, Field, Rationals, Scalar

__all__ = ["Poly", "MINUS_INFINITY", "AlphabetError"]

#: Degree of the zero polynomial.  Absorbs sums: ``MINUS_INFINITY + 5``
#: is still ``MINUS_INFINITY``.
MINUS_INFINITY = float("-inf")


class AlphabetError(ValueError):
    """Unknown variable, or polynomials over different alphabets."""


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class Poly:
    """Immutable sparse polynomial over ``field`` in the ordered alphabet ``vars``.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero raw
    field values.  Construct via :meth:`from_terms`, :meth:`var`,
    :meth:`const`, or :func:`conicbundle.textio.parse_poly`.
    """

    __slots__ = ("vars", "field", "_terms", "_hash")

    def __init__(self, vars: Sequence[str], field: Field, terms: Mapping | None = None):
        self.vars = tuple(vars)
        self.field = field
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if len(e) != n:
                    raise AlphabetError(f"exponent {e} does not match alphabet {self.vars}")
                if not field.is_zero(c):
                    clean[tuple(e)] = c
        self._terms = clean
        self._hash = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_terms(cls, vars, field, terms: Mapping) -> "Poly":
        """Like the constructor but coerces coefficients and merges duplicates."""
        acc: dict = {}
        for e, c in terms.items():
            e = tuple(e)
            c = field.coerce(c)
            acc[e] = field.add(acc[e], c) if e in acc else c
        return cls(vars, field, acc)

    @classmethod
    def zero(cls, vars, field=QQ) -> "Poly":
        return cls(vars, field)

    @classmethod
    def const(cls, vars, field, c) -> "Poly":
        return cls(vars, field, {(0,) * len(vars): field.coerce(c)})

    @classmethod
    def var(cls, vars, field, name: str) -> "Poly":
        vars = tuple(vars)
        if name not in vars:
            raise AlphabetError(f"unknown variable {name!r}")
        e = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, field, {e: field.one()})

    @classmethod
    def gens(cls, vars, field=QQ) -> tuple["Poly", ...]:
        return tuple(cls.var(vars, field, v) for v in vars)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self):
        """Terms in descending graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def total_degree(self):
        if not self._terms:
            return MINUS_INFINITY
        return max(sum(e) for e in self._terms)

    def degree(self, var: str):
        i = self._index(var)
        if not self._terms:
            return MINUS_INFINITY
        return max(e[i] for e in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self._terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self):
        return self._terms.get((0,) * len(self.vars), self.field.zero())

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(tuple(exps), self.field.zero())

    def variables_used(self) -> set[str]:
        used = set()
        for e in self._terms:
            used.update(v for v, k in zip(self.vars, e) if k)
        return used

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise AlphabetError(f"unknown variable {var!r} (alphabet {self.vars})") from None

    # -- arithmetic ----------------------------------------------------------

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise AlphabetError(f"alphabets differ: {self.vars} vs {other.vars}")
            if other.field != self.field:
                raise DomainError(f"fields differ: {self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction, Scalar)) and not isinstance(other, bool):
            return Poly.const(self.vars, self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            if e in out:
                s = F.add(out[e], c)
                if F.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Poly(self.vars, F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(self.vars, F, {e: F.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = F.mul(c1, c2)
                if e in out:
                    out[e] = F.add(out[e], c)
                else:
                    out[e] = c
        return Poly(self.vars, F, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(self.vars, self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        """Multiply by the raw field value ``c``."""
        F = self.field
        c = F.raw(c)
        return Poly(self.vars, F, {e: F.mul(v, c) for e, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return (
                self.vars == other.vars
                and self.field == other.field
                and self._terms == other._terms
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == Poly.const(self.vars, self.field, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.field, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and evaluation ----------------------------------------------

    def diff(self, var: str) -> "Poly":
        i = self._index(var)
        F = self.field
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                d = F.mul(c, F.coerce(k))
                if not F.is_zero(d):
                    out[e[:i] + (k - 1,) + e[i + 1:]] = d
        return Poly(self.vars, F, out)

    def evaluate(self, values: Sequence):
        """Value at a point whose raw coordinates live in ``self.field``."""
        F = self.field
        acc = F.zero()
        for e, c in self._terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = F.mul(t, F.pow(v, k))
            acc = F.add(acc, t)
        return acc

    def partial_eval(self, assignment: Mapping[str, object]) -> "Poly":
        """Substitute raw field values for some variables; alphabet unchanged."""
        F = self.field
        idx = {self._index(v): F.raw(val) for v, val in assignment.items()}
        out: dict = {}
        for e, c in self._terms.items():
            t = c
            e2 = list(e)
            for i, val in idx.items():
                if e[i]:
                    t = F.mul(t, F.pow(val, e[i]))
                    e2[i] = 0
            e2 = tuple(e2)
            out[e2] = F.add(out[e2], t) if e2 in out else t
        return Poly(self.vars, F, out)

    def coefficients_in(self, var: str) -> list["Poly"]:
        """``[c_0, ..., c_d]`` with ``self == sum c_i * var^i``."""
        i = self._index(var)
        if not self._terms:
            return []
        d = max(e[i] for e in self._terms)
        parts: list[dict] = [dict() for _ in range(d + 1)]
        for e, c in self._terms.items():
            parts[e[i]][e[:i] + (0,) + e[i + 1:]] = c
        return [Poly(self.vars, self.field, p) for p in parts]

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly(self.vars, self.field, {e: c for e, c in self._terms.items() if sum(e) == degree})

    # -- change of ring --------------------------------------------------------

    def with_vars(self, vars: Sequence[str]) -> "Poly":
        """Re-express over another alphabet containing every variable used."""
        vars = tuple(vars)
        pos = {}
        for i, v in enumerate(self.vars):
            if v in vars:
                pos[i] = vars.index(v)
        out = {}
        for e, c in self._terms.items():
            new = [0] * len(vars)
            for i, k in enumerate(e):
                if k:
                    if i not in pos:
                        raise AlphabetError(f"variable {self.vars[i]!r} not in {vars}")
                    new[pos[i]] = k
            out[tuple(new)] = c
        return Poly(vars, self.field, out)

    def change_field(self, field: Field) -> "Poly":
        """Image in ``field``: reduction mod p from QQ, or subfield embedding."""
        if field == self.field:
            return self
        src = self.field
        if isinstance(field, Rationals):
            raise DomainError(f"cannot lift {src!r} coefficients to QQ")
        if isinstance(src, Rationals):
            conv = lambda c: src.reduce_into(field, c)  # noqa: E731
        else:
            conv = lambda c: field.embed(src, c)  # noqa: E731
        return Poly(self.vars, field, {e: conv(c) for e, c in self._terms.items()})

    # -- text -----------------------------------------------------------------

    def _monomial_str(self, e) -> str:
        parts = []
        for v, k in zip(self.vars, e):
            if k == 1:
                parts.append(v)
            elif k:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self._terms:
            return "0"
        F = self.field
        signed = isinstance(F, Rationals)
        out = []
        for e, c in self.sorted_terms():
            negative = signed and c < 0
            mag = -c if negative else c
            mono = self._monomial_str(e)
            cstr = F.format(mag)
            if not mono:
                body = cstr
            elif cstr == "1":
                body = mono
            else:
                body = f"{cstr}*{mono}"
            if not out:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r}, vars={self.vars}, field={self.field!r})"

"""Exact coefficient domains: the rationals, prime fields and small extensions.

Field elements are stored *raw* inside polynomials: ``Fraction`` for the
rationals, ``int`` in ``[0, p)`` for a prime field, and for ``GF(p^k)`` an
``int`` encoding the coefficient vector ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
of a polynomial in the generator ``a`` modulo the field's irreducible
modulus.  The encoding makes ``GF(p)`` sit inside ``GF(p^k)`` as the integers
``0..p-1``, so points found over a subfield compare equal after embedding.

:class:`Scalar` wraps a raw value together with its field for callers who
want operator syntax.
"""
from __future__ import annotations

import itertools
import operator
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Field",
    "Rationals",
    "PrimeField",
    "ExtensionField",
    "QQ",
    "GF",
    "Scalar",
    "DomainError",
    "is_prime",
    "smallest_irreducible",
]

# Log/antilog tables are built lazily for fields of at most this order.
TABLE_LIMIT = 1 << 21


class DomainError(ValueError):
    """Raised when values from incompatible domains are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for s in small:
        if n % s == 0:
            return n == s
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _polymulmod(a: list[int], b: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    """Multiply coefficient lists (low degree first) modulo a monic ``mod``."""
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d] % p
        if c:
            for i in range(k):
                prod[d - k + i] -= c * mod[i]
        prod[d] = 0
    return [c % p for c in prod[:k]]


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``k`` over ``GF(p)``.

    Candidates ``x^k + c_{k-1} x^{k-1} + ... + c_0`` are ordered
    lexicographically by ``(c_{k-1}, ..., c_0)``.  Returns the coefficients
    low degree first, leading 1 included.  Only ``k <= 3`` is supported,
    where irreducible is the same as having no root.
    """
    if not 2 <= k <= 3:
        raise ValueError("extension degree must be 2 or 3")
    for high_first in itertools.product(range(p), repeat=k):
        coeffs = tuple(reversed(high_first)) + (1,)
        if all(_horner(coeffs, r, p) for r in range(p)):
            return coeffs
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _horner(coeffs, r, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * r + c) % p
    return acc


class Field:
    """Common interface; concrete fields operate on raw values."""

    characteristic: int
    is_finite: bool = False

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def coerce(self, value):
        """Field element denoted by ``value`` (integers map through ZZ -> field)."""
        raise NotImplementedError

    def raw(self, value):
        """Validate an already-encoded raw value."""
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one()
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def format(self, a) -> str:
        return str(a)

    def scalar(self, value) -> "Scalar":
        return Scalar(self, self.coerce(value))


class Rationals(Field):
    characteristic = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, value):
        if isinstance(value, Scalar):
            if value.field != self:
                raise DomainError(f"cannot coerce {value.field!r} element into QQ")
            return value.value
        if isinstance(value, bool):
            raise TypeError("bool is not a field element")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into QQ")

    def raw(self, value):
        if isinstance(value, Scalar):
            return self.coerce(value)
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def is_zero(self, a):
        return a == 0

    def format(self, a):
        return str(a)

    def reduce_into(self, target: Field, a):
        """Image of ``a`` under ``ZZ_(p) -> GF(p) ⊆ target``."""
        p = target.characteristic
        if a.denominator % p == 0:
            raise DomainError(f"denominator of {a} is not invertible mod {p}")
        return target.coerce(a.numerator * pow(a.denominator, -1, p) % p)


class _FiniteField(Field):
    is_finite = True
    p: int
    k: int
    order: int

    def elements(self):
        return range(self.order)

    def raw(self, value):
        if isinstance(value, Scalar):
            return self.coerce(value)
        if isinstance(value, bool):
            raise TypeError(f"raw {self!r} values are ints, got bool")
        try:
            value = operator.index(value)
        except TypeError:
            raise TypeError(f"raw {self!r} values are ints, got {type(value).__name__}") from None
        if self.k == 1:
            return value % self.p
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not an encoded element of {self!r}")
        return value

    def random_element(self, rng: random.Random):
        return rng.randrange(self.order)

    def is_zero(self, a):
        return a == 0

    def zero(self):
        return 0

    def one(self):
        return 1

    def contains_subfield(self, other: Field) -> bool:
        return (
            other == self
            or isinstance(other, PrimeField) and other.p == self.p
        )

    def embed(self, other: Field, a):
        """Map a raw value of a subfield (or of QQ) into this field."""
        if other == self:
            return a
        if isinstance(other, PrimeField) and other.p == self.p:
            return a
        if isinstance(other, Rationals):
            return other.reduce_into(self, a)
        raise DomainError(f"{other!r} does not embed into {self!r}")

    # -- log tables, used by the scan kernels and for fast multiplication --

    def _build_tables(self):
        q = self.order
        if q > TABLE_LIMIT:
            raise ValueError(f"field of order {q} is too large for log tables")
        g = self.primitive_element()
        exp = [0] * (q - 1)
        log = [q - 1] * q  # q - 1 stands for log(0)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        zech = [q - 1] * (q - 1)
        for n in range(q - 1):
            s = self._slow_add(1, exp[n])
            zech[n] = log[s]
        self._tables = (log, exp, zech)

    def log_tables(self):
        """``(log, exp, zech)``: ``log[0] == q - 1`` and
        ``zech[n] == log(1 + g^n)`` for the field's primitive element ``g``."""
        if getattr(self, "_tables", None) is None:
            self._build_tables()
        return self._tables

    def primitive_element(self) -> int:
        q = self.order
        if q == 2:
            return 1
        factors = _prime_factors(q - 1)
        for g in range(2, q):
            if all(self._slow_pow(g, (q - 1) // r) != 1 for r in factors):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    def _slow_pow(self, a, n):
        result = 1
        while n:
            if n & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            n >>= 1
        return result


class PrimeField(_FiniteField):
    k = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self._tables = None

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p, 1))

    def coerce(self, value):
        if isinstance(value, Scalar):
            if value.field == self:
                return value.value
            return self.embed(value.field, value.value)
        if isinstance(value, bool):
            raise TypeError("bool is not a field element")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return QQ.reduce_into(self, value)
        if isinstance(value, str):
            return self.coerce(Fraction(value))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def add(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    _slow_add = add

    def neg(self, a):
        return (self.p - a) if a else 0

    def sub(self, a, b):
        s = a - b
        return s + self.p if s < 0 else s

    def mul(self, a, b):
        return a * b % self.p

    _slow_mul = mul

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def to_vector(self, a):
        return (a,)

    def format(self, a):
        return str(a)


class ExtensionField(_FiniteField):
    """``GF(p^k)`` as ``GF(p)[a] / (modulus)``."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.characteristic = p
        self.order = p**k
        self._tables = None

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and (other.p, other.k, other.modulus) == (self.p, self.k, self.modulus)
        )

    def __hash__(self):
        return hash(("GF", self.p, self.k, self.modulus))

    def to_vector(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_vector(self, vec) -> int:
        if len(vec) != self.k:
            raise ValueError(f"coefficient vector must have length {self.k}")
        a = 0
        for c in reversed(vec):
            a = a * self.p + int(c) % self.p
        return a

    def coerce(self, value):
        if isinstance(value, Scalar):
            return self.embed(value.field, value.value)
        if isinstance(value, bool):
            raise TypeError("bool is not a field element")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return QQ.reduce_into(self, value)
        if isinstance(value, (tuple, list)):
            return self.from_vector(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def _slow_add(self, a, b):
        p = self.p
        r, m = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            s = x + y
            if s >= p:
                s -= p
            r += s * m
            m *= p
        return r

    add = _slow_add

    def neg(self, a):
        p = self.p
        r, m = 0, 1
        while a:
            a, x = divmod(a, p)
            if x:
                r += (p - x) * m
            m *= p
        return r

    def sub(self, a, b):
        return self._slow_add(a, self.neg(b))

    def _slow_mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.from_vector(
            _polymulmod(list(self.to_vector(a)), list(self.to_vector(b)), self.modulus, self.p)
        )

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.order <= TABLE_LIMIT:
            log, exp, _ = self.log_tables()
            s = log[a] + log[b]
            q1 = self.order - 1
            return exp[s - q1 if s >= q1 else s]
        return self._slow_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.order <= TABLE_LIMIT:
            log, exp, _ = self.log_tables()
            return exp[(-log[a]) % (self.order - 1)]
        return self._slow_pow(a, self.order - 2)

    def format(self, a):
        vec = self.to_vector(a)
        parts = []
        for i in range(self.k - 1, -1, -1):
            c = vec[i]
            if not c:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        return parts[0] if len(parts) == 1 else "(" + " + ".join(parts) + ")"


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> Field:
    """The finite field of order ``p^k`` with the deterministic modulus."""
    if k == 1:
        return PrimeField(p)
    return ExtensionField(p, k)


@dataclass(frozen=True)
class Scalar:
    """A field element together with its field."""

    field: Field
    value: object

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise DomainError(f"{self.field!r} vs {other.field!r}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return Scalar(self.field, self.field.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, DomainError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    @property
    def vector(self) -> tuple:
        """Coefficient vector over the prime field (length ``k``)."""
        if isinstance(self.field, Rationals):
            return (self.value,)
        return self.field.to_vector(self.value)

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field!r}, {self.field.format(self.value)})"

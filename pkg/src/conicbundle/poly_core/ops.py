"""Operations on :class:`Poly` values and matrices of them."""
from __future__ import annotations

from typing import Sequence

from . import linalg
from .poly import AlphabetError, Poly


def poly_arith(a: Poly, b: Poly, kind: str) -> Poly:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


def partial_derivative(f: Poly, var: str) -> Poly:
    return f.diff(var)


def linear_pullback(f: Poly, rows: Sequence[Sequence], new_vars: Sequence[str] | None = None) -> Poly:
    """Replace variable ``i`` of ``f`` by ``sum_j rows[i][j] * new_vars[j]``.

    ``rows`` holds raw field values, one row per variable of ``f``;
    ``new_vars`` defaults to the alphabet of ``f``.
    """
    F = f.field
    new_vars = f.vars if new_vars is None else tuple(new_vars)
    if len(rows) != len(f.vars):
        raise ValueError("need one linear form per variable")
    gens = Poly.gens(new_vars, F)
    forms = []
    for row in rows:
        if len(row) != len(new_vars):
            raise ValueError("linear form has the wrong length")
        acc = Poly.zero(new_vars, F)
        for g, c in zip(gens, row):
            c = F.raw(c)
            if not F.is_zero(c):
                acc = acc + g.scale(c)
        forms.append(acc)
    powers: dict[tuple[int, int], Poly] = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = forms[i] if k == 1 else power(i, k - 1) * forms[i]
        return powers[key]

    one = Poly.const(new_vars, F, 1)
    out = Poly.zero(new_vars, F)
    for e, c in f.items():
        t = one.scale(c)
        for i, k in enumerate(e):
            if k:
                t = t * power(i, k)
        out = out + t
    return out


def substitute_linear(f: Poly, T: Sequence[Sequence]) -> Poly:
    """``f(T v)``: variable ``i`` becomes row ``i`` of ``T`` applied to the alphabet.

    Entries of ``T`` are :class:`Scalar` values or integers/fractions.

    Composition: ``substitute_linear(substitute_linear(f, T2), T1)`` equals
    ``substitute_linear(f, T2 @ T1)``.
    """
    n = len(f.vars)
    if len(T) != n or any(len(r) != n for r in T):
        raise ValueError(f"transform must be {n}x{n}")
    F = f.field
    raw = [[F.coerce(c) for c in r] for r in T]
    if F.is_zero(linalg.det(raw, F)):
        raise ZeroDivisionError("transform is singular")
    return linear_pullback(f, raw)


def _check_square(M):
    n = len(M)
    if n == 0 or any(len(r) != n for r in M):
        raise ValueError("matrix is not square")
    return n


def determinant(M: Sequence[Sequence[Poly]]) -> Poly:
    """Cofactor expansion along successive rows, memoized on column subsets."""
    n = _check_square(M)
    first = M[0][0]
    for row in M:
        for e in row:
            if e.vars != first.vars or e.field != first.field:
                raise AlphabetError("matrix entries must share alphabet and field")
    zero = Poly.zero(first.vars, first.field)
    memo: dict[int, Poly] = {}

    def minor(row: int, cols: int) -> Poly:
        # determinant of rows row.. and the columns in bitmask ``cols``
        if row == n:
            return Poly.const(first.vars, first.field, 1)
        if cols in memo:
            return memo[cols]
        acc = zero
        sign = 1
        for c in range(n):
            bit = 1 << c
            if not cols & bit:
                continue
            entry = M[row][c]
            if entry:
                sub = minor(row + 1, cols & ~bit)
                term = entry * sub
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[cols] = acc
        return acc

    return minor(0, (1 << n) - 1)


def sylvester_matrix(f: Poly, g: Poly, var: str) -> list[list[Poly]]:
    cf = f.coefficients_in(var)[::-1]  # leading coefficient first
    cg = g.coefficients_in(var)[::-1]
    m, n = len(cf) - 1, len(cg) - 1
    size = m + n
    zero = Poly.zero(f.vars, f.field)
    rows = []
    for i in range(n):
        rows.append([zero] * i + cf + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + cg + [zero] * (size - n - 1 - i))
    return rows


def sylvester_resultant(f: Poly, g: Poly, var: str) -> Poly:
    """Resultant of ``f`` and ``g`` with respect to ``var`` (actual degrees)."""
    if f.vars != g.vars or f.field != g.field:
        raise AlphabetError("resultant operands must share alphabet and field")
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    m, n = f.degree(var), g.degree(var)
    if m == 0 and n == 0:
        raise ValueError(f"variable {var!r} occurs in neither polynomial")
    return determinant(sylvester_matrix(f, g, var))


def hessian(f: Poly, vars: Sequence[str]) -> list[list[Poly]]:
    firsts = {v: f.diff(v) for v in vars}
    return [[firsts[a].diff(b) for b in vars] for a in vars]

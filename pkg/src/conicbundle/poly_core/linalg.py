"""Dense linear algebra over a :class:`Field`, on raw values."""
from __future__ import annotations

from typing import Sequence

from .fields import Field


def row_reduce(rows: Sequence[Sequence], field: Field, ncols: int | None = None):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    F = field
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if not F.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and not F.is_zero(m[i][c]):
                f = m[i][c]
                row_r = m[r]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence], field: Field, ncols: int | None = None) -> int:
    """Rank via forward elimination only; rows may be sparse dicts or lists."""
    F = field
    basis: dict[int, dict] = {}  # pivot column -> normalized sparse row
    for row in rows:
        vec = dict(row.items()) if isinstance(row, dict) else {
            j: x for j, x in enumerate(row) if not F.is_zero(x)
        }
        while vec:
            c = min(vec)
            if c not in basis:
                inv = F.inv(vec[c])
                basis[c] = {j: F.mul(inv, x) for j, x in vec.items()}
                break
            f = vec[c]
            for j, x in basis[c].items():
                y = F.sub(vec.get(j, F.zero()), F.mul(f, x))
                if F.is_zero(y):
                    vec.pop(j, None)
                else:
                    vec[j] = y
    return len(basis)


def det(matrix: Sequence[Sequence], field: Field):
    F = field
    n = len(matrix)
    m = [list(r) for r in matrix]
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    result = F.one()
    for c in range(n):
        piv = next((i for i in range(c, n) if not F.is_zero(m[i][c])), None)
        if piv is None:
            return F.zero()
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = F.neg(result)
        result = F.mul(result, m[c][c])
        inv = F.inv(m[c][c])
        for i in range(c + 1, n):
            if not F.is_zero(m[i][c]):
                f = F.mul(m[i][c], inv)
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[c])]
    return result


def inverse(matrix: Sequence[Sequence], field: Field):
    F = field
    n = len(matrix)
    aug = [list(r) + [F.one() if i == j else F.zero() for j in range(n)] for i, r in enumerate(matrix)]
    red, piv = row_reduce(aug, F, ncols=n)
    if piv != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def matmul(a, b, field: Field):
    F = field
    out = []
    for row in a:
        new = []
        for j in range(len(b[0])):
            acc = F.zero()
            for k, x in enumerate(row):
                if not F.is_zero(x):
                    acc = F.add(acc, F.mul(x, b[k][j]))
            new.append(acc)
        out.append(new)
    return out

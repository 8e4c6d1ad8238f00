"""Lines on hypersurfaces and moving a line to ``x = y = z = 0``."""
from __future__ import annotations

from ..poly_core import Poly, linalg
from .points import ProjLine, ProjTransform


def contains_line(F: Poly, line: ProjLine) -> bool:
    """Whether ``F`` vanishes identically on ``line``."""
    if len(F.vars) != len(line.p1.coords):
        raise ValueError("line and hypersurface live in different spaces")
    return line.restrict(F).is_zero()


def move_line_to_standard(line: ProjLine) -> ProjTransform:
    """Transform ``T`` with ``T(p1) = e_{n-1}`` and ``T(p2) = e_n``.

    The spanning points are completed to a basis by the first standard
    basis vectors that keep the set independent; ``T`` is the inverse of
    the matrix whose columns are those vectors followed by ``p1, p2``.
    """
    F = line.field
    n = len(line.p1.coords)
    chosen = [list(line.p1.coords), list(line.p2.coords)]
    basis = []
    for j in range(n):
        if len(basis) == n - 2:
            break
        e = [F.one() if i == j else F.zero() for i in range(n)]
        if linalg.rank(chosen + basis + [e], F) == len(chosen) + len(basis) + 1:
            basis.append(e)
    if len(basis) != n - 2:
        raise ValueError("line does not span a 2-dimensional subspace")
    columns = basis + chosen
    S = [[columns[c][r] for c in range(n)] for r in range(n)]
    return ProjTransform(F, tuple(map(tuple, linalg.inverse(S, F))))

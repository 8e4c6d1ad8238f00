"""Backend selection and high-level wrappers for the projective-space scans.

The compiled extension ``conicbundle._kernels`` is used when it imports;
otherwise, or when ``CONICBUNDLE_PURE_PYTHON=1`` is set, the pure-Python
``conicbundle._kernels_py`` is used.  Both enumerate points in the same
canonical order and return identical results.
"""
from __future__ import annotations

import importlib
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from .poly_core import Field, Poly

__all__ = [
    "BACKEND",
    "get_backend",
    "point_count",
    "find_zeros",
    "grid_values",
    "values_at",
    "canonical_key",
]


def get_backend(name: str):
    if name == "compiled":
        return importlib.import_module("conicbundle._kernels")
    if name == "python":
        return importlib.import_module("conicbundle._kernels_py")
    raise ValueError(f"unknown backend {name!r}")


def _select():
    if os.environ.get("CONICBUNDLE_PURE_PYTHON", "") not in ("", "0"):
        return "python", get_backend("python")
    try:
        return "compiled", get_backend("compiled")
    except ImportError:
        return "python", get_backend("python")


BACKEND, _impl = _select()


def point_count(nvars: int, q: int) -> int:
    """Number of points of ``P^{nvars-1}(GF(q))``."""
    return sum(q**j for j in range(nvars))


def canonical_key(coords: Sequence[int]) -> tuple:
    """Sort key matching the scan order of encoded canonical coordinates."""
    pivot = next(i for i, c in enumerate(coords) if c)
    return (pivot, tuple(coords[pivot + 1:]))


def _tables(field: Field):
    log, exp, zech = field.log_tables()
    cached = getattr(field, "_np_tables", None)
    if cached is None:
        cached = (
            np.asarray(log, dtype=np.int64),
            np.asarray(exp if exp else [1], dtype=np.int64),
            np.asarray(zech if zech else [0], dtype=np.int64),
        )
        field._np_tables = cached
    return cached


def _compile(polys: Sequence[Poly], field: Field):
    log = field.log_tables()[0]
    nvars = len(polys[0].vars)
    exps, coef, offsets = [], [], [0]
    for f in polys:
        if f.vars != polys[0].vars:
            raise ValueError("polynomials must share an alphabet")
        g = f.change_field(field)
        for e, c in g.items():
            exps.append(e)
            coef.append(log[c])
        offsets.append(len(coef))
    return (
        np.asarray(exps, dtype=np.int64).reshape(len(coef), nvars),
        np.asarray(coef, dtype=np.int64),
        np.asarray(offsets, dtype=np.int64),
    )


def _ranges(total: int, workers: int):
    step = -(-total // workers)
    return [(s, min(s + step, total)) for s in range(0, total, step)]


def find_zeros(polys: Sequence[Poly], field: Field, max_hits: int | None = None,
               workers: int = 1, backend=None) -> list[tuple[int, ...]]:
    """Common zeros in ``P^{n-1}(field)`` of homogeneous ``polys``, in scan order.

    With ``workers > 1`` the index range is split into contiguous chunks
    scanned concurrently; results are merged in chunk order, so the output
    equals the sequential scan.
    """
    impl = backend or _impl
    q = field.order
    log, _, zech = _tables(field)
    exps, coef, offsets = _compile(polys, field)
    nvars = len(polys[0].vars)
    total = point_count(nvars, q)
    limit = total if max_hits is None else max_hits
    batch = max(1, min(limit, 4096))

    def run(lo, hi, want):
        out = []
        while lo < hi and len(out) < want:
            hits, lo = impl.scan_zeros(q, log, zech, exps, coef, offsets, nvars, lo, hi,
                                       min(batch, want - len(out)))
            out.extend(tuple(int(c) for c in row) for row in hits)
        return out

    if workers <= 1 or total < 2 * workers:
        return run(0, total, limit)
    with ThreadPoolExecutor(workers) as pool:
        chunks = list(pool.map(lambda r: run(r[0], r[1], limit), _ranges(total, workers)))
    merged = [p for chunk in chunks for p in chunk]
    return merged[:limit]


def grid_values(polys: Sequence[Poly], field: Field, backend=None):
    """All canonical points of ``P^{n-1}(field)`` with each polynomial's value there."""
    impl = backend or _impl
    q = field.order
    log, exp, zech = _tables(field)
    exps, coef, offsets = _compile(polys, field)
    nvars = len(polys[0].vars)
    return impl.eval_grid(q, log, exp, zech, exps, coef, offsets, nvars, 0, point_count(nvars, q))


def values_at(polys: Sequence[Poly], field: Field, points: Sequence[Sequence[int]], backend=None):
    """``(len(points), len(polys))`` array of encoded values at the given points."""
    impl = backend or _impl
    log, exp, zech = _tables(field)
    exps, coef, offsets = _compile(polys, field)
    pts = np.asarray(points, dtype=np.int64).reshape(len(points), len(polys[0].vars))
    return impl.eval_points(field.order, log, exp, zech, exps, coef, offsets, pts)

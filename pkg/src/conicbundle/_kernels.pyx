# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled scan kernels over projective space P^{n-1}(GF(q)).

Field elements arrive in *log form*: ``log[a]`` for ``a != 0`` and the
sentinel ``q - 1`` for zero.  Addition goes through the Zech table
``zech[n] = log(1 + g^n)``.  Points are enumerated in canonical order:
pivot (first nonzero coordinate, set to 1) ascending, then the trailing
coordinates lexicographically by their integer encoding.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef inline int64_t _zadd(int64_t a, int64_t b, int64_t qm1, const int64_t* zech) noexcept nogil:
    cdef int64_t d, z
    if a == qm1:
        return b
    if b == qm1:
        return a
    d = b - a
    if d < 0:
        d += qm1
    z = zech[d]
    if z == qm1:
        return qm1
    z += a
    if z >= qm1:
        z -= qm1
    return z


cdef inline int64_t _eval_log(const int64_t* clog, int nvars, const int64_t* exps,
                              const int64_t* coef, int64_t t0, int64_t t1,
                              int64_t qm1, const int64_t* zech) noexcept nogil:
    cdef int64_t acc = qm1, s, e, t
    cdef int j
    cdef bint zero
    for t in range(t0, t1):
        s = coef[t]
        zero = False
        for j in range(nvars):
            e = exps[t * nvars + j]
            if e:
                if clog[j] == qm1:
                    zero = True
                    break
                s += e * clog[j]
        if zero:
            continue
        if qm1 > 1:
            s %= qm1
        else:
            s = 0
        acc = _zadd(acc, s, qm1, zech)
    return acc


cdef void _decode(int64_t index, int nvars, int64_t q, int64_t* coords) noexcept nogil:
    cdef int pivot = 0, j
    cdef int64_t block = 1
    for j in range(nvars - 1):
        block *= q
    while index >= block:
        index -= block
        pivot += 1
        block //= q
    for j in range(nvars):
        coords[j] = 0
    coords[pivot] = 1
    for j in range(nvars - 1, pivot, -1):
        coords[j] = index % q
        index //= q


cdef void _advance(int nvars, int64_t q, int64_t* coords) noexcept nogil:
    cdef int pivot = 0, j
    while coords[pivot] == 0:
        pivot += 1
    j = nvars - 1
    while j > pivot:
        coords[j] += 1
        if coords[j] < q:
            return
        coords[j] = 0
        j -= 1
    # tail exhausted: move the pivot right
    coords[pivot] = 0
    if pivot + 1 < nvars:
        coords[pivot + 1] = 1


def point_count(int nvars, int64_t q):
    cdef int64_t total = 0, block = 1
    cdef int j
    for j in range(nvars):
        total += block
        block *= q
    return total


def scan_zeros(int64_t q, const int64_t[::1] log, const int64_t[::1] zech,
               const int64_t[:, ::1] exps, const int64_t[::1] coef, const int64_t[::1] offsets,
               int nvars, int64_t start, int64_t stop, int64_t max_hits):
    """Common zeros of all polynomials among points ``start <= index < stop``.

    Returns ``(hits, resume)``: an ``(h, nvars)`` array of encoded coordinates
    and the index at which scanning stopped (``stop`` unless ``max_hits`` was
    reached first).
    """
    cdef int npolys = offsets.shape[0] - 1
    cdef int64_t qm1 = q - 1
    cdef int64_t idx, nhits = 0, p
    cdef int j
    cdef bint ok
    cdef int64_t* coords = <int64_t*> malloc(nvars * sizeof(int64_t))
    cdef int64_t* clog = <int64_t*> malloc(nvars * sizeof(int64_t))
    hits_arr = np.zeros((max(max_hits, 0), nvars), dtype=np.int64)
    cdef int64_t[:, ::1] hits = hits_arr
    cdef const int64_t* lg = &log[0]
    cdef const int64_t* zc = &zech[0]
    cdef const int64_t* ex = &exps[0, 0] if exps.shape[0] > 0 else NULL
    cdef const int64_t* cf = &coef[0] if coef.shape[0] > 0 else NULL
    cdef const int64_t* off = &offsets[0]
    idx = start
    with nogil:
        if idx < stop:
            _decode(idx, nvars, q, coords)
        while idx < stop:
            for j in range(nvars):
                clog[j] = lg[coords[j]]
            ok = True
            for p in range(npolys):
                if _eval_log(clog, nvars, ex, cf, off[p], off[p + 1], qm1, zc) != qm1:
                    ok = False
                    break
            idx += 1
            if ok:
                for j in range(nvars):
                    hits[nhits, j] = coords[j]
                nhits += 1
                if nhits >= max_hits:
                    break
            _advance(nvars, q, coords)
    free(coords)
    free(clog)
    return hits_arr[:nhits], idx


def eval_grid(int64_t q, const int64_t[::1] log, const int64_t[::1] exp, const int64_t[::1] zech,
              const int64_t[:, ::1] exps, const int64_t[::1] coef, const int64_t[::1] offsets,
              int nvars, int64_t start, int64_t stop):
    """Encoded values of every polynomial at points ``start <= index < stop``.

    Returns ``(points, values)`` arrays of shapes ``(m, nvars)`` and ``(m, npolys)``.
    """
    cdef int npolys = offsets.shape[0] - 1
    cdef int64_t qm1 = q - 1
    cdef int64_t m = stop - start if stop > start else 0
    cdef int64_t r, v
    cdef int j, p
    pts_arr = np.zeros((m, nvars), dtype=np.int64)
    vals_arr = np.zeros((m, npolys), dtype=np.int64)
    cdef int64_t[:, ::1] pts = pts_arr
    cdef int64_t[:, ::1] vals = vals_arr
    cdef int64_t* coords = <int64_t*> malloc(nvars * sizeof(int64_t))
    cdef int64_t* clog = <int64_t*> malloc(nvars * sizeof(int64_t))
    cdef const int64_t* lg = &log[0]
    cdef const int64_t* xp = &exp[0]
    cdef const int64_t* zc = &zech[0]
    cdef const int64_t* ex = &exps[0, 0] if exps.shape[0] > 0 else NULL
    cdef const int64_t* cf = &coef[0] if coef.shape[0] > 0 else NULL
    cdef const int64_t* off = &offsets[0]
    with nogil:
        if m > 0:
            _decode(start, nvars, q, coords)
        for r in range(m):
            for j in range(nvars):
                clog[j] = lg[coords[j]]
                pts[r, j] = coords[j]
            for p in range(npolys):
                v = _eval_log(clog, nvars, ex, cf, off[p], off[p + 1], qm1, zc)
                vals[r, p] = 0 if v == qm1 else xp[v]
            _advance(nvars, q, coords)
    free(coords)
    free(clog)
    return pts_arr, vals_arr


def eval_points(int64_t q, const int64_t[::1] log, const int64_t[::1] exp, const int64_t[::1] zech,
                const int64_t[:, ::1] exps, const int64_t[::1] coef, const int64_t[::1] offsets,
                const int64_t[:, ::1] points):
    """Encoded values of every polynomial at each row of ``points``."""
    cdef int npolys = offsets.shape[0] - 1
    cdef int nvars = points.shape[1]
    cdef int64_t m = points.shape[0]
    cdef int64_t qm1 = q - 1
    cdef int64_t r, v
    cdef int j, p
    vals_arr = np.zeros((m, npolys), dtype=np.int64)
    cdef int64_t[:, ::1] vals = vals_arr
    if m == 0:
        return vals_arr
    cdef int64_t* clog = <int64_t*> malloc(nvars * sizeof(int64_t))
    cdef const int64_t* lg = &log[0]
    cdef const int64_t* xp = &exp[0]
    cdef const int64_t* zc = &zech[0]
    cdef const int64_t* ex = &exps[0, 0] if exps.shape[0] > 0 else NULL
    cdef const int64_t* cf = &coef[0] if coef.shape[0] > 0 else NULL
    cdef const int64_t* off = &offsets[0]
    with nogil:
        for r in range(m):
            for j in range(nvars):
                clog[j] = lg[points[r, j]]
            for p in range(npolys):
                v = _eval_log(clog, nvars, ex, cf, off[p], off[p + 1], qm1, zc)
                vals[r, p] = 0 if v == qm1 else xp[v]
    free(clog)
    return vals_arr

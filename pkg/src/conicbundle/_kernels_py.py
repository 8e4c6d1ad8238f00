"""Pure-Python scan kernels; same contract as the compiled ``_kernels``."""
from __future__ import annotations

import numpy as np


def point_count(nvars: int, q: int) -> int:
    return sum(q**j for j in range(nvars))


def _decode(index, nvars, q):
    block = q ** (nvars - 1)
    pivot = 0
    while index >= block:
        index -= block
        pivot += 1
        block //= q
    coords = [0] * nvars
    coords[pivot] = 1
    for j in range(nvars - 1, pivot, -1):
        index, coords[j] = divmod(index, q)
    return coords


def _advance(coords, q):
    nvars = len(coords)
    pivot = 0
    while coords[pivot] == 0:
        pivot += 1
    j = nvars - 1
    while j > pivot:
        coords[j] += 1
        if coords[j] < q:
            return
        coords[j] = 0
        j -= 1
    coords[pivot] = 0
    if pivot + 1 < nvars:
        coords[pivot + 1] = 1


def _compile(exps, coef, offsets):
    exps = np.asarray(exps).tolist()
    coef = np.asarray(coef).tolist()
    offsets = np.asarray(offsets).tolist()
    polys = []
    for p in range(len(offsets) - 1):
        terms = []
        for t in range(offsets[p], offsets[p + 1]):
            terms.append((coef[t], [(j, e) for j, e in enumerate(exps[t]) if e]))
        polys.append(terms)
    return polys


def _eval_log(clog, terms, qm1, zech):
    acc = qm1
    for s, support in terms:
        for j, e in support:
            c = clog[j]
            if c == qm1:
                break
            s += e * c
        else:
            s = s % qm1 if qm1 > 1 else 0
            if acc == qm1:
                acc = s
                continue
            d = s - acc
            if d < 0:
                d += qm1
            z = zech[d]
            if z == qm1:
                acc = qm1
            else:
                z += acc
                acc = z - qm1 if z >= qm1 else z
    return acc


def scan_zeros(q, log, zech, exps, coef, offsets, nvars, start, stop, max_hits):
    log = np.asarray(log).tolist()
    zech = np.asarray(zech).tolist()
    polys = _compile(exps, coef, offsets)
    qm1 = q - 1
    hits = []
    idx = start
    if idx < stop:
        coords = _decode(idx, nvars, q)
    while idx < stop:
        clog = [log[c] for c in coords]
        ok = True
        for terms in polys:
            if _eval_log(clog, terms, qm1, zech) != qm1:
                ok = False
                break
        idx += 1
        if ok:
            hits.append(list(coords))
            if len(hits) >= max_hits:
                break
        _advance(coords, q)
    return np.array(hits, dtype=np.int64).reshape(len(hits), nvars), idx


def eval_grid(q, log, exp, zech, exps, coef, offsets, nvars, start, stop):
    log = np.asarray(log).tolist()
    exp = np.asarray(exp).tolist()
    zech = np.asarray(zech).tolist()
    polys = _compile(exps, coef, offsets)
    qm1 = q - 1
    m = max(stop - start, 0)
    pts, vals = [], []
    if m:
        coords = _decode(start, nvars, q)
    for _ in range(m):
        clog = [log[c] for c in coords]
        pts.append(list(coords))
        row = []
        for terms in polys:
            v = _eval_log(clog, terms, qm1, zech)
            row.append(0 if v == qm1 else exp[v])
        vals.append(row)
        _advance(coords, q)
    return (
        np.array(pts, dtype=np.int64).reshape(m, nvars),
        np.array(vals, dtype=np.int64).reshape(m, len(polys)),
    )


def eval_points(q, log, exp, zech, exps, coef, offsets, points):
    log = np.asarray(log).tolist()
    exp = np.asarray(exp).tolist()
    zech = np.asarray(zech).tolist()
    polys = _compile(exps, coef, offsets)
    qm1 = q - 1
    vals = []
    for pt in np.asarray(points).tolist():
        clog = [log[c] for c in pt]
        row = []
        for terms in polys:
            v = _eval_log(clog, terms, qm1, zech)
            row.append(0 if v == qm1 else exp[v])
        vals.append(row)
    return np.array(vals, dtype=np.int64).reshape(len(vals), len(polys))

import itertools
import random

import pytest

from conicbundle import kernels
from conicbundle.determinantal import random_form
from conicbundle.poly_core import GF

python_backend = kernels.get_backend("python")
try:
    compiled_backend = kernels.get_backend("compiled")
except ImportError:  # pragma: no cover - extension not built
    compiled_backend = None

BACKENDS = [python_backend] + ([compiled_backend] if compiled_backend else [])
FIELDS = [GF(5), GF(7), GF(3, 2), GF(5, 2), GF(2, 3)]


def _naive_points(n, K):
    pts = []
    for pivot in range(n):
        for tail in itertools.product(range(K.order), repeat=n - pivot - 1):
            pts.append((0,) * pivot + (1,) + tail)
    return pts


def test_compiled_backend_is_default_when_built():
    if compiled_backend is None:
        pytest.skip("compiled extension not available")
    assert kernels.BACKEND in ("compiled", "python")


def test_point_count():
    assert kernels.point_count(3, 7) == 57
    assert kernels.point_count(5, 11) == sum(11**j for j in range(5))


@pytest.mark.parametrize("K", FIELDS, ids=repr)
@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.__name__.rsplit(".", 1)[-1])
def test_grid_matches_direct_evaluation(K, backend):
    rng = random.Random(K.order)
    f = random_form(K, 3, rng)
    g = random_form(K, 2, rng)
    pts, vals = kernels.grid_values([f, g], K, backend=backend)
    naive = _naive_points(3, K)
    assert [tuple(int(c) for c in p) for p in pts] == naive
    for p, row in zip(naive, vals):
        assert int(row[0]) == f.evaluate(p)
        assert int(row[1]) == g.evaluate(p)


@pytest.mark.parametrize("K", FIELDS, ids=repr)
def test_backends_agree_on_zeros(K):
    rng = random.Random(7 * K.order)
    for _ in range(3):
        polys = [random_form(K, 2, rng), random_form(K, 3, rng)]
        results = [kernels.find_zeros(polys, K, backend=b) for b in BACKENDS]
        assert all(r == results[0] for r in results)
        expected = [p for p in _naive_points(3, K) if all(K.is_zero(f.evaluate(p)) for f in polys)]
        assert results[0] == expected


def test_scan_order_is_canonical():
    K = GF(7)
    f = random_form(K, 2, random.Random(0))
    zeros = kernels.find_zeros([f], K)
    assert zeros == sorted(zeros, key=kernels.canonical_key)


@pytest.mark.parametrize("workers", [2, 3, 8])
def test_parallel_scan_equals_sequential(workers):
    K = GF(11, 2)
    rng = random.Random(workers)
    f = random_form(K, 3, rng)
    seq = kernels.find_zeros([f], K)
    assert kernels.find_zeros([f], K, workers=workers) == seq
    assert kernels.find_zeros([f], K, workers=workers, max_hits=5) == seq[:5]


def test_max_hits_prefix():
    K = GF(13)
    f = random_form(K, 2, random.Random(1))
    full = kernels.find_zeros([f], K)
    for m in (1, 2, len(full)):
        assert kernels.find_zeros([f], K, max_hits=m) == full[:m]


def test_values_at_points():
    K = GF(7, 3)
    rng = random.Random(3)
    f = random_form(K, 3, rng)
    pts = [(1, rng.randrange(K.order), rng.randrange(K.order)) for _ in range(20)]
    for b in BACKENDS:
        vals = kernels.values_at([f], K, pts, backend=b)
        assert [int(v[0]) for v in vals] == [f.evaluate(p) for p in pts]


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")

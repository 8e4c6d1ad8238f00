import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conicbundle.poly_core import (
    GF,
    MINUS_INFINITY,
    QQ,
    AlphabetError,
    Poly,
    determinant,
    hessian,
    linalg,
    partial_derivative,
    poly_arith,
    substitute_linear,
    sylvester_resultant,
)
from conicbundle.textio import parse_poly

from strategies import F101, PLANE, homogeneous_polys, invertible_matrices, polys

SPACE = ("x", "y", "z", "w", "t")


def P(src, vars=PLANE, field=QQ):
    return parse_poly(src, vars, field)


# -- arithmetic ---------------------------------------------------------------------


def test_arith_examples():
    assert poly_arith(P("x + y"), P("x - y"), "add") == P("2*x")
    assert poly_arith(P("x + y"), P("x - y"), "mul") == P("x^2 - y^2")
    assert poly_arith(P("0"), P("x^3 + 7*y"), "mul").is_zero()
    with pytest.raises(ValueError):
        poly_arith(P("x"), P("y"), "div")


def test_alphabet_and_field_mismatch():
    with pytest.raises(AlphabetError):
        P("x") + P("x", ("x", "y"))
    with pytest.raises(ValueError):
        P("x") + P("x", field=GF(7))


def test_zero_degree_is_minus_infinity():
    z = Poly.zero(PLANE)
    assert z.total_degree() == MINUS_INFINITY
    assert z.degree("x") == MINUS_INFINITY
    assert z.total_degree() + 5 == MINUS_INFINITY


def test_canonical_printing():
    assert str(P("x^2*y - 7/2*z")) == "x^2*y - 7/2*z"
    assert str(P("z + y + x")) == "x + y + z"
    assert str(P("-3 + x^2")) == "x^2 - 3"
    assert str(P("x - 12", field=GF(7))) == "x + 2"


@settings(max_examples=60)
@given(polys(), polys(), polys())
def test_ring_axioms_rational(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == Poly.zero(PLANE)


@settings(max_examples=60)
@given(polys(F101), polys(F101), polys(F101))
def test_ring_axioms_prime_field(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(polys(GF(7, 2), max_degree=2, max_terms=4), polys(GF(7, 2), max_degree=2, max_terms=4))
def test_extension_products_commute(a, b):
    assert a * b == b * a


# -- derivatives --------------------------------------------------------------------


def test_partial_derivative_examples():
    assert partial_derivative(P("x^3"), "x") == P("3*x^2")
    assert partial_derivative(P("x*y"), "z").is_zero()
    assert partial_derivative(P("x^2*y + y^3"), "y") == P("x^2 + 3*y^2")
    with pytest.raises(AlphabetError):
        partial_derivative(P("x"), "w")


@given(polys(), polys(), st.sampled_from(PLANE), st.integers(-5, 5))
def test_derivative_linear_and_leibniz(f, g, v, c):
    d = partial_derivative
    assert d(f * c + g, v) == d(f, v) * c + d(g, v)
    assert d(f * g, v) == d(f, v) * g + f * d(g, v)


def test_derivative_in_characteristic_p():
    assert partial_derivative(P("x^7 + y", field=GF(7)), "x").is_zero()


# -- linear substitution -------------------------------------------------------------


def test_substitute_examples():
    eye = [[int(i == j) for j in range(3)] for i in range(3)]
    assert substitute_linear(P("x"), eye) == P("x")
    swap = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert substitute_linear(P("x^2"), swap) == P("y^2")
    T = [[int(i == j) for j in range(5)] for i in range(5)]
    T[3][0] = 1  # w -> w + x
    assert substitute_linear(P("x*w", SPACE), T) == P("x*w + x^2", SPACE)


def test_substitute_rejects_singular():
    with pytest.raises(ZeroDivisionError):
        substitute_linear(P("x"), [[1, 1, 0], [1, 1, 0], [0, 0, 1]])
    with pytest.raises(ValueError):
        substitute_linear(P("x"), [[1, 0], [0, 1]])


@settings(max_examples=40)
@given(homogeneous_polys(3), invertible_matrices(F101, 3), invertible_matrices(F101, 3))
def test_substitution_composes(f, T1, T2):
    # substituting T2 then T1 is substituting the product T2 @ T1
    prod = linalg.matmul(T2, T1, F101)
    g = substitute_linear(substitute_linear(f, T2), T1)
    assert g == substitute_linear(f, prod)
    assert g.is_homogeneous()
    assert g.total_degree() == f.total_degree()


# -- determinants --------------------------------------------------------------------


def _leibniz(M):
    n = len(M)
    zero = Poly.zero(M[0][0].vars, M[0][0].field)
    total = zero
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Poly.const(zero.vars, zero.field, -1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term = term * M[i][j]
        total = total + term
    return total


def test_determinant_examples():
    x, y, z = Poly.gens(PLANE)
    f = P("x^3 + y^3")
    zero = Poly.zero(PLANE)
    assert determinant([[x, zero, zero], [zero, z, zero], [zero, zero, f]]) == x * z * f
    l1, l2, l3 = P("x + y"), P("2*z"), P("y")
    assert determinant([[l1, l2], [l2, l3]]) == l1 * l3 - l2 * l2
    assert determinant([[x, y, z], [x, y, z], [f, zero, y]]).is_zero()
    with pytest.raises(ValueError):
        determinant([[x, y]])


POOL_SRC = ("x", "y", "z", "x^2", "x*y")


def _pool():
    return [Poly.zero(PLANE)] + [P(s) for s in POOL_SRC]


def test_determinant_matches_leibniz_on_every_symmetric_matrix():
    # every symmetric 3x3 matrix with entries in the pool: 6^6 cases
    pool = _pool()
    count = 0
    for a, b, c, d, e, f in itertools.product(pool, repeat=6):
        M = [[a, b, c], [b, d, e], [c, e, f]]
        assert determinant(M) == _leibniz(M)
        count += 1
    assert count == 6**6


def test_determinant_matches_leibniz_on_every_2x2_and_sampled_3x3():
    pool = _pool()
    for a, b, c, d in itertools.product(pool, repeat=4):
        assert determinant([[a, b], [c, d]]) == a * d - b * c
    rng = random.Random(0)
    for _ in range(5000):
        M = [[rng.choice(pool) for _ in range(3)] for _ in range(3)]
        assert determinant(M) == _leibniz(M)


# -- resultants ----------------------------------------------------------------------


def test_resultant_examples():
    V = ("x", "a", "b")
    assert sylvester_resultant(P("x - a", V), P("x - b", V), "x") == P("a - b", V)
    assert sylvester_resultant(P("x^2"), P("x"), "x").is_zero()
    assert sylvester_resultant(P("x^2 - y"), P("x - y"), "x") == P("y^2 - y")
    with pytest.raises(ValueError):
        sylvester_resultant(P("y"), P("z"), "x")


@settings(max_examples=40)
@given(polys(F101, max_degree=3, max_terms=4), polys(F101, max_degree=3, max_terms=4))
def test_resultant_antisymmetry(f, g):
    if f.is_zero() or g.is_zero() or (f.degree("x") == 0 and g.degree("x") == 0):
        return
    sign = (-1) ** (f.degree("x") * g.degree("x"))
    assert sylvester_resultant(f, g, "x") == sylvester_resultant(g, f, "x") * sign


def test_resultant_detects_shared_roots_over_fp():
    # Res_x(f, g)(y) vanishes exactly where f(., y) and g(., y) share a root
    K = GF(7)
    f = P("x^2 - y", field=K)
    g = P("x - y + 1", field=K)
    r = sylvester_resultant(f, g, "x")
    for yv in range(7):
        shared = any(
            K.is_zero(f.evaluate((xv, yv, 0))) and K.is_zero(g.evaluate((xv, yv, 0))) for xv in range(7)
        )
        assert K.is_zero(r.evaluate((0, yv, 0))) == shared


# -- hessian -------------------------------------------------------------------------


def test_hessian_examples():
    z = Poly.zero(PLANE)
    two = Poly.const(PLANE, QQ, 2)
    one = Poly.const(PLANE, QQ, 1)
    assert hessian(P("x*y"), ("x", "y")) == [[z, one], [one, z]]
    assert hessian(P("x^2"), ("x", "y")) == [[two, z], [z, z]]
    H = hessian(P("x^2 + y^2 + z^2"), PLANE)
    assert H == [[two if i == j else z for j in range(3)] for i in range(3)]
    with pytest.raises(AlphabetError):
        hessian(P("x"), ("x", "w"))


def test_evaluate_and_partial_eval():
    f = P("x^2*y + 3*z")
    assert f.evaluate((Fraction(1), Fraction(2), Fraction(1))) == 5
    assert f.partial_eval({"x": 2}) == P("4*y + 3*z")

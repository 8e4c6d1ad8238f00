import itertools
import random

import pytest

from conicbundle.determinantal import (
    SymmetricMatrixRep,
    associated_conic,
    build_cubic,
    discriminant,
    random_form,
    random_matrix,
)
from conicbundle.geometry import (
    CommonComponentError,
    NotSingularError,
    ProjLine,
    ProjPoint,
    ProjTransform,
    SmoothnessCertificate,
    contains_line,
    even_contact_check,
    have_common_component,
    intersection_multiplicity,
    is_node,
    linear_factors,
    move_line_to_standard,
    singular_points,
    singular_points_plane_curve,
    smoothness_search,
)
from conicbundle.poly_core import GF, QQ, DomainError, Poly, sylvester_resultant
from conicbundle.textio import parse_poly

PLANE = ("x", "y", "z")
SPACE = ("x", "y", "z", "w", "t")


def C(src, field=QQ):
    return parse_poly(src, PLANE, field)


def S(src, field=QQ):
    return parse_poly(src, SPACE, field)


def pt(field, *coords):
    return ProjPoint.from_values(field, coords)


# -- points and lines -------------------------------------------------------------


def test_points_are_canonical():
    K = GF(7)
    assert pt(K, 0, 3, 6) == pt(K, 0, 1, 2)
    assert pt(QQ, 2, 4).coords == (1, 2)
    with pytest.raises(ValueError):
        pt(K, 0, 0, 0)


def test_extension_coordinates_keep_their_encoding():
    K = GF(11, 2)
    p = ProjPoint(K, (1, 22, 120))
    assert p.coords == (1, 22, 120)
    assert p.field_degree() == 2
    q = ProjPoint(K, (2, 4, 6))
    assert q.field_degree() == 1
    assert q.descend() == pt(GF(11), 1, 2, 3)


def test_contains_line_examples():
    std = ProjLine.standard(QQ)
    assert contains_line(S("x*w^2"), std)
    assert not contains_line(S("w^3"), std)
    fermat = S("x^3 + y^3 + z^3 + w^3 + t^3")
    line = ProjLine(pt(QQ, 1, -1, 0, 0, 0), pt(QQ, 0, 0, 1, -1, 0))
    assert contains_line(fermat, line)
    assert not contains_line(fermat, ProjLine(pt(QQ, 1, 0, 0, 0, 0), pt(QQ, 0, 1, 0, 0, 0)))


def test_move_line_standard_is_identity():
    K = GF(7)
    T = move_line_to_standard(ProjLine.standard(K))
    assert T.is_identity()


def test_move_line_from_first_basis_vectors():
    K = GF(7)
    e = [pt(K, *[int(i == j) for i in range(5)]) for j in range(5)]
    T = move_line_to_standard(ProjLine(e[0], e[1]))
    assert T.apply(e[0]) == e[3]
    assert T.apply(e[1]) == e[4]
    # a permutation matrix
    assert all(sorted(row) == [0, 0, 0, 0, 1] for row in T.matrix)


def _random_line(K, rng):
    while True:
        p1 = [rng.randrange(K.order) for _ in range(5)]
        p2 = [rng.randrange(K.order) for _ in range(5)]
        try:
            return ProjLine(ProjPoint(K, p1), ProjPoint(K, p2))
        except ValueError:
            continue


def _random_cubic(K, rng):
    mons = [e for e in itertools.product(range(4), repeat=5) if sum(e) == 3]
    return Poly.from_terms(SPACE, K, {m: rng.randrange(K.order) for m in mons if rng.random() < 0.4})


def test_move_line_round_trip_random():
    K = GF(7)
    rng = random.Random(3)
    std = ProjLine.standard(K)
    for _ in range(30):
        L = _random_line(K, rng)
        T = move_line_to_standard(L)
        assert T.apply(L.p1) == std.p1 and T.apply(L.p2) == std.p2
        F = _random_cubic(K, rng)
        assert contains_line(T.transform_form(F), std) == contains_line(F, L)
        # every cubic through L lands on a cubic through the standard line
        G = _cubic_through(K, L, rng)
        assert contains_line(T.transform_form(G), std)
        # normalizing again fixes the standard line
        again = move_line_to_standard(T.apply_line(L))
        assert again.apply(std.p1) == std.p1 and again.apply(std.p2) == std.p2


def _cubic_through(K, L, rng):
    # pull back a cubic through x = y = z = 0 along the inverse normalizer
    A = random_matrix(K, rng)
    T = move_line_to_standard(L)
    return T.inverse().transform_form(build_cubic(A).F)


def test_contains_line_invariant_under_transform():
    K = GF(11)
    rng = random.Random(8)
    for _ in range(20):
        L = _random_line(K, rng)
        F = _cubic_through(K, L, rng)
        assert contains_line(F, L)
        M = [[rng.randrange(11) for _ in range(5)] for _ in range(5)]
        try:
            T = ProjTransform(K, M)
        except ValueError:
            continue
        assert contains_line(T.transform_form(F), T.apply_line(L))


# -- singular loci and nodes -------------------------------------------------------


def test_singular_points_example_f5():
    K = GF(5)
    delta = C("x*y*z", K) * C("x^2 + y^2 + z^2", K)
    found = singular_points_plane_curve(delta, 5)
    for q in [pt(K, 1, 0, 0), pt(K, 0, 1, 0), pt(K, 0, 0, 1)]:
        assert q in found


def test_singular_points_nonreduced_line():
    K = GF(7)
    found = singular_points_plane_curve(C("x^5", K), 7)
    assert len(found) == 8  # all of the line x = 0 over GF(7)
    assert all(q.coords[0] == 0 for q in found)


def test_fermat_quintic_smooth_over_f7():
    assert singular_points_plane_curve(C("x^5 + y^5 + z^5", GF(7)), 7) == []
    assert singular_points_plane_curve(C("x^5 + y^5 + z^5", GF(7)), 7, 2) == []


def test_singular_points_need_finite_field():
    with pytest.raises(DomainError):
        singular_points_plane_curve(C("x^5"), 7)


def test_is_node_examples():
    K = GF(11)
    origin = pt(K, 0, 0, 1)
    assert is_node(C("x*y*z + x^3", K), origin)
    assert not is_node(C("y^2*z - x^3", K), origin)
    with pytest.raises(NotSingularError):
        is_node(C("x*y*z + x^3", K), pt(K, 1, 1, 1))
    with pytest.raises(NotSingularError):
        is_node(C("y*z^2 + x^3", K), origin)


def test_is_node_over_extension_point():
    K2 = GF(11, 2)
    i = K2.from_vector((0, 1))  # i^2 = -1
    # two lines x = +-i y meet in a node at (0:0:1)
    f = C("x^2 + y^2", GF(11)) * C("z", GF(11))
    assert is_node(f.change_field(K2), ProjPoint(K2, (0, 0, 1)))
    assert K2.mul(i, i) == K2.coerce(-1)


# -- smoothness certificates --------------------------------------------------------


def test_cone_apex_found():
    K = GF(7)
    cert = smoothness_search(S("x^3 + y^3 + z^3 + w^3", K), n=4, k_max=2)
    assert cert.verdict == SmoothnessCertificate.FOUND
    assert cert.point == pt(K, 0, 0, 0, 0, 1)
    assert cert.degree == 1


def test_fermat_cubic_smooth_to_degree_2():
    cert = smoothness_search(S("x^3 + y^3 + z^3 + w^3 + t^3", GF(7)), k_max=2)
    assert cert.verdict == SmoothnessCertificate.NONE
    assert cert.to_json()["caveat"].startswith("no singular point over GF(7^k) for k <= 2")


def test_smoothness_search_errors():
    with pytest.raises(ValueError):
        smoothness_search(S("x^3", GF(7)), k_max=0)
    with pytest.raises(DomainError):
        smoothness_search(S("x^3"))


def test_planted_singular_cubic_detected():
    # entries free of z: the cubic is a cone with apex (0:0:1:0:0) through the line
    K = GF(11)
    A = SymmetricMatrixRep.from_strings(K, l1="x", l2="y", l3="x + y", q1="x*y", q2="y^2 - x^2", f="x^3 + y^3")
    F = build_cubic(A).F
    for strategy in ("scan", "fibred"):
        cert = smoothness_search(F, p=11, k_max=1, strategy=strategy)
        assert cert.verdict == SmoothnessCertificate.FOUND
        assert pt(K, 0, 0, 1, 0, 0) in singular_points(F, K)


def test_fibred_and_scan_agree():
    K = GF(5)
    rng = random.Random(11)
    for _ in range(12):
        F = build_cubic(random_matrix(K, rng)).F
        a = smoothness_search(F, k_max=1, strategy="scan")
        b = smoothness_search(F, k_max=1, strategy="fibred")
        assert (a.verdict, a.point) == (b.verdict, b.point)


def test_every_cone_has_its_apex_found():
    # forms in at most four variables, viewed in P^4, are cones with apex e_t
    K = GF(7)
    rng = random.Random(2)
    mons = [e for e in itertools.product(range(4), repeat=4) if sum(e) == 3]
    for _ in range(25):
        terms = {m + (0,): rng.randrange(7) for m in mons if rng.random() < 0.5}
        F = Poly.from_terms(SPACE, K, terms)
        if F.is_zero():
            continue
        cert = smoothness_search(F, k_max=1, strategy="scan")
        assert cert.verdict == SmoothnessCertificate.FOUND
        assert pt(K, 0, 0, 0, 0, 1) in singular_points(F, K)


# -- intersection multiplicities ---------------------------------------------------


def test_intersection_multiplicity_examples():
    o = pt(QQ, 0, 0, 1)
    assert intersection_multiplicity(C("y"), C("y*z - x^2"), o) == 2
    assert intersection_multiplicity(C("y"), C("x"), o) == 1
    assert intersection_multiplicity(C("y^2*z - x^3"), C("y"), o) == 3
    assert intersection_multiplicity(C("y"), C("x"), pt(QQ, 1, 0, 0)) == 0


def test_intersection_multiplicity_common_component():
    with pytest.raises(CommonComponentError):
        intersection_multiplicity(C("x*y"), C("x*z"), pt(QQ, 0, 1, 1))
    assert have_common_component(C("x*y"), C("x*z"))
    assert not have_common_component(C("x*y"), C("z^2 - x*y"))


def test_odd_contact_of_fifth_power():
    K = GF(11)
    report = even_contact_check(C("x^5", K), C("y*z", K), 11, k_max=1)
    assert sorted(c.multiplicity for c in report.points) == [5, 5]
    assert report.total == 10
    assert not report.all_even


def test_even_contact_check_rejects_common_component():
    K = GF(11)
    with pytest.raises(CommonComponentError):
        even_contact_check(C("x*z*y^3", K), C("x*z", K), 11, k_max=1)


def test_even_contact_of_a_square_modulo_h():
    # det A = f*h - (l3 q1^2 - 2 l2 q1 q2 + l1 q2^2) and on h = 0 the bracket is a square
    K = GF(13)
    A = SymmetricMatrixRep.from_strings(K, l1="x", l2="y", l3="z", q1="x*z + y^2", q2="x^2 - y*z", f="x^3 + y^3 - z^3")
    report = even_contact_check(discriminant(A).delta, associated_conic(A).h, 13, k_max=3)
    assert report.all_even
    assert report.total <= 10


def _product_of_lines(K, rng, n):
    out = Poly.const(PLANE, K, 1)
    for _ in range(n):
        a, b, c = (rng.randrange(K.order) for _ in range(3))
        out = out * C(f"{a}*x + {b}*y + {c}*z", K)
    return out


def test_bezout_on_split_pairs():
    K = GF(13)
    rng = random.Random(4)
    done = 0
    while done < 8:
        delta, h = _product_of_lines(K, rng, 5), _product_of_lines(K, rng, 2)
        if delta.total_degree() != 5 or h.total_degree() != 2 or have_common_component(delta, h):
            continue
        report = even_contact_check(delta, h, 13, k_max=1)
        assert report.total == 10
        done += 1


def test_bezout_lines_against_smooth_conic():
    # a rational line meets a smooth conic in a point pair defined over GF(p^2)
    K = GF(7)
    rng = random.Random(9)
    h = C("x*z - y^2", K)
    for _ in range(6):
        delta = _product_of_lines(K, rng, 5)
        if delta.total_degree() != 5:
            continue
        report = even_contact_check(delta, h, 7, k_max=2)
        assert report.total == 10
        assert all(c.extension_degree <= 2 for c in report.points)


def test_contact_points_are_resultant_roots():
    K = GF(7)
    rng = random.Random(10)
    for _ in range(6):
        delta, h = random_form(K, 5, rng), random_form(K, 2, rng)
        report = even_contact_check(delta, h, 7, k_max=3)
        assert report.total <= 10
        r = sylvester_resultant(delta, h, "x")  # a form in y, z
        for c in report.points:
            L = c.point.field
            assert L.is_zero(r.change_field(L).evaluate(c.point.coords))


def test_linear_factors():
    K = GF(7)
    lines = linear_factors(C("x*z", K) * C("x^3 + y^3 + z^3", K))
    assert [str(g) for g in lines] == ["x", "z"]
    with pytest.raises(DomainError):
        linear_factors(C("x"))

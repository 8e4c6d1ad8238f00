"""End-to-end check: matrix or cubic-with-line to a verified quintic with odd theta.

The chain is: matrix ``A`` -> cubic ``F`` -> quintic ``det A`` and conic
``h`` -> singular points and their nodality -> contact parity of ``h``
with the quintic -> bounded smoothness of ``F``.  Searches run over
``GF(p^k)``; rational input is reduced modulo ``p`` first.
"""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field

from .determinantal import (
    RESOLUTION_LEFT,
    RESOLUTION_RIGHT,
    CubicThreefold,
    LineNotContainedError,
    SymmetricMatrixRep,
    associated_conic,
    build_cubic,
    cokernel_h0_and_chi,
    discriminant,
    extract_matrix,
    random_matrix,
    rank_at,
    verify_det_identity,
)
from .geometry import (
    CommonComponentError,
    ProjLine,
    SmoothnessCertificate,
    contains_line,
    even_contact_check,
    is_node,
    linear_factors,
    move_line_to_standard,
    singular_points_plane_curve,
    smoothness_search,
)
from .poly_core import GF, Poly, Rationals

__all__ = [
    "EXIT_OK",
    "EXIT_VIOLATION",
    "EXIT_USAGE",
    "EXIT_INCONCLUSIVE",
    "VERIFIED",
    "PipelineReport",
    "SMALL_CHARACTERISTICS",
    "check_characteristic",
    "matrix_from_cubic",
    "run_pipeline",
    "random_smooth_matrix",
]

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

VERIFIED = "quintic-odd-theta verified (bounded)"
VIOLATION = "violation"
INCONCLUSIVE = "inconclusive"

SMALL_CHARACTERISTICS = (2, 3, 5)
#: a reduced nodal plane quintic has at most six nodes unless it is reducible
MAX_NODES_IRREDUCIBLE = 6
MAX_EXT_DEPTH = 3


def check_characteristic(p: int, allow: bool = False) -> None:
    """Refuse ``p`` in {2, 3, 5} unless ``allow`` is set, then only warn."""
    if p not in SMALL_CHARACTERISTICS:
        return
    msg = (
        f"characteristic {p} breaks the classical singularity criteria "
        "(2: extraction, 3: Euler relation for cubics, 5: for quintics)"
    )
    if not allow:
        raise ValueError(msg)
    warnings.warn(msg, RuntimeWarning, stacklevel=2)


def matrix_from_cubic(F: Poly, line: ProjLine | None = None) -> tuple[SymmetricMatrixRep, CubicThreefold]:
    """Move ``line`` to ``x = y = z = 0`` and read off the matrix."""
    if line is not None:
        if not contains_line(F, line):
            raise LineNotContainedError(f"the cubic does not contain the line through {line.p1} and {line.p2}")
        F = move_line_to_standard(line).transform_form(F)
    X = CubicThreefold(F)
    return extract_matrix(X), X


@dataclass
class PipelineReport:
    input: str
    field: str
    p: int
    k_max: int
    matrix: SymmetricMatrixRep | None = None
    cubic: Poly | None = None
    delta: Poly | None = None
    conic: Poly | None = None
    det_identity: bool | None = None
    resolution: tuple = ()
    conic_smooth: bool | None = None
    singular_points: list = field(default_factory=list)
    reducible: list = field(default_factory=list)
    contact: dict | None = None
    smoothness: SmoothnessCertificate | None = None
    violations: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.violations:
            return VIOLATION
        if self.inconclusive:
            return INCONCLUSIVE
        return VERIFIED

    @property
    def exit_code(self) -> int:
        return {VIOLATION: EXIT_VIOLATION, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(self.verdict, EXIT_OK)

    def to_json(self) -> dict:
        return {
            "input": self.input,
            "field": self.field,
            "search": {"p": self.p, "k_max": self.k_max},
            "matrix": None if self.matrix is None else {
                name: str(e) for name, e in zip(("l1", "l2", "l3", "q1", "q2", "f"), self.matrix.entries())
            },
            "cubic": None if self.cubic is None else str(self.cubic),
            "discriminant": None if self.delta is None else str(self.delta),
            "conic": None if self.conic is None else str(self.conic),
            "conic_smooth": self.conic_smooth,
            "det_identity": self.det_identity,
            "resolution": None if not self.resolution else {"h0": self.resolution[0], "chi": self.resolution[1]},
            "singular_points": self.singular_points,
            "reducible": self.reducible,
            "contact": self.contact,
            "smoothness": None if self.smoothness is None else self.smoothness.to_json(),
            "violations": self.violations,
            "inconclusive": self.inconclusive,
            "warnings": self.warnings,
            "verdict": self.verdict,
            "exit_code": self.exit_code,
        }

    def summary_lines(self) -> list[str]:
        out = [f"input: {self.input}", f"field: {self.field}; searches over GF({self.p}^k), k <= {self.k_max}"]
        if self.cubic is not None:
            out.append(f"F = {self.cubic}")
        if self.delta is not None:
            out.append(f"discriminant = {self.delta}")
        if self.conic is not None:
            out.append(f"conic h = {self.conic}" + ("" if self.conic_smooth is None
                                                     else f" ({'smooth' if self.conic_smooth else 'singular'})"))
        if self.det_identity is not None:
            out.append(f"det identity: {'holds' if self.det_identity else 'FAILS'}")
        if self.resolution:
            out.append(f"resolution: h0 = {self.resolution[0]}, chi = {self.resolution[1]}")
        for sp in self.singular_points:
            out.append(
                f"singular point {sp['point']} (degree {sp['extension_degree']}): "
                f"{'node' if sp['node'] else 'not a node'}, rank A = {sp['rank']}"
            )
        for r in self.reducible:
            out.append(f"reducible discriminant: {r}")
        if self.contact is not None:
            c = self.contact
            if c.get("common_component"):
                out.append("contact: curves share a component")
            else:
                mults = ", ".join(str(pt["multiplicity"]) for pt in c["points"]) or "none"
                out.append(f"contact multiplicities: {mults}; total {c['total']} of {c['expected_total']}")
        if self.smoothness is not None:
            s = self.smoothness
            if s.point is not None:
                out.append(f"smoothness: singular point {s.point} over GF({s.p}^{s.degree})")
            else:
                out.append(f"smoothness: no singular point over GF({s.p}^k), k <= {s.k_max} "
                           "(larger extensions not searched)")
        out += [f"warning: {w}" for w in self.warnings]
        out += [f"violation: {v}" for v in self.violations]
        out += [f"inconclusive: {v}" for v in self.inconclusive]
        out.append(f"verdict: {self.verdict}")
        return out


def _search_field(A: SymmetricMatrixRep, p: int) -> SymmetricMatrixRep:
    F = A.field
    if isinstance(F, Rationals):
        return A.change_field(GF(p))
    if F.characteristic != p:
        raise ValueError(f"matrix is over {F!r} but searches were requested in characteristic {p}")
    return A


def _singular_locus(delta: Poly, A: SymmetricMatrixRep, p: int, k_max: int, workers: int):
    seen = set()
    out = []
    for k in range(1, k_max + 1):
        for pt in singular_points_plane_curve(delta, p, k, workers=workers):
            deg = pt.field_degree()
            key = (deg, pt.descend().coords)
            if key in seen:
                continue
            seen.add(key)
            node = is_node(delta, pt)
            out.append({
                "point": str(pt.descend()),
                "extension_degree": deg,
                "node": node,
                "rank": rank_at(A, pt.coords, pt.field),
            })
    return out


def run_pipeline(A: SymmetricMatrixRep, *, p: int | None = None, k_max: int = 2,
                 order_bound: int = 12, workers: int = 1, description: str = "matrix",
                 cubic: CubicThreefold | None = None, allow_small_char: bool = False) -> PipelineReport:
    """Run every check on ``A`` and collect the findings.

    ``p`` defaults to the characteristic of ``A``'s field and must be given
    for rational input.  Exact identities are checked over the input field.
    """
    src = A.field
    if p is None:
        if isinstance(src, Rationals):
            raise ValueError("rational input needs a prime p for the finite-field searches")
        p = src.characteristic
    if not 1 <= k_max <= MAX_EXT_DEPTH:
        raise ValueError(f"extension depth must be between 1 and {MAX_EXT_DEPTH}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        check_characteristic(p, allow_small_char)
    report = PipelineReport(description, repr(src), p, k_max)
    report.warnings += [str(w.message) for w in caught]
    report.matrix = A
    X = cubic or build_cubic(A)
    report.cubic = X.F
    # exact identities over the input field
    report.det_identity = verify_det_identity(A)
    if not report.det_identity:  # pragma: no cover - a polynomial identity
        report.violations.append("determinant identity fails")
    report.resolution = cokernel_h0_and_chi(RESOLUTION_LEFT, RESOLUTION_RIGHT)

    Ap = _search_field(A, p)
    delta = discriminant(A)
    conic = associated_conic(A)
    report.delta, report.conic = delta.delta, conic.h
    delta_p = discriminant(Ap).delta
    conic_p = associated_conic(Ap)
    report.conic_smooth = conic_p.is_smooth()

    cert = smoothness_search(build_cubic(Ap).F, p=p, k_max=k_max, workers=workers)
    report.smoothness = cert
    smooth = cert.smooth_within_bound
    if not smooth:
        report.violations.append(
            f"the cubic is singular at {cert.point} (over GF({p}^{cert.degree}))"
        )

    if delta_p.is_zero():
        report.inconclusive.append("the discriminant vanishes identically; contact test unverified")
        return report
    if conic_p.degenerate:
        msg = "the conic h vanishes identically"
        (report.violations if smooth else report.inconclusive).append(msg)
        return report

    report.singular_points = _singular_locus(delta_p, Ap, p, k_max, workers)
    if smooth:
        for sp in report.singular_points:
            if not sp["node"]:
                report.violations.append(f"singular point {sp['point']} of the discriminant is not a node")

    if delta_p.field.k == 1:
        lines = linear_factors(delta_p)
        if lines:
            report.reducible.append("linear factors " + ", ".join(str(g) for g in lines))
    if len(report.singular_points) > MAX_NODES_IRREDUCIBLE:
        report.reducible.append(
            f"{len(report.singular_points)} singular points exceed the {MAX_NODES_IRREDUCIBLE} "
            "of an irreducible nodal quintic"
        )

    degenerate_conic = not report.conic_smooth
    try:
        contact = even_contact_check(delta_p, conic_p.h, p, k_max, order_bound, workers)
        depth = k_max
        while not contact.complete and depth < MAX_EXT_DEPTH:
            depth += 1
            contact = even_contact_check(delta_p, conic_p.h, p, depth, order_bound, workers)
    except CommonComponentError:
        report.contact = {"common_component": True}
        report.inconclusive.append("discriminant and conic share a component; unverified by contact test")
        return report
    report.contact = contact.to_json()
    if not contact.all_even:
        odd = [str(c.point) for c in contact.points if not c.even]
        msg = "odd contact at " + ", ".join(odd)
        if smooth and not degenerate_conic:
            report.violations.append(msg)
        else:
            report.inconclusive.append(msg + " (degenerate input; unverified by contact test)")
    elif not contact.complete:
        report.inconclusive.append(
            f"contact total {contact.total} < {contact.expected_total} within k <= {contact.k_max}"
        )
    if smooth and degenerate_conic and not report.violations:
        report.inconclusive.append("the conic h is singular; unverified by contact test")
    return report


def random_smooth_matrix(p: int, seed: int = 0, k_max: int = 2, attempts: int = 100,
                         workers: int = 1) -> tuple[SymmetricMatrixRep, int]:
    """First matrix over ``GF(p)`` from a seeded stream whose cubic passes the smoothness search.

    Returns the matrix and the number of draws used.
    """
    rng = random.Random(seed)
    K = GF(p)
    for n in range(1, attempts + 1):
        A = random_matrix(K, rng)
        if discriminant(A).degenerate or associated_conic(A).degenerate:
            continue
        cert = smoothness_search(build_cubic(A).F, p=p, k_max=k_max, workers=workers)
        if cert.smooth_within_bound:
            return A, n
    raise RuntimeError(f"no smooth cubic in {attempts} draws over GF({p})")


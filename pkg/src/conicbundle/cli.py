"""Command-line interface: one subcommand per step of the construction.

Exit codes: 0 verified, 1 violation found, 2 parse or usage error,
3 inconclusive within the search bounds.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from .determinantal import (
    LineNotContainedError,
    associated_conic,
    build_cubic,
    discriminant,
    verify_det_identity,
)
from .geometry import (
    CommonComponentError,
    NotSingularError,
    ProjLine,
    ProjPoint,
    even_contact_check,
    is_node,
    singular_points,
    singular_points_plane_curve,
    smoothness_search,
)
from .numerology import CoverGraph, CoverGraphError, check_cover_graph
from .pipeline import (
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VIOLATION,
    MAX_EXT_DEPTH,
    check_characteristic,
    matrix_from_cubic,
    random_smooth_matrix,
    run_pipeline,
)
from .poly_core import GF, DomainError, Rationals
from .textio import (
    PLANE_VARS,
    SPACE_VARS,
    ParseError,
    format_matrix_file,
    parse_field,
    parse_matrix_file,
    parse_point,
    parse_poly,
)


class UsageError(Exception):
    pass


def _read(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        return Path(path).read_text(encoding="utf-8"), path
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _diagnostic(exc: ParseError, text: str | None) -> str:
    out = [f"{exc.source}:{exc.line}:{exc.column}: error: {exc.message}"]
    if text is not None:
        lines = text.splitlines()
        if 1 <= exc.line <= len(lines):
            out.append("    " + lines[exc.line - 1])
            out.append("    " + " " * (exc.column - 1) + "^")
    return "\n".join(out)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _search_prime(args, field) -> int:
    p = field.characteristic if not isinstance(field, Rationals) else args.reduce_mod
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            check_characteristic(p, args.allow_small_char)
    except ValueError as exc:
        raise UsageError(f"{exc}; pass --allow-small-char to override") from None
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return p


def _reduce(poly, p):
    return poly.change_field(GF(p)) if isinstance(poly.field, Rationals) else poly


def _load_matrix(args):
    text, src = _read(args.matrix)
    args._text = text
    return parse_matrix_file(text, args.field, src)


def _load_poly(args, path, alphabet):
    text, src = _read(path)
    args._text = text
    return parse_poly(text, alphabet, args.field, src)


def _parse_line(text: str, field) -> ProjLine:
    parts = text.split(";")
    if len(parts) != 2:
        raise UsageError("--line expects two points separated by ';', e.g. '0,0,0,1,0;0,0,0,0,1'")
    p1, p2 = (ProjPoint(field, parse_point(s, field)) for s in parts)
    if p1.dim != 4:
        raise UsageError("line points need five coordinates")
    try:
        return ProjLine(p1, p2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands -------------------------------------------------------------------


def cmd_build_cubic(args) -> int:
    A = _load_matrix(args)
    X = build_cubic(A)
    _emit(args, {"cubic": str(X.F)}, [str(X.F)])
    return EXIT_OK


def cmd_extract_matrix(args) -> int:
    F = _load_poly(args, args.cubic, SPACE_VARS)
    line = _parse_line(args.line, args.field) if args.line else None
    try:
        A, _ = matrix_from_cubic(F, line)
    except LineNotContainedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    text = format_matrix_file(A)
    _emit(args, {name: str(e) for name, e in zip(("l1", "l2", "l3", "q1", "q2", "f"), A.entries())},
          [text.rstrip("\n")])
    return EXIT_OK


def cmd_discriminant(args) -> int:
    A = _load_matrix(args)
    Q = discriminant(A)
    ok = verify_det_identity(A)
    lines = [str(Q.delta)]
    if Q.degenerate:
        lines.append("note: the discriminant vanishes identically")
    lines.append(f"det identity: {'holds' if ok else 'FAILS'}")
    _emit(args, {"discriminant": str(Q.delta), "degenerate": Q.degenerate, "det_identity": ok}, lines)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_conic(args) -> int:
    A = _load_matrix(args)
    C = associated_conic(A)
    smooth = None if C.degenerate else C.is_smooth()
    lines = [str(C.h)]
    if C.degenerate:
        lines.append("note: h vanishes identically")
    else:
        lines.append(f"conic is {'smooth' if smooth else 'singular'}")
    _emit(args, {"conic": str(C.h), "degenerate": C.degenerate, "smooth": smooth}, lines)
    return EXIT_OK


def cmd_singular_locus(args) -> int:
    alphabet = PLANE_VARS if args.ambient == "plane" else SPACE_VARS
    f = _load_poly(args, args.poly, alphabet)
    p = _search_prime(args, args.field)
    f = _reduce(f, p)
    if f.is_zero():
        raise UsageError("the zero polynomial has no well-defined singular locus")
    found = []
    seen = set()
    for k in range(1, args.ext_depth + 1):
        if args.ambient == "plane":
            pts = singular_points_plane_curve(f, p, k, workers=args.workers)
        else:
            pts = singular_points(f, GF(p, k), workers=args.workers)
        for pt in pts:
            key = (pt.field_degree(), pt.descend().coords)
            if key not in seen:
                seen.add(key)
                found.append((pt.descend(), key[0]))
    payload = {
        "p": p,
        "ext_depth": args.ext_depth,
        "points": [{"point": str(pt), "extension_degree": d} for pt, d in found],
    }
    lines = [f"{pt}  (degree {d})" for pt, d in found] or [
        f"no singular points over GF({p}^k), k <= {args.ext_depth}"
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_check_nodal(args) -> int:
    f = _load_poly(args, args.poly, PLANE_VARS)
    p = _search_prime(args, args.field)
    f = _reduce(f, p)
    K = f.field
    pt = ProjPoint(K, parse_point(args.point, K))
    try:
        node = is_node(f, pt)
    except NotSingularError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, {"point": str(pt), "node": node}, [f"{pt}: {'node' if node else 'not a node'}"])
    return EXIT_OK if node else EXIT_VIOLATION


def cmd_check_smooth(args) -> int:
    F = _load_poly(args, args.cubic, SPACE_VARS)
    p = _search_prime(args, args.field)
    cert = smoothness_search(_reduce(F, p), p=p, k_max=args.ext_depth, workers=args.workers)
    if cert.point is not None:
        lines = [f"singular point {cert.point} over GF({p}^{cert.degree})"]
    else:
        lines = [f"no singular point over GF({p}^k) for k <= {args.ext_depth}",
                 "caveat: larger extensions were not searched"]
    _emit(args, cert.to_json(), lines)
    return EXIT_OK if cert.smooth_within_bound else EXIT_VIOLATION


def cmd_check_contact(args) -> int:
    A = _load_matrix(args)
    p = _search_prime(args, args.field)
    A = A.change_field(GF(p)) if isinstance(A.field, Rationals) else A
    delta, h = discriminant(A).delta, associated_conic(A).h
    if delta.is_zero() or h.is_zero():
        _emit(args, {"degenerate": True}, ["degenerate input: unverified by contact test"])
        return EXIT_INCONCLUSIVE
    try:
        report = even_contact_check(delta, h, p, args.ext_depth, args.order_bound, args.workers)
    except CommonComponentError as exc:
        _emit(args, {"common_component": True}, [f"unverified by contact test: {exc}"])
        return EXIT_INCONCLUSIVE
    lines = [
        f"{c.point} (degree {c.extension_degree}): multiplicity {c.multiplicity}"
        f" ({'even' if c.even else 'odd'})"
        for c in report.points
    ]
    lines.append(f"total {report.total} of {report.expected_total}")
    lines += [f"note: {n}" for n in report.notes]
    _emit(args, report.to_json(), lines)
    if not report.all_even:
        return EXIT_VIOLATION
    return EXIT_OK if report.complete else EXIT_INCONCLUSIVE


def cmd_pipeline(args) -> int:
    cubic = None
    if args.random:
        p = _search_prime(args, args.field if not isinstance(args.field, Rationals) else GF(args.reduce_mod))
        A, draws = random_smooth_matrix(p, args.seed, args.ext_depth, workers=args.workers)
        desc = f"random matrix over GF({p}), seed {args.seed}, draw {draws}"
    elif args.cubic:
        F = _load_poly(args, args.cubic, SPACE_VARS)
        line = _parse_line(args.line, args.field) if args.line else None
        try:
            A, cubic = matrix_from_cubic(F, line)
        except LineNotContainedError as exc:
            _emit(args, {"verdict": "violation", "violations": [str(exc)]}, [f"violation: {exc}"])
            return EXIT_VIOLATION
        desc = f"cubic {args.cubic}"
        p = _search_prime(args, args.field)
    elif args.matrix:
        A = _load_matrix(args)
        desc = f"matrix {args.matrix}"
        p = _search_prime(args, args.field)
    else:
        raise UsageError("pipeline needs a matrix file, --cubic FILE, or --random")
    report = run_pipeline(A, p=p, k_max=args.ext_depth, order_bound=args.order_bound,
                          workers=args.workers, description=desc, cubic=cubic,
                          allow_small_char=True)
    _emit(args, report.to_json(), report.summary_lines())
    return report.exit_code


def cmd_cover_check(args) -> int:
    text, src = _read(args.graph)
    args._text = text
    try:
        G = CoverGraph.from_json(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno, src) from None
    verdict = check_cover_graph(G, args.genus)
    lines = [
        f"component {c.id}: pbar = {c.pbar}, b = {c.b}, deg = {c.degree}"
        for c in verdict.components
    ]
    lines.append(f"arithmetic genus {verdict.arithmetic_genus}, total degree {verdict.degree}")
    lines += [f"violation: {v}" for v in verdict.violations]
    lines.append("pass" if verdict.passed else "fail")
    _emit(args, verdict.to_json(), lines)
    return EXIT_OK if verdict.passed else EXIT_VIOLATION


# -- argument parsing -------------------------------------------------------------


def _field_arg(text: str):
    try:
        return parse_field(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _depth_arg(text: str) -> int:
    k = int(text)
    if not 1 <= k <= MAX_EXT_DEPTH:
        raise argparse.ArgumentTypeError(f"extension depth must be between 1 and {MAX_EXT_DEPTH}")
    return k


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field_arg, default=parse_field("rational"),
                        help="coefficient field of the input: rational (default) or fp:<p>")
    common.add_argument("--reduce-mod", type=int, default=11, metavar="P",
                        help="prime used for finite-field searches on rational input (default 11)")
    common.add_argument("--ext-depth", type=_depth_arg, default=2, metavar="K",
                        help="search GF(p^k) for k <= K (default 2)")
    common.add_argument("--order-bound", type=int, default=12, metavar="N",
                        help="truncation order for intersection multiplicities (default 12)")
    common.add_argument("--workers", type=int, default=1, help="threads for point scans")
    common.add_argument("--allow-small-char", action="store_true",
                        help="permit p in {2, 3, 5} with a warning")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="conicbundle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    add("build-cubic", cmd_build_cubic, "cubic threefold of a matrix file").add_argument("matrix")
    sp = add("extract-matrix", cmd_extract_matrix, "matrix file of a cubic containing a line")
    sp.add_argument("cubic")
    sp.add_argument("--line", help="two points 'a,b,c,d,e;f,g,h,i,j' spanning the line")
    add("discriminant", cmd_discriminant, "determinant of the matrix").add_argument("matrix")
    add("conic", cmd_conic, "conic from the upper 2x2 minor").add_argument("matrix")
    sp = add("singular-locus", cmd_singular_locus, "singular points over GF(p^k)")
    sp.add_argument("poly")
    sp.add_argument("--ambient", choices=("plane", "space"), default="plane",
                    help="plane curve in x,y,z (default) or hypersurface in x,y,z,w,t")
    sp = add("check-nodal", cmd_check_nodal, "whether a singular point is a node")
    sp.add_argument("poly")
    sp.add_argument("--point", required=True, help="coordinates 'a,b,c'")
    add("check-smooth", cmd_check_smooth, "bounded smoothness search for a cubic").add_argument("cubic")
    add("check-contact", cmd_check_contact, "contact parity of conic and discriminant").add_argument("matrix")
    sp = add("pipeline", cmd_pipeline, "run every check")
    sp.add_argument("matrix", nargs="?")
    sp.add_argument("--cubic", help="cubic file instead of a matrix file")
    sp.add_argument("--line", help="line on the cubic (default x = y = z = 0)")
    sp.add_argument("--random", action="store_true", help="search for a random smooth example")
    sp.add_argument("--seed", type=int, default=0)
    sp = add("cover-check", cmd_cover_check, "numerology of a dual graph (JSON)")
    sp.add_argument("graph")
    sp.add_argument("--genus", type=int, default=None, help="required arithmetic genus")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args._text = None
    try:
        return args.func(args)
    except ParseError as exc:
        print(_diagnostic(exc, args._text), file=sys.stderr)
    except (UsageError, CoverGraphError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except ValueError as exc:
        # malformed content that parsed syntactically, e.g. wrong entry degrees
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

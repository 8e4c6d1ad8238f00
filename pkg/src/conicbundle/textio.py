"""Polynomial grammar, matrix files and cubic files.

Grammar (whitespace insignificant)::

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := var ['^' nat]
    coeff  := int ['/' posint]

Lines starting with ``#`` are comments.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly_core import QQ, DomainError, Field, Poly

__all__ = [
    "ParseError",
    "parse_poly",
    "format_poly",
    "parse_matrix_file",
    "format_matrix_file",
    "parse_cubic_file",
    "parse_point",
    "parse_field",
]

MATRIX_LABELS = ("l1", "l2", "l3", "q1", "q2", "f")
PLANE_VARS = ("x", "y", "z")
SPACE_VARS = ("x", "y", "z", "w", "t")

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^])"
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, source: str = "<input>"):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(src: str, source: str, line0: int = 1) -> list[_Tok]:
    toks = []
    pos, line, linestart = 0, line0, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - linestart + 1, source)
        kind = m.lastgroup
        text = m.group()
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, text, line, pos - linestart + 1))
        for i, ch in enumerate(text):
            if ch == "\n":
                line += 1
                linestart = pos + i + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - linestart + 1))
    return toks


class _Parser:
    def __init__(self, toks, vars, field, source):
        self.toks = toks
        self.i = 0
        self.vars = tuple(vars)
        self.field = field
        self.source = source

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok.line, tok.col, self.source)

    def expect_op(self, op):
        t = self.peek()
        if t.kind != "op" or t.text != op:
            raise self.error(f"expected {op!r}, found {t.text or 'end of input'!r}")
        return self.take()

    def parse(self) -> Poly:
        terms: dict = {}
        sign = 1
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            sign = -1 if t.text == "-" else 1
            self.take()
        while True:
            coeff, exps = self.term()
            terms.setdefault(exps, []).append(coeff * sign)
            t = self.peek()
            if t.kind == "eof":
                break
            if t.kind == "op" and t.text in "+-":
                sign = -1 if t.text == "-" else 1
                self.take()
                continue
            raise self.error(f"expected '+', '-' or end of input, found {t.text!r}")
        F = self.field
        acc = {}
        for e, cs in terms.items():
            acc[e] = F.coerce(sum(cs, Fraction(0)))
        return Poly(self.vars, F, acc)

    def term(self):
        exps = [0] * len(self.vars)
        t = self.peek()
        coeff = Fraction(1)
        if t.kind == "int":
            coeff = self.coeff()
            if not (self.peek().kind == "op" and self.peek().text == "*"):
                return coeff, tuple(exps)
            self.take()
        elif t.kind != "name":
            raise self.error(f"expected a coefficient or variable, found {t.text or 'end of input'!r}")
        while True:
            self.factor(exps)
            t = self.peek()
            if t.kind == "op" and t.text == "*":
                self.take()
                continue
            return coeff, tuple(exps)

    def coeff(self) -> Fraction:
        num = self.take()
        t = self.peek()
        if t.kind == "op" and t.text == "/":
            self.take()
            den = self.peek()
            if den.kind != "int":
                raise self.error("expected a positive integer denominator")
            self.take()
            if int(den.text) == 0:
                raise self.error("zero denominator", den)
            value = Fraction(int(num.text), int(den.text))
            if self.field.characteristic and int(den.text) % self.field.characteristic == 0:
                raise self.error(
                    f"denominator {den.text} is not invertible in characteristic "
                    f"{self.field.characteristic}",
                    den,
                )
            return value
        return Fraction(int(num.text))

    def factor(self, exps):
        t = self.peek()
        if t.kind != "name":
            raise self.error(f"expected a variable, found {t.text or 'end of input'!r}")
        self.take()
        if t.text not in self.vars:
            raise self.error(f"unknown variable {t.text!r} (alphabet: {', '.join(self.vars)})", t)
        k = 1
        nt = self.peek()
        if nt.kind == "op" and nt.text == "^":
            self.take()
            et = self.peek()
            if et.kind != "int":
                raise self.error("expected a nonnegative integer exponent")
            self.take()
            k = int(et.text)
        exps[self.vars.index(t.text)] += k


def parse_poly(src: str, alphabet: Sequence[str] = PLANE_VARS, field: Field = QQ,
               source: str = "<input>", line: int = 1) -> Poly:
    """Parse ``src`` into a canonical :class:`Poly`."""
    toks = _tokenize(src, source, line)
    if toks[0].kind == "eof":
        raise ParseError("empty polynomial", toks[0].line, toks[0].col, source)
    try:
        return _Parser(toks, alphabet, field, source).parse()
    except DomainError as exc:  # pragma: no cover - denominators are checked above
        raise ParseError(str(exc), toks[0].line, toks[0].col, source) from exc


def format_poly(f: Poly) -> str:
    return str(f)


def parse_matrix_file(text: str, field: Field = QQ, source: str = "<matrix>"):
    """Read the six labelled entries ``l1 l2 l3 q1 q2 f`` of a symmetric matrix."""
    from .determinantal import SymmetricMatrixRep

    found: dict[str, Poly] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        label, sep, body = raw.partition(":")
        col = len(raw) - len(raw.lstrip()) + 1
        if not sep:
            raise ParseError("expected 'label: polynomial'", lineno, col, source)
        label = label.strip()
        if label not in MATRIX_LABELS:
            raise ParseError(
                f"unknown label {label!r} (expected one of {', '.join(MATRIX_LABELS)})",
                lineno, col, source,
            )
        if label in found:
            raise ParseError(f"duplicate label {label!r}", lineno, col, source)
        offset = len(label) + raw.index(label) + 1
        try:
            found[label] = parse_poly(body, PLANE_VARS, field, source, lineno)
        except ParseError as exc:
            col = exc.column + offset if exc.line == lineno else exc.column
            raise ParseError(exc.message, exc.line, col, source) from None
    missing = [lab for lab in MATRIX_LABELS if lab not in found]
    if missing:
        raise ParseError(f"missing entries: {', '.join(missing)}", 1, 1, source)
    return SymmetricMatrixRep(*(found[lab] for lab in MATRIX_LABELS))


def format_matrix_file(A) -> str:
    return "".join(
        f"{lab}: {entry}\n" for lab, entry in zip(MATRIX_LABELS, A.entries())
    )


def parse_cubic_file(text: str, field: Field = QQ, source: str = "<cubic>") -> Poly:
    return parse_poly(text, SPACE_VARS, field, source)


def parse_point(text: str, field: Field) -> tuple:
    """Comma-separated integer/rational coordinates, e.g. ``"1,-1,0,0,0"``."""
    parts = [p.strip() for p in text.split(",")]
    try:
        return tuple(field.coerce(Fraction(p)) for p in parts)
    except (ValueError, ZeroDivisionError, DomainError) as exc:
        raise ParseError(f"bad point {text!r}: {exc}", 1, 1, "<point>") from None


def parse_field(text: str) -> Field:
    """``rational`` or ``fp:<p>``."""
    from .poly_core import GF

    if text == "rational":
        return QQ
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise ValueError(f"bad field {text!r}") from None
        return GF(p)
    raise ValueError(f"bad field {text!r}; use 'rational' or 'fp:<p>'")

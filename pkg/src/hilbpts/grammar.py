"""Text grammar for polynomials and ideal files.

Ideal files::

    # comment
    ring x, y, z;          # ascending order: x < y < z
    param a, b;            # optional
    ideal x^2, x*y - a*z;  # one or more ideal statements

Expressions use ``+ - * ^``, parentheses, integers and rationals ``p/q``.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import re

from .errors import ParseError
from .poly import Polynomial, RingContext

_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^(),;])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _ExprParser:
    def __init__(self, tokens, ctx, text, stop=("end",)):
        self.tokens = tokens
        self.i = 0
        self.ctx = ctx
        self.text = text
        self.stop = stop

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        where = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"{message} (found {where})", tok.pos, self.text)

    def accept(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expr(self):
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.unary()
        while self.accept("*"):
            value = value * self.unary()
        return value

    def unary(self):
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept("^"):
            tok = self.tok
            if tok.kind != "num" or "/" in tok.text:
                self.error("expected a nonnegative integer exponent")
            self.i += 1
            return base ** int(tok.text)
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            if "/" in tok.text:
                p, q = tok.text.split("/")
                if int(q) == 0:
                    raise ParseError("zero denominator", tok.pos, self.text)
                return self.ctx.const(Fraction(int(p), int(q)))
            return self.ctx.const(int(tok.text))
        if tok.kind == "ident":
            self.i += 1
            if tok.text in self.ctx.variables:
                return self.ctx.var(tok.text)
            if tok.text in self.ctx.parameters:
                return self.ctx.param(tok.text)
            raise ParseError(f"unknown identifier {tok.text!r}", tok.pos, self.text)
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                self.error("expected ')'")
            return value
        self.error("expected a number, identifier or '('")


def parse_poly(text, ctx):
    """Parse one polynomial over ``ctx``."""
    tokens = tokenize(text)
    p = _ExprParser(tokens, ctx, text)
    value = p.expr()
    if p.tok.kind != "end":
        p.error("unexpected trailing input")
    return value


def _format_fraction(c):
    return str(c)


def _format_coeff_term(c, mono_text):
    """Return (sign, body) for a single term."""
    if isinstance(c, Polynomial):
        if len(c) == 1:
            (pc, pe), = c.terms()
            sign = "-" if pc < 0 else "+"
            mag = abs(pc)
            factors = [] if mag == 1 else [_format_fraction(mag)]
            if any(pe):
                factors.append(c.ctx.format_monomial(pe))
            if mono_text != "1":
                factors.append(mono_text)
            return sign, "*".join(factors) or "1"
        inner = "(" + format_poly(c) + ")"
        return "+", inner if mono_text == "1" else f"{inner}*{mono_text}"
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    if mono_text == "1":
        return sign, _format_fraction(mag)
    if mag == 1:
        return sign, mono_text
    return sign, f"{_format_fraction(mag)}*{mono_text}"


def format_poly(f):
    """Canonical text, descending lex order; reparses to an equal polynomial."""
    if not f:
        return "0"
    out = []
    for c, e in f.terms():
        sign, body = _format_coeff_term(c, f.ctx.format_monomial(e))
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


@dataclass
class IdealFile:
    ctx: RingContext
    ideals: list = field(default_factory=list)

    def single(self):
        if len(self.ideals) != 1:
            raise ParseError(f"expected exactly one ideal statement, found {len(self.ideals)}")
        return self.ideals[0]


def _name_list(tokens, i, text):
    names = []
    while True:
        tok = tokens[i]
        if tok.kind != "ident":
            raise ParseError("expected a name", tok.pos, text)
        names.append(tok.text)
        i += 1
        tok = tokens[i]
        if tok.kind == "op" and tok.text == ",":
            i += 1
            continue
        if tok.kind == "op" and tok.text == ";":
            return names, i + 1
        raise ParseError("expected ',' or ';'", tok.pos, text)


def parse_ideal_file(text):
    tokens = tokenize(text)
    i = 0
    variables = None
    parameters = ()
    ctx = None
    ideals = []
    while tokens[i].kind != "end":
        tok = tokens[i]
        if tok.kind != "ident" or tok.text not in ("ring", "param", "ideal"):
            raise ParseError("expected 'ring', 'param' or 'ideal'", tok.pos, text)
        if tok.text == "ring":
            if variables is not None:
                raise ParseError("duplicate ring declaration", tok.pos, text)
            variables, i = _name_list(tokens, i + 1, text)
        elif tok.text == "param":
            if variables is None or ctx is not None:
                raise ParseError("param must follow ring and precede ideals", tok.pos, text)
            names, i = _name_list(tokens, i + 1, text)
            parameters = tuple(parameters) + tuple(names)
        else:
            if variables is None:
                raise ParseError("ideal before ring declaration", tok.pos, text)
            if ctx is None:
                try:
                    ctx = RingContext(variables, parameters)
                except Exception as exc:
                    raise ParseError(str(exc), tok.pos, text) from None
            p = _ExprParser(tokens, ctx, text)
            p.i = i + 1
            gens = [p.expr()]
            while p.accept(","):
                gens.append(p.expr())
            if not p.accept(";"):
                p.error("expected ',' or ';'")
            ideals.append(gens)
            i = p.i
    if variables is None:
        raise ParseError("missing ring declaration", len(text), text)
    if ctx is None:
        ctx = RingContext(variables, parameters)
    return IdealFile(ctx, ideals)


def format_ideal_file(ctx, ideals, comments=()):
    lines = [f"# {c}" for c in comments]
    lines.append("ring " + ", ".join(ctx.variables) + ";")
    if ctx.parameters:
        lines.append("param " + ", ".join(ctx.parameters) + ";")
    for gens in ideals:
        lines.append("ideal " + ", ".join(format_poly(g) for g in gens) + ";")
    return "\n".join(lines) + "\n"

"""Text format for scalars and polynomials.

Grammar (precedence ``^`` > unary ``-`` > ``*`` > binary ``+ -``)::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | '+' unary | power
    power   := atom ('^' INT)?
    atom    := NUMBER | IDENT | '(' expr ')'
    NUMBER  := INT ('/' POSINT)? 'i'?  |  'i'

Implicit multiplication is rejected except for the imaginary suffix in a
numeral (``2i``, ``3/4i``).  Error positions are 1-based byte offsets.
"""

import re
from dataclasses import dataclass

from gmpy2 import mpq

from .algebra.order import GREVLEX
from .algebra.poly import MultiPoly
from .algebra.scalar import GaussianRational, format_scalar
from .errors import ParseError, UnknownIdentifierError

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\s*/\s*\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^()])
""", re.VERBOSE)


@dataclass(frozen=True)
class PolySource:
    text: str
    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        check_variable_names(self.variables)


def check_variable_names(names):
    seen = set()
    for v in names:
        if not isinstance(v, str) or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
            raise ParseError(f"invalid variable name {v!r}")
        if v == "i":
            raise ParseError("'i' is reserved for the imaginary unit")
        if v in seen:
            raise ParseError(f"variable {v!r} declared twice")
        seen.add(v)


def _byte_pos(text, char_index):
    return len(text[:char_index].encode("utf-8")) + 1


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_pos(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    # fuse numeral + imaginary suffix: "2i", "3/4i"
    fused = []
    for tok in tokens:
        if (tok[0] == "ident" and tok[1] == "i" and fused and fused[-1][0] == "num"
                and fused[-1][2] + len(fused[-1][1]) == tok[2]):
            kind, val, p = fused.pop()
            fused.append(("imag", val, p))
        elif (tok[0] in ("num", "ident") and fused and fused[-1][0] in ("num", "ident", "imag")
                and fused[-1][2] + len(fused[-1][1]) == tok[2]):
            raise ParseError("implicit multiplication is not allowed", _byte_pos(text, tok[2]))
        else:
            fused.append(tok)
    return fused


def _rational(text, val, pos):
    num, _, den = val.partition("/")
    if den:
        den = int(den.strip())
        if den == 0:
            raise ParseError("zero denominator", _byte_pos(text, pos))
        return mpq(int(num.strip()), den)
    return mpq(int(num))


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.index = {v: k for k, v in enumerate(variables)}
        self.n = len(variables)
        self.tokens = _tokenize(text)
        self.k = 0

    def error(self, msg, tok=None):
        if tok is None:
            tok = self.peek()
        pos = _byte_pos(self.text, tok[2]) if tok else len(self.text.encode("utf-8")) + 1
        return ParseError(msg, pos)

    def peek(self):
        return self.tokens[self.k] if self.k < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.k += 1
        return tok

    def accept(self, op):
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == op:
            self.k += 1
            return tok
        return None

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression", 1)
        value = self.expr()
        if self.peek() is not None:
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return value

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
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] == "-":
                raise self.error("negative exponent")
            if tok is None or tok[0] != "num" or "/" in tok[1]:
                raise self.error("exponent must be a non-negative integer literal")
            self.take()
            base = base ** int(tok[1])
            nxt = self.peek()
            if nxt and nxt[0] == "op" and nxt[1] == "^":
                raise self.error("chained exponents need parentheses")
        return base

    def atom(self):
        tok = self.take()
        if tok is None:
            raise self.error("unexpected end of input")
        kind, val, pos = tok
        if kind == "num":
            return MultiPoly.constant(self.n, GaussianRational(_rational(self.text, val, pos)))
        if kind == "imag":
            return MultiPoly.constant(self.n, GaussianRational(0, _rational(self.text, val, pos)))
        if kind == "ident":
            if val == "i":
                return MultiPoly.constant(self.n, GaussianRational(0, 1))
            if val not in self.index:
                raise UnknownIdentifierError(f"unknown identifier {val!r}", _byte_pos(self.text, pos))
            return MultiPoly.variable(self.n, self.index[val])
        if val == "(":
            inner = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return inner
        raise self.error(f"unexpected token {val!r}", tok)


def parse_poly(src, variables=None):
    """Parse polynomial text; accepts a :class:`PolySource` or ``(text, variables)``."""
    if not isinstance(src, PolySource):
        src = PolySource(src, tuple(variables))
    return _Parser(src.text, src.variables).parse()


_SCALAR = re.compile(r"""\s*
    (?:
      (?P<re>[-+]?\d+(?:/\d+)?)
      (?:\s*(?P<sign>[-+])\s*(?P<im>\d+(?:/\d+)?)?\s*\*?\s*i)?
    | (?P<pure>[-+]?(?:\d+(?:/\d+)?\s*\*?\s*)?i)
    )\s*$""", re.VERBOSE)


def parse_scalar(text):
    """Parse ``a``, ``a/b``, ``a+b/c*i``, ``b*i``, ``i`` and similar literals."""
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string, got {type(text).__name__}", 1)
    m = _SCALAR.match(text)
    if m is None:
        raise ParseError(f"malformed scalar {text!r}", _first_bad(text))
    if m.group("pure") is not None:
        body = re.sub(r"\s|\*", "", m.group("pure"))[:-1]
        if body in ("", "+"):
            im = mpq(1)
        elif body == "-":
            im = mpq(-1)
        else:
            im = _checked(body, text)
        return GaussianRational(0, im)
    re_part = _checked(m.group("re"), text)
    if m.group("sign") is None:
        return GaussianRational(re_part)
    im = _checked(m.group("im"), text) if m.group("im") else mpq(1)
    if m.group("sign") == "-":
        im = -im
    return GaussianRational(re_part, im)


def _checked(body, text):
    num, _, den = body.partition("/")
    if den and int(den) == 0:
        raise ParseError("zero denominator", text.find("/") + 2)
    return mpq(int(num), int(den)) if den else mpq(int(num))


def _first_bad(text):
    for k, ch in enumerate(text):
        if not (ch.isdigit() or ch in "+-/*i "):
            return _byte_pos(text, k)
    return 1


def default_variables(n):
    return tuple(f"s{k + 1}" for k in range(n))


def format_monomial(e, variables):
    parts = []
    for x, name in zip(e, variables):
        if x == 1:
            parts.append(name)
        elif x > 1:
            parts.append(f"{name}^{x}")
    return "*".join(parts)


def format_poly(p, order=GREVLEX, variables=None):
    """Deterministic text, terms in descending ``order``; re-parses to ``p``."""
    if variables is None:
        variables = default_variables(p.nvars)
    if not p:
        return "0"
    out = []
    for e, c in p.sorted_terms(order):
        mono = format_monomial(e, variables)
        negative = False
        if c.im and c.re:
            coef = f"({format_scalar(c)})"
        elif c.im:
            negative = c.im < 0
            coef = format_scalar(-c if negative else c)
        else:
            negative = c.re < 0
            coef = format_scalar(-c if negative else c)
        if mono:
            text = mono if coef == "1" else f"{coef}*{mono}"
        else:
            text = coef
        if not out:
            out.append(("-" + text) if negative else text)
        else:
            out.append(("- " if negative else "+ ") + text)
    return " ".join(out)


__all__ = ["PolySource", "parse_poly", "parse_scalar", "format_poly", "format_scalar",
           "format_monomial", "default_variables", "check_variable_names"]

"""Expression parser and canonical printers.

The input grammar (frozen; this docstring is the reference):

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' exponent)?
    atom     := rational | 'i' | 'h1' | 'h2' | 'g' | 'z' | 'zb' | 'x' | 'y'
              | 'p' DIGIT | 'q' DIGIT | '(' expr ')'
    rational := '-'? DIGITS ('/' DIGITS)?
    exponent := '-'? DIGITS

'*' is mandatory between factors and whitespace is insignificant.  'zb' is
the ASCII spelling of the conjugate fiber generator (z-bar).  Negative
exponents are allowed only on h1; generator powers must be non-negative.
A leading '-' is only read as part of a rational literal, so canonical
output spells -z as -1*z.

Canonical printing flattens an element into one printed term per scalar
monomial: coefficient, then h1/h2 powers, then generators, joined by '*',
terms in lexicographic key order.  print and parse are mutually inverse on
canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import SrcElement
from .index import LocalElement
from .scalars import GaussianRational, ScalarPoly
from .spherical import InvariantPoly

EXP_LIMIT = 10**6


class ParseError(ValueError):
    """Syntax error with a byte-accurate position and the expected tokens."""

    def __init__(self, pos: int, expected: tuple[str, ...], found: str):
        self.pos = pos
        self.expected = expected
        self.found = found
        want = " or ".join(expected)
        super().__init__(f"syntax error at position {pos}: expected {want}, got {found}")


class EvalError(ValueError):
    """Semantic error while evaluating a well-formed tree."""


# -- expression trees ----------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Atom:
    name: str  # 'i', 'h1', 'h2', 'g', 'z', 'zb', 'x', 'y', or p/q with digit


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Prod:
    factors: tuple["Node", ...]


@dataclass(frozen=True)
class Sum:
    parts: tuple[tuple[int, "Node"], ...]  # (sign, term)


Node = Union[Num, Atom, Pow, Prod, Sum]

_ATOM_NAMES = {"i", "h1", "h2", "g", "z", "zb", "x", "y"}
_ATOM_NAMES |= {f"p{d}" for d in range(10)} | {f"q{d}" for d in range(10)}


# -- lexer ----------------------------------------------------------------

_PUNCT = set("+-*^()/")


@dataclass(frozen=True)
class _Token:
    kind: str  # 'num', 'name', punctuation, 'end'
    text: str
    pos: int


def _lex(src: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            tokens.append(_Token("num", src[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (src[j].isalnum()):
                j += 1
            name = src[i:j]
            if name not in _ATOM_NAMES:
                raise ParseError(i, ("a generator or scalar name",), repr(name))
            tokens.append(_Token("name", name, i))
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(i, ("a token",), repr(ch))
    tokens.append(_Token("end", "", n))
    return tokens


# -- parser ---------------------------------------------------------------


class _Parser:
    def __init__(self, src: str):
        self.tokens = _lex(src)
        self.idx = 0

    def peek(self) -> _Token:
        return self.tokens[self.idx]

    def take(self) -> _Token:
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.pos, (what,), repr(tok.text) if tok.text else "end of input")
        return self.take()

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(tok.pos, ("'+'", "'-'", "'*'", "end of input"), repr(tok.text))
        return node

    def expr(self) -> Node:
        parts = [(1, self.term())]
        while self.peek().kind in ("+", "-"):
            sign = 1 if self.take().kind == "+" else -1
            parts.append((sign, self.term()))
        if len(parts) == 1:
            return parts[0][1]
        return Sum(tuple(parts))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.peek().kind == "*":
            self.take()
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Prod(tuple(factors))

    def factor(self) -> Node:
        base = self.atom()
        if self.peek().kind != "^":
            return base
        self.take()
        negative = False
        if self.peek().kind == "-":
            negative = True
            self.take()
        tok = self.expect("num", "an integer exponent")
        if len(tok.text) > 7:
            raise ParseError(tok.pos, ("an exponent within limits",), "exponent overflow")
        exp = int(tok.text)
        if exp > EXP_LIMIT:
            raise ParseError(tok.pos, ("an exponent within limits",), "exponent overflow")
        if negative:
            exp = -exp
            if not (isinstance(base, Atom) and base.name == "h1"):
                raise ParseError(
                    tok.pos, ("a non-negative exponent (negative only on h1)",), str(exp)
                )
        return Pow(base, exp)

    def atom(self) -> Node:
        tok = self.peek()
        if tok.kind == "-" or tok.kind == "num":
            return self.rational()
        if tok.kind == "name":
            self.take()
            return Atom(tok.text)
        if tok.kind == "(":
            self.take()
            node = self.expr()
            self.expect(")", "')'")
            return node
        raise ParseError(
            tok.pos,
            ("a rational", "a generator", "'('"),
            repr(tok.text) if tok.text else "end of input",
        )

    def rational(self) -> Num:
        negative = False
        if self.peek().kind == "-":
            negative = True
            self.take()
        tok = self.expect("num", "digits")
        num = int(tok.text)
        den = 1
        if self.peek().kind == "/":
            self.take()
            den_tok = self.expect("num", "digits")
            den = int(den_tok.text)
            if den == 0:
                raise ParseError(den_tok.pos, ("a nonzero denominator",), "0")
        value = Fraction(num, den)
        return Num(-value if negative else value)


def parse(src: str) -> Node:
    """Parse an expression into a tree; raises ParseError with a position."""
    return _Parser(src).parse()


# -- evaluation -----------------------------------------------------------


def _eval_generic(node: Node, atom_fn):
    if isinstance(node, Num):
        return atom_fn("__num__", node.value)
    if isinstance(node, Atom):
        return atom_fn(node.name, None)
    if isinstance(node, Pow):
        if node.exp < 0:
            # grammar restricts this to the h1 atom
            return atom_fn("__h1pow__", node.exp)
        base = _eval_generic(node.base, atom_fn)
        out = atom_fn("__num__", Fraction(1))
        for _ in range(node.exp):
            out = out * base
        return out
    if isinstance(node, Prod):
        out = atom_fn("__num__", Fraction(1))
        for f in node.factors:
            out = out * _eval_generic(f, atom_fn)
        return out
    if isinstance(node, Sum):
        out = atom_fn("__num__", Fraction(0))
        for sign, part in node.parts:
            value = _eval_generic(part, atom_fn)
            out = out + (value if sign == 1 else -value)
        return out
    raise TypeError(f"unknown node {node!r}")


def eval_element(node: Node) -> SrcElement:
    """Evaluate a tree to a normal-form algebra element."""

    def atom_fn(name: str, arg) -> SrcElement:
        if name == "__num__":
            return SrcElement.scalar(ScalarPoly.from_rational(arg))
        if name == "__h1pow__":
            return SrcElement.scalar(ScalarPoly.h1(arg))
        if name == "i":
            return SrcElement.scalar(ScalarPoly.i())
        if name == "h1":
            return SrcElement.scalar(ScalarPoly.h1())
        if name == "h2":
            return SrcElement.scalar(ScalarPoly.h2())
        if name == "g":
            return SrcElement.gamma()
        if name == "z":
            return SrcElement.z()
        if name == "zb":
            return SrcElement.zb()
        if name == "x":
            return SrcElement.x()
        if name == "y":
            return SrcElement.y()
        raise EvalError(f"generator {name!r} needs the local model (use localtrace)")

    return _eval_generic(node, atom_fn)


def eval_local(node: Node, n_pairs: int) -> LocalElement:
    """Evaluate a tree in the local model with n_pairs base pairs."""

    def atom_fn(name: str, arg) -> LocalElement:
        if name == "__num__":
            return LocalElement.scalar(ScalarPoly.from_rational(arg))
        if name == "__h1pow__":
            return LocalElement.scalar(ScalarPoly.h1(arg))
        if name in ("i", "h1", "h2"):
            scal = {"i": ScalarPoly.i(), "h1": ScalarPoly.h1(), "h2": ScalarPoly.h2()}
            return LocalElement.scalar(scal[name])
        if name in ("g", "z", "zb", "x", "y"):
            fib = {
                "g": SrcElement.gamma(),
                "z": SrcElement.z(),
                "zb": SrcElement.zb(),
                "x": SrcElement.x(),
                "y": SrcElement.y(),
            }
            return LocalElement.from_fiber(fib[name])
        kind, idx = name[0], int(name[1:])
        if idx < 1 or idx > n_pairs:
            raise EvalError(f"base pair index out of range: {name} (n gives {n_pairs} pairs)")
        return LocalElement.base_var(kind, idx)

    return _eval_generic(node, atom_fn)


def parse_element(src: str) -> SrcElement:
    return eval_element(parse(src))


def parse_invariant(src: str) -> InvariantPoly:
    return InvariantPoly.from_element(parse_element(src))


def parse_scalar(src: str) -> ScalarPoly:
    e = parse_element(src)
    out = ScalarPoly.zero()
    for (p, q, eps), c in e.term_map().items():
        if (p, q, eps) != (0, 0, 0):
            raise EvalError("expected a pure scalar expression")
        out = out + c
    return out


# -- canonical printing ---------------------------------------------------


def _rat_str(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _coeff_parts(c: GaussianRational) -> tuple[bool, list[str]]:
    """(is_negative, factor strings) for a Gaussian rational coefficient."""
    if c.im == 0:
        neg = c.re < 0
        mag = abs(c.re)
        return neg, [] if mag == 1 else [_rat_str(mag)]
    if c.re == 0:
        neg = c.im < 0
        mag = abs(c.im)
        return neg, ["i"] if mag == 1 else [_rat_str(mag), "i"]
    # mixed coefficients keep their signs inside the parentheses
    if c.im > 0:
        im_part = "+i" if c.im == 1 else f"+{_rat_str(c.im)}*i"
    else:
        im_part = "-i" if c.im == -1 else f"-{_rat_str(abs(c.im))}*i"
    return False, [f"({_rat_str(c.re)}{im_part})"]


def _append_power(parts: list[str], name: str, exp: int) -> None:
    if exp == 0:
        return
    parts.append(name if exp == 1 else f"{name}^{exp}")


def _join_terms(terms: list[tuple[bool, list[str]]]) -> str:
    if not terms:
        return "0"
    pieces = []
    for idx, (neg, parts) in enumerate(terms):
        if not parts:
            parts = ["1"]
        body = "*".join(parts)
        if idx == 0:
            if neg:
                # keep the output inside the grammar: a leading '-' must
                # start a rational literal
                if body[0].isdigit():
                    pieces.append(f"-{body}")
                else:
                    pieces.append(f"-1*{body}")
            else:
                pieces.append(body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


def _scalar_term_entries(sp: ScalarPoly, tail: list[tuple[str, int]]) -> list[tuple[bool, list[str]]]:
    entries = []
    for (a, b), c in sp.terms():
        neg, parts = _coeff_parts(c)
        parts = list(parts)
        _append_power(parts, "h1", a)
        _append_power(parts, "h2", b)
        for name, exp in tail:
            _append_power(parts, name, exp)
        entries.append((neg, parts))
    return entries


def scalar_to_text(sp: ScalarPoly) -> str:
    return _join_terms(_scalar_term_entries(sp, []))


def element_to_text(e: SrcElement) -> str:
    entries = []
    for (p, q, eps), c in e.terms():
        entries.extend(_scalar_term_entries(c, [("z", p), ("zb", q), ("g", eps)]))
    return _join_terms(entries)


def invariant_to_text(f: InvariantPoly) -> str:
    entries = []
    for (p, q), c in f.terms():
        entries.extend(_scalar_term_entries(c, [("z", p), ("zb", q)]))
    return _join_terms(entries)


def local_to_text(le: LocalElement) -> str:
    entries = []
    for (base, p, q, eps), c in le.terms():
        tail = []
        for v, exp in base:
            kind = "p" if v % 2 == 0 else "q"
            tail.append((f"{kind}{v // 2 + 1}", exp))
        tail.extend([("z", p), ("zb", q), ("g", eps)])
        entries.extend(_scalar_term_entries(c, tail))
    return _join_terms(entries)


def form_to_text(fp) -> str:
    """Curvature forms print with a parenthesized scalar; output-only."""
    parts = []
    for key, c in fp.terms():
        syms = "*".join(name if e == 1 else f"{name}^{e}" for name, e in key)
        scal = scalar_to_text(c)
        if not syms:
            parts.append(scal)
        elif scal == "1":
            parts.append(syms)
        else:
            parts.append(f"({scal})*{syms}")
    return " + ".join(parts) if parts else "0"

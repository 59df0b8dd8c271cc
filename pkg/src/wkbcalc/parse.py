"""Text form of symbols.

Grammar (whitespace is insignificant)::

    symbol   = [ sign ] term { sign term } [ window ] ;
    sign     = "+" | "-" ;
    term     = factor { "*" factor } ;
    factor   = number | var [ "^" uint ] | "tau" [ "^" [ "-" ] uint ] ;
    number   = uint [ "/" uint ] ;
    var      = ( "x" | "u" ) index ;          (* index >= 1 *)
    window   = "@" "[" bound "," [ "-" ] uint "]" ;
    bound    = [ "-" ] uint | "-inf" ;

Example: ``3/2*x1^2*u2*tau^-1 + u1*tau``. Without a window annotation the
window is inferred as (lowest order present, highest order present); the
annotation ``@ [-inf, m]`` marks an exact symbol.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, NamedTuple, Optional

from .poly import Poly, grlex_key
from .symbol import EXACT, TruncationWindow, WkbSymbol


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"(?P<ws>\s+)|(?P<num>\d+)|(?P<ident>[A-Za-z_]\w*)|(?P<op>[-+*/^@\[\],])|(?P<bad>.)")


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start = 1, 0
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        col = m.start() - line_start + 1
        if kind == "ws":
            for k, ch in enumerate(m.group(), m.start()):
                if ch == "\n":
                    line += 1
                    line_start = k + 1
            continue
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", line, col)
        if kind == "ident":
            word = m.group()
            if word == "tau":
                kind = "tau"
            elif word == "inf":
                kind = "inf"
            elif word[0] in "xu" and word[1:].isdigit():
                kind = word[0]
                if int(word[1:]) == 0:
                    raise ParseError(f"variable index 0 in {word!r}; indices start at 1", line, col)
            else:
                raise ParseError(f"unknown identifier {word!r}", line, col)
        tokens.append(Token(kind, m.group(), line, col))
    tokens.append(Token("end", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.max_index = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column)

    def take(self, *texts) -> Optional[Token]:
        t = self.tok
        if (t.kind == "op" and t.text in texts) or t.kind in texts:
            self.pos += 1
            return t
        return None

    def expect_uint(self, what: str) -> int:
        t = self.tok
        if t.kind != "num":
            self.error(f"expected {what}, found {_describe(t)}")
        self.pos += 1
        return int(t.text)

    def signed_int(self, what: str) -> int:
        neg = self.take("-") is not None
        v = self.expect_uint(what)
        return -v if neg else v

    def parse(self):
        terms = []
        sign = -1 if self.take("-") else 1
        if sign == 1:
            self.take("+")
        terms.append(self.term(sign))
        while True:
            t = self.take("+", "-")
            if t is None:
                break
            terms.append(self.term(-1 if t.text == "-" else 1))
        window = None
        if self.take("@"):
            window = self.window()
        if self.tok.kind != "end":
            self.error(f"expected '+', '-' or end of input, found {_describe(self.tok)}")
        return terms, window

    def term(self, sign: int):
        coef = Fraction(sign)
        xs, us = {}, {}
        order = 0
        first = True
        while True:
            t = self.tok
            if t.kind == "num":
                self.pos += 1
                num = int(t.text)
                if self.take("/"):
                    dtok = self.tok
                    den = self.expect_uint("denominator")
                    if den == 0:
                        self.error("zero denominator", dtok)
                    coef *= Fraction(num, den)
                else:
                    coef *= num
            elif t.kind in ("x", "u"):
                self.pos += 1
                idx = int(t.text[1:])
                self.max_index = max(self.max_index, idx)
                e = 1
                if self.take("^"):
                    if self.tok.kind == "op" and self.tok.text == "-":
                        self.error(f"negative exponent on {t.text}")
                    e = self.expect_uint("exponent")
                target = xs if t.kind == "x" else us
                target[idx] = target.get(idx, 0) + e
            elif t.kind == "tau":
                self.pos += 1
                k = 1
                if self.take("^"):
                    k = self.signed_int("tau exponent")
                order += k
            else:
                self.error(f"expected a factor, found {_describe(t)}" if first else f"expected a factor after '*', found {_describe(t)}")
            first = False
            if not self.take("*"):
                return coef, xs, us, order

    def window(self):
        if not self.take("["):
            self.error(f"expected '[', found {_describe(self.tok)}")
        if self.take("-"):
            if self.take("inf"):
                floor = EXACT
            else:
                floor = -self.expect_uint("window floor")
        else:
            floor = self.expect_uint("window floor")
        if not self.take(","):
            self.error(f"expected ',', found {_describe(self.tok)}")
        ceiling = self.signed_int("window ceiling")
        if not self.take("]"):
            self.error(f"expected ']', found {_describe(self.tok)}")
        return floor, ceiling


def _describe(t: Token) -> str:
    return "end of input" if t.kind == "end" else repr(t.text)


def parse_symbol(text: str, n: Optional[int] = None, floor=None) -> WkbSymbol:
    """Parse a symbol expression.

    ``n`` defaults to the highest variable index (at least 1). ``floor``
    overrides the inferred window floor; pass :data:`EXACT` for an exact
    symbol.
    """
    p = _Parser(text)
    terms, window = p.parse()
    if n is None:
        n = max(1, p.max_index)
    elif p.max_index > n:
        raise ParseError(f"variable index {p.max_index} exceeds dimension {n}", 1, 1)
    by_order = {}
    for coef, xs, us, order in terms:
        mono = [0] * (2 * n)
        for i, e in xs.items():
            mono[i - 1] += e
        for i, e in us.items():
            mono[n + i - 1] += e
        bucket = by_order.setdefault(order, {})
        mono = tuple(mono)
        bucket[mono] = bucket.get(mono, 0) + coef
    coeffs = {j: Poly(n, t) for j, t in by_order.items()}
    present = [j for j, c in coeffs.items() if c]
    if window is not None and floor is None:
        fl, ceil = window
    else:
        ceil = max(present, default=0)
        if floor is None:
            fl = min(present, default=0)
        else:
            fl = floor
            if fl != EXACT:
                below = [j for j in present if j < fl]
                if below:
                    raise ParseError(f"term of order {min(below)} lies below floor {fl}", 1, 1)
                ceil = max(ceil, fl)
        if window is not None:
            ceil = max(ceil, window[1])
    try:
        return WkbSymbol(n, coeffs, TruncationWindow(fl, ceil))
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None


def parse_poly(text: str, n: Optional[int] = None) -> Poly:
    """Parse a tau-free expression as a polynomial."""
    S = parse_symbol(text, n, floor=EXACT)
    if any(j != 0 for j in S.coeffs):
        raise ParseError("polynomial expression must not contain tau", 1, 1)
    return S.coeffs.get(0, Poly.zero(S.n))


# formatting


def _format_term(c: Fraction, mono, n: int, order: int = 0) -> str:
    factors = []
    for i in range(n):
        e = mono[i]
        if e:
            factors.append(f"x{i + 1}" + (f"^{e}" if e > 1 else ""))
    for i in range(n):
        e = mono[n + i]
        if e:
            factors.append(f"u{i + 1}" + (f"^{e}" if e > 1 else ""))
    if order:
        factors.append("tau" + (f"^{order}" if order != 1 else ""))
    a = abs(c)
    if a != 1 or not factors:
        factors.insert(0, str(a))
    return "*".join(factors)


def _join(parts) -> str:
    out = ""
    for c, body in parts:
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


def format_poly(p: Poly) -> str:
    return _join((c, _format_term(c, m, p.n)) for m, c in p.items())


def inferred_window(S: WkbSymbol) -> TruncationWindow:
    orders = list(S.coeffs)
    return TruncationWindow(min(orders, default=0), max(orders, default=0))


def format_symbol(S: WkbSymbol, window="auto") -> str:
    """Canonical text: orders descending, graded-lex descending within an order.

    ``window`` is ``True`` (always annotate), ``False`` (never) or ``"auto"``
    (annotate only when the window differs from the inferred one, so that
    :func:`parse_symbol` round-trips).
    """
    parts = []
    for j in sorted(S.coeffs, reverse=True):
        for m, c in S.coeffs[j].items():
            parts.append((c, _format_term(c, m, S.n, j)))
    text = _join(parts)
    if window is True or (window == "auto" and S.window != inferred_window(S)):
        fl, ceil = S.window.as_list()
        text += f" @ [{fl}, {ceil}]"
    return text


def symbol_to_json(S: WkbSymbol) -> dict:
    """Canonical JSON-ready form: orders ascending, monomials graded-lex ascending."""
    coeffs = []
    for j in sorted(S.coeffs):
        p = S.coeffs[j]
        terms = [[list(m), _rat(p.coefficient(m))] for m in sorted(p.terms, key=grlex_key)]
        coeffs.append([j, terms])
    return {"n": S.n, "window": S.window.as_list(), "coeffs": coeffs, "text": format_symbol(S, window=False)}


def _rat(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"

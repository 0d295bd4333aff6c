"""Text forms: ordinal expressions, degree words, stacks, operation expressions.

Ordinal grammar:
    expr   := term ('+' term)*
    term   := factor ('*' nat)?
    factor := 'w' ('^' factor)? | nat | '(' expr ')'
"""
from __future__ import annotations

from .errors import ParseError
from .ordinals import Ordinal, add, mul_nat, omega_pow


def format_ordinal(a: Ordinal) -> str:
    if a.is_zero:
        return "0"
    return " + ".join(_format_term(exp, coeff) for exp, coeff in a.terms)


def _format_term(exp: Ordinal, coeff: int) -> str:
    if exp.is_zero:
        return str(coeff)
    if exp == Ordinal.from_int(1):
        base = "w"
    elif _plain_power_chain(exp):
        base = f"w^{format_ordinal(exp)}"
    else:
        base = f"w^({format_ordinal(exp)})"
    return base if coeff == 1 else f"{base}*{coeff}"


def _plain_power_chain(e: Ordinal) -> bool:
    # exponents that re-parse correctly without parentheses: naturals and
    # right-nested single powers like w, w^w, w^w^2
    if e.is_finite:
        return True
    if len(e.terms) != 1 or e.terms[0][1] != 1:
        return False
    return _plain_power_chain(e.terms[0][0])


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected a natural number", start)
        return int(self.text[start:self.pos])


def parse_ordinal(text: str) -> Ordinal:
    sc = _Scanner(text)
    value = _parse_expr(sc)
    sc.skip_ws()
    if sc.pos != len(text):
        raise ParseError("trailing input", sc.pos)
    return value


def _parse_expr(sc: _Scanner) -> Ordinal:
    value = _parse_term(sc)
    while sc.peek() == "+":
        sc.expect("+")
        value = add(value, _parse_term(sc))
    return value


def _parse_term(sc: _Scanner) -> Ordinal:
    value = _parse_factor(sc)
    if sc.peek() == "*":
        sc.expect("*")
        value = mul_nat(value, sc.nat())
    return value


def _parse_factor(sc: _Scanner) -> Ordinal:
    ch = sc.peek()
    if ch == "w":
        sc.pos += 1
        if sc.peek() == "^":
            sc.expect("^")
            return omega_pow(_parse_factor(sc))
        return omega_pow(Ordinal.from_int(1))
    if ch == "(":
        sc.expect("(")
        value = _parse_expr(sc)
        sc.expect(")")
        return value
    if ch.isdigit():
        return Ordinal.from_int(sc.nat())
    raise ParseError("expected 'w', a number or '('", sc.pos)


def format_word(prefix, period, compact: bool = False) -> str:
    """Degree-word text: "1,2,2(2,1)^w", finite words plain "1,1,0".

    Compact form drops the commas when every letter is a single digit.
    """
    if compact and all(letter <= 9 for letter in (*prefix, *period)):
        head = "".join(str(letter) for letter in prefix)
        if not period:
            return head
        return f"{head}({''.join(str(letter) for letter in period)})^w"
    head = ",".join(str(letter) for letter in prefix)
    if not period:
        return head
    return f"{head}({','.join(str(letter) for letter in period)})^w"


def parse_word(text: str):
    """Inverse of format_word (comma form); returns (prefix, period) tuples."""
    text = text.strip()
    if not text:
        return (), ()
    if text.endswith(")^w"):
        open_at = text.index("(")
        head, body = text[:open_at], text[open_at + 1 : -3]
        prefix = tuple(int(x) for x in head.split(",") if x != "")
        period = tuple(int(x) for x in body.split(",") if x != "")
        return prefix, period
    return tuple(int(x) for x in text.split(",") if x != ""), ()

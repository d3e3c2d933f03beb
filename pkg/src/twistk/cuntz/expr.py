"""Text syntax for Cuntz elements.

Grammar::

    expr    := ["+" | "-"] product (("+" | "-") product)*
    product := factor ([sep] factor)*
    factor  := "s(" INT ")" ["*"] | scalar | "(" expr ")"
    scalar  := INT ["/" INT] | "i" | "z" INT ["^" INT]
    sep     := "·" | "." | "*"

``s(k)`` is the isometry ``psi_k`` and ``s(k)*`` its adjoint; ``i`` is ``zeta_4``
and ``zN^k`` is ``zeta_N^k``. Juxtaposition and separators both multiply in
``O_d``, so ``2 s(1)s(2)* + i s(1)s(1)*`` and ``s(1)s(2)*·s(2)s(1)*`` are valid.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from twistk.core.cyclotomic import Cyclotomic
from twistk.core.errors import ParseError
from twistk.cuntz.words import CuntzElement

__all__ = ["parse_element", "format_element"]

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<word>s\(\s*(?P<letter>\d+)\s*\)(?P<star>\*)?)"
    r"|(?P<root>z(?P<order>\d+)(?:\^(?P<power>-?\d+))?)"
    r"|(?P<number>\d+(?:/\d+)?)"
    r"|(?P<imag>i)"
    r"|(?P<op>[-+()·.*])"
    r")",
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    position: int
    value: object = None


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise ParseError(f"Unexpected character {text[pos:].lstrip()[:1]!r} at offset {pos}")
        start = match.end() - len(match.group(0).lstrip())
        if match.group("word"):
            value = (int(match.group("letter")), bool(match.group("star")))
            tokens.append(_Token("word", match.group("word"), start, value))
        elif match.group("root"):
            order = int(match.group("order"))
            power = int(match.group("power") or 1)
            if order < 1:
                raise ParseError(f"Root of unity order must be positive at offset {start}")
            tokens.append(_Token("scalar", match.group("root"), start, Cyclotomic.root_of_unity(order, power)))
        elif match.group("number"):
            try:
                number = Cyclotomic.rational(Fraction(match.group("number")))
            except ZeroDivisionError as exc:
                raise ParseError(f"Zero denominator at offset {start}") from exc
            tokens.append(_Token("scalar", match.group("number"), start, number))
        elif match.group("imag"):
            tokens.append(_Token("scalar", "i", start, Cyclotomic.root_of_unity(4)))
        else:
            tokens.append(_Token("op", match.group("op"), start))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, d: int):
        self.tokens = _tokenize(text)
        self.d = d
        self.pos = 0

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def at_op(self, *ops: str) -> bool:
        token = self.peek()
        return token is not None and token.kind == "op" and token.text in ops

    def expr(self) -> CuntzElement:
        negative = False
        if self.at_op("+", "-"):
            negative = self.take().text == "-"
        result = self.product()
        if negative:
            result = -result
        while self.at_op("+", "-"):
            sign = self.take().text
            term = self.product()
            result = result + term if sign == "+" else result - term
        return result

    def product(self) -> CuntzElement:
        result = self.factor()
        while True:
            if self.at_op("·", ".", "*"):
                self.take()
                result = result * self.factor()
                continue
            token = self.peek()
            if token is None or (token.kind == "op" and token.text in "+-)"):
                return result
            result = result * self.factor()

    def factor(self) -> CuntzElement:
        token = self.peek()
        if token is None:
            raise ParseError("Unexpected end of expression")
        self.take()
        if token.kind == "word":
            letter, star = token.value  # type: ignore[misc]
            if not 1 <= letter <= self.d:
                raise ParseError(f"Generator s({letter}) at offset {token.position} is out of range 1..{self.d}")
            return CuntzElement.monomial(self.d, (), (letter,)) if star else CuntzElement.generator(self.d, letter)
        if token.kind == "scalar":
            return CuntzElement.scalar(self.d, token.value)  # type: ignore[arg-type]
        if token.text == "(":
            inner = self.expr()
            if not self.at_op(")"):
                raise ParseError(f"Unclosed parenthesis opened at offset {token.position}")
            self.take()
            return inner
        raise ParseError(f"Unexpected {token.text!r} at offset {token.position}")


def parse_element(text: str, d: int) -> CuntzElement:
    """Parse an expression in ``O_d``.

    Raises:
        ParseError: On malformed input or letters outside ``1..d``.
    """

    parser = _Parser(text, d)
    if parser.peek() is None:
        raise ParseError("Empty expression")
    result = parser.expr()
    leftover = parser.peek()
    if leftover is not None:
        raise ParseError(f"Unexpected {leftover.text!r} at offset {leftover.position}")
    return result


def _format_word(i: tuple[int, ...], j: tuple[int, ...]) -> str:
    return "".join(f"s({a})" for a in i) + "".join(f"s({b})*" for b in reversed(j))


def _format_scalar(c: Cyclotomic) -> str:
    if c.is_rational():
        return str(c)
    return "(" + str(c).replace("*", " ") + ")"


def format_element(element: CuntzElement) -> str:
    """Render ``element`` in the syntax accepted by :func:`parse_element`."""

    if element.is_zero():
        return "0"
    parts = []
    for i, j, c in element:
        word = _format_word(i, j)
        if not word:
            parts.append(_format_scalar(c))
        elif c == 1:
            parts.append(word)
        elif c == -1:
            parts.append(f"-{word}")
        else:
            parts.append(f"{_format_scalar(c)} {word}")
    return " + ".join(parts).replace("+ -", "- ")

"""
Recursive-descent parser for preference expressions

Grammar:

    expr    := disj
    disj    := conj { "|" conj }
    conj    := unary { "." unary }
    unary   := "~" unary | primary
    primary := atom | "(" expr ")" | "TOP" | "BOT"
    atom    := IDENT "=" NUMBER

"·" is accepted for "." and "∨" for "|". TOP and BOT are keywords unless
they are followed by "=", in which case they name attributes.
"""

import logging
import re
from dataclasses import dataclass
from typing import List, Optional

from prefcalc.algebra.expr import BOTTOM, TOP, Atom, Complement, Conjunction, Disjunction, PreferenceExpr
from prefcalc.errors import ExpressionError, ParseError

logger = logging.getLogger(__name__)

# parentheses and complements opened but not yet closed
MAX_NESTING = 100

_WHITESPACE = re.compile(r"\s+")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d+)?|\.\d+)(?:[eE][+-]?\d+)?")

_OPERATORS = {
    ".": ".",
    "·": ".",
    "|": "|",
    "∨": "|",
    "~": "~",
    "(": "(",
    ")": ")",
    "=": "=",
}


@dataclass(frozen=True)
class ParseDiagnostic:
    """Location and description of a syntax error"""
    offset: int  # byte offset into the UTF-8 encoded input
    line: int
    column: int
    message: str
    token: str

    def __str__(self) -> str:
        near = f" near {self.token!r}" if self.token else " at end of input"
        return f"line {self.line}, column {self.column}: {self.message}{near}"


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, NUMBER, EOF, or the operator itself
    text: str
    position: int  # character index


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = self._tokenize()
        self.index = 0
        self.nesting = 0

    # -- diagnostics --------------------------------------------------

    def _diagnostic(self, position: int, message: str, token: str) -> ParseDiagnostic:
        prefix = self.text[:position]
        line = prefix.count("\n") + 1
        column = position - (prefix.rfind("\n") + 1) + 1
        offset = len(prefix.encode("utf-8"))
        return ParseDiagnostic(offset, line, column, message, token)

    def _fail(self, token: Token, message: str) -> ParseError:
        return ParseError(self._diagnostic(token.position, message, token.text))

    # -- lexing -------------------------------------------------------

    def _tokenize(self) -> List[Token]:
        tokens: List[Token] = []
        pos = 0
        text = self.text
        while pos < len(text):
            ws = _WHITESPACE.match(text, pos)
            if ws:
                pos = ws.end()
                continue
            char = text[pos]
            after_equals = bool(tokens) and tokens[-1].kind == "="
            if after_equals or char.isdigit():
                number = _NUMBER.match(text, pos)
                if number:
                    tokens.append(Token("NUMBER", number.group(), pos))
                    pos = number.end()
                    continue
            ident = _IDENT.match(text, pos)
            if ident:
                tokens.append(Token("IDENT", ident.group(), pos))
                pos = ident.end()
                continue
            if char in _OPERATORS:
                tokens.append(Token(_OPERATORS[char], char, pos))
                pos += 1
                continue
            raise ParseError(self._diagnostic(pos, "unexpected character", char))
        tokens.append(Token("EOF", "", len(text)))
        return tokens

    # -- parsing ------------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _peek(self, ahead: int = 1) -> Token:
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def parse(self) -> PreferenceExpr:
        if self.current.kind == "EOF":
            raise self._fail(self.current, "empty expression")
        result = self._disjunction()
        if self.current.kind != "EOF":
            raise self._fail(self.current, "unexpected token")
        return result

    def _disjunction(self) -> PreferenceExpr:
        children = [self._conjunction()]
        while self.current.kind == "|":
            self._advance()
            children.append(self._conjunction())
        return children[0] if len(children) == 1 else Disjunction(tuple(children))

    def _conjunction(self) -> PreferenceExpr:
        children = [self._unary()]
        while self.current.kind == ".":
            self._advance()
            children.append(self._unary())
        return children[0] if len(children) == 1 else Conjunction(tuple(children))

    def _open(self, token: Token) -> None:
        self.nesting += 1
        if self.nesting > MAX_NESTING:
            raise self._fail(token, f"expression nested deeper than {MAX_NESTING} levels")

    def _unary(self) -> PreferenceExpr:
        if self.current.kind == "~":
            self._open(self._advance())
            child = self._unary()
            self.nesting -= 1
            return Complement(child)
        return self._primary()

    def _primary(self) -> PreferenceExpr:
        token = self.current
        if token.kind == "(":
            self._open(self._advance())
            inner = self._disjunction()
            if self.current.kind != ")":
                raise self._fail(self.current, "expected ')'")
            self._advance()
            self.nesting -= 1
            return inner
        if token.kind == "IDENT":
            if token.text in ("TOP", "BOT") and self._peek().kind != "=":
                self._advance()
                return TOP if token.text == "TOP" else BOTTOM
            return self._atom()
        if token.kind == "EOF":
            raise self._fail(token, "unexpected end of input")
        raise self._fail(token, "expected an atom, '(' or '~'")

    def _atom(self) -> Atom:
        name = self._advance()
        if self.current.kind != "=":
            raise self._fail(self.current, f"expected '=' after attribute '{name.text}'")
        self._advance()
        if self.current.kind == "=":
            raise self._fail(self.current, "duplicate '=' in atom")
        if self.current.kind != "NUMBER":
            raise self._fail(self.current, "expected a number")
        number = self._advance()
        if self.current.kind == "=":
            raise self._fail(self.current, "duplicate '=' in atom")
        try:
            return Atom(name.text, float(number.text))
        except ExpressionError as e:
            raise self._fail(number, str(e)) from e


def parse(text: str) -> PreferenceExpr:
    """
    Parse a preference expression

    Args:
        text: Expression text, e.g. "x=2 . y=3 | ~z=1"

    Returns:
        PreferenceExpr

    Raises:
        ParseError: With a ParseDiagnostic describing the first error
    """
    result = _Parser(text).parse()
    logger.debug(f"parsed {text!r}")
    return result


def try_parse(text: str) -> tuple[Optional[PreferenceExpr], Optional[ParseDiagnostic]]:
    """
    Parse without raising

    Returns:
        tuple: (expression, None) or (None, diagnostic)
    """
    try:
        return parse(text), None
    except ParseError as e:
        return None, e.diagnostic

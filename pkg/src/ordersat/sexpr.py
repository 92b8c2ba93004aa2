"""Tiny S-expression tokenizer shared by the certificate serializers."""

from __future__ import annotations

from dataclasses import dataclass

from .core import ParseError


@dataclass(frozen=True)
class Token:
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append(Token(c, i))
            i += 1
        else:
            start = i
            while i < n and not text[i].isspace() and text[i] not in "()":
                i += 1
            tokens.append(Token(text[start:i], start))
    return tokens


class TokenStream:
    def __init__(self, text: str) -> None:
        self._tokens = tokenize(text)
        self._pos = 0
        self._length = len(text)

    def peek(self) -> Token | None:
        if self._pos < len(self._tokens):
            return self._tokens[self._pos]
        return None

    def next(self, expected: str | None = None) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"syntax error at offset {self._length}: unexpected end of input")
        self._pos += 1
        if expected is not None and tok.text != expected:
            raise ParseError(
                f"syntax error at offset {tok.offset}: expected {expected!r}, got {tok.text!r}"
            )
        return tok

    def expect_end(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"syntax error at offset {tok.offset}: trailing input {tok.text!r}")

    def error(self, tok: Token, message: str) -> ParseError:
        return ParseError(f"syntax error at offset {tok.offset}: {message}")

"""Tokenizer for the specification language. Positions are 1-based."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import UnilabError


class ParseError(UnilabError, ValueError):
    def __init__(self, line: int, column: int, expected: str, found: str):
        self.line, self.column, self.expected, self.found = line, column, expected, found
        super().__init__(f"line {line}, column {column}: expected {expected}, found {found}")


class Tok(enum.Enum):
    NUMBER = "number"
    IDENT = "identifier"
    PUNCT = "punctuation"
    EOF = "end of input"


PUNCT = set("()[],=+-*/^")


@dataclass(frozen=True)
class Token:
    kind: Tok
    text: str
    line: int
    column: int

    def describe(self) -> str:
        if self.kind is Tok.EOF:
            return "end of input"
        return repr(self.text)


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r\f\v﻿":
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start = col
        if ch.isascii() and (ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isascii() and text[i + 1].isdigit())):
            j = i
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                j += 1
                if not (j < n and text[j].isascii() and text[j].isdigit()):
                    raise ParseError(line, col + (j - i), "digit", _found(text, j))
                while j < n and text[j].isascii() and text[j].isdigit():
                    j += 1
            out.append(Token(Tok.NUMBER, text[i:j], line, start))
            col += j - i
            i = j
            continue
        if ch.isascii() and (ch.isalpha() or ch == "_"):
            j = i
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token(Tok.IDENT, text[i:j], line, start))
            col += j - i
            i = j
            continue
        if ch in PUNCT:
            out.append(Token(Tok.PUNCT, ch, line, start))
            i, col = i + 1, col + 1
            continue
        raise ParseError(line, col, "a token", repr(ch))
    out.append(Token(Tok.EOF, "", line, col))
    return out


def _found(text: str, j: int) -> str:
    return "end of input" if j >= len(text) else repr(text[j])

"""The operator specification language: parser, canonical printer and compiler."""

from .compiler import compile_spec, compile_text
from .format import format_spec
from .lexer import ParseError, tokenize
from .parser import parse, parse_expr

__all__ = ["ParseError", "compile_spec", "compile_text", "format_spec", "parse", "parse_expr", "tokenize"]

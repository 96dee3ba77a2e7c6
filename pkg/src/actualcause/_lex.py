"""Tokenizer shared by the model-file, expression and formula parsers."""

import re
from dataclasses import dataclass

from .errors import ParseError

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<string>"[^"\n]*")
  | (?P<atom>[A-Za-z0-9_]+)
  | (?P<op><-|->|==|!=|<=|>=|[=|&!()\[\],{};+\-<>])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'atom', 'string', 'op' or 'eof'
    text: str
    line: int
    column: int

    def is_op(self, *ops):
        return self.kind == "op" and self.text in ops


def tokenize(text, line=1, column=1, comments=False, source=None):
    """Split ``text`` into tokens, tracking positions.

    ``comments`` enables ``#`` line comments (model files only; formulas
    never contain them).
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or (m.lastgroup == "comment" and not comments):
            raise ParseError(f"unexpected character {text[pos]!r}", line, column, source)
        chunk = m.group()
        kind = m.lastgroup
        if kind in ("atom", "op", "string"):
            tokens.append(Token(kind, chunk, line, column))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            column = len(chunk) - chunk.rfind("\n")
        else:
            column += len(chunk)
        pos = m.end()
    tokens.append(Token("eof", "", line, column))
    return tokens


class TokenStream:
    def __init__(self, tokens, source=None):
        self.tokens = tokens
        self.i = 0
        self.source = source

    @property
    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek
        return ParseError(message, tok.line, tok.column, self.source)

    def accept(self, *ops):
        if self.peek.is_op(*ops):
            return self.next()
        return None

    def expect(self, op):
        tok = self.peek
        if not tok.is_op(op):
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.error(f"expected {op!r}, got {got}")
        return self.next()

    def expect_atom(self, what="identifier"):
        tok = self.peek
        if tok.kind != "atom":
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.error(f"expected {what}, got {got}")
        return self.next()

    def expect_eof(self):
        if self.peek.kind != "eof":
            raise self.error(f"unexpected {self.peek.text!r}")

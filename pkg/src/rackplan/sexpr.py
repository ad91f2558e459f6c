"""S-expression reader and printer shared by designators and scenario files.

Grammar: EXPR := "(" ITEM* ")" where ITEM is an expression, a symbol, a
number, or a double-quoted string with backslash escapes for quote and
backslash.  Typographic quote pairs (``...'' and the Unicode curly pair)
are normalized to plain double quotes while lexing.  ";" starts a
comment running to end of line.
"""

from __future__ import annotations

import re

from .errors import DesignatorSyntaxError


class Symbol(str):
    """A bare identifier token, distinct from a quoted string."""

    __slots__ = ()

    def __repr__(self):
        return f"Symbol({str.__repr__(self)})"


_SYMBOL_RE = re.compile(r"[A-Za-z][A-Za-z0-9-]*")
_NUMBER_RE = re.compile(r"-?[0-9]+(\.[0-9]+)?([eE][+-]?[0-9]+)?")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def _advance(self, n: int = 1):
        for _ in range(n):
            if self.pos < len(self.text) and self.text[self.pos] == "\n":
                self.line += 1
                self.column = 1
            else:
                self.column += 1
            self.pos += 1

    def _peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def _error(self, message: str, expected=()):
        raise DesignatorSyntaxError(message, self.line, self.column, expected)

    def _string(self, closer: str) -> str:
        # opening delimiter already consumed
        out = []
        while True:
            c = self._peek()
            if not c:
                self._error("unterminated string", ("closing quote",))
            if closer == "''" and c == "'" and self._peek(1) == "'":
                self._advance(2)
                return "".join(out)
            if closer not in ("''",) and c == closer:
                self._advance()
                return "".join(out)
            if c == "\\":
                nxt = self._peek(1)
                if nxt in ('"', "\\"):
                    out.append(nxt)
                    self._advance(2)
                    continue
                self._error(f"unsupported escape '\\{nxt}'", ('\\"', "\\\\"))
            out.append(c)
            self._advance()

    def tokens(self):
        """Yield (kind, value, line, column) tuples, ending with ('eof', ...)."""
        while True:
            c = self._peek()
            if not c:
                yield ("eof", None, self.line, self.column)
                return
            if c in " \t\r\n":
                self._advance()
                continue
            if c == ";":
                while self._peek() and self._peek() != "\n":
                    self._advance()
                continue
            line, column = self.line, self.column
            if c == "(":
                self._advance()
                yield ("open", None, line, column)
            elif c == ")":
                self._advance()
                yield ("close", None, line, column)
            elif c == '"':
                self._advance()
                yield ("string", self._string('"'), line, column)
            elif c == "`" and self._peek(1) == "`":
                self._advance(2)
                yield ("string", self._string("''"), line, column)
            elif c == "“":  # left curly double quote
                self._advance()
                yield ("string", self._string("”"), line, column)
            else:
                m = _NUMBER_RE.match(self.text, self.pos)
                if m and (c.isdigit() or c == "-"):
                    token = m.group(0)
                    self._advance(len(token))
                    value = float(token) if ("." in token or "e" in token
                                             or "E" in token) else int(token)
                    yield ("number", value, line, column)
                    continue
                m = _SYMBOL_RE.match(self.text, self.pos)
                if not m:
                    self._error(f"unexpected character {c!r}",
                                ("(", ")", "symbol", "number", "string"))
                token = m.group(0)
                self._advance(len(token))
                yield ("symbol", Symbol(token), line, column)


def parse(text: str):
    """Parse a single top-level expression; returns (form, spans).

    ``spans`` maps id(list) -> (line, column) of the list's opening
    paren, for error reporting on structural problems.
    """
    lexer = _Lexer(text)
    stream = lexer.tokens()
    spans: dict[int, tuple[int, int]] = {}

    def read(token):
        kind, value, line, column = token
        if kind == "open":
            items = []
            spans[id(items)] = (line, column)
            while True:
                token = next(stream)
                if token[0] == "close":
                    return items
                if token[0] == "eof":
                    raise DesignatorSyntaxError("unexpected end of input inside list",
                                                token[2], token[3], (")",))
                items.append(read(token))
        if kind in ("symbol", "string", "number"):
            return value
        raise DesignatorSyntaxError(f"unexpected token {kind}", line, column,
                                    ("(", "symbol", "number", "string"))

    first = next(stream)
    if first[0] == "eof":
        raise DesignatorSyntaxError("empty input", first[2], first[3], ("(",))
    form = read(first)
    trailing = next(stream)
    if trailing[0] != "eof":
        raise DesignatorSyntaxError("trailing content after expression",
                                    trailing[2], trailing[3], ("end of input",))
    return form, spans


def dumps(form) -> str:
    """Render a form back to text; parse(dumps(f)) round-trips."""
    if isinstance(form, list):
        return "(" + " ".join(dumps(item) for item in form) + ")"
    if isinstance(form, Symbol):
        return str(form)
    if isinstance(form, str):
        escaped = form.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(form, bool):
        return "true" if form else "false"
    if isinstance(form, float):
        return repr(form)
    if isinstance(form, int):
        return repr(form)
    raise TypeError(f"cannot render {type(form).__name__} as an s-expression")

"""Tokenizer.  Newlines are significant only outside brackets."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diagnostics import Diagnostic
from .syntax import Loc

KEYWORDS = {
    "domain", "int", "mod", "lifted", "rfu", "spec", "sts", "end", "fail", "bot",
    "where", "and", "or", "not", "let", "feedback", "on", "builtin", "state",
    "input", "output", "init", "le", "lt", "ge", "gt",
}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>->|\.\.|!=|<=|\\/|\|\||[(){},:=<;+\-*])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "kw", "op", "nl", "eof"
    text: str
    loc: Loc


def tokenize(text: str):
    """Returns ``(tokens, diagnostics)``; bad characters are skipped and reported."""
    tokens, diags = [], []
    line, line_start, depth = 1, 0, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        loc = Loc(line, pos - line_start + 1)
        if m is None:
            diags.append(Diagnostic("error", loc, "E-LEX",
                                    f"unexpected character {text[pos]!r}"))
            pos += 1
            continue
        kind = m.lastgroup
        s = m.group()
        pos = m.end()
        if kind == "nl":
            if depth == 0:
                tokens.append(Token("nl", "\n", loc))
            line += 1
            line_start = pos
            continue
        if kind in ("ws", "comment"):
            continue
        if kind == "ident" and s in KEYWORDS:
            kind = "kw"
        if kind == "op":
            if s in "({":
                depth += 1
            elif s in ")}" and depth:
                depth -= 1
        tokens.append(Token(kind, s, loc))
    tokens.append(Token("nl", "\n", Loc(line, pos - line_start + 1)))
    tokens.append(Token("eof", "", Loc(line, pos - line_start + 1)))
    return tokens, diags

"""Recursive-descent parser producing a :class:`~feedkit.dsl.syntax.Document`.

Errors never escape as exceptions: each one becomes a
:class:`~feedkit.dsl.diagnostics.Diagnostic` and parsing resumes at the
next line.
"""

from __future__ import annotations

from .diagnostics import Diagnostic, ParseError
from .lexer import Token, tokenize
from .syntax import (Apply, BinOp, BoolOp, BotLit, BuiltinDecl, Call, Compare, Document,
                     EnumDomain, FeedbackDecl, IntDomain, IntLit, LetDecl, Name, Neg,
                     Not, Op, Ref, RelDecl, Row, StsDecl, Wildcard, Wire)

_TOP = {"domain", "rfu", "spec", "sts", "let", "feedback"}
_RELOPS = {"=", "!=", "<=", "<", "le", "lt", "ge", "gt"}
_TERM_FUNCS = {"cross": 2, "wp": 1, "fb": 1, "hide": 1}


class _Parser:
    def __init__(self, tokens: list):
        self.toks = tokens
        self.i = 0
        self.diags: list = []

    # -- token helpers ------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("op", "kw") and t.text == text

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def error(self, msg: str, code: str = "E-SYNTAX", tok: Token | None = None):
        t = tok or self.tok
        raise ParseError(Diagnostic("error", t.loc, code, msg))

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}, found {self._show(self.tok)}")
        return self.advance()

    def ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != "ident":
            self.error(f"expected {what}, found {self._show(self.tok)}")
        return self.advance()

    @staticmethod
    def _show(t: Token) -> str:
        if t.kind == "eof":
            return "end of file"
        if t.kind == "nl":
            return "end of line"
        return repr(t.text)

    def end_of_line(self):
        if self.tok.kind not in ("nl", "eof"):
            self.error(f"unexpected {self._show(self.tok)} at end of statement")
        while self.tok.kind == "nl":
            self.advance()

    def skip_blank(self):
        while self.tok.kind == "nl":
            self.advance()

    def skip_line(self):
        while self.tok.kind not in ("nl", "eof"):
            self.advance()
        self.skip_blank()

    def recover_top(self):
        self.skip_line()
        while self.tok.kind != "eof" and not (self.tok.kind == "kw" and self.tok.text in _TOP):
            self.skip_line()

    # -- document -------------------------------------------------------------

    def document(self) -> Document:
        decls = []
        self.skip_blank()
        while self.tok.kind != "eof":
            start = self.i
            try:
                decls.append(self.decl())
            except ParseError as e:
                self.diags.append(e.diag)
                at_top = self.tok.kind == "kw" and self.tok.text in _TOP
                if not (at_top and self.i > start):
                    self.recover_top()
        return Document(tuple(decls))

    def decl(self):
        t = self.tok
        if t.kind != "kw" or t.text not in _TOP:
            self.error(f"expected a declaration, found {self._show(t)}")
        return getattr(self, "decl_" + t.text)()

    def decl_domain(self):
        start = self.advance().loc
        name = self.ident("domain name").text
        self.expect("=")
        if self.at("{"):
            self.advance()
            atoms = []
            while True:
                atoms.append(self.atom_literal())
                if self.at(","):
                    self.advance()
                    continue
                break
            self.expect("}")
            lifted = self.lifted()
            self.end_of_line()
            return EnumDomain(name, tuple(atoms), lifted, start)
        self.expect("int")
        lo = self.signed_int()
        self.expect("..")
        hi = self.signed_int()
        if self.at("mod"):
            self.advance()
            arith = "mod"
        elif self.tok.kind == "ident" and self.tok.text == "saturate":
            self.advance()
            self.expect("-")
            self.expect("fail")
            arith = "saturate-fail"
        else:
            self.error("expected 'mod' or 'saturate-fail'")
        lifted = self.lifted()
        self.end_of_line()
        return IntDomain(name, lo, hi, arith, lifted, start)

    def lifted(self) -> bool:
        if self.at("lifted"):
            self.advance()
            return True
        return False

    def signed_int(self) -> int:
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        if self.tok.kind != "int":
            self.error(f"expected an integer, found {self._show(self.tok)}")
        v = int(self.advance().text)
        return -v if neg else v

    def atom_literal(self):
        if self.tok.kind == "ident":
            return self.advance().text
        return self.signed_int()

    def wires(self) -> tuple:
        self.expect("(")
        out = []
        while not self.at(")"):
            t = self.ident("wire name")
            self.expect(":")
            d = self.ident("domain name")
            out.append(Wire(t.text, d.text, t.loc))
            if self.at(","):
                self.advance()
            elif not self.at(")"):
                self.error(f"expected ',' or ')', found {self._show(self.tok)}")
        self.advance()
        return tuple(out)

    def decl_rfu(self):
        return self._relation("rfu")

    def decl_spec(self):
        return self._relation("spec")

    def _relation(self, kind: str):
        start = self.advance().loc
        name = self.ident(f"{kind} name").text
        if kind == "rfu" and self.at("="):
            self.advance()
            self.expect("builtin")
            b = self.ident("builtin name").text
            self.end_of_line()
            return BuiltinDecl(name, b, start)
        ins = self.wires()
        self.expect("->")
        outs = self.wires()
        self.end_of_line()
        rows = self.rows()
        return RelDecl(kind, name, ins, outs, rows, start)

    def decl_sts(self):
        start = self.advance().loc
        name = self.ident("sts name").text
        self.expect("state")
        state = self.wires()
        self.expect("input")
        ins = self.wires()
        self.expect("output")
        outs = self.wires()
        self.end_of_line()
        self.expect("init")
        init = [self.literal_tuple()]
        while self.at(","):
            self.advance()
            init.append(self.literal_tuple())
        self.end_of_line()
        rows = self.rows()
        return StsDecl(name, state, ins, outs, tuple(init), rows, start)

    def literal_tuple(self) -> tuple:
        self.expect("(")
        vals = []
        while not self.at(")"):
            if self.at("bot"):
                vals.append(BotLit(self.advance().loc))
            else:
                loc = self.tok.loc
                v = self.atom_literal()
                vals.append(IntLit(v, loc) if isinstance(v, int) else Name(v, loc))
            if self.at(","):
                self.advance()
            elif not self.at(")"):
                self.error(f"expected ',' or ')', found {self._show(self.tok)}")
        self.advance()
        return tuple(vals)

    def rows(self) -> tuple:
        rows = []
        while True:
            self.skip_blank()
            if self.at("end"):
                self.advance()
                self.end_of_line()
                return tuple(rows)
            if self.tok.kind == "eof" or (self.tok.kind == "kw" and self.tok.text in _TOP):
                self.error("missing 'end'", "E-UNCLOSED")
            try:
                rows.append(self.row())
            except ParseError as e:
                self.diags.append(e.diag)
                self.skip_line()

    def row(self) -> Row:
        start = self.tok.loc
        self.expect("(")
        pats = []
        while not self.at(")"):
            pats.append(self.pattern())
            if self.at(","):
                self.advance()
            elif not self.at(")"):
                self.error(f"expected ',' or ')', found {self._show(self.tok)}")
        self.advance()
        self.expect("->")
        if self.at("fail"):
            self.advance()
            outs = None
        else:
            self.expect("(")
            outs = []
            while not self.at(")"):
                outs.append(self.expr())
                if self.at(","):
                    self.advance()
                elif not self.at(")"):
                    self.error(f"expected ',' or ')', found {self._show(self.tok)}")
            self.advance()
            outs = tuple(outs)
        guard = None
        if self.at("where"):
            self.advance()
            guard = self.guard()
        self.end_of_line()
        return Row(tuple(pats), outs, guard, start)

    def pattern(self):
        t = self.tok
        if t.kind == "ident":
            self.advance()
            if t.text == "_":
                return Wildcard(t.loc)
            return Name(t.text, t.loc)
        if self.at("bot"):
            self.advance()
            return BotLit(t.loc)
        if t.kind == "int" or self.at("-"):
            return IntLit(self.signed_int(), t.loc)
        self.error(f"expected a pattern, found {self._show(t)}")

    # -- guards -----------------------------------------------------------------

    def guard(self):
        left = self.guard_and()
        while self.at("or"):
            t = self.advance()
            left = BoolOp("or", left, self.guard_and(), t.loc)
        return left

    def guard_and(self):
        left = self.guard_not()
        while self.at("and"):
            t = self.advance()
            left = BoolOp("and", left, self.guard_not(), t.loc)
        return left

    def guard_not(self):
        if self.at("not"):
            t = self.advance()
            return Not(self.guard_not(), t.loc)
        if self.at("("):
            # either a parenthesized guard or a comparison starting with "("
            save, ndiag = self.i, len(self.diags)
            try:
                self.advance()
                g = self.guard()
                self.expect(")")
                if self.tok.kind in ("op", "kw") and self.tok.text in _RELOPS | {"+", "-", "*"}:
                    raise ParseError(Diagnostic("error", self.tok.loc, "E-SYNTAX", "backtrack"))
                return g
            except ParseError:
                self.i = save
                del self.diags[ndiag:]
        return self.comparison()

    def comparison(self):
        left = self.expr()
        t = self.tok
        if t.kind not in ("op", "kw") or t.text not in _RELOPS:
            self.error(f"expected a comparison operator, found {self._show(t)}")
        self.advance()
        return Compare(t.text, left, self.expr(), t.loc)

    # -- arithmetic -------------------------------------------------------------

    def expr(self):
        left = self.term()
        while self.at("+") or self.at("-"):
            t = self.advance()
            left = BinOp(t.text, left, self.term(), t.loc)
        return left

    def term(self):
        left = self.unary()
        while self.at("*"):
            t = self.advance()
            left = BinOp("*", left, self.unary(), t.loc)
        return left

    def unary(self):
        if self.at("-"):
            t = self.advance()
            inner = self.unary()
            if isinstance(inner, IntLit):
                return IntLit(-inner.value, t.loc)
            return Neg(inner, t.loc)
        return self.primary()

    def primary(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return IntLit(int(t.text), t.loc)
        if self.at("bot"):
            self.advance()
            return BotLit(t.loc)
        if self.at("("):
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "ident":
            self.advance()
            if self.at("(") and self.tok.loc.line == t.loc.line:
                self.advance()
                args = []
                while not self.at(")"):
                    args.append(self.expr())
                    if self.at(","):
                        self.advance()
                    elif not self.at(")"):
                        self.error(f"expected ',' or ')', found {self._show(self.tok)}")
                self.advance()
                return Call(t.text, tuple(args), t.loc)
            return Name(t.text, t.loc)
        self.error(f"expected an expression, found {self._show(t)}")

    # -- composition --------------------------------------------------------------

    def decl_let(self):
        start = self.advance().loc
        name = self.ident("name").text
        self.expect("=")
        e = self.comp()
        self.end_of_line()
        return LetDecl(name, e, start)

    def decl_feedback(self):
        start = self.advance().loc
        name = self.ident("name").text
        self.expect("=")
        e = self.comp()
        self.expect("on")
        links = [self.link()]
        while self.at(","):
            self.advance()
            links.append(self.link())
        self.end_of_line()
        return FeedbackDecl(name, e, tuple(links), start)

    def link(self) -> tuple:
        out = self.wire_ref()
        self.expect("->")
        return out, self.wire_ref()

    def wire_ref(self):
        if self.tok.kind == "int":
            return int(self.advance().text)
        return self.ident("wire name").text

    def comp(self):
        left = self.comp_choice()
        while self.at(";"):
            t = self.advance()
            left = Op(";", left, self.comp_choice(), t.loc)
        return left

    def comp_choice(self):
        left = self.comp_par()
        while self.at("\\/"):
            t = self.advance()
            left = Op("\\/", left, self.comp_par(), t.loc)
        return left

    def comp_par(self):
        left = self.comp_atom()
        while self.at("||"):
            t = self.advance()
            left = Op("||", left, self.comp_atom(), t.loc)
        return left

    def comp_atom(self):
        t = self.tok
        if self.at("("):
            self.advance()
            e = self.comp()
            self.expect(")")
            return e
        name = self.ident("component name")
        if name.text in _TERM_FUNCS and self.at("("):
            self.advance()
            args = [self.comp()]
            while self.at(","):
                self.advance()
                args.append(self.comp())
            self.expect(")")
            if len(args) != _TERM_FUNCS[name.text]:
                self.error(f"{name.text} takes {_TERM_FUNCS[name.text]} argument(s)",
                           "E-ARITY", name)
            return Apply(name.text, tuple(args), t.loc)
        return Ref(name.text, name.loc)


def parse_document(text: str):
    """Returns ``(Document, diagnostics)``."""
    tokens, diags = tokenize(text)
    p = _Parser(tokens)
    doc = p.document()
    return doc, diags + p.diags

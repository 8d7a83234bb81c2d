"""Syntax tree of model files.  Locations never take part in equality."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True)
class Loc:
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


NOWHERE = Loc(0, 0)


def _loc():
    return field(default=NOWHERE, compare=False, repr=False)


# -- expressions inside rows ---------------------------------------------------

@dataclass(frozen=True)
class Name:
    ident: str
    loc: Loc = _loc()


@dataclass(frozen=True)
class IntLit:
    value: int
    loc: Loc = _loc()


@dataclass(frozen=True)
class BotLit:
    loc: Loc = _loc()


@dataclass(frozen=True)
class Wildcard:
    loc: Loc = _loc()


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    loc: Loc = _loc()


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    loc: Loc = _loc()


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple
    loc: Loc = _loc()


Expr = Union[Name, IntLit, BotLit, BinOp, Neg, Call]
Pattern = Union[Name, IntLit, BotLit, Wildcard, Neg]


@dataclass(frozen=True)
class Compare:
    op: str
    left: Expr
    right: Expr
    loc: Loc = _loc()


@dataclass(frozen=True)
class BoolOp:
    op: str  # "and" / "or"
    left: "Guard"
    right: "Guard"
    loc: Loc = _loc()


@dataclass(frozen=True)
class Not:
    operand: "Guard"
    loc: Loc = _loc()


Guard = Union[Compare, BoolOp, Not]


@dataclass(frozen=True)
class Row:
    patterns: tuple
    outputs: tuple | None  # None means fail
    guard: Guard | None = None
    loc: Loc = _loc()


# -- declarations --------------------------------------------------------------

@dataclass(frozen=True)
class Wire:
    name: str
    domain: str
    loc: Loc = _loc()


@dataclass(frozen=True)
class EnumDomain:
    name: str
    atoms: tuple
    lifted: bool = False
    loc: Loc = _loc()


@dataclass(frozen=True)
class IntDomain:
    name: str
    lo: int
    hi: int
    arith: str
    lifted: bool = False
    loc: Loc = _loc()


@dataclass(frozen=True)
class RelDecl:
    kind: str  # "rfu" / "spec"
    name: str
    inputs: tuple
    outputs: tuple
    rows: tuple
    loc: Loc = _loc()


@dataclass(frozen=True)
class BuiltinDecl:
    name: str
    builtin: str
    loc: Loc = _loc()


@dataclass(frozen=True)
class StsDecl:
    name: str
    state: tuple
    inputs: tuple
    outputs: tuple
    init: tuple
    rows: tuple
    loc: Loc = _loc()


# composition expressions

@dataclass(frozen=True)
class Ref:
    name: str
    loc: Loc = _loc()


@dataclass(frozen=True)
class Op:
    op: str  # ";" "\\/" "||"
    left: "Term"
    right: "Term"
    loc: Loc = _loc()


@dataclass(frozen=True)
class Apply:
    func: str  # "cross" "wp" "fb" "hide"
    args: tuple
    loc: Loc = _loc()


Term = Union[Ref, Op, Apply]


@dataclass(frozen=True)
class LetDecl:
    name: str
    expr: Term
    loc: Loc = _loc()


@dataclass(frozen=True)
class FeedbackDecl:
    name: str
    expr: Term
    links: tuple  # ((out_wire, in_wire), ...); wires are str names or int indices
    loc: Loc = _loc()


Decl = Union[EnumDomain, IntDomain, RelDecl, BuiltinDecl, StsDecl, LetDecl, FeedbackDecl]


@dataclass(frozen=True)
class Document:
    decls: tuple

"""Canonical text for a document; parsing the output yields an equal document."""

from __future__ import annotations

from .syntax import (Apply, BinOp, BoolOp, BotLit, BuiltinDecl, Call, Compare, Document,
                     EnumDomain, FeedbackDecl, IntDomain, IntLit, LetDecl, Name, Neg, Not,
                     Op, Ref, RelDecl, StsDecl, Wildcard)

_PREC = {"+": 1, "-": 1, "*": 2}
_COMP_PREC = {";": 0, "\\/": 1, "||": 2}


def print_expr(e, prec: int = 0) -> str:
    if isinstance(e, IntLit):
        s = str(e.value)
        return f"({s})" if e.value < 0 and prec > 0 else s
    if isinstance(e, BotLit):
        return "bot"
    if isinstance(e, Wildcard):
        return "_"
    if isinstance(e, Name):
        return e.ident
    if isinstance(e, Neg):
        return "-" + print_expr(e.operand, 3)
    if isinstance(e, Call):
        return f"{e.func}(" + ", ".join(print_expr(a) for a in e.args) + ")"
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        s = f"{print_expr(e.left, p)} {e.op} {print_expr(e.right, p + 1)}"
        return f"({s})" if p < prec else s
    raise TypeError(f"not an expression: {e!r}")


def print_guard(g, prec: int = 0) -> str:
    if isinstance(g, Compare):
        return f"{print_expr(g.left)} {g.op} {print_expr(g.right)}"
    if isinstance(g, Not):
        return "not " + print_guard(g.operand, 3)
    if isinstance(g, BoolOp):
        p = 1 if g.op == "or" else 2
        s = f"{print_guard(g.left, p)} {g.op} {print_guard(g.right, p + 1)}"
        return f"({s})" if p < prec else s
    raise TypeError(f"not a guard: {g!r}")


def print_term(t, prec: int = 0) -> str:
    if isinstance(t, Ref):
        return t.name
    if isinstance(t, Apply):
        return f"{t.func}(" + ", ".join(print_term(a) for a in t.args) + ")"
    if isinstance(t, Op):
        p = _COMP_PREC[t.op]
        s = f"{print_term(t.left, p)} {t.op} {print_term(t.right, p + 1)}"
        return f"({s})" if p < prec else s
    raise TypeError(f"not a composition term: {t!r}")


def _wires(ws) -> str:
    return "(" + ", ".join(f"{w.name}: {w.domain}" for w in ws) + ")"


def _row(r) -> str:
    pats = "(" + ", ".join(print_expr(p) for p in r.patterns) + ")"
    outs = "fail" if r.outputs is None else "(" + ", ".join(print_expr(e) for e in r.outputs) + ")"
    s = f"  {pats} -> {outs}"
    if r.guard is not None:
        s += " where " + print_guard(r.guard)
    return s


def _lit(v) -> str:
    return str(v)


def print_decl(d) -> str:
    if isinstance(d, EnumDomain):
        s = f"domain {d.name} = {{" + ", ".join(_lit(a) for a in d.atoms) + "}"
        return s + (" lifted" if d.lifted else "")
    if isinstance(d, IntDomain):
        s = f"domain {d.name} = int {d.lo}..{d.hi} {d.arith}"
        return s + (" lifted" if d.lifted else "")
    if isinstance(d, BuiltinDecl):
        return f"rfu {d.name} = builtin {d.builtin}"
    if isinstance(d, RelDecl):
        lines = [f"{d.kind} {d.name} {_wires(d.inputs)} -> {_wires(d.outputs)}"]
        lines += [_row(r) for r in d.rows]
        return "\n".join(lines + ["end"])
    if isinstance(d, StsDecl):
        lines = [f"sts {d.name} state {_wires(d.state)} input {_wires(d.inputs)} "
                 f"output {_wires(d.outputs)}"]
        lines.append("  init " + ", ".join(
            "(" + ", ".join(print_expr(v) for v in t) + ")" for t in d.init))
        lines += [_row(r) for r in d.rows]
        return "\n".join(lines + ["end"])
    if isinstance(d, LetDecl):
        return f"let {d.name} = {print_term(d.expr)}"
    if isinstance(d, FeedbackDecl):
        links = ", ".join(f"{o} -> {i}" for o, i in d.links)
        return f"feedback {d.name} = {print_term(d.expr)} on {links}"
    raise TypeError(f"not a declaration: {d!r}")


def print_document(doc: Document) -> str:
    return "\n".join(print_decl(d) for d in doc.decls) + "\n"

"""Turn a parsed document into domains, relations, specs and transition systems."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..domains import (BOT, FAIL, DomainError, FeedkitError, Signature, WireDomain,
                       bool_domain)
from ..feedback import FeedbackShape, fb_hide, inst_feedback
from ..rfu import Rfu, compose_serial, cross, demonic_choice, parallel, wp
from ..sts import Sts
from ..transformers import Spec, demonic_spec, product_spec, seq_spec
from .diagnostics import Diagnostic, ModelError
from .parser import parse_document
from .syntax import (Apply, BinOp, BoolOp, BotLit, BuiltinDecl, Call, Compare, Document,
                     EnumDomain, FeedbackDecl, IntDomain, IntLit, LetDecl, Loc, Name, Neg,
                     Not, Ref, RelDecl, StsDecl, Wildcard)

__all__ = ["Model", "check_model", "parse_model", "and_bot_value", "or_bot_value",
           "not_bot_value"]


class _Err(Exception):
    def __init__(self, loc: Loc, code: str, msg: str):
        super().__init__(msg)
        self.diag = Diagnostic("error", loc, code, msg)


# three-valued connectives on the atoms "false" / "true"

def and_bot_value(a, b):
    if a == "false" or b == "false":
        return "false"
    if a is BOT or b is BOT:
        return BOT
    return "true"


def or_bot_value(a, b):
    if a == "true" or b == "true":
        return "true"
    if a is BOT or b is BOT:
        return BOT
    return "false"


def not_bot_value(a):
    if a is BOT:
        return BOT
    return "true" if a == "false" else "false"


_FUNCS = {"and_bot": (2, and_bot_value), "or_bot": (2, or_bot_value),
          "not_bot": (1, not_bot_value)}


@dataclass
class Model:
    document: Document
    domains: dict = field(default_factory=dict)
    components: dict = field(default_factory=dict)
    feedbacks: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)

    def get(self, name: str):
        if name in self.components:
            return self.components[name]
        if name in self.feedbacks:
            return inst_feedback(self.feedbacks[name])
        raise KeyError(name)

    def shape(self, name: str) -> FeedbackShape:
        """The declared feedback, or by default the first output fed to the first input."""
        if name in self.feedbacks:
            return self.feedbacks[name]
        r = self.components.get(name)
        if not isinstance(r, Rfu):
            raise KeyError(name)
        return FeedbackShape(r, (0,), (0,))

    def names(self) -> list:
        return list(self.components) + list(self.feedbacks)

    def __eq__(self, other):
        if not isinstance(other, Model):
            return NotImplemented
        return (self.domains == other.domains and self.components == other.components
                and {k: (v.rfu, v.fb_in, v.fb_out) for k, v in self.feedbacks.items()}
                == {k: (v.rfu, v.fb_in, v.fb_out) for k, v in other.feedbacks.items()})


# -- row evaluation ------------------------------------------------------------

class _Rows:
    """Compiled rows of one relation block."""

    def __init__(self, model: Model, in_sig: Signature, out_sig: Signature, rows):
        self.model = model
        self.in_sig, self.out_sig = in_sig, out_sig
        self.rows = rows
        self.atoms = set()
        for d in model.domains.values():
            self.atoms.update(a for a in d.atoms if isinstance(a, str))
        self.plans = [self._plan(r) for r in rows]

    def _plan(self, row):
        if len(row.patterns) != len(self.in_sig):
            raise _Err(row.loc, "E-ARITY",
                       f"row has {len(row.patterns)} patterns, signature has {len(self.in_sig)} inputs")
        if row.outputs is not None and len(row.outputs) != len(self.out_sig):
            raise _Err(row.loc, "E-ARITY",
                       f"row has {len(row.outputs)} outputs, signature has {len(self.out_sig)}")
        bound = []
        for p, d in zip(row.patterns, self.in_sig.wires):
            if isinstance(p, Name) and not (p.ident in d.atoms) and p.ident not in bound:
                bound.append(p.ident)
            if isinstance(p, IntLit) and not d.contains(p.value):
                raise _Err(p.loc, "E-RANGE", f"literal {p.value} is not in domain {d.name!r}")
        used = []
        for e in (row.outputs or ()):
            _names(e, used)
        if row.guard is not None:
            _names(row.guard, used)
        fresh = []
        for n in used:
            if n in bound or n in fresh or n in self.atoms:
                continue
            if row.outputs is None:
                raise _Err(row.loc, "E-UNBOUND", f"unbound name {n!r} in fail row")
            wires = [i for i, e in enumerate(row.outputs) if isinstance(e, Name) and e.ident == n]
            if not wires:
                raise _Err(row.loc, "E-FRESH",
                           f"fresh name {n!r} must appear alone in some output position")
            fresh.append(n)
        fresh_dom = []
        for n in fresh:
            i = next(i for i, e in enumerate(row.outputs) if isinstance(e, Name) and e.ident == n)
            fresh_dom.append(self.out_sig.wires[i].carrier)
        for e in (row.outputs or ()):
            _check_calls(e)
        if row.guard is not None:
            _check_calls(row.guard)
        return row, fresh, fresh_dom

    def match(self, patterns, x):
        env = {}
        for p, v, d in zip(patterns, x, self.in_sig.wires):
            if isinstance(p, Wildcard):
                continue
            if isinstance(p, BotLit):
                if v is not BOT:
                    return None
            elif isinstance(p, IntLit):
                if v != p.value or v is BOT:
                    return None
            elif isinstance(p, Name):
                if p.ident in d.atoms:
                    if v != p.ident:
                        return None
                elif p.ident in env:
                    if env[p.ident] != v:
                        return None
                else:
                    env[p.ident] = v
        return env

    def outcomes(self, x) -> set:
        out = set()
        for row, fresh, fresh_dom in self.plans:
            env = self.match(row.patterns, x)
            if env is None:
                continue
            for vals in itertools.product(*fresh_dom):
                e2 = dict(env)
                e2.update(zip(fresh, vals))
                if row.guard is not None and not self.guard(row.guard, e2):
                    continue
                if row.outputs is None:
                    out.add(FAIL)
                    continue
                y = []
                for e, d in zip(row.outputs, self.out_sig.wires):
                    v = self.coerce(self.value(e, e2), d, e)
                    if v is FAIL:
                        y = FAIL
                        break
                    y.append(v)
                out.add(FAIL if y is FAIL else tuple(y))
        return out

    def value(self, e, env):
        if isinstance(e, IntLit):
            return e.value
        if isinstance(e, BotLit):
            return BOT
        if isinstance(e, Name):
            if e.ident in env:
                return env[e.ident]
            if e.ident in self.atoms:
                return e.ident
            raise _Err(e.loc, "E-UNBOUND", f"unbound name {e.ident!r}")
        if isinstance(e, Neg):
            v = self.value(e.operand, env)
            if v is BOT:
                return BOT
            _need_int(v, e)
            return -v
        if isinstance(e, BinOp):
            a, b = self.value(e.left, env), self.value(e.right, env)
            if a is BOT or b is BOT:
                return BOT
            _need_int(a, e)
            _need_int(b, e)
            return {"+": a + b, "-": a - b, "*": a * b}[e.op]
        if isinstance(e, Call):
            _, fn = _FUNCS[e.func]
            return fn(*(self.value(a, env) for a in e.args))
        raise _Err(getattr(e, "loc", Loc(0, 0)), "E-EXPR", "unsupported expression")

    def guard(self, g, env) -> bool:
        if isinstance(g, BoolOp):
            if g.op == "and":
                return self.guard(g.left, env) and self.guard(g.right, env)
            return self.guard(g.left, env) or self.guard(g.right, env)
        if isinstance(g, Not):
            return not self.guard(g.operand, env)
        a, b = self.value(g.left, env), self.value(g.right, env)
        op = g.op
        if op == "=":
            return a == b and (a is BOT) == (b is BOT)
        if op == "!=":
            return not (a == b and (a is BOT) == (b is BOT))
        if op == "<=":
            return a is BOT or a == b
        if op == "<":
            return a is BOT and b is not BOT
        if a is BOT or b is BOT:
            return False
        _need_int(a, g)
        _need_int(b, g)
        return {"le": a <= b, "lt": a < b, "ge": a >= b, "gt": a > b}[op]

    @staticmethod
    def coerce(v, d: WireDomain, e):
        if v is BOT:
            if not d.lifted:
                raise _Err(e.loc, "E-BOT", f"unknown value for unlifted wire of domain {d.name!r}")
            return BOT
        if d.contains(v):
            return v
        if isinstance(v, int) and d.arith == "mod":
            lo, n = d.atoms[0], len(d.atoms)
            return lo + (v - lo) % n
        if isinstance(v, int) and d.arith == "saturate-fail":
            return FAIL
        raise _Err(e.loc, "E-RANGE", f"value {v!r} is not in domain {d.name!r}")


def _need_int(v, node):
    if not isinstance(v, int):
        raise _Err(node.loc, "E-TYPE", f"arithmetic on non-integer value {v!r}")


def _names(node, acc: list):
    if isinstance(node, Name):
        if node.ident not in acc:
            acc.append(node.ident)
    elif isinstance(node, (BinOp, Compare, BoolOp)):
        _names(node.left, acc)
        _names(node.right, acc)
    elif isinstance(node, (Neg, Not)):
        _names(node.operand, acc)
    elif isinstance(node, Call):
        for a in node.args:
            _names(a, acc)


def _check_calls(node):
    if isinstance(node, Call):
        if node.func not in _FUNCS:
            raise _Err(node.loc, "E-FUNC", f"unknown function {node.func!r}")
        if len(node.args) != _FUNCS[node.func][0]:
            raise _Err(node.loc, "E-ARITY", f"{node.func} takes {_FUNCS[node.func][0]} argument(s)")
        for a in node.args:
            _check_calls(a)
    elif isinstance(node, (BinOp, Compare, BoolOp)):
        _check_calls(node.left)
        _check_calls(node.right)
    elif isinstance(node, (Neg, Not)):
        _check_calls(node.operand)


# -- declarations ----------------------------------------------------------------

class _Builder:
    def __init__(self, doc: Document):
        self.m = Model(doc)

    def run(self):
        for d in self.m.document.decls:
            try:
                self.decl(d)
            except _Err as e:
                self.m.diagnostics.append(e.diag)
            except FeedkitError as e:
                self.m.diagnostics.append(Diagnostic("error", d.loc, "E-MODEL", str(e)))
        return self.m

    def define(self, name, loc, table, value):
        m = self.m
        if name in m.domains or name in m.components or name in m.feedbacks:
            raise _Err(loc, "E-DUP", f"name {name!r} is already defined")
        table[name] = value

    def sig(self, wires) -> Signature:
        doms = []
        for w in wires:
            if w.domain not in self.m.domains:
                raise _Err(w.loc, "E-DOMAIN", f"unknown domain {w.domain!r}")
            doms.append(self.m.domains[w.domain])
        names = tuple(w.name for w in wires)
        return Signature(tuple(doms), names)

    def decl(self, d):
        m = self.m
        if isinstance(d, EnumDomain):
            try:
                dom = WireDomain(d.name, d.atoms, d.lifted)
            except DomainError as e:
                raise _Err(d.loc, "E-DOMAIN", str(e))
            self.define(d.name, d.loc, m.domains, dom)
        elif isinstance(d, IntDomain):
            if d.hi < d.lo:
                raise _Err(d.loc, "E-DOMAIN", f"empty integer range {d.lo}..{d.hi}")
            try:
                dom = WireDomain(d.name, tuple(range(d.lo, d.hi + 1)), d.lifted, d.arith)
            except DomainError as e:
                raise _Err(d.loc, "E-DOMAIN", str(e))
            self.define(d.name, d.loc, m.domains, dom)
        elif isinstance(d, RelDecl):
            in_sig, out_sig = self.sig(d.inputs), self.sig(d.outputs)
            rows = _Rows(m, in_sig, out_sig, d.rows)
            table = {x: rows.outcomes(x) for x in in_sig.iter_points()}
            if d.kind == "rfu":
                value = Rfu.from_rows(in_sig, out_sig, table)
            else:
                legal = [x for x, ys in table.items() if FAIL not in ys]
                rel = [(x, y) for x, ys in table.items() if FAIL not in ys for y in ys]
                value = Spec(in_sig, out_sig, legal, rel)
            self.define(d.name, d.loc, m.components, value)
        elif isinstance(d, BuiltinDecl):
            self.define(d.name, d.loc, m.components, self.builtin(d))
        elif isinstance(d, StsDecl):
            st, xi, yo = self.sig(d.state), self.sig(d.inputs), self.sig(d.outputs)
            init = []
            for tup in d.init:
                if len(tup) != len(st):
                    raise _Err(d.loc, "E-ARITY", "init tuple does not match the state signature")
                vals = []
                for lit, w in zip(tup, st.wires):
                    v = BOT if isinstance(lit, BotLit) else (lit.value if isinstance(lit, IntLit) else lit.ident)
                    if not w.contains(v):
                        raise _Err(lit.loc, "E-RANGE", f"init value {v!r} is not in domain {w.name!r}")
                    vals.append(v)
                init.append(tuple(vals))
            rows = _Rows(m, st + xi, st + yo, d.rows)
            legal, trans = [], []
            for ux in (st + xi).iter_points():
                ys = rows.outcomes(ux)
                if FAIL in ys:
                    continue
                legal.append(ux)
                trans += [(ux, uy) for uy in ys]
            self.define(d.name, d.loc, m.components, Sts(st, xi, yo, init, legal, trans))
        elif isinstance(d, LetDecl):
            self.define(d.name, d.loc, m.components, self.term(d.expr))
        elif isinstance(d, FeedbackDecl):
            r = self.term(d.expr)
            if not isinstance(r, Rfu):
                raise _Err(d.loc, "E-TYPE", "feedback needs a relation with fail and unknown")
            fb_in, fb_out = [], []
            for out_w, in_w in d.links:
                fb_out.append(self.wire_index(r.out_sig, out_w, d.loc))
                fb_in.append(self.wire_index(r.in_sig, in_w, d.loc))
            try:
                shape = FeedbackShape(r, tuple(fb_in), tuple(fb_out))
            except FeedkitError as e:
                raise _Err(d.loc, "E-SHAPE", str(e))
            self.define(d.name, d.loc, m.feedbacks, shape)

    @staticmethod
    def wire_index(sig: Signature, w, loc) -> int:
        if isinstance(w, int):
            if not 0 <= w < len(sig):
                raise _Err(loc, "E-WIRE", f"wire index {w} out of range")
            return w
        if sig.names is None or w not in sig.names:
            raise _Err(loc, "E-WIRE", f"no wire named {w!r}")
        return sig.names.index(w)

    def builtin(self, d: BuiltinDecl):
        if d.builtin != "and_bot":
            raise _Err(d.loc, "E-BUILTIN", f"unknown builtin {d.builtin!r}")
        b = self.m.domains.get("bool")
        if b is None:
            b = bool_domain()
        elif not (b.lifted and set(b.atoms) == {"false", "true"}):
            raise _Err(d.loc, "E-BUILTIN", "and_bot needs domain 'bool' = {false, true} lifted")
        in_sig = Signature((b, b), ("u", "x"))
        out_sig = Signature((b, b), ("v", "y"))
        return Rfu.from_function(in_sig, out_sig,
                                 lambda ux: [(and_bot_value(*ux),) * 2])

    def term(self, t):
        m = self.m
        if isinstance(t, Ref):
            if t.name in m.components:
                return m.components[t.name]
            if t.name in m.feedbacks:
                return inst_feedback(m.feedbacks[t.name])
            raise _Err(t.loc, "E-UNDEF", f"undefined component {t.name!r}")
        if isinstance(t, Apply):
            if t.func in ("fb", "hide"):
                (arg,) = t.args
                if isinstance(arg, Ref) and arg.name in m.feedbacks:
                    shape = m.feedbacks[arg.name]
                else:
                    r = self.term(arg)
                    if not isinstance(r, Rfu):
                        raise _Err(t.loc, "E-TYPE", f"{t.func} needs a relation")
                    shape = FeedbackShape(r, (0,), (0,))
                return inst_feedback(shape) if t.func == "fb" else fb_hide(shape)
            args = [self.term(a) for a in t.args]
            if t.func == "wp":
                (r,) = args
                if isinstance(r, Spec):
                    return r
                if not isinstance(r, Rfu):
                    raise _Err(t.loc, "E-TYPE", "wp needs a relation")
                return wp(r)
            a, b = args
            if not (isinstance(a, Rfu) and isinstance(b, Rfu)):
                raise _Err(t.loc, "E-TYPE", "cross needs two relations")
            return cross(a, b)
        a, b = self.term(t.left), self.term(t.right)
        if isinstance(a, Sts) or isinstance(b, Sts):
            raise _Err(t.loc, "E-TYPE", "transition systems do not compose here")
        try:
            if isinstance(a, Rfu) and isinstance(b, Rfu):
                fn = {";": compose_serial, "\\/": demonic_choice, "||": parallel}[t.op]
                return fn(a, b)
            a = wp(a) if isinstance(a, Rfu) else a
            b = wp(b) if isinstance(b, Rfu) else b
            fn = {";": seq_spec, "\\/": demonic_spec, "||": product_spec}[t.op]
            return fn(a, b)
        except FeedkitError as e:
            raise _Err(t.loc, "E-TYPE", str(e))


def check_model(text: str):
    """Parse and build, never raising: returns ``(model or None, diagnostics)``."""
    try:
        doc, diags = parse_document(text)
        if diags:
            return None, diags
        model = _Builder(doc).run()
    except RecursionError:
        return None, [Diagnostic("error", Loc(1, 1), "E-DEPTH", "nesting too deep")]
    except Exception as e:  # a bug, but report it as a diagnostic
        return None, [Diagnostic("error", Loc(1, 1), "E-INTERNAL", f"{type(e).__name__}: {e}")]
    return (None if model.diagnostics else model), list(model.diagnostics)


def parse_model(text: str) -> Model:
    model, diags = check_model(text)
    if diags:
        raise ModelError(diags)
    return model

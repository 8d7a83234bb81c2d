"""Instantaneous feedback of relations with fail and unknown.

A :class:`FeedbackShape` names which input wires receive which output
wires.  Internally the relation is rewired so that the feedback bundle
leads on both sides, giving the layout ``(A x B) -> (A x C)``; results of
:func:`inst_feedback` have type ``B -> (A x C)`` and :func:`fb_hide` results
``B -> C``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .domains import (BOT, FAIL, FeedkitError, Signature, chain_bound, leq, lt,
                      maximal)
from .rfu import Rfu, compose_serial, rewire, star_bounded

__all__ = [
    "DoubleShape",
    "FeedbackShape",
    "FeedbackStages",
    "FeedbackTree",
    "NotFunctionalError",
    "NotMonotoneError",
    "ShapeError",
    "TreeNode",
    "det_fixpoint",
    "fb_hide",
    "feedback_stages",
    "feedback_tree",
    "inst_feedback",
    "seq_feedback",
    "side_conditions",
]


class ShapeError(FeedkitError):
    pass


class NotFunctionalError(FeedkitError):
    pass


class NotMonotoneError(FeedkitError):
    pass


@dataclass(frozen=True)
class FeedbackShape:
    """Feed output wires ``fb_out[i]`` back into input wires ``fb_in[i]``."""

    rfu: Rfu
    fb_in: tuple = (0,)
    fb_out: tuple = (0,)

    def __post_init__(self):
        fb_in, fb_out = tuple(self.fb_in), tuple(self.fb_out)
        object.__setattr__(self, "fb_in", fb_in)
        object.__setattr__(self, "fb_out", fb_out)
        r = self.rfu
        if len(fb_in) != len(fb_out):
            raise ShapeError("feedback bundles have different widths")
        for idx, sig, side in ((fb_in, r.in_sig, "input"), (fb_out, r.out_sig, "output")):
            if len(set(idx)) != len(idx) or any(not 0 <= i < len(sig) for i in idx):
                raise ShapeError(f"bad {side} feedback indices {idx}")
        if r.in_sig.select(fb_in) != r.out_sig.select(fb_out):
            raise ShapeError("feedback wires carry different domains")
        if not r.in_sig.select(fb_in).all_lifted:
            raise ShapeError("feedback wires must be lifted")

    @classmethod
    def leading(cls, rfu: Rfu, width: int = 1) -> "FeedbackShape":
        """Feedback on the first ``width`` wires of both sides."""
        idx = tuple(range(width))
        return cls(rfu, idx, idx)

    @property
    def width(self) -> int:
        return len(self.fb_in)

    @cached_property
    def in_order(self) -> tuple:
        rest = [i for i in range(len(self.rfu.in_sig)) if i not in self.fb_in]
        return self.fb_in + tuple(rest)

    @cached_property
    def out_order(self) -> tuple:
        rest = [i for i in range(len(self.rfu.out_sig)) if i not in self.fb_out]
        return self.fb_out + tuple(rest)

    @cached_property
    def canonical(self) -> Rfu:
        """The relation rewired to ``(A x B) -> (A x C)``."""
        r = self.rfu
        if self.in_order == tuple(range(len(r.in_sig))) and \
                self.out_order == tuple(range(len(r.out_sig))):
            return r
        inv = [0] * len(self.in_order)
        for pos, i in enumerate(self.in_order):
            inv[i] = pos
        to_orig = rewire(r.in_sig.select(self.in_order), inv)
        return compose_serial(compose_serial(to_orig, r), rewire(r.out_sig, self.out_order))

    @property
    def a_sig(self) -> Signature:
        return self.rfu.in_sig.select(self.fb_in)

    @property
    def b_sig(self) -> Signature:
        return self.rfu.in_sig.select(self.in_order[self.width:])

    @property
    def c_sig(self) -> Signature:
        return self.rfu.out_sig.select(self.out_order[self.width:])


class FeedbackStages(NamedTuple):
    begin: Rfu
    a: Rfu
    b: Rfu
    end: Rfu


def feedback_stages(shape: FeedbackShape) -> FeedbackStages:
    r = shape.canonical
    a_sig, b_sig, c_sig = shape.a_sig, shape.b_sig, shape.c_sig
    w = shape.width
    bot = (BOT,) * w
    ab, ac = a_sig + b_sig, a_sig + c_sig
    fail_row = frozenset([FAIL])

    begin = Rfu(b_sig, ab, {x: frozenset([bot + x]) for x in b_sig.iter_points()})
    a_rows, b_rows = {}, {}
    for ux in ab.iter_points():
        ys = r.outputs(ux)
        if FAIL in ys:
            a_rows[ux] = b_rows[ux] = fail_row
            continue
        u, x = ux[:w], ux[w:]
        a_rows[ux] = frozenset(vy[:w] + x for vy in ys if lt(u, vy[:w]))
        b_rows[ux] = frozenset(vy for vy in ys if vy[:w] == u)
    end = Rfu(ac, c_sig, {
        uy: (frozenset([uy[w:]]) if maximal(uy[:w]) else fail_row)
        for uy in ac.iter_points()
    })
    return FeedbackStages(begin, Rfu(ab, ab, a_rows), Rfu(ab, ac, b_rows), end)


def inst_feedback(shape: FeedbackShape) -> Rfu:
    st = feedback_stages(shape)
    k = chain_bound(shape.a_sig)
    return compose_serial(compose_serial(st.begin, star_bounded(st.a, k)), st.b)


def fb_hide(shape: FeedbackShape) -> Rfu:
    return compose_serial(inst_feedback(shape), feedback_stages(shape).end)


# -- tree construction ------------------------------------------------------

@dataclass(frozen=True)
class TreeNode:
    """``kind`` is ``"pending"`` for ``(u, ?)``, ``"output"`` for ``(u, y)``
    and ``"fail"`` for the fail leaf (which carries no ``u``)."""

    kind: str
    u: tuple | None = None
    y: tuple | None = None
    children: tuple = field(default=(), compare=False, repr=False)

    @property
    def label(self) -> tuple:
        return (self.kind, self.u, self.y)


@dataclass(frozen=True)
class FeedbackTree:
    root: TreeNode
    x: tuple
    a_sig: Signature
    c_sig: Signature

    def nodes(self) -> list:
        """Distinct nodes reachable from the root, parents before children."""
        seen, order, queue = set(), [], [self.root]
        while queue:
            n = queue.pop(0)
            if n.label in seen:
                continue
            seen.add(n.label)
            order.append(n)
            queue.extend(n.children)
        return order

    def edges(self) -> list:
        return [(n, c) for n in self.nodes() for c in n.children]

    def leaves(self) -> list:
        return [n for n in self.nodes() if not n.children]

    def outcomes(self) -> set:
        """The row of the feedback relation at ``x`` read off the leaves."""
        out = set()
        for n in self.leaves():
            if n.kind == "fail":
                out.add(FAIL)
            elif n.kind == "output":
                out.add(n.u + n.y)
        return out

    def depth(self) -> int:
        def d(n):
            return 1 + max((d(c) for c in n.children), default=0)
        return d(self.root)


def feedback_tree(shape: FeedbackShape, x) -> FeedbackTree:
    if x is FAIL:
        raise ValueError("the tree is built for proper inputs only")
    shape.b_sig.check(x)
    x = tuple(x)
    r = shape.canonical
    w = shape.width
    c_sig = shape.c_sig
    memo: dict = {}

    def build(u) -> TreeNode:
        key = ("pending", u, None)
        if key in memo:
            return memo[key]
        ys = r.outputs(u + x)
        kids = []
        if FAIL in ys:
            kids.append(_leaf(memo, "fail", None, None))
        vs = {vy[:w] for vy in ys if vy is not FAIL and lt(u, vy[:w])}
        for v in shape.a_sig.sorted(vs):
            kids.append(build(v))
        outs = [vy[w:] for vy in ys if vy is not FAIL and vy[:w] == u]
        for y in c_sig.sorted(outs):
            kids.append(_leaf(memo, "output", u, y))
        node = TreeNode("pending", u, None, tuple(kids))
        memo[key] = node
        return node

    return FeedbackTree(build((BOT,) * w), x, shape.a_sig, c_sig)


def _leaf(memo, kind, u, y) -> TreeNode:
    key = (kind, u, y)
    if key not in memo:
        memo[key] = TreeNode(kind, u, y)
    return memo[key]


# -- deterministic specialization ------------------------------------------

def det_fixpoint(shape: FeedbackShape, x) -> tuple:
    """Least fixpoint ``u`` of ``f.x`` and ``y = g.x.u`` for a functional relation."""
    r = shape.canonical
    w = shape.width
    shape.b_sig.check(x)
    x = tuple(x)
    table = {}
    for ux in r.in_sig.iter_points():
        ys = r.outputs(ux)
        if len(ys) != 1 or FAIL in ys:
            raise NotFunctionalError(f"relation is not a total function at {ux!r}")
        (table[ux],) = ys
    us = shape.a_sig.points()
    f = {u: table[u + x][:w] for u in us}
    for u, u2 in itertools.product(us, us):
        if leq(u, u2) and not leq(f[u], f[u2]):
            raise NotMonotoneError(f"f.x is not monotone between {u!r} and {u2!r}")
    u = (BOT,) * w
    for _ in range(chain_bound(shape.a_sig) + 1):
        nxt = f[u]
        if nxt == u:
            break
        u = nxt
    return u, table[u + x][w:]


# -- associativity -----------------------------------------------------------

@dataclass(frozen=True)
class DoubleShape:
    """A relation ``((A x B) x C) -> ((A x B) x D)`` in flat layout.

    Inputs are ``u`` (``a_width`` wires), ``s`` (``b_width`` wires), then
    ``x``; outputs are ``v``, ``t``, then ``y``.
    """

    rfu: Rfu
    a_width: int
    b_width: int

    def __post_init__(self):
        width = self.a_width + self.b_width
        FeedbackShape.leading(self.rfu, width)
        if self.a_width < 1 or self.b_width < 1:
            raise ShapeError("both feedback bundles need at least one wire")

    @property
    def joint(self) -> FeedbackShape:
        return FeedbackShape.leading(self.rfu, self.a_width + self.b_width)


def seq_feedback(ds: DoubleShape) -> Rfu:
    """Feedback on ``u``-``v`` first, then on ``s``-``t``."""
    na, nb = ds.a_width, ds.b_width
    inner = inst_feedback(FeedbackShape.leading(ds.rfu, na))
    # inner: (s, x) -> (v, t, y); swap v and t so that t leads
    n_out = len(inner.out_sig)
    swap = list(range(na, na + nb)) + list(range(na)) + list(range(na + nb, n_out))
    outer = compose_serial(inner, rewire(inner.out_sig, swap))
    fed = inst_feedback(FeedbackShape.leading(outer, nb))
    # fed: x -> (t, v, y); restore (v, t, y)
    back = list(range(nb, nb + na)) + list(range(nb)) + list(range(na + nb, n_out))
    return compose_serial(fed, rewire(fed.out_sig, back))


def side_conditions(ds: DoubleShape) -> dict:
    r = ds.rfu
    na, nb = ds.a_width, ds.b_width
    w = na + nb
    sig = r.in_sig
    uv = sig.select(range(w))
    rest = sig.select(range(w, len(sig)))
    us = uv.points()
    xs = rest.points()

    def proper(ux):
        ys = r.outputs(ux)
        return frozenset() if FAIL in ys else ys

    mono = all(
        proper(u2 + x) <= proper(u + x)
        for u in us for u2 in us if leq(u, u2) for x in xs
    )
    mono_fail = all(
        r.fails(u2 + x)
        for u in us for u2 in us if leq(u, u2) for x in xs if r.fails(u + x)
    )
    bot_a, bot_b = (BOT,) * na, (BOT,) * nb

    def indep1_at(z):
        for vt_c in proper(bot_a + bot_b + z):
            p, q = vt_c[:na], vt_c[na:w]
            left = any(o[:w] == p + q for o in proper(p + bot_b + z))
            right = any(o[:w] == p + q for o in proper(bot_a + q + z))
            if not (left and right):
                return False
        return True

    def indep2_at(z):
        outs = proper(bot_a + bot_b + z)
        heads = {o[:w] for o in outs}
        for h in heads:
            for h2 in heads:
                if h[:na] + h2[na:] not in heads:
                    return False
        return True

    return {
        "mono": mono,
        "mono_fail": mono_fail,
        "indep1": all(indep1_at(z) for z in xs),
        "indep2": all(indep2_at(z) for z in xs),
    }

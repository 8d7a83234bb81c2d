"""Slow, literal reference implementations used only for cross-checking.

Nothing here calls the relation algebra, the feedback construction or the
transition-system explorer; the only shared code is the value layer in
:mod:`feedkit.domains`.  Relations are read through their ``in_sig``,
``out_sig`` and ``outputs(x)`` attributes, and results come back as plain
dictionaries ``{proper input: frozenset of outcomes}`` in normalized form
(a failing row is exactly ``{FAIL}``, empty rows are omitted).
"""

from __future__ import annotations

import itertools

import numpy as np

from .domains import BOT, FAIL, FeedkitError, leq, lt, maximal

__all__ = [
    "OracleBudgetError",
    "oracle_cross_identities",
    "oracle_delay",
    "oracle_fb_hide",
    "oracle_kleene",
    "oracle_refines",
    "oracle_tree_feedback",
]


class OracleBudgetError(FeedkitError):
    pass


def _norm(rows: dict) -> dict:
    out = {}
    for x, ys in rows.items():
        ys = frozenset(ys)
        if FAIL in ys:
            out[x] = frozenset([FAIL])
        elif ys:
            out[x] = ys
    return out


def _lead_layout(rel, fb_in, fb_out):
    """Index maps putting the feedback wires first on each side."""
    n_in, n_out = len(rel.in_sig), len(rel.out_sig)
    in_order = list(fb_in) + [i for i in range(n_in) if i not in fb_in]
    out_order = list(fb_out) + [i for i in range(n_out) if i not in fb_out]
    return in_order, out_order


def oracle_tree_feedback(rel, fb_in=(0,), fb_out=(0,)) -> dict:
    """Feedback by enumerating every strictly increasing chain from bottom.

    Transcribes the two existential formulas: an outcome ``(u, y)`` is
    reached if some chain ``bot = u0 < ... < un = u`` has each step
    realized by the relation and ``R.(u, x).(u, y)``; fail is reached if
    some such chain ends in an input that fails.
    """
    fb_in, fb_out = tuple(fb_in), tuple(fb_out)
    w = len(fb_in)
    in_order, out_order = _lead_layout(rel, fb_in, fb_out)
    a_wires = [rel.in_sig.wires[i] for i in fb_in]
    b_wires = [rel.in_sig.wires[i] for i in in_order[w:]]
    a_points = list(itertools.product(*(d.carrier for d in a_wires)))
    bot = (BOT,) * w

    def ask(u, x):
        # assemble the original input from (u, x) and reorder each outcome
        full = [None] * len(in_order)
        for pos, i in enumerate(in_order):
            full[i] = (u + x)[pos]
        outs = set()
        for o in rel.outputs(tuple(full)):
            outs.add(FAIL if o is FAIL else tuple(o[i] for i in out_order))
        return outs

    result = {}
    for x in itertools.product(*(d.carrier for d in b_wires)):
        outcomes = set()
        chains = [[bot]]
        while chains:
            nxt = []
            for chain in chains:
                u = chain[-1]
                outs = ask(u, x)
                if FAIL in outs:
                    outcomes.add(FAIL)
                for o in outs:
                    if o is FAIL:
                        continue
                    if o[:w] == u:
                        outcomes.add(o)
                for u2 in a_points:
                    if lt(u, u2) and any(o is not FAIL and o[:w] == u2 for o in outs):
                        nxt.append(chain + [u2])
            chains = nxt
        result[x] = outcomes
    return _norm(result)


def oracle_fb_hide(rel, fb_in=(0,), fb_out=(0,)) -> dict:
    w = len(tuple(fb_in))
    out = {}
    for x, ys in oracle_tree_feedback(rel, fb_in, fb_out).items():
        row = set()
        for o in ys:
            if o is FAIL or not maximal(o[:w]):
                row.add(FAIL)
            else:
                row.add(o[w:])
        out[x] = row
    return _norm(out)


def oracle_refines(r, r2) -> bool:
    """``forall x: R.x.fail or (forall y: R2.x.y => R.x.y)`` by a double loop."""
    if r.in_sig != r2.in_sig or r.out_sig != r2.out_sig:
        raise ValueError("oracle_refines: signatures differ")
    ins = list(itertools.product(*(d.carrier for d in r.in_sig.wires))) + [FAIL]
    outs = list(itertools.product(*(d.carrier for d in r.out_sig.wires))) + [FAIL]

    def rel(q, x, y):
        if x is FAIL:
            return y is FAIL
        return y in q.outputs(x)

    for x in ins:
        if rel(r, x, FAIL):
            continue
        for y in outs:
            if rel(r2, x, y) and not rel(r, x, y):
                return False
    return True


def oracle_kleene(f: dict, a_points=None):
    """Least fixpoint of the table ``f`` (``u -> u``) by iteration from bottom."""
    pts = list(f) if a_points is None else list(a_points)
    for u in pts:
        for u2 in pts:
            if leq(u, u2) and not leq(f[u], f[u2]):
                raise ValueError(f"table is not monotone at {u!r} <= {u2!r}")
    width = len(pts[0])
    u = (BOT,) * width
    while f[u] != u:
        u = f[u]
    return u


def oracle_cross_identities(r, r2, x) -> dict:
    """The four right-hand sides of the cross-product feedback identities at ``x``.

    Returns ``{"fail", "rows", "hide_fail", "hide_rows"}`` where ``rows`` is
    the set of ``(u, y)`` with ``R.x.u and R2.u.y``.
    """
    rx = r.outputs(x)
    comp_fail = FAIL in rx or any(FAIL in r2.outputs(u) for u in rx if u is not FAIL)
    rows = set()
    hide = set()
    for u in rx:
        if u is FAIL:
            continue
        for y in r2.outputs(u):
            if y is FAIL:
                continue
            rows.add(u + y)
            if all(v is not BOT for v in u):
                hide.add(y)
    bot_out = any(u is not FAIL and all(v is BOT for v in u) for u in rx)
    return {"fail": comp_fail, "rows": rows, "hide_fail": comp_fail or bot_out,
            "hide_rows": hide}


# -- delay feedback by exhaustive chain enumeration ---------------------------

def oracle_delay(sts, horizon: int, budget: int = 20_000_000):
    """Legal prefixes and io pairs of unit-delay feedback, from all state chains.

    Every chain ``u0 .. uH`` over the full state space is materialized (no
    reachability pruning).  Returns ``(legal_prefixes, io_rel)`` as
    frozensets.  Raises :class:`OracleBudgetError` when
    ``|states|**(H+1) * |inputs|**H`` exceeds ``budget``.
    """
    states = list(itertools.product(*(d.carrier for d in sts.state_sig.wires)))
    inputs = list(itertools.product(*(d.carrier for d in sts.in_sig.wires)))
    outputs = list(itertools.product(*(d.carrier for d in sts.out_sig.wires)))
    ns, nx, ny = len(states), len(inputs), len(outputs)
    if ns ** (horizon + 1) * nx ** max(horizon, 1) > budget:
        raise OracleBudgetError("state-chain enumeration exceeds the oracle budget")
    si = {u: i for i, u in enumerate(states)}
    xi = {x: i for i, x in enumerate(inputs)}
    yi = {y: i for i, y in enumerate(outputs)}
    k = len(states[0])

    init = np.zeros(ns, dtype=bool)
    for u in sts.init:
        init[si[u]] = True
    legal = np.zeros((ns, nx), dtype=bool)
    for ux in sts.legal:
        legal[si[ux[:k]], xi[ux[k:]]] = True
    trans = np.zeros((ns, nx, ns, ny), dtype=bool)
    for ux, uy in sts.trans:
        trans[si[ux[:k]], xi[ux[k:]], si[uy[:k]], yi[uy[k:]]] = True
    step = trans.any(axis=3)

    chains = np.indices((ns,) * (horizon + 1)).reshape(horizon + 1, -1).T
    start_ok = init[chains[:, 0]]

    legal_set, io = set(), set()
    for prefix in itertools.product(range(nx), repeat=horizon):
        p = np.array(prefix, dtype=int)
        if horizon:
            ok = step[chains[:, :-1], p[None, :], chains[:, 1:]]
            viol = ~legal[chains[:, :-1], p[None, :]]
        else:
            ok = np.ones((len(chains), 0), dtype=bool)
            viol = ok
        realized = np.cumprod(np.concatenate(
            [np.ones((len(chains), 1), dtype=bool), ok], axis=1), axis=1).astype(bool)
        # chain fails at n if it starts in init, steps 0..n-1 are realized and p fails at n
        fails = start_ok[:, None] & realized[:, :horizon] & viol
        if fails.any():
            continue
        xs = tuple(inputs[i] for i in prefix)
        legal_set.add(xs)
        full = start_ok & realized[:, horizon]
        if not full.any():
            continue
        ymask = trans[chains[full, :-1], p[None, :], chains[full, 1:]]
        for row in np.unique(ymask.reshape(len(ymask), -1), axis=0):
            per_step = row.reshape(horizon, ny)
            choices = [[outputs[j] for j in np.flatnonzero(per_step[i])] for i in range(horizon)]
            for ys in itertools.product(*choices):
                io.add((xs, tuple(ys)))
    return frozenset(legal_set), frozenset(io)

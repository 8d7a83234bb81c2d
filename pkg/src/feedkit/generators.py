"""Seeded random generators of small relations, shapes and transition systems."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .domains import BOT, FAIL, Signature, WireDomain, leq
from .feedback import DoubleShape, FeedbackShape, side_conditions
from .rfu import Rfu
from .sts import Sts
from .transformers import Spec

__all__ = [
    "RefinementPairGenerator",
    "random_cross_pair",
    "random_domain",
    "random_double_shape",
    "random_monotone_function",
    "random_rfu",
    "random_shape",
    "random_signature",
    "random_spec",
    "random_sts_pair",
]

_FAIL_ROW = frozenset([FAIL])


def random_domain(rng: random.Random, max_atoms: int = 3, lifted: bool | None = None,
                  name: str | None = None) -> WireDomain:
    n = rng.randint(1, max_atoms)
    if lifted is None:
        lifted = rng.random() < 0.5
    return WireDomain(name or f"d{n}", tuple(range(n)), lifted)


def random_signature(rng: random.Random, n_wires: int, max_atoms: int = 3,
                     lifted: bool | None = None) -> Signature:
    return Signature(tuple(random_domain(rng, max_atoms, lifted) for _ in range(n_wires)))


def random_rfu(rng: random.Random, in_sig: Signature, out_sig: Signature,
               p_fail: float = 0.15, density: float = 0.3, p_empty: float = 0.05) -> Rfu:
    outs = out_sig.points()
    rows = {}
    for x in in_sig.iter_points():
        roll = rng.random()
        if roll < p_fail:
            rows[x] = _FAIL_ROW
        elif roll < p_fail + p_empty:
            continue
        else:
            ys = {y for y in outs if rng.random() < density}
            if not ys:
                ys = {rng.choice(outs)}
            rows[x] = frozenset(ys)
    return Rfu(in_sig, out_sig, rows)


def random_spec(rng: random.Random, in_sig: Signature, out_sig: Signature,
                p_illegal: float = 0.2, density: float = 0.3) -> Spec:
    outs = out_sig.points()
    legal, rel = [], []
    for x in in_sig.iter_points():
        if rng.random() >= p_illegal:
            legal.append(x)
        rel += [(x, y) for y in outs if rng.random() < density]
    return Spec(in_sig, out_sig, legal, rel)


def random_shape(rng: random.Random, max_fb: int = 2, max_atoms: int = 3,
                 max_extra: int = 1, **kw) -> FeedbackShape:
    """A relation with its leading ``1..max_fb`` wires fed back."""
    w = rng.randint(1, max_fb)
    a = random_signature(rng, w, max_atoms if w == 1 else 2, lifted=True)
    b = random_signature(rng, rng.randint(0, max_extra), max_atoms)
    c = random_signature(rng, rng.randint(0, max_extra), max_atoms)
    return FeedbackShape.leading(random_rfu(rng, a + b, a + c, **kw), w)


def _refined(rng: random.Random, r: Rfu) -> Rfu:
    """Shrink proper rows and legalize some failing ones."""
    outs = r.out_sig.points()
    rows = {}
    for x in r.in_sig.iter_points():
        ys = r.outputs(x)
        if FAIL in ys:
            if rng.random() < 0.5:
                rows[x] = _FAIL_ROW
            else:
                rows[x] = frozenset(y for y in outs if rng.random() < 0.3)
        elif ys:
            rows[x] = frozenset(y for y in ys if rng.random() < 0.7)
    return Rfu(r.in_sig, r.out_sig, rows)


@dataclass
class RefinementPairGenerator:
    """Emits ``(shape, shape2)`` whose relations satisfy ``refines(R, R2)``."""

    seed: int = 0
    max_fb: int = 2
    max_atoms: int = 3
    rng: random.Random = field(init=False, repr=False)

    def __post_init__(self):
        self.rng = random.Random(self.seed)

    def pair(self) -> tuple:
        s = random_shape(self.rng, self.max_fb, self.max_atoms)
        r2 = _refined(self.rng, s.rfu)
        return s, FeedbackShape(r2, s.fb_in, s.fb_out)

    def __iter__(self):
        while True:
            yield self.pair()

    def take(self, n: int) -> list:
        return [self.pair() for _ in range(n)]


def _monotone_table(rng: random.Random, a_sig: Signature, p_bot: float = 0.4,
                    tries: int = 200) -> dict:
    """A monotone map ``A -> A`` on a lifted signature."""
    pts = sorted(a_sig.points(), key=lambda u: sum(v is not BOT for v in u))
    for _ in range(tries):
        f: dict = {}
        ok = True
        for u in pts:
            lower = [f[u2] for u2 in f if leq(u2, u)]
            cands = [v for v in pts if all(leq(l, v) for l in lower)]
            if not cands:
                ok = False
                break
            # prefer keeping things undefined so chains get long
            tight = [v for v in cands if not any(leq(c, v) and c != v for c in cands)]
            f[u] = rng.choice(tight) if rng.random() < p_bot else rng.choice(cands)
        if ok:
            return f
    raise RuntimeError("could not build a monotone table")


def random_monotone_function(rng: random.Random, max_fb: int = 2, max_atoms: int = 3,
                             max_extra: int = 1) -> FeedbackShape:
    """A total functional relation whose ``f.x`` is monotone for every ``x``."""
    w = rng.randint(1, max_fb)
    a = random_signature(rng, w, max_atoms if w == 1 else 2, lifted=True)
    b = random_signature(rng, rng.randint(0, max_extra), max_atoms)
    c = random_signature(rng, rng.randint(0, max_extra), max_atoms)
    cs = c.points()
    rows = {}
    for x in b.iter_points():
        f = _monotone_table(rng, a)
        for u in a.iter_points():
            rows[u + x] = frozenset([f[u] + rng.choice(cs)])
    return FeedbackShape.leading(Rfu(a + b, a + c, rows), w)


def random_cross_pair(rng: random.Random, max_atoms: int = 3) -> tuple:
    """``(R, R2)`` with ``R2`` total on its lifted input and never failing at bottom.

    The connecting wire is a single lifted domain, so its only non-maximal
    value is bottom.
    """
    x_sig = random_signature(rng, rng.randint(0, 1), max_atoms)
    u_sig = random_signature(rng, 1, max_atoms, lifted=True)
    y_sig = random_signature(rng, rng.randint(0, 1), max_atoms)
    r = random_rfu(rng, x_sig, u_sig, p_fail=0.1, p_empty=0.1, density=0.35)
    r2 = random_rfu(rng, u_sig, y_sig, p_fail=0.15, p_empty=0.0, density=0.4)
    bot = (BOT,) * len(u_sig)
    if r2.fails(bot):
        rows = dict(r2.rows)
        rows[bot] = frozenset([rng.choice(y_sig.points())])
        r2 = Rfu(u_sig, y_sig, rows)
    return r, r2


def _mono_relation(rng: random.Random, ab: Signature, ac: Signature, rest: Signature,
                   w: int, p_fail: float) -> Rfu:
    """``mono`` by construction: fail is upward closed, outputs shrink upward."""
    us = ab.select(range(w)).points()
    outs = ac.points()
    rows = {}
    for x in rest.iter_points():
        order = sorted(us, key=lambda u: sum(v is not BOT for v in u))
        base: dict = {}
        for u in order:
            below = [u2 for u2 in base if leq(u2, u) and u2 != u]
            if any(base[u2] is FAIL for u2 in below) or (below and rng.random() < p_fail) \
                    or (not below and rng.random() < p_fail / 3):
                base[u] = FAIL
                continue
            allowed = set(outs)
            for u2 in below:
                allowed &= base[u2]
            pick = {y for y in allowed if rng.random() < 0.6}
            base[u] = frozenset(pick)
        for u, ys in base.items():
            rows[u + x] = _FAIL_ROW if ys is FAIL else ys
    return Rfu(ab, ac, rows)


def random_double_shape(rng: random.Random, want_all: bool = False, tries: int = 400) -> DoubleShape:
    """A double-feedback relation satisfying ``mono``; with ``want_all`` also
    ``mono_fail``, ``indep1`` and ``indep2`` (found by rejection)."""
    for _ in range(tries):
        a = random_signature(rng, 1, 2, lifted=True)
        b = random_signature(rng, 1, 2, lifted=True)
        x = random_signature(rng, rng.randint(0, 1), 2)
        y = random_signature(rng, rng.randint(0, 1), 2)
        ab = a + b
        r = _mono_relation(rng, ab + x, ab + y, x, 2, p_fail=0.0 if want_all and rng.random() < 0.5 else 0.15)
        ds = DoubleShape(r, 1, 1)
        if not want_all:
            return ds
        if all(side_conditions(ds).values()):
            return ds
    raise RuntimeError("no relation satisfying all side conditions found")


def random_sts_pair(rng: random.Random, max_states: int = 3, max_atoms: int = 2) -> tuple:
    """``(S, S2)`` with equal init and ``S2`` refining ``S`` at the one-step level."""
    st = Signature((WireDomain("st", tuple(range(rng.randint(1, max_states)))),))
    xi = random_signature(rng, 1, max_atoms, lifted=False)
    yo = random_signature(rng, 1, max_atoms, lifted=False)
    us, xs, ys = st.points(), xi.points(), yo.points()
    legal, trans = [], []
    for u in us:
        for x in xs:
            if rng.random() < 0.8:
                legal.append(u + x)
            for u2 in us:
                for y in ys:
                    if rng.random() < 0.35:
                        trans.append((u + x, u2 + y))
    init = [u for u in us if rng.random() < 0.6] or [rng.choice(us)]
    s = Sts(st, xi, yo, init, legal, trans)
    legal2 = set(legal) | {u + x for u in us for x in xs if rng.random() < 0.3}
    trans2 = []
    by_in: dict = {}
    for ux, uy in trans:
        by_in.setdefault(ux, []).append(uy)
    for ux in (u + x for u in us for x in xs):
        if ux in set(legal):
            trans2 += [(ux, uy) for uy in by_in.get(ux, []) if rng.random() < 0.7]
        elif ux in legal2:
            trans2 += [(ux, u2 + y) for u2 in us for y in ys if rng.random() < 0.35]
    return s, Sts(st, xi, yo, init, legal2, trans2)

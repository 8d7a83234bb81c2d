"""Strictly conjunctive transformers ``{p};[r]`` over finite signatures.

A :class:`Spec` holds the legal-input set ``p`` and the relation ``r``,
restricted to legal inputs.  With that canonical form, structural equality
is semantic equality of transformers.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import Callable, Iterable, Sequence

from .domains import BOT, FAIL, Signature, SignatureError, chain_bound, format_point, lt, maximal

__all__ = [
    "Spec",
    "assert_spec",
    "demonic_spec",
    "fail_spec",
    "fb_a_spec",
    "fb_b_spec",
    "fb_begin_spec",
    "fb_end_spec",
    "fb_hide_pt",
    "fuse_specs",
    "havoc",
    "inst_feedback_pt",
    "magic",
    "miracle_free",
    "mk_basic",
    "product_spec",
    "refine_spec",
    "seq_spec",
    "skip",
    "star_spec",
    "update",
    "update_fn",
]


class Spec:
    __slots__ = ("in_sig", "out_sig", "legal", "_succ")

    def __init__(self, in_sig: Signature, out_sig: Signature,
                 legal: Iterable[tuple], rel: Iterable[tuple] = ()):
        self.in_sig = in_sig
        self.out_sig = out_sig
        legal = frozenset(legal)
        succ: dict = {}
        for x in legal:
            if x is FAIL or not in_sig.conforms(x):
                raise SignatureError(f"legal input {x!r} does not conform")
        for x, y in rel:
            if x not in legal:
                continue
            if y is FAIL or not out_sig.conforms(y):
                raise SignatureError(f"output {y!r} does not conform")
            succ.setdefault(x, set()).add(y)
        self.legal = legal
        self._succ = MappingProxyType({x: frozenset(ys) for x, ys in succ.items()})

    @classmethod
    def _raw(cls, in_sig, out_sig, legal: frozenset, succ: dict) -> "Spec":
        s = cls.__new__(cls)
        s.in_sig, s.out_sig, s.legal = in_sig, out_sig, legal
        s._succ = MappingProxyType({x: ys for x, ys in succ.items() if ys and x in legal})
        return s

    def outputs(self, x) -> frozenset:
        return self._succ.get(x, frozenset())

    @property
    def rel(self) -> frozenset:
        return frozenset((x, y) for x, ys in self._succ.items() for y in ys)

    def __eq__(self, other):
        if not isinstance(other, Spec):
            return NotImplemented
        return (self.in_sig == other.in_sig and self.out_sig == other.out_sig
                and self.legal == other.legal and self._succ == other._succ)

    def __hash__(self):
        return hash((self.in_sig, self.out_sig, self.legal, frozenset(self._succ.items())))

    def __repr__(self):
        return (f"Spec({self.in_sig.describe()} -> {self.out_sig.describe()}, "
                f"{len(self.legal)} legal, {len(self.rel)} pairs)")

    def format_lines(self) -> list[str]:
        lines = []
        for x in self.in_sig.points():
            if x not in self.legal:
                lines.append(f"{format_point(x)} -> fail")
                continue
            if not self.outputs(x):
                lines.append(f"{format_point(x)} -> none")
            for y in self.out_sig.sorted(self.outputs(x)):
                lines.append(f"{format_point(x)} -> {format_point(y)}")
        return lines


def _full(sig: Signature) -> frozenset:
    return frozenset(sig.iter_points())


def update_fn(in_sig: Signature, out_sig: Signature, fn: Callable) -> Spec:
    """``[r]`` where ``fn(x)`` yields the outputs related to ``x``."""
    succ = {x: frozenset(fn(x)) for x in in_sig.iter_points()}
    for ys in succ.values():
        for y in ys:
            out_sig.check(y)
    return Spec._raw(in_sig, out_sig, _full(in_sig), succ)


def skip(sig: Signature) -> Spec:
    return update_fn(sig, sig, lambda x: (x,))


def fail_spec(in_sig: Signature, out_sig: Signature) -> Spec:
    return Spec(in_sig, out_sig, ())


def magic(in_sig: Signature, out_sig: Signature) -> Spec:
    return Spec(in_sig, out_sig, _full(in_sig))


def havoc(in_sig: Signature, out_sig: Signature) -> Spec:
    outs = frozenset(out_sig.iter_points())
    return update_fn(in_sig, out_sig, lambda x: outs)


def assert_spec(sig: Signature, p: Callable | Iterable) -> Spec:
    legal = frozenset(x for x in sig.iter_points() if p(x)) if callable(p) else frozenset(p)
    return Spec._raw(sig, sig, legal, {x: frozenset([x]) for x in legal})


def update(in_sig: Signature, out_sig: Signature, r: Callable | Iterable) -> Spec:
    """``[r]`` from a predicate ``r(x, y)`` or from an explicit pair set."""
    if callable(r):
        outs = out_sig.points()
        return update_fn(in_sig, out_sig, lambda x: [y for y in outs if r(x, y)])
    return Spec(in_sig, out_sig, _full(in_sig), r)


def mk_basic(kind: str, in_sig: Signature, out_sig: Signature | None = None, arg=None) -> Spec:
    out_sig = in_sig if out_sig is None else out_sig
    if kind in ("skip", "assert") and in_sig != out_sig:
        raise SignatureError(f"{kind} needs equal input and output signatures")
    if kind == "skip":
        return skip(in_sig)
    if kind == "fail":
        return fail_spec(in_sig, out_sig)
    if kind == "magic":
        return magic(in_sig, out_sig)
    if kind == "havoc":
        return havoc(in_sig, out_sig)
    if kind == "assert":
        return assert_spec(in_sig, arg)
    if kind == "update":
        return update(in_sig, out_sig, arg)
    raise ValueError(f"unknown basic transformer {kind!r}")


def seq_spec(s: Spec, t: Spec) -> Spec:
    if s.out_sig != t.in_sig:
        raise SignatureError("seq_spec: output and input signatures differ")
    legal = set()
    succ = {}
    for x in s.legal:
        ys = s.outputs(x)
        if not ys <= t.legal:
            continue
        legal.add(x)
        zs = set()
        for y in ys:
            zs |= t.outputs(y)
        succ[x] = frozenset(zs)
    return Spec._raw(s.in_sig, t.out_sig, frozenset(legal), succ)


def counterexample_spec(s: Spec, t: Spec):
    """First input (canonical order) violating ``s`` refined-by ``t``, else ``None``."""
    if s.in_sig != t.in_sig or s.out_sig != t.out_sig:
        raise SignatureError("refine_spec: signatures differ")
    for x in s.in_sig.points():
        if x not in s.legal:
            continue
        if x not in t.legal or not t.outputs(x) <= s.outputs(x):
            return x
    return None


def refine_spec(s: Spec, t: Spec) -> bool:
    return counterexample_spec(s, t) is None


def fuse_specs(specs: Sequence[Spec]) -> Spec:
    specs = list(specs)
    if not specs:
        raise ValueError("fuse_specs needs at least one transformer")
    first = specs[0]
    for s in specs[1:]:
        if s.in_sig != first.in_sig or s.out_sig != first.out_sig:
            raise SignatureError("fuse_specs: signatures differ")
    legal = frozenset.intersection(*(s.legal for s in specs))
    succ = {}
    for x in legal:
        succ[x] = frozenset.intersection(*(s.outputs(x) for s in specs))
    return Spec._raw(first.in_sig, first.out_sig, legal, succ)


def product_spec(s: Spec, t: Spec) -> Spec:
    in_sig = s.in_sig + t.in_sig
    out_sig = s.out_sig + t.out_sig
    legal = frozenset(x + u for x in s.legal for u in t.legal)
    n = len(s.in_sig)
    succ = {}
    for xu in legal:
        a, b = s.outputs(xu[:n]), t.outputs(xu[n:])
        succ[xu] = frozenset(y + v for y in a for v in b)
    return Spec._raw(in_sig, out_sig, legal, succ)


def demonic_spec(s: Spec, t: Spec) -> Spec:
    if s.in_sig != t.in_sig or s.out_sig != t.out_sig:
        raise SignatureError("demonic_spec: signatures differ")
    legal = s.legal & t.legal
    succ = {x: s.outputs(x) | t.outputs(x) for x in legal}
    return Spec._raw(s.in_sig, s.out_sig, legal, succ)


def miracle_free(s: Spec) -> bool:
    return all(s.outputs(x) for x in s.legal)


def star_spec(s: Spec, k: int) -> Spec:
    """Demonic choice of ``Skip, s, s;s, ...`` up to ``k`` repetitions."""
    if s.in_sig != s.out_sig:
        raise SignatureError("star_spec needs an endo-typed transformer")
    acc = skip(s.in_sig)
    power = acc
    for _ in range(k):
        power = seq_spec(power, s)
        acc = demonic_spec(acc, power)
    return acc


# Instantaneous feedback assembled inside the transformer algebra.  The
# feedback bundle occupies the first ``width`` wires of both the input and
# the output signature.

def _split(s: Spec, width: int):
    a_in = s.in_sig.select(range(width))
    a_out = s.out_sig.select(range(width))
    if a_in != a_out:
        raise SignatureError("feedback wires differ between input and output")
    if not a_in.all_lifted:
        raise SignatureError("feedback wires must be lifted")
    b = s.in_sig.select(range(width, len(s.in_sig)))
    c = s.out_sig.select(range(width, len(s.out_sig)))
    return a_in, b, c


def fb_begin_spec(a: Signature, b: Signature) -> Spec:
    bot = (BOT,) * len(a)
    return update_fn(b, a + b, lambda x: (bot + x,))


def fb_end_spec(a: Signature, c: Signature) -> Spec:
    w = len(a)
    guard = assert_spec(a + c, lambda vy: maximal(vy[:w]))
    return seq_spec(guard, update_fn(a + c, c, lambda vy: (vy[w:],)))


def fb_a_spec(s: Spec, width: int) -> Spec:
    a, b, c = _split(s, width)
    ab = a + b
    ac = a + c
    w = width
    duplicate = update_fn(ab, ab + b, lambda ux: (ux + ux[w:],))
    increase = update(ab, ac, lambda ux, vy: lt(ux[:w], vy[:w]))
    inner = product_spec(fuse_specs([s, increase]), skip(b))
    drop = update_fn(ac + b, ab, lambda vyx: (vyx[:w] + vyx[len(ac):],))
    return seq_spec(seq_spec(duplicate, inner), drop)


def fb_b_spec(s: Spec, width: int) -> Spec:
    a, b, c = _split(s, width)
    w = width
    outs_c = c.points()
    keep_u = update_fn(a + b, a + c, lambda ux: [ux[:w] + y for y in outs_c])
    return fuse_specs([s, keep_u])


def inst_feedback_pt(s: Spec, width: int) -> Spec:
    a, b, _ = _split(s, width)
    star = star_spec(fb_a_spec(s, width), chain_bound(a))
    return seq_spec(seq_spec(fb_begin_spec(a, b), star), fb_b_spec(s, width))


def fb_hide_pt(s: Spec, width: int) -> Spec:
    a, _, c = _split(s, width)
    return seq_spec(inst_feedback_pt(s, width), fb_end_spec(a, c))

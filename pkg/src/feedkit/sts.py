"""Symbolic transition systems and unit-delay feedback at a finite horizon.

An :class:`Sts` is the one-step transformer
``{u, x | legal}; [u, x ~> u', y | trans]`` together with a set of initial
states.  Connecting ``u'`` back to ``u`` through a unit delay gives, at
horizon ``H``, a :class:`PrefixSemantics`: the legal input prefixes of
length ``H`` and the input/output prefix relation on them.

Chains are explored breadth-first, one layer per time step, with
deduplication of ``(state, output prefix)`` pairs inside each layer.  The
cost is ``O(H * |states|**2 * |inputs|)`` per input prefix in the worst case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .domains import FAIL, FeedkitError, Signature, SignatureError
from .transformers import Spec, refine_spec

__all__ = [
    "PrefixSemantics",
    "Run",
    "Sts",
    "StsError",
    "always",
    "delay_feedback",
    "lead",
    "legal_prefixes",
    "next_",
    "prefix_ltl",
    "refine_prefix",
    "refine_sts_onestep",
    "runs",
    "sts_step",
]


class StsError(FeedkitError):
    pass


class Sts:
    __slots__ = ("state_sig", "in_sig", "out_sig", "init", "legal", "_trans")

    def __init__(self, state_sig: Signature, in_sig: Signature, out_sig: Signature,
                 init: Iterable[tuple], legal: Iterable[tuple], trans: Iterable[tuple]):
        self.state_sig, self.in_sig, self.out_sig = state_sig, in_sig, out_sig
        self.init = frozenset(tuple(u) for u in init)
        self.legal = frozenset(tuple(ux) for ux in legal)
        for u in self.init:
            state_sig.check(u)
        ux_sig = state_sig + in_sig
        uy_sig = state_sig + out_sig
        for ux in self.legal:
            ux_sig.check(ux)
        succ: dict = {}
        for ux, uy in trans:
            ux_sig.check(ux)
            uy_sig.check(uy)
            if ux is FAIL or uy is FAIL:
                raise StsError("transition relations carry no fail outcome")
            succ.setdefault(tuple(ux), set()).add(tuple(uy))
        self._trans = {k: frozenset(v) for k, v in succ.items()}

    @classmethod
    def from_functions(cls, state_sig, in_sig, out_sig, init, legal: Callable,
                       step: Callable) -> "Sts":
        """``legal(u, x)`` is a predicate and ``step(u, x)`` yields ``(u', y)`` pairs."""
        ls, tr = [], []
        for u in state_sig.iter_points():
            for x in in_sig.iter_points():
                if legal(u, x):
                    ls.append(u + x)
                for u2, y in step(u, x):
                    tr.append((u + x, tuple(u2) + tuple(y)))
        return cls(state_sig, in_sig, out_sig, init, ls, tr)

    @classmethod
    def from_spec(cls, spec: Spec, state_sig: Signature, init) -> "Sts":
        n = len(state_sig)
        in_sig = spec.in_sig.select(range(n, len(spec.in_sig)))
        out_sig = spec.out_sig.select(range(n, len(spec.out_sig)))
        if spec.in_sig.select(range(n)) != state_sig or spec.out_sig.select(range(n)) != state_sig:
            raise SignatureError("transformer does not carry the state on both sides")
        return cls(state_sig, in_sig, out_sig, init, spec.legal, spec.rel)

    @property
    def trans(self) -> frozenset:
        return frozenset((ux, uy) for ux, uys in self._trans.items() for uy in uys)

    def successors(self, u, x) -> frozenset:
        """All ``(u', y)`` with ``trans`` at ``(u, x)``, ignoring legality."""
        n = len(self.state_sig)
        return frozenset((uy[:n], uy[n:]) for uy in self._trans.get(tuple(u) + tuple(x), ()))

    def is_legal(self, u, x) -> bool:
        return tuple(u) + tuple(x) in self.legal

    def onestep(self) -> Spec:
        return Spec(self.state_sig + self.in_sig, self.state_sig + self.out_sig,
                    self.legal, self.trans)

    def _key(self):
        return (self.state_sig, self.in_sig, self.out_sig, self.init, self.legal, self.trans)

    def __eq__(self, other):
        if not isinstance(other, Sts):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"Sts(state={self.state_sig.describe()}, in={self.in_sig.describe()}, "
                f"out={self.out_sig.describe()}, |init|={len(self.init)})")


def sts_step(s: Sts, u, x):
    """``FAIL`` if ``(u, x)`` is illegal, else the set of ``(u', y)``."""
    s.state_sig.check(u)
    s.in_sig.check(x)
    if not s.is_legal(u, x):
        return FAIL
    return s.successors(u, x)


@dataclass(frozen=True)
class Run:
    states: tuple
    inputs: tuple
    outputs: tuple
    failed: bool = False


def runs(s: Sts, xs: Sequence[tuple]) -> list:
    """Every run over the input prefix ``xs``, in canonical order.

    A run that reaches an illegal ``(state, input)`` stops there with
    ``failed=True``; runs that deadlock are dropped.
    """
    xs = [tuple(x) for x in xs]
    out = []

    def go(states, ys):
        i = len(ys)
        u = states[-1]
        if i == len(xs):
            out.append(Run(tuple(states), tuple(xs), tuple(ys)))
            return
        if not s.is_legal(u, xs[i]):
            out.append(Run(tuple(states), tuple(xs[:i + 1]), tuple(ys), True))
            return
        succ = sorted(s.successors(u, xs[i]),
                      key=lambda p: (s.state_sig.key(p[0]), s.out_sig.key(p[1])))
        for u2, y in succ:
            go(states + [u2], ys + [y])

    for u0 in s.state_sig.sorted(s.init):
        go([u0], [])
    return out


@dataclass(frozen=True)
class PrefixSemantics:
    horizon: int
    in_sig: Signature
    out_sig: Signature
    legal_prefixes: frozenset
    io_rel: frozenset

    def __post_init__(self):
        bad = [xs for xs, _ in self.io_rel if xs not in self.legal_prefixes]
        if bad:
            raise StsError("io_rel mentions illegal prefixes")

    def outputs(self, xs) -> frozenset:
        xs = tuple(tuple(x) for x in xs)
        return frozenset(ys for ii, ys in self.io_rel if ii == xs)

    def rows(self) -> dict:
        out: dict = {xs: set() for xs in self.legal_prefixes}
        for xs, ys in self.io_rel:
            out[xs].add(ys)
        return out


def _prefix_key(sig: Signature):
    return lambda xs: tuple(sig.key(x) for x in xs)


def _explore(s: Sts, horizon: int, want_outputs: bool):
    """Walk the input-prefix trie, carrying the frontier of ``(state, ys)``.

    Yields ``(prefix, frontier)`` for each legal prefix of length ``horizon``.
    """
    inputs = s.in_sig.points()
    start = frozenset((u, ()) for u in s.init)

    def go(prefix, frontier):
        if len(prefix) == horizon:
            yield prefix, frontier
            return
        for x in inputs:
            if any(not s.is_legal(u, x) for u, _ in frontier):
                continue
            nxt = set()
            for u, ys in frontier:
                for u2, y in s.successors(u, x):
                    nxt.add((u2, ys + (y,) if want_outputs else ()))
            yield from go(prefix + (x,), frozenset(nxt))

    yield from go((), start)


def legal_prefixes(s: Sts, horizon: int) -> frozenset:
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    return frozenset(p for p, _ in _explore(s, horizon, want_outputs=False))


def delay_feedback(s: Sts, horizon: int) -> PrefixSemantics:
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    legal, io = set(), set()
    for prefix, frontier in _explore(s, horizon, want_outputs=True):
        legal.add(prefix)
        for _, ys in frontier:
            io.add((prefix, ys))
    return PrefixSemantics(horizon, s.in_sig, s.out_sig, frozenset(legal), frozenset(io))


def refine_sts_onestep(s: Sts, s2: Sts) -> bool:
    if (s.state_sig, s.in_sig, s.out_sig) != (s2.state_sig, s2.in_sig, s2.out_sig):
        raise SignatureError("refine_sts_onestep: signatures differ")
    return refine_spec(s.onestep(), s2.onestep())


def refine_prefix(sem: PrefixSemantics, sem2: PrefixSemantics) -> bool:
    if sem.horizon != sem2.horizon:
        raise StsError("refine_prefix: horizons differ")
    if (sem.in_sig, sem.out_sig) != (sem2.in_sig, sem2.out_sig):
        raise SignatureError("refine_prefix: signatures differ")
    if not sem.legal_prefixes <= sem2.legal_prefixes:
        return False
    return {p for p in sem2.io_rel if p[0] in sem.legal_prefixes} <= sem.io_rel


def sorted_prefixes(sem: PrefixSemantics) -> list:
    return sorted(sem.legal_prefixes, key=_prefix_key(sem.in_sig))


# -- temporal operators on finite prefixes -----------------------------------
# Each trace argument is a sequence; a predicate receives the suffixes of all
# traces starting at the current index.

def _length(traces) -> int:
    if not traces:
        raise StsError("temporal operators need at least one trace")
    return min(len(t) for t in traces)


def _suffixes(traces, n):
    return [tuple(t[n:]) for t in traces]


def always(pred: Callable, *traces) -> bool:
    return all(pred(*_suffixes(traces, n)) for n in range(_length(traces)))


def next_(pred: Callable, *traces) -> bool:
    if _length(traces) < 2:
        raise StsError("next needs traces of length at least 2")
    return pred(*_suffixes(traces, 1))


def lead(p: Callable, q: Callable, *traces, horizon: int | None = None) -> bool:
    """``p L q``: for every ``n`` below the horizon, ``p`` at all ``i < n`` forces ``q`` at ``n``."""
    h = _length(traces) if horizon is None else horizon
    if h > _length(traces):
        raise StsError("horizon exceeds the available prefix")
    for n in range(h):
        if all(p(*_suffixes(traces, i)) for i in range(n)) and not q(*_suffixes(traces, n)):
            return False
    return True


def prefix_ltl(op: str, *args, **kwargs) -> bool:
    if op == "always":
        return always(*args)
    if op == "next":
        return next_(*args)
    if op == "lead":
        return lead(*args, **kwargs)
    raise ValueError(f"unknown temporal operator {op!r}")

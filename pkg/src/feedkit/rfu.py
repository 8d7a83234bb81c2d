"""Relations with fail and unknown over finite signatures."""

from __future__ import annotations

from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping

from .domains import FAIL, FeedkitError, Signature, SignatureError, format_point

__all__ = [
    "Rfu",
    "RfuError",
    "compose_serial",
    "cross",
    "demonic_choice",
    "equivalent",
    "fail_rfu",
    "identity",
    "normalize",
    "parallel",
    "refines",
    "rewire",
    "star_bounded",
    "wp",
]

_FAIL_ROW = frozenset([FAIL])


class RfuError(FeedkitError):
    pass


class Rfu:
    """A normalized relation with fail between two signatures.

    Only proper inputs with at least one outcome are stored; ``(FAIL, FAIL)``
    is implicit.  An input whose row contains ``FAIL`` holds nothing else.
    Build instances through :func:`normalize` or :meth:`from_rows`.
    """

    __slots__ = ("in_sig", "out_sig", "_rows", "_hash")

    def __init__(self, in_sig: Signature, out_sig: Signature,
                 rows: Mapping[tuple, frozenset], *, _trusted: bool = False):
        self.in_sig = in_sig
        self.out_sig = out_sig
        if not _trusted:
            rows = _normalize_rows(in_sig, out_sig, rows)
        self._rows = MappingProxyType(dict(rows))
        self._hash = None

    @classmethod
    def from_rows(cls, in_sig, out_sig, rows: Mapping[tuple, Iterable]) -> "Rfu":
        """Rows map proper inputs to iterables of outcomes (``FAIL`` allowed)."""
        return cls(in_sig, out_sig, {x: frozenset(ys) for x, ys in rows.items()})

    @classmethod
    def from_function(cls, in_sig, out_sig, fn: Callable) -> "Rfu":
        """``fn(x)`` returns an iterable of outcomes for every proper ``x``."""
        return cls(in_sig, out_sig, {x: frozenset(fn(x)) for x in in_sig.iter_points()})

    @property
    def rows(self) -> Mapping[tuple, frozenset]:
        return self._rows

    def outputs(self, x) -> frozenset:
        if x is FAIL:
            return _FAIL_ROW
        return self._rows.get(x, frozenset())

    def fails(self, x) -> bool:
        return x is FAIL or FAIL in self._rows.get(x, ())

    def relates(self, x, y) -> bool:
        return y in self.outputs(x)

    def legal_inputs(self) -> list:
        return [x for x in self.in_sig.iter_points() if not self.fails(x)]

    def pairs(self) -> Iterator[tuple]:
        """Every pair, including ``(FAIL, FAIL)``, in canonical order."""
        for x in self.in_sig.sorted(self._rows):
            for y in self.out_sig.sorted(self._rows[x]):
                yield x, y
        yield FAIL, FAIL

    def __eq__(self, other):
        if not isinstance(other, Rfu):
            return NotImplemented
        return (self.in_sig == other.in_sig and self.out_sig == other.out_sig
                and self._rows == other._rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.in_sig, self.out_sig,
                               frozenset(self._rows.items())))
        return self._hash

    def __repr__(self):
        return f"Rfu({self.in_sig.describe()} -> {self.out_sig.describe()}, {len(self._rows)} rows)"

    def format_rows(self) -> list[str]:
        return [f"{format_point(x)} -> {format_point(y)}" for x, y in self.pairs()
                if x is not FAIL]


def _normalize_rows(in_sig, out_sig, rows) -> dict:
    out = {}
    for x, ys in rows.items():
        if x is FAIL:
            raise RfuError("fail may only be related to fail; pass proper inputs only")
        in_sig.check(x)
        ys = frozenset(ys)
        if not ys:
            continue
        if FAIL in ys:
            out[x] = _FAIL_ROW
            continue
        for y in ys:
            out_sig.check(y)
        out[x] = ys
    return out


def normalize(in_sig: Signature, out_sig: Signature, pairs: Iterable[tuple]) -> Rfu:
    """Build an :class:`Rfu` from a raw pair set that includes ``(FAIL, FAIL)``."""
    rows: dict = {}
    seen_fail = False
    for x, y in pairs:
        if x is FAIL:
            if y is not FAIL:
                raise RfuError(f"fail is related to proper output {format_point(y)}")
            seen_fail = True
            continue
        rows.setdefault(x, set()).add(y)
    if not seen_fail:
        raise RfuError("raw relation lacks the (fail, fail) pair")
    return Rfu(in_sig, out_sig, rows)


def _same_sigs(r: Rfu, r2: Rfu, op: str) -> None:
    if r.in_sig != r2.in_sig or r.out_sig != r2.out_sig:
        raise SignatureError(f"{op}: signatures differ")


def identity(sig: Signature) -> Rfu:
    return Rfu(sig, sig, {x: frozenset([x]) for x in sig.iter_points()}, _trusted=True)


def fail_rfu(in_sig: Signature, out_sig: Signature) -> Rfu:
    return Rfu(in_sig, out_sig, {x: _FAIL_ROW for x in in_sig.iter_points()}, _trusted=True)


def rewire(in_sig: Signature, picks) -> Rfu:
    """The function ``x -> tuple(x[i] for i in picks)``; wires may repeat or drop."""
    picks = tuple(picks)
    out_sig = in_sig.select(picks)
    return Rfu(in_sig, out_sig,
               {x: frozenset([tuple(x[i] for i in picks)]) for x in in_sig.iter_points()},
               _trusted=True)


def compose_serial(r: Rfu, r2: Rfu) -> Rfu:
    if r.out_sig != r2.in_sig:
        raise SignatureError("compose_serial: output and input signatures differ")
    rows = {}
    for x, ys in r.rows.items():
        if FAIL in ys:
            rows[x] = _FAIL_ROW
            continue
        acc = set()
        for y in ys:
            zs = r2.rows.get(y)
            if zs is None:
                continue
            if FAIL in zs:
                acc = None
                break
            acc |= zs
        if acc is None:
            rows[x] = _FAIL_ROW
        elif acc:
            rows[x] = frozenset(acc)
    return Rfu(r.in_sig, r2.out_sig, rows, _trusted=True)


def demonic_choice(r: Rfu, r2: Rfu) -> Rfu:
    _same_sigs(r, r2, "demonic_choice")
    rows = dict(r.rows)
    for x, ys in r2.rows.items():
        prev = rows.get(x)
        if prev is None:
            rows[x] = ys
        elif FAIL in prev or FAIL in ys:
            rows[x] = _FAIL_ROW
        else:
            rows[x] = prev | ys
    return Rfu(r.in_sig, r.out_sig, rows, _trusted=True)


def parallel(r: Rfu, r2: Rfu) -> Rfu:
    """``(x, u) -> (y, v)`` iff ``r.x.y`` and ``r2.u.v``; fails if either side fails."""
    in_sig = r.in_sig + r2.in_sig
    out_sig = r.out_sig + r2.out_sig
    rows = {}
    n = len(r.in_sig)
    for xu in in_sig.iter_points():
        a, b = r.outputs(xu[:n]), r2.outputs(xu[n:])
        if FAIL in a or FAIL in b:
            rows[xu] = _FAIL_ROW
        elif a and b:
            rows[xu] = frozenset(y + v for y in a for v in b)
    return Rfu(in_sig, out_sig, rows, _trusted=True)


def cross(r: Rfu, r2: Rfu) -> Rfu:
    """Cross product: input ``(u, x)`` with ``u`` for ``r2``, output ``(v, y)`` with ``v`` from ``r``."""
    in_sig = r2.in_sig + r.in_sig
    out_sig = r.out_sig + r2.out_sig
    rows = {}
    n = len(r2.in_sig)
    for ux in in_sig.iter_points():
        left, right = r.outputs(ux[n:]), r2.outputs(ux[:n])
        if FAIL in left or FAIL in right:
            rows[ux] = _FAIL_ROW
        elif left and right:
            rows[ux] = frozenset(v + y for v in left for y in right)
    return Rfu(in_sig, out_sig, rows, _trusted=True)


def counterexample(r: Rfu, r2: Rfu):
    """First input (canonical order) where ``r2`` does not refine ``r``, else ``None``."""
    _same_sigs(r, r2, "refines")
    for x in r.in_sig.iter_points():
        ys = r.outputs(x)
        if FAIL in ys:
            continue
        if not r2.outputs(x) <= ys:
            return x
    return None


def refines(r: Rfu, r2: Rfu) -> bool:
    return counterexample(r, r2) is None


def equivalent(r: Rfu, r2: Rfu) -> bool:
    return refines(r, r2) and refines(r2, r)


def star_bounded(r: Rfu, k: int) -> Rfu:
    """Demonic choice of the iterates ``r**0 .. r**k``."""
    if r.in_sig != r.out_sig:
        raise SignatureError("star_bounded needs an endo-typed relation")
    if k < 0:
        raise ValueError("k must be non-negative")
    acc = identity(r.in_sig)
    power = acc
    for _ in range(k):
        power = compose_serial(power, r)
        acc = demonic_choice(acc, power)
    return acc


def wp(r: Rfu):
    """The ``{prec};[rel]`` transformer of ``r``."""
    from .transformers import Spec

    legal = frozenset(x for x in r.in_sig.iter_points() if not r.fails(x))
    rel = frozenset((x, y) for x, ys in r.rows.items() if FAIL not in ys for y in ys)
    return Spec(r.in_sig, r.out_sig, legal, rel)

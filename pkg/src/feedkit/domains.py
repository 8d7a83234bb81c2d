"""Finite flat-CPO value domains, lifted tuples and signatures.

A *proper point* is a plain Python tuple whose entries are atoms or
:data:`BOT`.  The fail outcome is the singleton :data:`FAIL`; it is a whole
point, never a wire value, and it is excluded from the order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence, Union

__all__ = [
    "BOT",
    "FAIL",
    "MAX_ATOMS",
    "DomainError",
    "FeedkitError",
    "Point",
    "Signature",
    "SignatureError",
    "WireDomain",
    "bool_domain",
    "bottom",
    "chain_bound",
    "format_point",
    "format_value",
    "int_domain",
    "is_fail",
    "leq",
    "lt",
    "maximal",
]

MAX_ATOMS = 64


class FeedkitError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FeedkitError):
    pass


class SignatureError(FeedkitError):
    pass


class _Bot:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOT"

    def __reduce__(self):
        return (_Bot, ())


class _Fail:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FAIL"

    def __reduce__(self):
        return (_Fail, ())


BOT = _Bot()
FAIL = _Fail()

Value = Hashable
Point = Union[tuple, _Fail]


def is_fail(p) -> bool:
    return p is FAIL


@dataclass(frozen=True)
class WireDomain:
    """A finite set of atoms, optionally lifted with :data:`BOT`.

    The atom order is only used for deterministic output; the CPO order
    never looks at it.  ``arith`` is ``None`` for symbolic domains and
    ``"mod"`` or ``"saturate-fail"`` for integer ranges.
    """

    name: str
    atoms: tuple
    lifted: bool = False
    arith: str | None = None
    max_atoms: int = field(default=MAX_ATOMS, compare=False, repr=False)

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise DomainError(f"domain {self.name!r} has no atoms")
        if len(atoms) > self.max_atoms:
            raise DomainError(
                f"domain {self.name!r} has {len(atoms)} atoms, cap is {self.max_atoms}"
            )
        if len(set(atoms)) != len(atoms):
            raise DomainError(f"domain {self.name!r} has duplicate atoms")
        for a in atoms:
            if a is BOT or a is FAIL or isinstance(a, bool):
                raise DomainError(f"domain {self.name!r}: invalid atom {a!r}")
        if self.arith not in (None, "mod", "saturate-fail"):
            raise DomainError(f"unknown arithmetic mode {self.arith!r}")
        if self.arith is not None and not all(isinstance(a, int) for a in atoms):
            raise DomainError(f"arithmetic mode on non-integer domain {self.name!r}")
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(atoms)})

    @property
    def carrier(self) -> tuple:
        """Atoms, preceded by ``BOT`` when lifted."""
        return ((BOT,) if self.lifted else ()) + self.atoms

    def contains(self, value) -> bool:
        if value is BOT:
            return self.lifted
        try:
            return value in self._index
        except TypeError:
            return False

    def index(self, value) -> int:
        """Sort rank of ``value``; ``BOT`` ranks first."""
        if value is BOT:
            return -1
        return self._index[value]

    def as_lifted(self, lifted: bool = True) -> "WireDomain":
        if self.lifted == lifted:
            return self
        return WireDomain(self.name, self.atoms, lifted, self.arith, self.max_atoms)


def bool_domain(lifted: bool = True, name: str = "bool") -> WireDomain:
    return WireDomain(name, ("false", "true"), lifted)


def int_domain(lo: int, hi: int, *, lifted: bool = False, arith: str = "mod",
               name: str | None = None) -> WireDomain:
    if hi < lo:
        raise DomainError(f"empty integer range {lo}..{hi}")
    return WireDomain(name or f"int{lo}_{hi}", tuple(range(lo, hi + 1)), lifted, arith)


@dataclass(frozen=True)
class Signature:
    """An ordered list of wire domains; ``names`` are labels only."""

    wires: tuple = ()
    names: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(self.wires))
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != len(self.wires):
                raise SignatureError("wire names do not match wire count")
            object.__setattr__(self, "names", names)

    def __len__(self):
        return len(self.wires)

    def __add__(self, other: "Signature") -> "Signature":
        if self.names is not None and other.names is not None:
            names = self.names + other.names
        else:
            names = None
        return Signature(self.wires + other.wires, names)

    def select(self, indices: Sequence[int]) -> "Signature":
        names = None if self.names is None else tuple(self.names[i] for i in indices)
        return Signature(tuple(self.wires[i] for i in indices), names)

    def wire_name(self, i: int) -> str:
        if self.names is not None:
            return self.names[i]
        return f"w{i}"

    def index_of(self, name: str) -> int:
        if self.names is None or name not in self.names:
            raise SignatureError(f"no wire named {name!r}")
        return self.names.index(name)

    @property
    def all_lifted(self) -> bool:
        return all(w.lifted for w in self.wires)

    def points(self) -> list:
        """All proper points, in canonical order."""
        return [tuple(p) for p in itertools.product(*(w.carrier for w in self.wires))]

    def iter_points(self) -> Iterator[tuple]:
        return itertools.product(*(w.carrier for w in self.wires))

    def size(self) -> int:
        n = 1
        for w in self.wires:
            n *= len(w.carrier)
        return n

    def conforms(self, p) -> bool:
        if p is FAIL:
            return True
        return (
            isinstance(p, tuple)
            and len(p) == len(self.wires)
            and all(w.contains(v) for w, v in zip(self.wires, p))
        )

    def check(self, p) -> None:
        if not self.conforms(p):
            raise SignatureError(f"point {p!r} does not conform to {self.describe()}")

    def key(self, p):
        """Canonical sort key; ``FAIL`` sorts after every proper point."""
        if p is FAIL:
            return (1, ())
        return (0, tuple(w.index(v) for w, v in zip(self.wires, p)))

    def sorted(self, points: Iterable) -> list:
        return sorted(points, key=self.key)

    def describe(self) -> str:
        parts = []
        for i, w in enumerate(self.wires):
            label = w.name + ("?" if w.lifted else "")
            parts.append(f"{self.names[i]}: {label}" if self.names else label)
        return "(" + ", ".join(parts) + ")"


def bottom(sig: Signature) -> tuple:
    if not sig.all_lifted:
        raise SignatureError("bottom needs every wire lifted")
    return (BOT,) * len(sig)


def _proper(p, what: str) -> tuple:
    if p is FAIL:
        raise ValueError(f"{what}: fail has no place in the order")
    if not isinstance(p, tuple):
        raise TypeError(f"{what}: expected a tuple, got {p!r}")
    return p


def leq(a, b) -> bool:
    _proper(a, "leq")
    _proper(b, "leq")
    if len(a) != len(b):
        raise SignatureError("leq on points of different arity")
    return all(x is BOT or x == y for x, y in zip(a, b))


def lt(a, b) -> bool:
    return leq(a, b) and a != b


def maximal(a) -> bool:
    _proper(a, "maximal")
    return all(v is not BOT for v in a)


def chain_bound(sig: Signature) -> int:
    return sum(1 for w in sig.wires if w.lifted)


def format_value(v) -> str:
    if v is BOT:
        return "bot"
    return str(v)


def format_point(p) -> str:
    if p is FAIL:
        return "fail"
    return "(" + ", ".join(format_value(v) for v in p) + ")"

import copy
import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from feedkit.domains import (BOT, FAIL, MAX_ATOMS, DomainError, Signature, SignatureError,
                             WireDomain, bool_domain, bottom, chain_bound, format_point,
                             int_domain, leq, lt, maximal)
from strategies import signatures

B = bool_domain()


def test_singletons_survive_copy():
    assert copy.deepcopy(BOT) is BOT
    assert pickle.loads(pickle.dumps(FAIL)) is FAIL
    assert repr(BOT) != repr(FAIL)


def test_carrier_puts_bot_first():
    assert B.carrier == (BOT, "false", "true")
    assert bool_domain(lifted=False).carrier == ("false", "true")


@pytest.mark.parametrize("atoms", [(), (1, 1), (True,), (BOT,), (FAIL,)])
def test_bad_atoms(atoms):
    with pytest.raises(DomainError):
        WireDomain("d", atoms)


def test_atom_cap_and_arith():
    with pytest.raises(DomainError):
        int_domain(0, MAX_ATOMS)
    with pytest.raises(DomainError):
        int_domain(3, 2)
    with pytest.raises(DomainError):
        WireDomain("d", ("a",), arith="mod")
    with pytest.raises(DomainError):
        WireDomain("d", (1,), arith="wrap")
    assert int_domain(-1, 1).atoms == (-1, 0, 1)


def test_contains_and_index():
    d = int_domain(0, 2, lifted=True)
    assert d.contains(BOT) and d.contains(2) and not d.contains(3)
    assert not d.contains([1])  # unhashable
    assert not bool_domain(lifted=False).contains(BOT)
    assert d.index(BOT) < d.index(0) < d.index(2)
    assert d.as_lifted(False).carrier == (0, 1, 2)


def test_order_basics():
    assert leq((BOT, BOT), ("true", BOT))
    assert leq(("true", BOT), ("true", BOT))
    assert not leq(("true",), ("false",))
    assert lt((BOT,), ("false",)) and not lt(("false",), ("false",))
    assert maximal(()) and maximal(("true", 1)) and not maximal((BOT, 1))


@pytest.mark.parametrize("op", [lambda: leq(FAIL, (BOT,)), lambda: leq((BOT,), FAIL),
                                lambda: lt(FAIL, FAIL), lambda: maximal(FAIL)])
def test_fail_is_outside_the_order(op):
    with pytest.raises(ValueError):
        op()


def test_order_arity_mismatch():
    with pytest.raises(SignatureError):
        leq((BOT,), (BOT, BOT))


def test_signature_helpers():
    s = Signature((B, int_domain(0, 1)), names=("u", "x"))
    assert s.size() == 6 and len(s.points()) == 6
    assert s.index_of("x") == 1 and s.wire_name(0) == "u"
    assert Signature((B,)).wire_name(0) == "w0"
    assert (s + s).names == ("u", "x", "u", "x")
    assert s.select([1]).wires == (int_domain(0, 1),)
    assert s.describe() == "(u: bool?, x: int0_1)"
    assert not s.conforms((BOT, BOT)) and s.conforms(FAIL) and not s.conforms(("true",))
    with pytest.raises(SignatureError):
        s.check(("maybe", 0))
    with pytest.raises(SignatureError):
        s.index_of("nope")
    with pytest.raises(SignatureError):
        Signature((B,), names=("a", "b"))


def test_empty_signature_has_one_point():
    s = Signature(())
    assert s.points() == [()] and s.size() == 1 and bottom(s) == ()


def test_bottom_and_chain_bound():
    s = Signature((B, B))
    assert bottom(s) == (BOT, BOT)
    assert chain_bound(s) == 2
    with pytest.raises(SignatureError):
        bottom(Signature((int_domain(0, 1),)))


def test_format_point():
    assert format_point((BOT, "true", -1)) == "(bot, true, -1)"
    assert format_point(FAIL) == "fail"
    assert format_point(()) == "()"


@given(signatures(max_wires=3), st.data())
def test_leq_is_a_partial_order(sig, data):
    a, b, c = (data.draw(st.sampled_from(sig.points())) for _ in range(3))
    assert leq(a, a)
    if leq(a, b) and leq(b, a):
        assert a == b
    if leq(a, b) and leq(b, c):
        assert leq(a, c)


@given(signatures(max_wires=3, lifted=True), st.data())
def test_bottom_is_least_and_maximal_means_no_successor(sig, data):
    a = data.draw(st.sampled_from(sig.points()))
    assert leq(bottom(sig), a)
    assert maximal(a) == (not any(lt(a, b) for b in sig.points()))


@given(signatures(max_wires=3, lifted=True))
def test_strict_chains_are_bounded_by_lifted_wires(sig):
    # longest strict chain from bottom climbs one wire at a time
    best = {p: 0 for p in sig.points()}
    for p in sorted(sig.points(), key=lambda q: sum(v is not BOT for v in q)):
        for q in sig.points():
            if lt(q, p):
                best[p] = max(best[p], best[q] + 1)
    assert max(best.values()) == chain_bound(sig)


@given(signatures(max_wires=3))
def test_sorted_is_canonical(sig):
    pts = sig.points()
    assert sig.sorted(reversed(pts)) == pts
    assert sig.sorted(pts + [FAIL])[-1] is FAIL

import pytest
from hypothesis import given
from hypothesis import strategies as st

from feedkit.domains import BOT, FAIL, Signature, SignatureError, int_domain
from feedkit.rfu import (Rfu, RfuError, compose_serial, counterexample, cross, demonic_choice,
                         equivalent, fail_rfu, identity, normalize, parallel, refines, rewire,
                         star_bounded, wp)
from feedkit.transformers import refine_spec
from feedkit.oracles import oracle_refines
from strategies import composable_rfus, rfus, same_typed_rfus, signatures

BIT = Signature((int_domain(0, 1, lifted=True),))
X = Signature((int_domain(0, 1),))


def test_normalization_collapses_failing_rows():
    r = Rfu.from_rows(X, X, {(0,): {(0,), FAIL}, (1,): set()})
    assert r.rows == {(0,): frozenset([FAIL])}
    assert r.fails((0,)) and not r.fails((1,)) and r.fails(FAIL)
    assert r.outputs((1,)) == frozenset()
    assert list(r.pairs()) == [((0,), FAIL), (FAIL, FAIL)]


def test_rows_are_type_checked():
    with pytest.raises(SignatureError):
        Rfu.from_rows(X, X, {(2,): {(0,)}})
    with pytest.raises(SignatureError):
        Rfu.from_rows(X, X, {(0,): {(BOT,)}})
    with pytest.raises(RfuError):
        Rfu.from_rows(X, X, {FAIL: {FAIL}})


def test_normalize_from_raw_pairs():
    r = normalize(X, X, [((0,), (1,)), ((1,), FAIL), (FAIL, FAIL)])
    assert r.format_rows() == ["(0) -> (1)", "(1) -> fail"]
    with pytest.raises(RfuError):
        normalize(X, X, [((0,), (1,))])
    with pytest.raises(RfuError):
        normalize(X, X, [(FAIL, (0,)), (FAIL, FAIL)])


def test_from_function_and_rewire():
    swap = rewire(Signature(X.wires * 2), [1, 0])
    assert swap.outputs((0, 1)) == {(1, 0)}
    drop = rewire(Signature(X.wires * 2), [1])
    assert drop.out_sig == X
    dup = Rfu.from_function(X, Signature(X.wires * 2), lambda x: [x + x])
    assert compose_serial(dup, drop) == identity(X)


def test_cross_layout():
    r = Rfu.from_rows(X, BIT, {(0,): {(BOT,)}, (1,): {(1,)}})
    r2 = Rfu.from_rows(BIT, X, {u: {(0,)} for u in BIT.points()})
    c = cross(r, r2)
    assert c.in_sig == BIT + X and c.out_sig == BIT + X
    assert c.outputs((1, 0)) == {(BOT, 0)}


def test_star_bounded_includes_identity():
    inc = Rfu.from_function(X, X, lambda x: [(min(x[0] + 1, 1),)])
    assert star_bounded(inc, 0) == identity(X)
    assert star_bounded(inc, 2).outputs((0,)) == {(0,), (1,)}
    with pytest.raises(ValueError):
        star_bounded(inc, -1)
    with pytest.raises(SignatureError):
        star_bounded(rewire(Signature(X.wires * 2), [0]), 1)


def test_signature_mismatches():
    a = identity(X)
    with pytest.raises(SignatureError):
        compose_serial(a, identity(BIT))
    with pytest.raises(SignatureError):
        demonic_choice(a, identity(BIT))
    with pytest.raises(SignatureError):
        refines(a, identity(BIT))


def test_fail_is_refined_by_anything():
    assert refines(fail_rfu(X, X), identity(X))
    assert not refines(identity(X), fail_rfu(X, X))
    assert counterexample(identity(X), fail_rfu(X, X)) == (0,)


def test_wp_of_relation():
    r = Rfu.from_rows(X, X, {(0,): {FAIL}, (1,): {(0,), (1,)}})
    s = wp(r)
    assert s.legal == {(1,)} and s.outputs((1,)) == {(0,), (1,)}


# algebraic laws

@given(composable_rfus(3))
def test_serial_composition_is_associative(rs):
    a, b, c = rs
    assert compose_serial(compose_serial(a, b), c) == compose_serial(a, compose_serial(b, c))


@given(rfus())
def test_identity_is_neutral(r):
    assert compose_serial(identity(r.in_sig), r) == r
    assert compose_serial(r, identity(r.out_sig)) == r


@given(rfus())
def test_fail_is_left_zero(r):
    assert compose_serial(fail_rfu(r.in_sig, r.in_sig), r) == fail_rfu(r.in_sig, r.out_sig)


@given(same_typed_rfus(3))
def test_demonic_choice_laws(rs):
    a, b, c = rs
    assert demonic_choice(a, b) == demonic_choice(b, a)
    assert demonic_choice(a, a) == a
    assert demonic_choice(demonic_choice(a, b), c) == demonic_choice(a, demonic_choice(b, c))
    # choice is the meet for refinement
    ab = demonic_choice(a, b)
    assert refines(ab, a) and refines(ab, b)


@given(same_typed_rfus(3))
def test_refinement_is_a_preorder(rs):
    a, b, c = rs
    assert refines(a, a)
    if refines(a, b) and refines(b, c):
        assert refines(a, c)
    assert equivalent(a, b) == (refines(a, b) and refines(b, a))


@given(same_typed_rfus(2))
def test_refinement_matches_the_double_loop(rs):
    a, b = rs
    assert refines(a, b) == oracle_refines(a, b)


@given(same_typed_rfus(2))
def test_refinement_through_wp(rs):
    a, b = rs
    assert refines(a, b) == refine_spec(wp(a), wp(b))


@given(rfus(), rfus())
def test_parallel_fails_when_a_side_fails(a, b):
    p = parallel(a, b)
    n = len(a.in_sig)
    for xu in p.in_sig.points():
        assert p.fails(xu) == (a.fails(xu[:n]) or b.fails(xu[n:]))


@given(composable_rfus(2), st.data())
def test_composition_refines_monotonically(rs, data):
    a, b = rs
    # shrinking a row of the first operand keeps the composite a refinement
    x = data.draw(st.sampled_from(a.in_sig.points()))
    rows = dict(a.rows)
    if x in rows and FAIL not in rows[x] and len(rows[x]) > 1:
        rows[x] = frozenset(list(a.out_sig.sorted(rows[x]))[:1])
    a2 = Rfu(a.in_sig, a.out_sig, rows)
    assert refines(a, a2)
    assert refines(compose_serial(a, b), compose_serial(a2, b))


@given(signatures(lifted=True))
def test_identity_equivalent_to_itself(sig):
    assert equivalent(identity(sig), identity(sig))

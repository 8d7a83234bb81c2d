import pytest
from hypothesis import given

from feedkit.domains import BOT, Signature, SignatureError, bool_domain, int_domain
from feedkit.feedback import FeedbackShape, fb_hide, inst_feedback
from feedkit.rfu import compose_serial, demonic_choice, parallel, wp
from feedkit.transformers import (Spec, assert_spec, demonic_spec, fail_spec, fb_begin_spec,
                                  fb_end_spec, fb_hide_pt, fuse_specs, havoc, inst_feedback_pt,
                                  magic, miracle_free, mk_basic, product_spec, refine_spec,
                                  seq_spec, skip, star_spec, update, update_fn)
from golden import model
from strategies import composable_rfus, composable_specs, rfus, same_typed_rfus, specs

TRI = Signature((int_domain(-1, 1),))
BOOL = Signature((bool_domain(),))


def test_rel_is_restricted_to_legal_inputs():
    s = Spec(TRI, TRI, [(0,)], [((0,), (1,)), ((1,), (1,))])
    assert s.rel == {((0,), (1,))}
    assert s.format_lines() == ["(-1) -> fail", "(0) -> (1)", "(1) -> fail"]


def test_format_shows_miraculous_rows():
    assert magic(TRI, TRI).format_lines()[0] == "(-1) -> none"


def test_basic_statements():
    assert miracle_free(skip(TRI)) and miracle_free(havoc(TRI, BOOL))
    assert not miracle_free(magic(TRI, TRI))
    assert fail_spec(TRI, TRI).legal == frozenset()
    a = assert_spec(TRI, lambda x: x[0] >= 0)
    assert a.legal == {(0,), (1,)} and a.outputs((1,)) == {(1,)}
    assert assert_spec(TRI, [(0,)]).legal == {(0,)}
    u = update(TRI, TRI, lambda x, y: y[0] == -x[0])
    assert u.outputs((1,)) == {(-1,)}
    assert update(TRI, TRI, [((0,), (0,))]).outputs((1,)) == frozenset()
    assert mk_basic("skip", TRI) == skip(TRI)
    assert mk_basic("havoc", TRI, BOOL) == havoc(TRI, BOOL)
    assert mk_basic("magic", TRI) == magic(TRI, TRI)
    assert mk_basic("fail", TRI) == fail_spec(TRI, TRI)
    assert mk_basic("assert", TRI, arg=[(0,)]) == assert_spec(TRI, [(0,)])
    assert mk_basic("update", TRI, arg=lambda x, y: x == y) == skip(TRI)
    with pytest.raises(ValueError):
        mk_basic("angelic", TRI)
    with pytest.raises(SignatureError):
        mk_basic("skip", TRI, BOOL)


def test_update_fn_checks_outputs():
    with pytest.raises(SignatureError):
        update_fn(TRI, TRI, lambda x: [(5,)])


def test_refinement_ordering_of_basics():
    assert refine_spec(fail_spec(TRI, TRI), havoc(TRI, TRI))
    assert refine_spec(havoc(TRI, TRI), skip(TRI))
    assert refine_spec(skip(TRI), magic(TRI, TRI))
    assert not refine_spec(skip(TRI), fail_spec(TRI, TRI))


def test_fusion_and_product():
    s = update(TRI, TRI, lambda x, y: y[0] >= x[0])
    t = update(TRI, TRI, lambda x, y: y[0] <= x[0])
    assert fuse_specs([s, t]) == skip(TRI)
    p = product_spec(skip(TRI), havoc(BOOL, BOOL))
    assert len(p.outputs((0, BOT))) == 3
    with pytest.raises(ValueError):
        fuse_specs([])


def test_star_spec():
    inc = update_fn(TRI, TRI, lambda x: [(min(x[0] + 1, 1),)])
    assert star_spec(inc, 2).outputs((-1,)) == {(-1,), (0,), (1,)}


def test_t_values_model():
    m = model("tvalues")
    t4, t5, t6 = m.get("t4"), m.get("t5"), m.get("t6")
    assert t4 == t5 == t6
    assert not miracle_free(m.get("t2"))
    assert miracle_free(m.get("t1")) and miracle_free(m.get("t3")) and miracle_free(t4)


def test_fb_end_requires_maximal():
    a, c = BOOL, TRI
    e = fb_end_spec(a, c)
    assert (BOT, 0) not in e.legal and e.outputs(("true", 0)) == {(0,)}
    b = fb_begin_spec(a, TRI)
    assert b.outputs((1,)) == {(BOT, 1)}


def test_feedback_wires_must_match():
    s = havoc(Signature((bool_domain(),) * 2), Signature((int_domain(0, 1, lifted=True),) * 2))
    with pytest.raises(SignatureError):
        inst_feedback_pt(s, 1)
    s = havoc(Signature((int_domain(0, 1),) * 2), Signature((int_domain(0, 1),) * 2))
    with pytest.raises(SignatureError):
        inst_feedback_pt(s, 1)


# laws

@given(composable_specs(3))
def test_sequential_composition_is_associative(ss):
    a, b, c = ss
    assert seq_spec(seq_spec(a, b), c) == seq_spec(a, seq_spec(b, c))


@given(specs())
def test_skip_is_neutral(s):
    assert seq_spec(skip(s.in_sig), s) == s
    assert seq_spec(s, skip(s.out_sig)) == s


@given(specs(), specs())
def test_demonic_meet(a, b):
    if a.in_sig != b.in_sig or a.out_sig != b.out_sig:
        return
    m = demonic_spec(a, b)
    assert refine_spec(m, a) and refine_spec(m, b)


@given(composable_rfus(2))
def test_wp_commutes_with_serial_composition(rs):
    a, b = rs
    assert wp(compose_serial(a, b)) == seq_spec(wp(a), wp(b))


@given(same_typed_rfus(2))
def test_wp_commutes_with_choice(rs):
    a, b = rs
    assert wp(demonic_choice(a, b)) == demonic_spec(wp(a), wp(b))


@given(rfus(), rfus())
def test_wp_commutes_with_parallel(a, b):
    assert wp(parallel(a, b)) == product_spec(wp(a), wp(b))


def test_pointfree_feedback_on_examples():
    m = model("prelude")
    for name in ("true_fb", "neq_fb", "id_fb", "and_fb"):
        sh = m.feedbacks[name]
        assert wp(inst_feedback(sh)) == inst_feedback_pt(wp(sh.canonical), sh.width)
        assert wp(fb_hide(sh)) == fb_hide_pt(wp(sh.canonical), sh.width)


@given(rfus(in_sig=Signature((int_domain(0, 1, lifted=True), int_domain(0, 1))),
            out_sig=Signature((int_domain(0, 1, lifted=True), bool_domain(False)))))
def test_pointfree_feedback_agrees_with_relational(r):
    sh = FeedbackShape.leading(r, 1)
    assert wp(inst_feedback(sh)) == inst_feedback_pt(wp(r), 1)
    assert wp(fb_hide(sh)) == fb_hide_pt(wp(r), 1)

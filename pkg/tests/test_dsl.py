import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from feedkit.cli import load_model_text, packaged_models
from feedkit.domains import BOT
from feedkit.dsl import ModelError, check_model, parse_document, parse_model, print_document
from feedkit.dsl.lexer import tokenize
from feedkit.dsl.model import and_bot_value, not_bot_value, or_bot_value
from feedkit.rfu import Rfu
from feedkit.sts import Sts
from feedkit.transformers import Spec

CORPUS = {name: load_model_text(name) for name in packaged_models()}
BOOLS = "domain b = {false, true}\n"


def build(text):
    return parse_model(text)


def codes(text):
    model, diags = check_model(text)
    assert model is None and diags
    return [d.code for d in diags]


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_parses_cleanly(name):
    model, diags = check_model(CORPUS[name])
    assert diags == [] and model is not None


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_print_parse_is_a_fixpoint(name):
    doc, _ = parse_document(CORPUS[name])
    text = print_document(doc)
    doc2, diags = parse_document(text)
    assert diags == [] and doc2 == doc
    assert print_document(doc2) == text
    assert parse_model(text) == parse_model(CORPUS[name])


def test_copy_pattern_on_booleans():
    r = build(BOOLS + "rfu c (u: b, x: b) -> (v: b, y: b)\n  (u, x) -> (u, u)\nend\n").get("c")
    assert dict(r.rows) == {(a, c): {(a, a)} for a in ("false", "true")
                            for c in ("false", "true")}


def test_fail_rows_from_guard():
    r = build("domain d = int 0..3 mod\nrfu f (u: d) -> (v: d)\n"
              "  (u) -> fail where u = 2\n  (u) -> (u)\nend\n").get("f")
    assert [x for x in r.in_sig.points() if r.fails(x)] == [(2,)]
    assert r.outputs((1,)) == {(1,)}


def test_and_builtin_table():
    r = build("rfu a = builtin and_bot\n").get("a")
    vals = (BOT, "false", "true")
    for u in vals:
        for x in vals:
            assert r.outputs((u, x)) == {(and_bot_value(u, x),) * 2}
    assert r.outputs((BOT, "false")) == {("false", "false")}
    assert r.outputs((BOT, "true")) == {(BOT, BOT)}


def test_three_valued_connectives():
    assert or_bot_value("true", BOT) == "true" and or_bot_value("false", BOT) is BOT
    assert not_bot_value(BOT) is BOT and not_bot_value("true") == "false"
    assert and_bot_value("true", "true") == "true"


def test_arithmetic_modes():
    m = build("domain w = int 0..3 mod\ndomain s = int 0..3 saturate-fail\n"
              "rfu a (x: w) -> (y: w)\n  (x) -> (x + 3)\nend\n"
              "rfu b (x: s) -> (y: s)\n  (x) -> (x + 3)\nend\n"
              "rfu c (x: w) -> (y: w)\n  (x) -> (-x)\nend\n")
    assert m.get("a").outputs((2,)) == {(1,)}
    assert m.get("b").fails((1,)) and m.get("b").outputs((0,)) == {(3,)}
    assert m.get("c").outputs((1,)) == {(3,)}


def test_order_and_numeric_comparisons():
    m = build("domain d = int 0..2 mod lifted\n"
              "rfu a (x: d) -> (y: d)\n  (x) -> (y) where x <= y\nend\n"
              "rfu b (x: d) -> (y: d)\n  (x) -> (x) where x ge 1\nend\n")
    assert m.get("a").outputs((BOT,)) == {(BOT,), (0,), (1,), (2,)}
    assert m.get("a").outputs((1,)) == {(1,)}
    assert [x for x in m.get("b").in_sig.points() if m.get("b").outputs(x)] == [(1,), (2,)]


def test_strict_arithmetic_on_unknown():
    r = build("domain d = int 0..2 mod lifted\nrfu a (x: d) -> (y: d)\n  (x) -> (x + 1)\nend\n")
    assert r.get("a").outputs((BOT,)) == {(BOT,)}


def test_object_kinds():
    m = parse_model(CORPUS["tvalues"])
    assert isinstance(m.get("t1"), Spec) and isinstance(m.get("t4"), Spec)
    assert isinstance(parse_model(CORPUS["delay"]).get("r1"), Sts)
    assert isinstance(parse_model(CORPUS["bus"]).get("sys"), Rfu)
    m = parse_model(CORPUS["prelude"])
    assert m.shape("true_rfu").fb_in == (0,)
    with pytest.raises(KeyError):
        m.get("nothing")
    with pytest.raises(KeyError):
        m.shape("bool")


def test_compositions():
    m = build(BOOLS + "rfu n (x: b) -> (y: b)\n  (false) -> (true)\n  (true) -> (false)\nend\n"
              "let twice = n ; n\nlet both = n \\/ twice\nlet side = n || n\n"
              "spec s (x: b) -> (y: b)\n  (x) -> (x)\nend\nlet mixed = n ; s\n")
    assert m.get("twice").outputs(("true",)) == {("true",)}
    assert m.get("both").outputs(("true",)) == {("true",), ("false",)}
    assert len(m.get("side").in_sig) == 2
    assert isinstance(m.get("mixed"), Spec)


def test_feedback_by_index():
    m = build("domain d = {a} lifted\nrfu r (u: d) -> (v: d)\n  (u) -> (u)\nend\n"
              "feedback f = r on 0 -> 0\n")
    assert m.feedbacks["f"].fb_in == (0,)


@pytest.mark.parametrize("text,code", [
    ("rfu a (u: nope) -> (v: nope)\nend\n", "E-DOMAIN"),
    ("domain b = {x, y}\nrfu a (u: b) -> (v: b)\n  (u) -> (bot)\nend\n", "E-BOT"),
    ("domain b = {x, y}\ndomain b = {x, y}\n", "E-DUP"),
    ("let q = zz ; yy\n", "E-UNDEF"),
    ("domain b = {x, y} lifted\nrfu a (u: b) -> (v: b)\n  (u) -> (u)\nend\n"
     "feedback f = a on v -> q\n", "E-WIRE"),
    ("rfu a = builtin xor\n", "E-BUILTIN"),
    ("domain b = int 0..2 mod\nrfu a (u: b) -> (v: b)\n  (u) -> (foo(u))\nend\n", "E-FUNC"),
    ("@\n", "E-LEX"),
    ("domain b = int 0..2\n", "E-SYNTAX"),
    ("domain b = {x, y}\nrfu a (u: b) -> (v: b)\n  (u) -> (u)\n", "E-UNCLOSED"),
    ("domain b = int 0..2 mod\nrfu a (u: b) -> (v: b)\n  (u) -> (u + 5)\nend\n", None),
    ("domain b = int 0..2 mod\nrfu a (u: b) -> (v: b)\n  (u) -> (w + 1)\nend\n", "E-FRESH"),
])
def test_diagnostics_carry_codes_and_locations(text, code):
    model, diags = check_model(text)
    if code is None:
        assert diags == []
        return
    assert model is None and code in [d.code for d in diags]
    for d in diags:
        assert d.loc.line >= 1 and d.loc.col >= 1
        assert str(d).startswith(f"{d.loc.line}:{d.loc.col}: error[")


def test_parse_model_raises():
    with pytest.raises(ModelError) as e:
        parse_model("domain b = {x}\ndomain b = {x}\n")
    assert "E-DUP" in str(e.value)


def test_recovery_reports_several_errors():
    text = "domain a = {x\ndomain b = {y}\nrfu r (u: q) -> (v: q)\nend\nlet z = w\n"
    _, diags = check_model(text)
    assert len(diags) >= 2


def test_lexer_positions():
    toks, diags = tokenize("rfu a\n  (u)")
    assert not diags
    assert [(t.loc.line, t.loc.col) for t in toks if t.text == "u"] == [(2, 4)]


_alphabet = st.sampled_from(list("()[]{},;:=<>-+*_\\/|#.@ \n\tabuvxy019")
                            + ["rfu ", "spec ", "sts ", "end", "domain ", "let ", "feedback ",
                               " fail", " bot", " where ", " lifted", " on ", " -> ",
                               "int ", " mod", "..", " and ", " or ", " not ", "init "])


@settings(max_examples=300, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(_alphabet, max_size=40).map("".join))
def test_never_panics_on_noise(text):
    model, diags = check_model(text)
    assert (model is None) == bool(diags)


@settings(max_examples=200, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(sorted(CORPUS)), st.data())
def test_never_panics_on_mutated_models(name, data):
    text = CORPUS[name]
    i = data.draw(st.integers(0, len(text)))
    j = data.draw(st.integers(i, min(len(text), i + 20)))
    junk = data.draw(st.text(alphabet="(),;:=-> \n0123abuvxy", max_size=6))
    model, diags = check_model(text[:i] + junk + text[j:])
    assert (model is None) == bool(diags)


@given(st.text(max_size=60))
def test_never_panics_on_arbitrary_text(text):
    check_model(text)

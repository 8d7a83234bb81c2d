"""Hypothesis strategies for small domains, signatures and relations."""

from hypothesis import strategies as st

from feedkit.domains import FAIL, Signature, WireDomain
from feedkit.rfu import Rfu
from feedkit.transformers import Spec


@st.composite
def domains(draw, lifted=None, max_atoms=3):
    n = draw(st.integers(1, max_atoms))
    lift = draw(st.booleans()) if lifted is None else lifted
    return WireDomain(f"d{n}", tuple(range(n)), lift)


@st.composite
def signatures(draw, min_wires=0, max_wires=2, lifted=None, max_atoms=3):
    n = draw(st.integers(min_wires, max_wires))
    return Signature(tuple(draw(domains(lifted, max_atoms)) for _ in range(n)))


def points(sig):
    return st.sampled_from(sig.points())


@st.composite
def rows_for(draw, in_sig, out_sig, fail=True):
    outs = out_sig.points()
    rows = {}
    for x in in_sig.points():
        kind = draw(st.sampled_from(["fail", "empty", "set", "set", "set"] if fail
                                    else ["empty", "set", "set", "set"]))
        if kind == "fail":
            rows[x] = {FAIL}
        elif kind == "set":
            rows[x] = set(draw(st.lists(st.sampled_from(outs), min_size=1, max_size=3)))
    return rows


@st.composite
def rfus(draw, in_sig=None, out_sig=None, fail=True):
    in_sig = draw(signatures()) if in_sig is None else in_sig
    out_sig = draw(signatures()) if out_sig is None else out_sig
    return Rfu.from_rows(in_sig, out_sig, draw(rows_for(in_sig, out_sig, fail)))


@st.composite
def specs(draw, in_sig=None, out_sig=None):
    in_sig = draw(signatures()) if in_sig is None else in_sig
    out_sig = draw(signatures()) if out_sig is None else out_sig
    ins, outs = in_sig.points(), out_sig.points()
    legal = draw(st.sets(st.sampled_from(ins)))
    rel = draw(st.sets(st.tuples(st.sampled_from(ins), st.sampled_from(outs)), max_size=12))
    return Spec(in_sig, out_sig, legal, rel)


@st.composite
def composable_rfus(draw, n=2, fail=True):
    sigs = [draw(signatures()) for _ in range(n + 1)]
    return [draw(rfus(sigs[i], sigs[i + 1], fail)) for i in range(n)]


@st.composite
def composable_specs(draw, n=3):
    sigs = [draw(signatures()) for _ in range(n + 1)]
    return [draw(specs(sigs[i], sigs[i + 1])) for i in range(n)]


@st.composite
def same_typed_rfus(draw, n=2):
    a, b = draw(signatures()), draw(signatures())
    return [draw(rfus(a, b)) for _ in range(n)]


seeds = st.integers(0, 2**32 - 1)

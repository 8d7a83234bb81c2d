"""Plain-text dumps shared by the fixture writer and the golden tests."""

from __future__ import annotations

import itertools
from pathlib import Path

from feedkit.cli import load_model_text
from feedkit.domains import FAIL, format_point
from feedkit.dsl import parse_model

FIXTURES = Path(__file__).parent / "fixtures"

FEEDBACKS = [
    ("prelude", "true_fb"),
    ("prelude", "neq_fb"),
    ("prelude", "id_fb"),
    ("prelude", "and_fb"),
    ("nondet", "nondet_fb"),
    ("bus", "bus_fb"),
]
DELAYS = ["r1", "r2", "stepsum", "r3", "r4", "r4det", "stepsum_sat"]
MAX_HORIZON = 4
REFINE_PAIRS = [(a, b) for a in ("true_rfu", "neq_rfu", "id_rfu")
                for b in ("true_rfu", "neq_rfu", "id_rfu")]


def model(name):
    return parse_model(load_model_text(name))


def dump_rows(rows: dict, in_sig, out_sig) -> str:
    """``x -> y`` per outcome, ``x -> fail`` for failing rows, canonical order."""
    lines = []
    for x in in_sig.sorted(rows):
        for y in out_sig.sorted(rows[x]):
            lines.append(f"{format_point(x)} -> {format_point(y)}")
    return "\n".join(lines) + "\n"


def rfu_rows(r) -> dict:
    return {x: ys for x, ys in r.rows.items() if ys}


def _prefix(xs) -> str:
    return " ".join(format_point(x) for x in xs) or "()"


def dump_delay(in_sig, out_sig, horizon, legal, io) -> str:
    key = lambda ps, sig: tuple(sig.key(p) for p in ps)
    by_prefix: dict = {}
    for xs, ys in io:
        by_prefix.setdefault(xs, []).append(ys)
    lines = [f"# horizon {horizon}: {len(legal)} legal"]
    for xs in itertools.product(in_sig.points(), repeat=horizon):
        if xs not in legal:
            lines.append(f"{_prefix(xs)} -> fail")
            continue
        outs = sorted(by_prefix.get(xs, []), key=lambda ys: key(ys, out_sig))
        lines += [f"{_prefix(xs)} -> {_prefix(ys)}" for ys in outs] or [f"{_prefix(xs)} -> none"]
    return "\n".join(lines) + "\n"


def read(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


__all__ = ["FAIL", "FIXTURES", "FEEDBACKS", "DELAYS", "MAX_HORIZON", "REFINE_PAIRS",
           "model", "dump_rows", "rfu_rows", "dump_delay", "read"]

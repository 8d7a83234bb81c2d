"""Command-line front end: ``feedkit [-m MODEL] COMMAND ...``.

Exit codes: 0 on success (or when a checked property holds), 1 when a
property fails (a witness is printed), 2 on usage or model errors.
"""

from __future__ import annotations

import argparse
import contextlib
import itertools
import re
import sys
from importlib import resources
from pathlib import Path

from .domains import BOT, FeedkitError, Signature, format_point
from .dot import emit_dot, node_label
from .dsl.diagnostics import ModelError
from .dsl.model import Model, check_model
from .feedback import fb_hide, feedback_tree, inst_feedback
from .rfu import Rfu, compose_serial, counterexample, wp
from .sts import Sts, delay_feedback, sorted_prefixes
from .transformers import Spec, counterexample_spec, seq_spec

EXIT_OK, EXIT_FAILS, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def packaged_models() -> list:
    return sorted(p.name[:-3] for p in resources.files("feedkit.models").iterdir()
                  if p.name.endswith(".fk"))


def load_model_text(spec: str | None) -> str:
    """A path, or the name of a packaged model (default ``prelude``)."""
    spec = spec or "prelude"
    p = Path(spec)
    if p.is_file():
        return p.read_text(encoding="utf-8")
    name = spec[:-3] if spec.endswith(".fk") else spec
    res = resources.files("feedkit.models") / f"{name}.fk"
    if res.is_file():
        return res.read_text(encoding="utf-8")
    raise UsageError(f"no model file {spec!r} (packaged: {', '.join(packaged_models())})")


_INT = re.compile(r"-?\d+$")


def parse_point(text: str, sig: Signature) -> tuple:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [s.strip() for s in body.split(",")] if body.strip() else []
    vals = []
    for s in parts:
        if s == "bot":
            vals.append(BOT)
        elif _INT.match(s):
            vals.append(int(s))
        else:
            vals.append(s)
    p = tuple(vals)
    if not sig.conforms(p):
        raise UsageError(f"point {text!r} does not conform to {sig.describe()}")
    return p


def _lookup(model: Model, name: str):
    try:
        return model.get(name)
    except KeyError:
        raise UsageError(f"unknown name {name!r}; defined: {', '.join(model.names())}")


def _print_rows(obj, out) -> None:
    if isinstance(obj, Rfu):
        lines = obj.format_rows()
    elif isinstance(obj, Spec):
        lines = obj.format_lines()
    else:
        raise UsageError("expected a relation or a specification")
    for line in lines:
        print(line, file=out)


def cmd_compose(model, args, out):
    objs = [_lookup(model, n) for n in args.names]
    acc = objs[0]
    for o in objs[1:]:
        if isinstance(acc, Rfu) and isinstance(o, Rfu):
            acc = compose_serial(acc, o)
        elif isinstance(acc, (Rfu, Spec)) and isinstance(o, (Rfu, Spec)):
            acc = seq_spec(wp(acc) if isinstance(acc, Rfu) else acc,
                           wp(o) if isinstance(o, Rfu) else o)
        else:
            raise UsageError("compose needs relations or specifications")
    _print_rows(acc, out)
    return EXIT_OK


def _shape(model, name):
    try:
        return model.shape(name)
    except KeyError:
        raise UsageError(f"{name!r} is neither a feedback declaration nor a relation")


def cmd_feedback(model, args, out):
    shape = _shape(model, args.name)
    r = fb_hide(shape) if args.hide else inst_feedback(shape)
    _print_rows(r, out)
    return EXIT_OK


def cmd_refine(model, args, out):
    a, b = _lookup(model, args.a), _lookup(model, args.b)
    if isinstance(a, Sts) or isinstance(b, Sts):
        if not (isinstance(a, Sts) and isinstance(b, Sts)):
            raise UsageError("cannot compare a transition system with a relation")
        if args.horizon is None:
            x = counterexample_spec(a.onestep(), b.onestep())
            if x is None:
                print(f"{args.b} refines {args.a} (one step)", file=out)
                return EXIT_OK
            print(f"{args.b} does not refine {args.a} (one step)", file=out)
            print(f"counterexample input: {format_point(x)}", file=out)
            return EXIT_FAILS
        sa, sb = delay_feedback(a, args.horizon), delay_feedback(b, args.horizon)
        for xs in sorted_prefixes(sa):
            if xs not in sb.legal_prefixes or not sb.outputs(xs) <= sa.outputs(xs):
                print(f"{args.b} does not refine {args.a} at horizon {args.horizon}", file=out)
                print(f"counterexample input: {_prefix(xs)}", file=out)
                return EXIT_FAILS
        print(f"{args.b} refines {args.a} at horizon {args.horizon}", file=out)
        return EXIT_OK
    if isinstance(a, Rfu) and isinstance(b, Rfu):
        x = counterexample(a, b)
    else:
        a = wp(a) if isinstance(a, Rfu) else a
        b = wp(b) if isinstance(b, Rfu) else b
        x = counterexample_spec(a, b)
    if x is None:
        print(f"{args.b} refines {args.a}", file=out)
        return EXIT_OK
    print(f"{args.b} does not refine {args.a}", file=out)
    print(f"counterexample input: {format_point(x)}", file=out)
    print(f"  {args.a}: {_row_text(a, x)}", file=out)
    print(f"  {args.b}: {_row_text(b, x)}", file=out)
    return EXIT_FAILS


def _row_text(obj, x) -> str:
    if isinstance(obj, Spec) and x not in obj.legal:
        return "fail"
    outs = obj.out_sig.sorted(obj.outputs(x))
    return ", ".join(format_point(y) for y in outs) or "none"


def _prefix(xs) -> str:
    return " ".join(format_point(x) for x in xs) or "()"


def cmd_simulate(model, args, out):
    s = _lookup(model, args.name)
    if not isinstance(s, Sts):
        raise UsageError(f"{args.name!r} is not a transition system")
    if args.horizon < 0:
        raise UsageError("horizon must be non-negative")
    sem = delay_feedback(s, args.horizon)
    total = s.in_sig.size() ** args.horizon
    print(f"# horizon {args.horizon}: {len(sem.legal_prefixes)} legal of {total} input prefixes",
          file=out)
    rows = sem.rows()
    key = lambda ys: tuple(s.out_sig.key(y) for y in ys)
    for xs in itertools.product(s.in_sig.points(), repeat=args.horizon):
        if xs not in sem.legal_prefixes:
            print(f"{_prefix(xs)} -> fail", file=out)
            continue
        ys_all = sorted(rows[xs], key=key)
        if not ys_all:
            print(f"{_prefix(xs)} -> none", file=out)
        for ys in ys_all:
            print(f"{_prefix(xs)} -> {_prefix(ys)}", file=out)
    return EXIT_OK


def cmd_tree(model, args, out):
    shape = _shape(model, args.name)
    x = parse_point(args.input, shape.b_sig)
    tree = feedback_tree(shape, x)
    text = emit_dot(tree, args.name)
    if args.dot:
        Path(args.dot).write_text(text, encoding="utf-8")
    if args.format == "dot":
        out.write(text)
        return EXIT_OK
    def walk(n, depth):
        print("  " * depth + node_label(n), file=out)
        for c in n.children:
            walk(c, depth + 1)

    walk(tree.root, 0)
    outcomes = tree.outcomes()
    sig = shape.a_sig + shape.c_sig
    print("outcomes: " + ", ".join(format_point(o) for o in sig.sorted(outcomes)), file=out)
    return EXIT_OK


def cmd_wp(model, args, out):
    obj = _lookup(model, args.name)
    if isinstance(obj, Sts):
        obj = obj.onestep()
    elif isinstance(obj, Rfu):
        obj = wp(obj)
    _print_rows(obj, out)
    return EXIT_OK


def cmd_check(model, args, out):
    for name, obj in model.components.items():
        if isinstance(obj, Rfu):
            legal = len(obj.legal_inputs())
            print(f"rfu {name}: {obj.in_sig.describe()} -> {obj.out_sig.describe()}, "
                  f"{legal} of {obj.in_sig.size()} inputs legal", file=out)
        elif isinstance(obj, Spec):
            print(f"spec {name}: {obj.in_sig.describe()} -> {obj.out_sig.describe()}, "
                  f"{len(obj.legal)} of {obj.in_sig.size()} inputs legal", file=out)
        else:
            print(f"sts {name}: state {obj.state_sig.describe()} input {obj.in_sig.describe()} "
                  f"output {obj.out_sig.describe()}, {len(obj.init)} initial states", file=out)
    for name, sh in model.feedbacks.items():
        print(f"feedback {name}: {sh.width} wire(s), input {list(sh.fb_in)} "
              f"<- output {list(sh.fb_out)}", file=out)
    print("ok", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="feedkit", description=__doc__.splitlines()[0])
    p.add_argument("-m", "--model", help="model file or packaged model name (default: prelude)")
    p.add_argument("--format", choices=("table", "dot"), default="table")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("compose", help="serial composition of named components")
    s.add_argument("names", nargs="+")
    s.set_defaults(run=cmd_compose)

    s = sub.add_parser("feedback", help="instantaneous feedback of a relation")
    s.add_argument("name")
    s.add_argument("--hide", action="store_true", help="hide the feedback wires")
    s.set_defaults(run=cmd_feedback)

    s = sub.add_parser("refine", help="exit 0 iff B refines A")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--horizon", type=int, default=None,
                   help="compare transition systems through delay feedback")
    s.set_defaults(run=cmd_refine)

    s = sub.add_parser("simulate", help="delay feedback of a transition system")
    s.add_argument("name")
    s.add_argument("--horizon", type=int, required=True)
    s.set_defaults(run=cmd_simulate)

    s = sub.add_parser("tree", help="feedback tree at one input")
    s.add_argument("name")
    s.add_argument("--input", required=True, help="point such as '(false)' or '(1, bot)'")
    s.add_argument("--dot", help="write the tree in DOT format to this file")
    s.set_defaults(run=cmd_tree)

    s = sub.add_parser("wp", help="predicate-transformer view")
    s.add_argument("name")
    s.set_defaults(run=cmd_wp)

    s = sub.add_parser("check", help="model well-formedness")
    s.set_defaults(run=cmd_check)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        if args.format == "dot" and args.command != "tree":
            raise UsageError("--format dot applies to the tree command only")
        text = load_model_text(args.model)
        model, diags = check_model(text)
        if diags:
            for d in diags:
                print(str(d), file=err)
            return EXIT_USAGE
        return args.run(model, args, out)
    except (UsageError, ModelError) as e:
        print(f"feedkit: error: {e}", file=err)
        return EXIT_USAGE
    except FeedkitError as e:
        print(f"feedkit: error: {e}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

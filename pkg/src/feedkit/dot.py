"""Graphviz rendering of feedback trees.

Shared subtrees of the deduplicated tree are unfolded again, so the
picture is a plain tree.  Node ids follow a preorder walk with children in
canonical order, which makes the output byte-identical across runs.
"""

from __future__ import annotations

from .domains import BOT
from .feedback import FeedbackTree, TreeNode


def _value(v) -> str:
    return "⊥" if v is BOT else str(v)


def _part(p: tuple) -> str:
    if len(p) == 1:
        return _value(p[0])
    return "(" + ",".join(_value(v) for v in p) + ")"


def node_label(n: TreeNode) -> str:
    if n.kind == "fail":
        return "•"
    if n.kind == "pending":
        return f"({_part(n.u)},?)"
    return f"({_part(n.u)},{_part(n.y)})"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(tree: FeedbackTree, name: str = "feedback_tree") -> str:
    lines = [f"digraph {_quote(name)} {{", "  node [shape=box, fontname=\"monospace\"];"]
    counter = [0]

    def walk(n: TreeNode) -> str:
        nid = f"n{counter[0]}"
        counter[0] += 1
        shape = ", shape=plaintext" if n.kind == "fail" else ""
        lines.append(f"  {nid} [label={_quote(node_label(n))}{shape}];")
        for c in n.children:
            cid = walk(c)
            lines.append(f"  {nid} -> {cid};")
        return nid

    walk(tree.root)
    lines.append("}")
    return "\n".join(lines) + "\n"

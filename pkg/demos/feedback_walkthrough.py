"""Closing a loop around small relations on lifted values.

Run with ``python demos/feedback_walkthrough.py``.
"""

from feedkit import fb_hide, feedback_tree, inst_feedback
from feedkit.cli import load_model_text
from feedkit.dot import node_label
from feedkit.dsl import parse_model

m = parse_model(load_model_text("prelude"))


def show(title, rows):
    print(title)
    for line in rows:
        print("   ", line)


# TRUE only ties v to y, so every value of v is a fixpoint and the loop
# keeps all three, the unknown one included.
shape = m.feedbacks["true_fb"]
show("TRUE with the loop closed:", inst_feedback(shape).format_rows())
show("TRUE with the loop hidden (unknown branch forces fail):", fb_hide(shape).format_rows())

# NEQ wants v different from a known u; the only consistent answer is unknown.
show("NEQ with the loop closed:", inst_feedback(m.feedbacks["neq_fb"]).format_rows())


def draw(node, depth=0):
    print("    " + "  " * depth + node_label(node))
    for child in node.children:
        draw(child, depth + 1)


print("Tree for TRUE at x = 0:")
draw(feedback_tree(shape, (0,)).root)
print("Tree for NEQ at x = 0:")
draw(feedback_tree(m.feedbacks["neq_fb"], (0,)).root)

# An AND gate fed back into itself settles only when the free input is false.
show("AND gate, hidden loop:", fb_hide(m.feedbacks["and_fb"]).format_rows())

nd = parse_model(load_model_text("nondet"))
f = inst_feedback(nd.feedbacks["nondet_fb"])
illegal = [x for x in f.in_sig.points() if f.fails(x)]
print("NonDet fails at inputs", illegal, "and at x = 2 yields", sorted(f.outputs((2,))))

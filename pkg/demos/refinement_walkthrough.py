"""Refinement survives feedback: a randomized check plus one worked pair.

Run with ``python demos/refinement_walkthrough.py [N]``.
"""

import sys

from feedkit import fb_hide, format_point, inst_feedback, refines, wp
from feedkit.cli import load_model_text
from feedkit.dsl import parse_model
from feedkit.generators import RefinementPairGenerator
from feedkit.rfu import counterexample
from feedkit.transformers import inst_feedback_pt

m = parse_model(load_model_text("prelude"))
true_rfu, neq_rfu = m.get("true_rfu"), m.get("neq_rfu")
print("NEQ refines TRUE:", refines(true_rfu, neq_rfu))
print("TRUE refines NEQ:", refines(neq_rfu, true_rfu),
      "first witness", format_point(counterexample(neq_rfu, true_rfu)))

shape = m.feedbacks["true_fb"]
pt = inst_feedback_pt(wp(shape.rfu), 1)
print("relational and point-free feedback agree on TRUE:", wp(inst_feedback(shape)) == pt)

n = int(sys.argv[1]) if len(sys.argv) > 1 else 300
kept = 0
for s, s2 in RefinementPairGenerator(seed=11).take(n):
    kept += refines(inst_feedback(s), inst_feedback(s2)) and refines(fb_hide(s), fb_hide(s2))
print(f"refinement kept through feedback in {kept} of {n} random pairs")
